#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wordlab/words.hpp"

namespace wordlab {

// Piecewise-linear increasing bijection of [0,inf) with lambda(0)=0,
// finitely many kinks and a final slope.
class TimeChange {
  public:
    static TimeChange identity();
    // Kink nodes (s_i, lambda(s_i)) with (0,0) implied; linear continuation
    // with `final_slope` after the last node.
    static TimeChange from_nodes(std::vector<double> s, std::vector<double> ls,
                                 double final_slope);
    // lambda(x) = x * (b/a) on [0,a], then slope 1.
    static TimeChange single_kink(double a, double b);

    double eval(double t) const;
    double inverse_eval(double y) const;
    TimeChange inverse() const;
    TimeChange compose_after(const TimeChange& inner) const;  // this(inner(.))

    // sup over 0<=s<t of |log (lambda(t)-lambda(s))/(t-s)|; attained on a
    // single linear segment for piecewise-linear lambda.
    double gamma() const;

    const std::vector<double>& nodes_s() const { return s_; }
    const std::vector<double>& nodes_l() const { return l_; }
    double final_slope() const { return final_slope_; }
    std::string id = "lambda";

  private:
    std::vector<double> s_{0.0}, l_{0.0};
    double final_slope_ = 1.0;
};

inline double gamma(const TimeChange& tc) { return tc.gamma(); }

struct DsResult {
    double value = 0.0;
    std::string lambda_id;
};

// Certified upper bound on the rubber-time distance
//   d_S = inf_lambda max(gamma(lambda),
//                        int_0^inf e^{-u} sup_t |p1(t^u) - p2(lambda(t)^u)| du)
// over a finite lambda family (identity, horizon-matching kink, supplied
// candidates, all closed under inversion). `offset` shifts p1 - p2 by a
// constant, for comparing path pieces that have not been re-based.
DsResult ds_upper(const PathPL& p1, const PathPL& p2,
                  const std::vector<TimeChange>& extra = {}, double offset = 0.0);

// d_F(y1,y2) = |t1 - t2| + d_S(paths).
double d_f_upper(const PathWord& y1, const PathWord& y2,
                 const std::vector<TimeChange>& extra = {});

struct BoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// Cut-segment comparison bound: d_S(phi((ih+.)^jh), phi((t+.)^t')) against
// log((k+1)/k) plus twice the oscillations around the two cut windows, with
// the explicit two-piece time change inserted as a candidate. The truncated
// variant drops the right-edge oscillation term when (j-1)h > tr.
BoundCheck ds_bound_check(const PathPL& phi, int i, int j, double t, double t_prime, double h,
                          int k, std::optional<double> tr = std::nullopt);

// Mean of g over the N cyclic ell-windows of a word tuple.
double empirical_tuple_mean(const std::vector<PathWord>& words, int ell,
                            const std::function<double(const std::vector<PathWord>&)>& g);

}  // namespace wordlab
