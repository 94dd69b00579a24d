#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wordlab/pmf.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

struct Alphabet {
    std::vector<char> labels;  // distinct, canonically ordered

    static Alphabet of_size(int k);
    static Alphabet binary() { return of_size(2); }

    int size() const { return static_cast<int>(labels.size()); }
    int index_of(char c) const;
    void validate() const;
};

struct LetterLaw {
    Alphabet alphabet;
    Pmf<char> pmf;

    static LetterLaw uniform(const Alphabet& a);
    static LetterLaw from_masses(const Alphabet& a, const std::vector<double>& m);

    double mass(char c) const { return pmf.mass_of(c); }
};

enum class LengthKind { pareto, zipf, zipf_log_corrected, geometric, custom_pmf, custom_density };

// Interarrival (word-length) law. Continuous kinds carry a density on
// [s_*, inf); discrete kinds live on h*N with an explicit cap L_max and a
// reported truncation tail mass (all exact computations condition on the cap).
class LengthLaw {
  public:
    static LengthLaw pareto(double alpha, double s_star);
    static LengthLaw zipf(double alpha, int l_max);
    static LengthLaw zipf_log_corrected(int l_max);
    static LengthLaw geometric(double p, int l_max);
    static LengthLaw custom_pmf(std::vector<double> mass, double h);
    // Piecewise-linear density through the given (x, density) nodes.
    static LengthLaw custom_density(std::vector<double> xs, std::vector<double> ds);

    LengthKind kind() const { return kind_; }
    bool is_discrete() const;
    bool has_density() const { return !is_discrete(); }
    // Polynomial tail exponent; +inf for super-polynomial kinds, nan for
    // tabulated densities.
    double alpha() const { return alpha_; }
    double s_star() const { return s_star_; }
    double h() const { return h_; }
    int l_max() const { return static_cast<int>(pmf_.size()); }
    double tail_mass() const { return tail_mass_; }

    double density(double x) const;
    // Exact integral of the density over [a,b] (closed form for pareto,
    // trapezoid-exact for tabulated densities).
    double integral(double a, double b) const;

    // Discrete kinds: mass at n*h for n = 1..L_max.
    const std::vector<double>& pmf() const;
    double pmf_at(int n) const;
    double mean_lengths() const;  // in units of h

    // Exponential-tail certificate (Eq.-1.20 style): true when the law's tail
    // is dominated by e^{-lambda t} for some lambda > 0.
    bool exp_tail() const;

  private:
    LengthKind kind_ = LengthKind::pareto;
    double alpha_ = 2.0, s_star_ = 1.0, h_ = 1.0, geom_p_ = 0.5;
    double tail_mass_ = 0.0;
    std::vector<double> pmf_;                 // discrete kinds
    std::vector<double> dens_x_, dens_d_;     // custom density nodes
};

struct GridWeights {
    double h = 1.0;
    std::vector<double> w;  // w[i-1] = mass of ((i-1)h, ih]
    double tail = 0.0;      // residual mass beyond cap*h

    Pmf<double> as_pmf() const;  // atoms i*h; sub-probability when tail > 0
    double mean_lengths() const;
};

// Eq.-2.10 grid weights w_{h,i} up to the index cap, with the residual tail.
GridWeights coarse_grain_length_law(const LengthLaw& law, double h, int cap);

// Diagnostic ratios log rho(x) / log x; approaches -alpha for polynomial tails.
std::vector<std::pair<double, double>> tail_exponent_estimate(const LengthLaw& law,
                                                              const std::vector<double>& xs);

// V_rho(t,h): sup over v in (0,2h) of |log integral(t,t+h)/integral(t+v,t+h+v)|.
// Returns +inf when some denominator window has zero mass.
double regularity_modulus(const LengthLaw& law, double t, double h);

// Product reference word law q_{rho,nu} with closed-form atom masses, usable
// without materializing the (possibly huge) support.
struct RefLaw {
    std::vector<double> rho;  // mass at length n = index+1, in letters
    LetterLaw nu;

    int l_max() const { return static_cast<int>(rho.size()); }
    double rho_at(int n) const;
    double rho_tail_from(int n) const;  // sum of rho over lengths >= n

    // q(word of length n with letters a_1..a_n) = rho(n) * prod nu(a_k).
    double mass(const Word& w) const;
    // Mass under the truncation pushforward [q_{rho,nu}]_tr.
    double mass_truncated(const Word& w, int tr) const;

    double mean_length() const;
    Pmf<Word> materialize(std::size_t support_budget = 1u << 20) const;
};

// q(word of length n with letters a_1..a_n) = rho(n) * prod nu(a_k).
// rho_d masses are indexed by letter count n = 1..L_max.
Pmf<Word> reference_word_law(const std::vector<double>& rho_d, const LetterLaw& nu,
                             std::size_t support_budget = 1u << 20);
Pmf<Word> reference_word_law(const LengthLaw& rho, const LetterLaw& nu,
                             std::size_t support_budget = 1u << 20);

// Marginal of the word length (in letters) under a word law.
Pmf<int> length_marginal(const Pmf<Word>& q);

}  // namespace wordlab
