#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wordlab/laws.hpp"
#include "wordlab/rates.hpp"
#include "wordlab/rng.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

struct QuenchedMomentReport {
    int N = 0;
    double lambda_n = 0.0;
    std::string method;  // "dp" | "enumeration"
    std::uint64_t environment_seed = 0;
    double tr = kInf;
    std::string functional_id;
    double runtime_ms = 0.0;
};

// Word score on the environment: value of g on the word cut from (t0, t1].
using SegmentScore = std::function<double(int t0, int t1)>;

// Prefix-sum backed score for letter-linear + length-term functionals;
// general tables fall back to substring evaluation.
SegmentScore make_segment_score(const Environment& env, const WordFunctional& g);

// Exact conditional exponential moment by the renewal transfer recursion
//   Z_i(t) = sum_n Z_{i-1}(t-n) rho_d(n) e^{g(X_{(t-n,t]})},  Z_0(0) = 1,
// in log space; lambda_N = (1/N) log sum_t Z_N(t).  O(N T L_max).
QuenchedMomentReport lambda_n_dp(const Environment& env, const std::vector<double>& rho_d,
                                 const SegmentScore& g, int N,
                                 const std::string& functional_id = "g");

// Exact small-N evaluation of E[exp(N Phi([R_N]_tr)) | X] over all cut tuples.
QuenchedMomentReport lambda_n_enumerate(const Environment& env, const std::vector<double>& rho_d,
                                        const TestFunctional& phi, int N, int tr,
                                        std::size_t budget = 10000000);

struct GridTupleWeight {
    double weight = 0.0;          // nested integral over the ordered boxes
    double coarse_product = 0.0;  // prod of grid-rounded one-step weights
    double achieved_tol = 0.0;
};

// Weight of a nondecreasing grid index tuple under a density-kind length law:
// w_h(j_1..j_N) = int over 0<t_1<...<t_N of prod rho(t_k - t_{k-1}) with
// t_k confined to ((j_k-1)h, j_k h].
GridTupleWeight grid_tuple_weight(const LengthLaw& law, double h,
                                  const std::vector<int>& j_tuple, double rel_tol = 1e-6);

struct OscillationPoint {
    double h = 0.0;
    double xi_hat = 0.0;        // (1/N) log averaged exponential under a fixed field
    double bound = 0.0;         // 0.5 log chi_hat(2 k lambda sqrt(h))
    double bound_se = 0.0;      // propagated MC standard error of the bound
};

// One xi estimate: fixes a simulated oscillation field D_{j,h} (each block's
// sup deviation from its right endpoint, on a Brownian sub-mesh), then
// averages exp(lambda * sum of k consecutive block oscillations per renewal)
// over n_draws independent renewal streams.
double oscillation_xi(const LengthLaw& renewal, double lambda, int k, int n_renewals, double h,
                      int n_draws, int submesh, Rng& rng);

// MC estimate of chi(u) = E exp(u sup_{[0,1]} |X|): (mean, standard error).
std::pair<double, double> chi_hat(double u, int n_samples, int submesh, Rng& rng);

struct WaitingTimeRow {
    int L = 0;
    double mean_log_wait_over_l = 0.0;
    double predicted = 0.0;  // per-letter entropy of the pattern under nu
    int seeds = 0;
};

// First-occurrence index (1-based start position) of a fixed pattern in an
// iid nu letter stream, averaged over seeds; run patterns expand to L copies
// of the symbol.
std::vector<WaitingTimeRow> waiting_time_experiment(const LetterLaw& nu,
                                                    const std::string& pattern_symbolic,
                                                    const std::vector<int>& L_list, int n_seeds,
                                                    Rng& rng);

// Quantile-binned Brownian increments: exactly uniform letters over `bins`
// symbols, one per mesh-h block.
std::string brownian_letters(std::size_t n, int bins, Rng& rng);

}  // namespace wordlab
