#include "wordlab/quenched.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace wordlab {

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

std::vector<double> log_weights(const std::vector<double>& rho_d) {
    std::vector<double> lw(rho_d.size(), -kInf);
    for (std::size_t i = 0; i < rho_d.size(); ++i)
        if (rho_d[i] > 0.0) lw[i] = std::log(rho_d[i]);
    return lw;
}

}  // namespace

SegmentScore make_segment_score(const Environment& env, const WordFunctional& g) {
    const int T = env.horizon();
    // Prefix letter score V[t] = sum of letter coefficients over env[0,t).
    auto value_prefix = std::make_shared<std::vector<double>>(static_cast<std::size_t>(T) + 1, 0.0);
    for (int t = 0; t < T; ++t) {
        const char c = env.letters[static_cast<std::size_t>(t)];
        auto it = g.letter_coef.find(c);
        (*value_prefix)[static_cast<std::size_t>(t) + 1] =
            (*value_prefix)[static_cast<std::size_t>(t)] + (it == g.letter_coef.end() ? 0.0 : it->second);
    }
    if (g.letter_linear()) {
        WordFunctional lengths = g;
        return [value_prefix, lengths](int t0, int t1) {
            return (*value_prefix)[static_cast<std::size_t>(t1)] -
                   (*value_prefix)[static_cast<std::size_t>(t0)] + lengths.length_part(t1 - t0);
        };
    }
    const Environment env_copy = env;
    const WordFunctional g_copy = g;
    return [env_copy, g_copy](int t0, int t1) {
        return g_copy.eval(Word(env_copy.letters.substr(static_cast<std::size_t>(t0),
                                                        static_cast<std::size_t>(t1 - t0))));
    };
}

QuenchedMomentReport lambda_n_dp(const Environment& env, const std::vector<double>& rho_d,
                                 const SegmentScore& g, int N, const std::string& functional_id) {
    const double start = now_ms();
    const int T = env.horizon();
    const int L = static_cast<int>(rho_d.size());
    if (N < 1) throw DomainError("N must be at least 1");
    if (static_cast<long long>(N) * L > T) throw RangeError("horizon too short for N words of L_max letters");
    const std::vector<double> lw = log_weights(rho_d);

    // Separable scores make the row update a plain convolution: with
    // V[t] a prefix score and g(t0,t1) = V[t1] - V[t0] + d(t1-t0),
    //   Z_i(t) = e^{V[t]} sum_n (Z_{i-1}/e^{V})(t-n) rho(n) e^{d(n)}.
    // We always run the recursion in that form, using V = 0 and folding the
    // whole g into the step weight when it is not separable.
    std::vector<double> v(static_cast<std::size_t>(T) + 1, 0.0);
    bool separable = true;
    {
        // Probe separability: g(t0,t1) == V[t1]-V[t0]+d(n) holds iff
        // g(t,t+1) telescopes g on longer segments with a length-only defect.
        for (int t = 0; t < T; ++t)
            v[static_cast<std::size_t>(t) + 1] = v[static_cast<std::size_t>(t)] + g(t, t + 1);
        std::vector<double> d(static_cast<std::size_t>(L) + 1, 0.0);
        for (int n = 1; n <= std::min(L, T); ++n)
            d[static_cast<std::size_t>(n)] =
                g(0, n) - (v[static_cast<std::size_t>(n)] - v[0]);
        const int probes = T >= 2 ? std::min(T, 512) : 0;
        for (int p = 0; p < probes && separable; ++p) {
            const int t0 = (p * 37) % (T - 1);
            const int n = 1 + (p * 13) % std::min(L, T - t0);
            const double expect = v[static_cast<std::size_t>(t0 + n)] -
                                  v[static_cast<std::size_t>(t0)] + d[static_cast<std::size_t>(n)];
            if (std::fabs(expect - g(t0, t0 + n)) > 1e-9) separable = false;
        }
        if (separable) {
            // Fold the length defect into the step weights via exp(d).
            std::vector<double> row_prev(static_cast<std::size_t>(T) + 1, -kInf);
            row_prev[0] = 0.0;
            std::vector<double> wstep(static_cast<std::size_t>(L) + 1, 0.0);
            std::vector<double> pl(static_cast<std::size_t>(T) + 1, 0.0);
            std::vector<double> row(static_cast<std::size_t>(T) + 1, -kInf);
            for (int n = 1; n <= L; ++n)
                wstep[static_cast<std::size_t>(n)] =
                    lw[static_cast<std::size_t>(n - 1)] == -kInf
                        ? 0.0
                        : std::exp(lw[static_cast<std::size_t>(n - 1)] + d[static_cast<std::size_t>(n)]);
            for (int i = 1; i <= N; ++i) {
                double mu = -kInf;
                for (int t = 0; t <= T; ++t) {
                    const double u = row_prev[static_cast<std::size_t>(t)] - v[static_cast<std::size_t>(t)];
                    pl[static_cast<std::size_t>(t)] = u;
                    mu = std::max(mu, row_prev[static_cast<std::size_t>(t)] == -kInf ? -kInf : u);
                }
                for (int t = 0; t <= T; ++t)
                    pl[static_cast<std::size_t>(t)] =
                        row_prev[static_cast<std::size_t>(t)] == -kInf
                            ? 0.0
                            : std::exp(pl[static_cast<std::size_t>(t)] - mu);
                for (int t = 0; t <= T; ++t) {
                    double s = 0.0;
                    const int nmax = std::min(L, t);
                    for (int n = 1; n <= nmax; ++n)
                        s += pl[static_cast<std::size_t>(t - n)] * wstep[static_cast<std::size_t>(n)];
                    row[static_cast<std::size_t>(t)] =
                        s > 0.0 ? std::log(s) + v[static_cast<std::size_t>(t)] + mu : -kInf;
                }
                std::swap(row, row_prev);
            }
            double acc = -kInf;
            for (int t = 0; t <= T; ++t) acc = log_add(acc, row_prev[static_cast<std::size_t>(t)]);
            QuenchedMomentReport rep;
            rep.N = N;
            rep.lambda_n = acc / static_cast<double>(N);
            rep.method = "dp";
            rep.environment_seed = env.seed;
            rep.functional_id = functional_id;
            rep.runtime_ms = now_ms() - start;
            return rep;
        }
    }

    // General path: streaming log-sum-exp per cell.
    std::vector<double> prev(static_cast<std::size_t>(T) + 1, -kInf);
    std::vector<double> cur(static_cast<std::size_t>(T) + 1, -kInf);
    prev[0] = 0.0;
    for (int i = 1; i <= N; ++i) {
        std::fill(cur.begin(), cur.end(), -kInf);
        for (int t = i; t <= T; ++t) {
            double acc = -kInf;
            const int nmax = std::min(L, t);
            for (int n = 1; n <= nmax; ++n) {
                const double base = prev[static_cast<std::size_t>(t - n)];
                const double w = lw[static_cast<std::size_t>(n - 1)];
                if (base == -kInf || w == -kInf) continue;
                acc = log_add(acc, base + w + g(t - n, t));
            }
            cur[static_cast<std::size_t>(t)] = acc;
        }
        std::swap(prev, cur);
    }
    double acc = -kInf;
    for (int t = 0; t <= T; ++t) acc = log_add(acc, prev[static_cast<std::size_t>(t)]);
    QuenchedMomentReport rep;
    rep.N = N;
    rep.lambda_n = acc / static_cast<double>(N);
    rep.method = "dp";
    rep.environment_seed = env.seed;
    rep.functional_id = functional_id;
    rep.runtime_ms = now_ms() - start;
    return rep;
}

QuenchedMomentReport lambda_n_enumerate(const Environment& env, const std::vector<double>& rho_d,
                                        const TestFunctional& phi, int N, int tr,
                                        std::size_t budget) {
    const double start = now_ms();
    if (N < 1) throw DomainError("N must be at least 1");
    if (tr < 1) throw DomainError("truncation must be at least 1");
    const int T = env.horizon();
    const int L = static_cast<int>(rho_d.size());
    const std::vector<double> lw = log_weights(rho_d);

    std::size_t leaves = 0;
    double acc = -kInf;
    std::vector<int> steps;
    steps.reserve(static_cast<std::size_t>(N));
    auto rec = [&](auto&& self, int t, double logw) -> void {
        if (static_cast<int>(steps.size()) == N) {
            if (++leaves > budget) throw CapacityError("cut-tuple enumeration exceeded budget");
            std::vector<Word> words;
            words.reserve(static_cast<std::size_t>(N));
            int pos = 0;
            for (int n : steps) {
                words.push_back(truncate_word(
                    Word(env.letters.substr(static_cast<std::size_t>(pos), static_cast<std::size_t>(n))),
                    tr));
                pos += n;
            }
            const EmpiricalProcess R(std::move(words), phi.max_level());
            acc = log_add(acc, logw + static_cast<double>(N) * phi.eval(R));
            return;
        }
        for (int n = 1; n <= L && t + n <= T; ++n) {
            if (lw[static_cast<std::size_t>(n - 1)] == -kInf) continue;
            steps.push_back(n);
            self(self, t + n, logw + lw[static_cast<std::size_t>(n - 1)]);
            steps.pop_back();
        }
    };
    rec(rec, 0, 0.0);

    QuenchedMomentReport rep;
    rep.N = N;
    rep.lambda_n = acc / static_cast<double>(N);
    rep.method = "enumeration";
    rep.environment_seed = env.seed;
    rep.tr = static_cast<double>(tr);
    rep.functional_id = phi.terms.empty() ? "phi" : phi.terms.front().id;
    rep.runtime_ms = now_ms() - start;
    return rep;
}

// ---------------------------------------------------------------------------
// Grid tuple weights
// ---------------------------------------------------------------------------

namespace {

struct BoxGrid {
    double lo = 0.0, hi = 0.0;
    std::vector<double> f;  // values on m+1 uniform nodes

    double node(int i, int m) const { return lo + (hi - lo) * i / m; }

    double interp(double x, int m) const {
        if (x <= lo) return f.front();
        if (x >= hi) return f.back();
        const double r = (x - lo) / (hi - lo) * m;
        const int i = std::min(m - 1, static_cast<int>(r));
        const double t = r - i;
        return f[static_cast<std::size_t>(i)] * (1.0 - t) + f[static_cast<std::size_t>(i) + 1] * t;
    }
};

// Trapezoid of f over [a,b] on the grid, with linear interpolation at the
// partial endpoints.
double trapezoid_partial(const BoxGrid& gbox, int m, double a, double b) {
    a = std::max(a, gbox.lo);
    b = std::min(b, gbox.hi);
    if (b <= a) return 0.0;
    const double step = (gbox.hi - gbox.lo) / m;
    double s = 0.0;
    double x = a, fx = gbox.interp(a, m);
    // advance node by node
    int i = static_cast<int>(std::ceil((a - gbox.lo) / step - 1e-12));
    for (; i <= m; ++i) {
        const double xn = gbox.node(i, m);
        if (xn <= a + 1e-15 * (gbox.hi - gbox.lo)) continue;
        const double xe = std::min(xn, b);
        const double fe = (xe == xn) ? gbox.f[static_cast<std::size_t>(i)] : gbox.interp(xe, m);
        s += 0.5 * (fx + fe) * (xe - x);
        x = xe;
        fx = fe;
        if (xe >= b) break;
    }
    if (x < b) s += 0.5 * (fx + gbox.interp(b, m)) * (b - x);
    return s;
}

double tuple_weight_once(const LengthLaw& law, double h, const std::vector<int>& js, int m) {
    const double s_star = law.s_star();
    std::vector<BoxGrid> grids(js.size());
    for (std::size_t k = 0; k < js.size(); ++k) {
        grids[k].lo = (js[k] - 1) * h;
        grids[k].hi = js[k] * h;
        grids[k].f.assign(static_cast<std::size_t>(m) + 1, 0.0);
    }
    for (int i = 0; i <= m; ++i) {
        const double t = grids[0].node(i, m);
        grids[0].f[static_cast<std::size_t>(i)] = t > 0.0 ? law.density(t) : 0.0;
    }
    for (std::size_t k = 1; k < js.size(); ++k) {
        for (int i = 0; i <= m; ++i) {
            const double t = grids[k].node(i, m);
            // s ranges over box_{k-1} with s < t and t - s >= s_*.
            const double upper = std::min(grids[k - 1].hi, t - s_star);
            if (upper <= grids[k - 1].lo) {
                grids[k].f[static_cast<std::size_t>(i)] = 0.0;
                continue;
            }
            // integrand f_{k-1}(s) * rho(t-s) sampled on the previous grid
            BoxGrid integrand;
            integrand.lo = grids[k - 1].lo;
            integrand.hi = grids[k - 1].hi;
            integrand.f.resize(static_cast<std::size_t>(m) + 1);
            for (int j = 0; j <= m; ++j) {
                const double s = grids[k - 1].node(j, m);
                const double x = t - s;
                integrand.f[static_cast<std::size_t>(j)] =
                    (x >= s_star) ? grids[k - 1].f[static_cast<std::size_t>(j)] * law.density(x) : 0.0;
            }
            grids[k].f[static_cast<std::size_t>(i)] = trapezoid_partial(integrand, m, integrand.lo, upper);
        }
    }
    const auto& last = grids.back();
    double w = 0.0;
    const double step = (last.hi - last.lo) / m;
    for (int i = 0; i < m; ++i)
        w += 0.5 * (last.f[static_cast<std::size_t>(i)] + last.f[static_cast<std::size_t>(i) + 1]) * step;
    return w;
}

}  // namespace

GridTupleWeight grid_tuple_weight(const LengthLaw& law, double h, const std::vector<int>& j_tuple,
                                  double rel_tol) {
    if (!law.has_density()) throw ConfigError("grid tuple weights need a density-kind law");
    if (h <= 0.0) throw DomainError("mesh must be positive");
    if (j_tuple.empty() || j_tuple.size() > 8)
        throw CapacityError("tuple length must be between 1 and 8");
    for (std::size_t k = 0; k < j_tuple.size(); ++k) {
        if (j_tuple[k] < 1) throw DomainError("grid indices start at 1");
        if (k > 0 && j_tuple[k] < j_tuple[k - 1])
            throw DomainError("grid indices must be nondecreasing");
    }
    GridTupleWeight out;
    out.coarse_product = 1.0;
    int prev = 0;
    for (int j : j_tuple) {
        out.coarse_product *= law.integral((j - prev - 1) * h, (j - prev) * h);
        prev = j;
    }
    double last = -1.0;
    for (int m = 64; m <= 4096; m *= 2) {
        const double w = tuple_weight_once(law, h, j_tuple, m);
        if (last >= 0.0) {
            const double denom = std::max(std::fabs(w), 1e-300);
            out.achieved_tol = std::fabs(w - last) / denom;
            if (out.achieved_tol <= rel_tol || (w == 0.0 && last == 0.0)) {
                out.weight = w;
                return out;
            }
        }
        last = w;
    }
    out.weight = last;
    if (out.achieved_tol > rel_tol && out.weight > 1e-12)
        throw CapacityError("tuple weight quadrature stalled at relative tolerance " +
                            std::to_string(out.achieved_tol));
    return out;
}

// ---------------------------------------------------------------------------
// Oscillation diagnostic
// ---------------------------------------------------------------------------

namespace {

double sample_interarrival(const LengthLaw& law, Rng& rng) {
    if (law.kind() != LengthKind::pareto)
        throw ConfigError("oscillation diagnostic samples pareto renewal laws");
    const double u = rng.uniform01();
    return law.s_star() * std::pow(1.0 - u, -1.0 / (law.alpha() - 1.0));
}

}  // namespace

double oscillation_xi(const LengthLaw& renewal, double lambda, int k, int n_renewals, double h,
                      int n_draws, int submesh, Rng& rng) {
    if (k < 1) throw DomainError("k must be at least 1");
    if (renewal.s_star() < h)
        throw ConfigError("renewal support must start at or above the block width h");
    // Renewal draws first; the field is generated afterwards, independent of
    // them, out to the largest block index any draw touches.
    std::vector<std::vector<long long>> draws(static_cast<std::size_t>(n_draws));
    long long max_idx = 0;
    for (auto& d : draws) {
        d.resize(static_cast<std::size_t>(n_renewals));
        double t = 0.0;
        for (int i = 0; i < n_renewals; ++i) {
            t += sample_interarrival(renewal, rng);
            d[static_cast<std::size_t>(i)] = static_cast<long long>(std::ceil(t / h));
            max_idx = std::max(max_idx, d[static_cast<std::size_t>(i)]);
        }
    }
    const long long blocks = max_idx + k;
    std::vector<double> field(static_cast<std::size_t>(blocks), 0.0);
    const double sub_sd = std::sqrt(h / submesh);
    for (long long j = 0; j < blocks; ++j) {
        // D_{j,h}: sup over the block of |X_s - X_(right endpoint)|.
        double val = 0.0;
        std::vector<double> level(static_cast<std::size_t>(submesh) + 1);
        level[0] = 0.0;
        for (int s = 0; s < submesh; ++s) {
            val += sub_sd * rng.normal();
            level[static_cast<std::size_t>(s) + 1] = val;
        }
        double d = 0.0;
        for (double lv : level) d = std::max(d, std::fabs(lv - val));
        field[static_cast<std::size_t>(j)] = d;
    }
    double acc = -kInf;
    for (const auto& d : draws) {
        double s = 0.0;
        for (long long idx : d)
            for (int m = 0; m < k; ++m) s += field[static_cast<std::size_t>(idx - 1 + m)];
        acc = log_add(acc, lambda * s);
    }
    acc -= std::log(static_cast<double>(n_draws));
    return acc / static_cast<double>(n_renewals);
}

std::pair<double, double> chi_hat(double u, int n_samples, int submesh, Rng& rng) {
    const double sub_sd = std::sqrt(1.0 / submesh);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        double val = 0.0, sup = 0.0;
        for (int s = 0; s < submesh; ++s) {
            val += sub_sd * rng.normal();
            sup = std::max(sup, std::fabs(val));
        }
        const double x = std::exp(u * sup);
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n_samples;
    const double var = std::max(0.0, sum2 / n_samples - mean * mean);
    return {mean, std::sqrt(var / n_samples)};
}

// ---------------------------------------------------------------------------
// Waiting times
// ---------------------------------------------------------------------------

std::vector<WaitingTimeRow> waiting_time_experiment(const LetterLaw& nu,
                                                    const std::string& pattern_symbolic,
                                                    const std::vector<int>& L_list, int n_seeds,
                                                    Rng& rng) {
    const bool run_pattern = pattern_symbolic.rfind("run:", 0) == 0;
    std::vector<std::pair<int, std::string>> patterns;
    if (run_pattern) {
        if (pattern_symbolic.size() != 5) throw ConfigError("run pattern spec is run:<symbol>");
        const char sym = pattern_symbolic[4];
        for (int L : L_list) patterns.emplace_back(L, std::string(static_cast<std::size_t>(L), sym));
    } else {
        patterns.emplace_back(static_cast<int>(pattern_symbolic.size()), pattern_symbolic);
    }
    std::vector<WaitingTimeRow> rows;
    for (const auto& [L, pat] : patterns) {
        double predicted = 0.0;
        for (char c : pat) {
            const double p = nu.mass(c);
            if (p <= 0.0) throw DomainError("pattern has probability zero under nu");
            predicted += -std::log(p) / L;
        }
        // KMP failure function for O(1) per letter matching.
        std::vector<int> fail(static_cast<std::size_t>(L), 0);
        for (int i = 1; i < L; ++i) {
            int j = fail[static_cast<std::size_t>(i - 1)];
            while (j > 0 && pat[static_cast<std::size_t>(i)] != pat[static_cast<std::size_t>(j)])
                j = fail[static_cast<std::size_t>(j - 1)];
            if (pat[static_cast<std::size_t>(i)] == pat[static_cast<std::size_t>(j)]) ++j;
            fail[static_cast<std::size_t>(i)] = j;
        }
        double mean_ratio = 0.0;
        for (int seed = 0; seed < n_seeds; ++seed) {
            long long pos = 0;
            int state = 0;
            long long start_idx = 0;
            while (true) {
                const char c = rng.sample(nu.pmf);
                ++pos;
                while (state > 0 && c != pat[static_cast<std::size_t>(state)])
                    state = fail[static_cast<std::size_t>(state - 1)];
                if (c == pat[static_cast<std::size_t>(state)]) ++state;
                if (state == L) {
                    start_idx = pos - L + 1;
                    break;
                }
            }
            mean_ratio += std::log(static_cast<double>(start_idx)) / L;
        }
        mean_ratio /= n_seeds;
        rows.push_back(WaitingTimeRow{L, mean_ratio, predicted, n_seeds});
    }
    return rows;
}

std::string brownian_letters(std::size_t n, int bins, Rng& rng) {
    const Alphabet a = Alphabet::of_size(bins);
    std::string out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = rng.normal();
        const double u = 0.5 * std::erfc(-z / 1.4142135623730950488);
        int idx = static_cast<int>(u * bins);
        idx = std::max(0, std::min(bins - 1, idx));
        out.push_back(a.labels[static_cast<std::size_t>(idx)]);
    }
    return out;
}

}  // namespace wordlab
