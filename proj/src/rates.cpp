#include "wordlab/rates.hpp"

#include <algorithm>
#include <cmath>

namespace wordlab {

const char* to_string(RateMode m) {
    switch (m) {
        case RateMode::annealed: return "annealed";
        case RateMode::interior: return "interior";
        case RateMode::alpha_one: return "alpha=1";
        case RateMode::alpha_inf: return "alpha=inf";
        case RateMode::exp_tail: return "exp-tail";
    }
    return "?";
}

const char* to_string(BoundTag t) { return t == BoundTag::exact ? "exact" : "lower-bound"; }

std::optional<Pmf<char>> detect_product_letters(const Pmf<Word>& q, double tol) {
    const double m = mean_word_length(q);
    if (m <= 0.0) return std::nullopt;
    std::map<char, double> freq;
    std::map<int, double> len_pmf;
    for (std::size_t i = 0; i < q.size(); ++i) {
        len_pmf[q.atom(i).len()] += q.mass(i);
        for (char c : q.atom(i).letters) freq[c] += q.mass(i) / m;
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        double pred = len_pmf[q.atom(i).len()];
        for (char c : q.atom(i).letters) pred *= freq[c];
        if (std::fabs(pred - q.mass(i)) > tol) return std::nullopt;
    }
    std::vector<std::pair<char, double>> pairs(freq.begin(), freq.end());
    return Pmf<char>::from_pairs(std::move(pairs), 1e-9);
}

EntropyValue word_rel_entropy(const Pmf<Word>& q, const RefLaw& ref) {
    return rel_entropy_vs<Word>(q, [&](const Word& w) { return ref.mass(w); });
}

EntropyValue word_rel_entropy_truncated(const Pmf<Word>& q_tr, const RefLaw& ref, int tr) {
    return rel_entropy_vs<Word>(q_tr, [&](const Word& w) { return ref.mass_truncated(w, tr); });
}

namespace {

// Psi entropy of q against ref.nu: closed form when the letter part
// factorizes, otherwise the certified level-sup lower bound.
struct PsiEntropy {
    double value = 0.0;
    bool exact = false;
    std::map<int, double> levels;
    std::optional<std::string> witness;
};

PsiEntropy psi_entropy(const Pmf<Word>& q, const LetterLaw& nu, int L_cap, std::size_t budget) {
    PsiEntropy out;
    if (auto tilt = detect_product_letters(q)) {
        const EntropyValue h = rel_entropy_w(*tilt, nu.pmf);
        out.value = h.nats;
        out.exact = true;
        out.witness = h.witness;
        for (int L = 1; L <= std::min(L_cap, 3); ++L) out.levels[L] = h.nats;
        return out;
    }
    const LetterProcessMarginals psi = psi_exact(q, L_cap, budget);
    const EntropyReport rep = specific_entropy_letters(psi, nu, psi.max_level());
    out.value = rep.sup_value;
    out.exact = false;
    out.levels = rep.per_level;
    out.witness = rep.witness;
    return out;
}

int max_word_len(const Pmf<Word>& q) {
    int m = 0;
    for (std::size_t i = 0; i < q.size(); ++i) m = std::max(m, q.atom(i).len());
    return m;
}

}  // namespace

RateBreakdown annealed_rate(const ProductProcess& Q, const RefLaw& ref) {
    RateBreakdown r;
    r.mode = RateMode::annealed;
    r.mean_len = mean_word_length(Q.q);
    const EntropyValue h = word_rel_entropy(Q.q, ref);
    r.h_term = h.nats;
    r.total = h.nats;
    r.witness = h.witness;
    r.tag = BoundTag::exact;
    return r;
}

RateBreakdown annealed_rate(const EmpiricalProcess& R, const RefLaw& ref, int n_cap) {
    RateBreakdown r;
    r.mode = RateMode::annealed;
    EntropyReport rep;
    rep.cap = n_cap;
    for (int n = 1; n <= std::min(n_cap, R.level_cap()); ++n) {
        const Pmf<WordTuple> pn = R.project(n);
        const EntropyValue h = rel_entropy_vs<WordTuple>(pn, [&](const WordTuple& t) {
            double m = 1.0;
            for (const Word& w : t) m *= ref.mass(w);
            return m;
        });
        if (h.infinite()) {
            r.witness = h.witness;
            r.h_term = kInf;
            r.total = kInf;
            return r;
        }
        rep.per_level[n] = h.nats / static_cast<double>(n);
        rep.sup_value = std::max(rep.sup_value, rep.per_level[n]);
    }
    r.h_term = rep.sup_value;
    r.total = rep.sup_value;
    r.tag = BoundTag::lower_bound;  // finite-level sup of the specific entropy
    return r;
}

RateBreakdown quenched_rate(const Pmf<Word>& q, const RefLaw& ref, double alpha, int L_cap,
                            std::size_t budget) {
    if (!(alpha > 1.0) || std::isinf(alpha))
        throw ConfigError("interior quenched rate needs alpha in (1,inf)");
    RateBreakdown r;
    r.mode = RateMode::interior;
    r.alpha = alpha;
    r.mean_len = mean_word_length(q);
    const EntropyValue h = word_rel_entropy(q, ref);
    r.h_term = h.nats;
    if (h.infinite()) {
        r.total = kInf;
        r.witness = h.witness;
        return r;
    }
    const PsiEntropy psi = psi_entropy(q, ref.nu, L_cap, budget);
    r.psi_per_letter = psi.value;
    r.psi_levels = psi.levels;
    r.tag = psi.exact ? BoundTag::exact : BoundTag::lower_bound;
    if (psi.value == kInf) {
        r.total = kInf;
        r.witness = psi.witness;
        return r;
    }
    r.total = r.h_term + (alpha - 1.0) * r.mean_len * psi.value;
    return r;
}

RateBreakdown truncated_rate(const Pmf<Word>& q, const RefLaw& ref, double alpha, int tr,
                             int L_cap, std::size_t budget) {
    if (tr < 1) throw DomainError("truncation must be at least 1");
    const Pmf<Word> qtr = truncate_law(q, tr);
    RateBreakdown r;
    r.mode = RateMode::interior;
    r.alpha = alpha;
    r.tr = static_cast<double>(tr);
    r.mean_len = mean_word_length(qtr);
    const EntropyValue h = word_rel_entropy_truncated(qtr, ref, tr);
    r.h_term = h.nats;
    if (h.infinite()) {
        r.total = kInf;
        r.witness = h.witness;
        return r;
    }
    const PsiEntropy psi = psi_entropy(qtr, ref.nu, L_cap, budget);
    r.psi_per_letter = psi.value;
    r.psi_levels = psi.levels;
    r.tag = psi.exact ? BoundTag::exact : BoundTag::lower_bound;
    if (psi.value == kInf) {
        r.total = kInf;
        r.witness = psi.witness;
        return r;
    }
    r.total = r.h_term + (alpha - 1.0) * r.mean_len * psi.value;
    return r;
}

RateBreakdown boundary_rate(const Pmf<Word>& q, const RefLaw& ref, RateMode mode, int L_cap,
                            double tol, std::size_t budget) {
    RateBreakdown r;
    r.mode = mode;
    r.mean_len = mean_word_length(q);
    const EntropyValue h = word_rel_entropy(q, ref);
    r.h_term = h.nats;
    r.witness = h.witness;
    if (mode == RateMode::alpha_one) {
        r.alpha = 1.0;
        r.total = h.nats;
        r.tag = BoundTag::exact;
        return r;
    }
    if (mode != RateMode::alpha_inf)
        throw ConfigError("boundary_rate handles alpha=1 and alpha=inf");
    r.alpha = kInf;
    if (h.infinite()) {
        r.total = kInf;
        return r;
    }
    // tr-indexed sequence m_tr * H(Psi_tr); the decision reads its last value.
    const int top = max_word_len(q);
    for (int tr = 1; tr <= top; tr = (tr < top && 2 * tr > top) ? top : 2 * tr) {
        const Pmf<Word> qtr = truncate_law(q, tr);
        const PsiEntropy psi = psi_entropy(qtr, ref.nu, L_cap, budget);
        r.tr_diagnostic.emplace_back(static_cast<double>(tr), mean_word_length(qtr) * psi.value);
        if (tr == top) {
            r.psi_per_letter = psi.value;
            r.psi_levels = psi.levels;
            r.tag = psi.exact ? BoundTag::exact : BoundTag::lower_bound;
        }
    }
    const double last = r.tr_diagnostic.back().second;
    r.total = (last <= tol) ? h.nats : kInf;
    return r;
}

RateBreakdown exp_tail_rate(const Pmf<Word>& q, const LengthLaw& rho, const RefLaw& ref,
                            int L_cap, double tol, std::size_t budget) {
    if (!rho.exp_tail())
        throw ConfigError("exp_tail_rate needs an exponentially bounded length law");
    RateBreakdown r;
    r.mode = RateMode::exp_tail;
    r.mean_len = mean_word_length(q);
    const EntropyValue h = word_rel_entropy(q, ref);
    r.h_term = h.nats;
    r.witness = h.witness;
    r.total = (!h.infinite() && rw_membership(q, ref.nu, L_cap, tol, budget)) ? h.nats : kInf;
    r.tag = BoundTag::exact;
    return r;
}

bool rw_membership(const Pmf<Word>& q, const LetterLaw& nu, int L_cap, double tol,
                   std::size_t budget) {
    if (auto tilt = detect_product_letters(q)) {
        bool same = true;
        for (std::size_t i = 0; i < nu.pmf.size() && same; ++i)
            if (std::fabs(tilt->mass_of(nu.pmf.atom(i)) - nu.pmf.mass(i)) > tol) same = false;
        for (std::size_t i = 0; i < tilt->size() && same; ++i)
            if (nu.pmf.mass_of(tilt->atom(i)) == 0.0) same = false;
        if (same) return true;
        // A genuine product tilt away from nu can never be a member.
        return false;
    }
    const LetterProcessMarginals psi = psi_exact(q, L_cap, budget);
    for (int L = 1; L <= psi.max_level(); ++L)
        if (tv_distance(psi.level(L), iid_level(nu, L)) > tol) return false;
    return true;
}

ContractionResult contract_single_word(const Pmf<Word>& q_target, const RefLaw& ref,
                                       double alpha, int L_cap, std::size_t budget) {
    ContractionResult out;
    if (rw_membership(q_target, ref.nu, L_cap, 1e-9, budget)) {
        out.value = word_rel_entropy(q_target, ref).nats;
        out.closed_form = true;
        out.certificate = "closed-form case";
        return out;
    }
    out.value = quenched_rate(q_target, ref, alpha, L_cap, budget).total;
    out.closed_form = false;
    out.certificate = "upper bound - infimum over non-product Q not searched";
    return out;
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

int TestFunctional::max_level() const {
    int m = 1;
    for (const auto& t : terms) m = std::max(m, t.level);
    return m;
}

double TestFunctional::sup_norm() const {
    double m = 0.0;
    for (const auto& t : terms) m = std::max(m, t.sup_norm);
    return m;
}

double TestFunctional::eval(const EmpiricalProcess& R) const {
    if (terms.empty()) throw ConfigError("test functional has no terms");
    double best = kInf;
    for (const auto& t : terms) {
        double v = 0.0;
        const double n = static_cast<double>(R.sample_size());
        for (const auto& [tuple, count] : R.level_counts(t.level))
            v += static_cast<double>(count) / n * t.g(tuple);
        best = std::min(best, v);
    }
    return best;
}

double WordFunctional::eval(const Word& w) const {
    double v = length_part(w.len());
    for (char c : w.letters) {
        auto it = letter_coef.find(c);
        if (it != letter_coef.end()) v += it->second;
    }
    auto it = table.find(w);
    if (it != table.end()) v += it->second;
    return v;
}

double WordFunctional::length_part(int n) const {
    auto it = length_term.find(n);
    return it == length_term.end() ? 0.0 : it->second;
}

WordFunctional WordFunctional::beta_ones(double beta) {
    WordFunctional g;
    g.letter_coef['1'] = beta;
    g.id = "beta_ones";
    return g;
}

WordFunctional WordFunctional::beta_diff(double beta) {
    WordFunctional g;
    g.letter_coef['1'] = beta;
    g.letter_coef['0'] = -beta;
    g.id = "beta_diff";
    return g;
}

WordFunctional WordFunctional::length_only(std::map<int, double> term) {
    WordFunctional g;
    g.length_term = std::move(term);
    g.id = "length_only";
    return g;
}

FunctionalTerm WordFunctional::as_term(double sup_norm, double lipschitz) const {
    FunctionalTerm t;
    t.level = 1;
    WordFunctional copy = *this;
    t.g = [copy](const WordTuple& tuple) { return copy.eval(tuple.front()); };
    t.sup_norm = sup_norm;
    t.lipschitz = lipschitz;
    t.id = id;
    return t;
}

// ---------------------------------------------------------------------------
// Variational transform
// ---------------------------------------------------------------------------

namespace {

double letter_mean(const WordFunctional& g, const std::vector<double>& p,
                   const std::vector<char>& labels) {
    double s = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = g.letter_coef.find(labels[i]);
        if (it != g.letter_coef.end()) s += p[i] * it->second;
    }
    return s;
}

double rel_entropy_simplex(const std::vector<double>& p, const std::vector<double>& base) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (base[i] == 0.0) return kInf;
        s += p[i] * std::log(p[i] / base[i]);
    }
    return s;
}

// log sum_n rho(n) exp(A(n)); the Gibbs value of the length tilt.
double length_gibbs(const std::vector<double>& rho_d, const std::function<double(int)>& A,
                    std::vector<double>* tilt) {
    double mx = -kInf;
    std::vector<double> logs(rho_d.size(), -kInf);
    for (std::size_t i = 0; i < rho_d.size(); ++i) {
        if (rho_d[i] <= 0.0) continue;
        logs[i] = std::log(rho_d[i]) + A(static_cast<int>(i) + 1);
        mx = std::max(mx, logs[i]);
    }
    if (mx == -kInf) throw ConfigError("length law has no mass");
    double z = 0.0;
    for (double l : logs) z += (l == -kInf) ? 0.0 : std::exp(l - mx);
    const double val = mx + std::log(z);
    if (tilt) {
        tilt->assign(rho_d.size(), 0.0);
        for (std::size_t i = 0; i < rho_d.size(); ++i)
            (*tilt)[i] = (logs[i] == -kInf) ? 0.0 : std::exp(logs[i] - val);
    }
    return val;
}

}  // namespace

VariationalResult lambda_variational(const WordFunctional& g, const std::vector<double>& rho_d,
                                     const LetterLaw& nu, double alpha, LambdaMode mode,
                                     int letter_grid, int refine_rounds) {
    if (!g.letter_linear())
        throw CapacityError("variational search supports letter-linear functionals");
    VariationalResult out;
    const auto& labels = nu.alphabet.labels;
    std::vector<double> base(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) base[i] = nu.mass(labels[i]);

    // Objective at letter law p: Gibbs length tilt of
    //   A(n) = d(n) + n*(cbar(p) - psi_coef * h(p|nu)),
    // where psi_coef = 0 (annealed / membership-constrained) or alpha in the
    // interior mode (one h(p|nu) from the word entropy, alpha-1 from the psi
    // penalty).
    auto objective = [&](const std::vector<double>& p, double psi_coef,
                         std::vector<double>* tilt) {
        const double cbar = letter_mean(g, p, labels);
        const double hp = rel_entropy_simplex(p, base);
        if (hp == kInf) return -kInf;
        return length_gibbs(
            rho_d, [&](int n) { return g.length_part(n) + n * (cbar - psi_coef * hp); }, tilt);
    };

    auto finish = [&](const std::vector<double>& p, double value, bool certified,
                      const std::string& note) {
        std::vector<double> tilt;
        const double psi_coef = (mode == LambdaMode::quenched_interior) ? alpha : 0.0;
        objective(p, psi_coef, &tilt);
        std::vector<std::pair<char, double>> lp;
        for (std::size_t i = 0; i < labels.size(); ++i) lp.emplace_back(labels[i], p[i]);
        out.letter_opt = Pmf<char>::from_pairs(std::move(lp), 1e-9);
        std::vector<std::pair<int, double>> np;
        for (std::size_t i = 0; i < tilt.size(); ++i)
            if (tilt[i] > 0.0) np.emplace_back(static_cast<int>(i) + 1, tilt[i]);
        out.length_opt = Pmf<int>::from_pairs(std::move(np), 1e-9);
        out.value = value;
        out.certified = certified;
        out.note = note;
        return out;
    };

    if (mode == LambdaMode::annealed) {
        // Exact: log int e^g dq = log sum_n rho(n) e^{d(n)} (sum_c nu(c) e^{coef(c)})^n.
        std::vector<double> p(base.size());
        double zl = 0.0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto it = g.letter_coef.find(labels[i]);
            const double c = it == g.letter_coef.end() ? 0.0 : it->second;
            p[i] = base[i] * std::exp(c);
            zl += p[i];
        }
        for (double& x : p) x /= zl;
        const double value = length_gibbs(
            rho_d, [&](int n) { return g.length_part(n) + n * std::log(zl); }, nullptr);
        return finish(p, value, true, "gibbs-exact");
    }

    if (mode == LambdaMode::quenched_exp_tail) {
        const double value = objective(base, 0.0, nullptr);
        return finish(base, value, true, "membership-constrained product family");
    }

    if (!(alpha > 1.0) || std::isinf(alpha))
        throw ConfigError("interior variational mode needs alpha in (1,inf)");
    // Interior mode: search the letter simplex. Seed with a 1-d sweep along
    // the functional's tilt direction, then refine by pairwise mass transfers.
    const double psi_coef = alpha;
    std::vector<double> best_p = base;
    double best_v = objective(base, psi_coef, nullptr);
    for (int i = 0; i < letter_grid; ++i) {
        const double b = -4.0 + 8.0 * static_cast<double>(i) / (letter_grid - 1);
        std::vector<double> p(base.size());
        double z = 0.0;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            auto it = g.letter_coef.find(labels[j]);
            const double c = it == g.letter_coef.end() ? 0.0 : it->second;
            p[j] = base[j] * std::exp(b * c);
            z += p[j];
        }
        for (double& x : p) x /= z;
        const double v = objective(p, psi_coef, nullptr);
        if (v > best_v) {
            best_v = v;
            best_p = p;
        }
    }
    double step = 0.25;
    bool converged = false;
    for (int round = 0; round < refine_rounds; ++round) {
        bool improved = false;
        for (std::size_t a = 0; a < best_p.size(); ++a) {
            for (std::size_t b = 0; b < best_p.size(); ++b) {
                if (a == b) continue;
                std::vector<double> p = best_p;
                const double d = std::min(step, p[b]);
                if (d <= 0.0) continue;
                p[a] += d;
                p[b] -= d;
                const double v = objective(p, psi_coef, nullptr);
                if (v > best_v + 1e-15) {
                    best_v = v;
                    best_p = p;
                    improved = true;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
            if (step < 1e-12) {
                converged = true;
                break;
            }
        }
    }
    return finish(best_p, best_v, converged, "product-family lower bound");
}

}  // namespace wordlab
