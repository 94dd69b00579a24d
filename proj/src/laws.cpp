#include "wordlab/laws.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wordlab {

Alphabet Alphabet::of_size(int k) {
    if (k < 2) throw ConfigError("alphabet size must be at least 2");
    if (k > 36) throw ConfigError("alphabet size capped at 36");
    Alphabet a;
    for (int i = 0; i < k; ++i)
        a.labels.push_back(i < 10 ? static_cast<char>('0' + i) : static_cast<char>('a' + i - 10));
    return a;
}

int Alphabet::index_of(char c) const {
    for (int i = 0; i < size(); ++i)
        if (labels[static_cast<std::size_t>(i)] == c) return i;
    throw DomainError(std::string("letter not in alphabet: ") + c);
}

void Alphabet::validate() const {
    if (size() < 2) throw ConfigError("alphabet size must be at least 2");
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ConfigError("alphabet labels must be distinct");
}

LetterLaw LetterLaw::uniform(const Alphabet& a) {
    std::vector<double> m(static_cast<std::size_t>(a.size()), 1.0 / a.size());
    return from_masses(a, m);
}

LetterLaw LetterLaw::from_masses(const Alphabet& a, const std::vector<double>& m) {
    a.validate();
    if (static_cast<int>(m.size()) != a.size())
        throw ConfigError("letter pmf size does not match alphabet");
    std::vector<std::pair<char, double>> pairs;
    for (int i = 0; i < a.size(); ++i)
        pairs.emplace_back(a.labels[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(i)]);
    LetterLaw law;
    law.alphabet = a;
    law.pmf = Pmf<char>::from_pairs(std::move(pairs));
    return law;
}

// ---------------------------------------------------------------------------
// LengthLaw
// ---------------------------------------------------------------------------

namespace {

void check_cap(int l_max) {
    if (l_max < 1) throw ConfigError("L_max must be at least 1");
    if (l_max > 1 << 22) throw ConfigError("L_max too large");
}

double normalize(std::vector<double>& v) {
    double z = 0.0;
    for (double x : v) {
        if (x < 0.0) throw ConfigError("length pmf has negative mass");
        z += x;
    }
    if (z <= 0.0) throw ConfigError("length pmf has zero mass");
    for (double& x : v) x /= z;
    return z;
}

}  // namespace

LengthLaw LengthLaw::pareto(double alpha, double s_star) {
    if (alpha <= 1.0) throw ConfigError("pareto requires alpha > 1");
    if (s_star <= 0.0) throw ConfigError("pareto requires s_* > 0 for a normalizable density");
    LengthLaw l;
    l.kind_ = LengthKind::pareto;
    l.alpha_ = alpha;
    l.s_star_ = s_star;
    l.h_ = 0.0;
    return l;
}

LengthLaw LengthLaw::zipf(double alpha, int l_max) {
    if (alpha <= 1.0) throw ConfigError("zipf requires alpha > 1");
    check_cap(l_max);
    LengthLaw l;
    l.kind_ = LengthKind::zipf;
    l.alpha_ = alpha;
    l.s_star_ = 1.0;
    l.h_ = 1.0;
    l.pmf_.resize(static_cast<std::size_t>(l_max));
    for (int n = 1; n <= l_max; ++n)
        l.pmf_[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), -alpha);
    const double z_cap = [&] {
        double s = 0.0;
        for (double x : l.pmf_) s += x;
        return s;
    }();
    // Uncapped tail, for the truncation report only.
    double tail = 0.0;
    const int probe = std::max(1 << 16, 64 * l_max);
    for (int n = l_max + 1; n <= probe; ++n) tail += std::pow(static_cast<double>(n), -alpha);
    tail += std::pow(static_cast<double>(probe) + 0.5, 1.0 - alpha) / (alpha - 1.0);
    l.tail_mass_ = tail / (z_cap + tail);
    normalize(l.pmf_);
    return l;
}

LengthLaw LengthLaw::zipf_log_corrected(int l_max) {
    check_cap(l_max);
    LengthLaw l;
    l.kind_ = LengthKind::zipf_log_corrected;
    l.alpha_ = 1.0;
    l.s_star_ = 1.0;
    l.h_ = 1.0;
    l.pmf_.resize(static_cast<std::size_t>(l_max));
    auto raw = [](double n) {
        const double lg = std::log(n + 2.718281828459045235);
        return 1.0 / (n * lg * lg);
    };
    for (int n = 1; n <= l_max; ++n) l.pmf_[static_cast<std::size_t>(n - 1)] = raw(n);
    double z_cap = 0.0;
    for (double x : l.pmf_) z_cap += x;
    // Integral tail of 1/(x log^2 x): about 1/log(L+e).
    const double tail = 1.0 / std::log(static_cast<double>(l_max) + 2.718281828459045235);
    l.tail_mass_ = tail / (z_cap + tail);
    normalize(l.pmf_);
    return l;
}

LengthLaw LengthLaw::geometric(double p, int l_max) {
    if (p <= 0.0 || p >= 1.0) throw ConfigError("geometric requires p in (0,1)");
    check_cap(l_max);
    LengthLaw l;
    l.kind_ = LengthKind::geometric;
    l.alpha_ = kInf;
    l.s_star_ = 1.0;
    l.h_ = 1.0;
    l.geom_p_ = p;
    l.pmf_.resize(static_cast<std::size_t>(l_max));
    for (int n = 1; n <= l_max; ++n)
        l.pmf_[static_cast<std::size_t>(n - 1)] = std::pow(1.0 - p, n - 1) * p;
    l.tail_mass_ = std::pow(1.0 - p, l_max);
    normalize(l.pmf_);
    return l;
}

LengthLaw LengthLaw::custom_pmf(std::vector<double> mass, double h) {
    if (h <= 0.0) throw ConfigError("custom_pmf requires h > 0");
    check_cap(static_cast<int>(mass.size()));
    LengthLaw l;
    l.kind_ = LengthKind::custom_pmf;
    l.alpha_ = std::numeric_limits<double>::quiet_NaN();
    l.s_star_ = h;
    l.h_ = h;
    l.pmf_ = std::move(mass);
    l.tail_mass_ = 0.0;
    normalize(l.pmf_);
    return l;
}

LengthLaw LengthLaw::custom_density(std::vector<double> xs, std::vector<double> ds) {
    if (xs.size() != ds.size() || xs.size() < 2)
        throw ConfigError("custom_density needs at least two nodes");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw ConfigError("custom_density nodes must increase");
    for (double d : ds)
        if (d < 0.0) throw ConfigError("custom_density must be nonnegative");
    LengthLaw l;
    l.kind_ = LengthKind::custom_density;
    l.alpha_ = std::numeric_limits<double>::quiet_NaN();
    l.s_star_ = xs.front();
    l.h_ = 0.0;
    l.dens_x_ = std::move(xs);
    l.dens_d_ = std::move(ds);
    // Trapezoid mass must be 1 within tolerance; rescale small drift.
    double z = 0.0;
    for (std::size_t i = 1; i < l.dens_x_.size(); ++i)
        z += 0.5 * (l.dens_d_[i] + l.dens_d_[i - 1]) * (l.dens_x_[i] - l.dens_x_[i - 1]);
    if (std::fabs(z - 1.0) > 1e-6) {
        std::ostringstream os;
        os << "custom_density integrates to " << z << ", expected 1";
        throw ConfigError(os.str());
    }
    for (double& d : l.dens_d_) d /= z;
    return l;
}

bool LengthLaw::is_discrete() const {
    switch (kind_) {
        case LengthKind::pareto:
        case LengthKind::custom_density:
            return false;
        default:
            return true;
    }
}

double LengthLaw::density(double x) const {
    switch (kind_) {
        case LengthKind::pareto:
            if (x < s_star_) return 0.0;
            return (alpha_ - 1.0) * std::pow(s_star_, alpha_ - 1.0) * std::pow(x, -alpha_);
        case LengthKind::custom_density: {
            if (x < dens_x_.front() || x > dens_x_.back()) return 0.0;
            auto it = std::upper_bound(dens_x_.begin(), dens_x_.end(), x);
            if (it == dens_x_.begin()) return dens_d_.front();
            std::size_t i = static_cast<std::size_t>(it - dens_x_.begin());
            if (i >= dens_x_.size()) return dens_d_.back();
            const double t = (x - dens_x_[i - 1]) / (dens_x_[i] - dens_x_[i - 1]);
            return dens_d_[i - 1] + t * (dens_d_[i] - dens_d_[i - 1]);
        }
        default:
            throw ConfigError("density requested from a discrete length law");
    }
}

double LengthLaw::integral(double a, double b) const {
    if (b <= a) return 0.0;
    switch (kind_) {
        case LengthKind::pareto: {
            const double lo = std::max(a, s_star_);
            if (b <= lo) return 0.0;
            const double c = std::pow(s_star_, alpha_ - 1.0);
            return c * (std::pow(lo, 1.0 - alpha_) - std::pow(b, 1.0 - alpha_));
        }
        case LengthKind::custom_density: {
            const double lo = std::max(a, dens_x_.front());
            const double hi = std::min(b, dens_x_.back());
            if (hi <= lo) return 0.0;
            double s = 0.0;
            for (std::size_t i = 1; i < dens_x_.size(); ++i) {
                const double xa = std::max(lo, dens_x_[i - 1]);
                const double xb = std::min(hi, dens_x_[i]);
                if (xb <= xa) continue;
                s += 0.5 * (density(xa) + density(xb)) * (xb - xa);
            }
            return s;
        }
        default:
            throw ConfigError("integral requested from a discrete length law");
    }
}

const std::vector<double>& LengthLaw::pmf() const {
    if (!is_discrete()) throw ConfigError("pmf requested from a continuous length law");
    return pmf_;
}

double LengthLaw::pmf_at(int n) const {
    const auto& p = pmf();
    if (n < 1 || n > static_cast<int>(p.size())) return 0.0;
    return p[static_cast<std::size_t>(n - 1)];
}

double LengthLaw::mean_lengths() const {
    const auto& p = pmf();
    double m = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) m += static_cast<double>(i + 1) * p[i];
    return m;
}

bool LengthLaw::exp_tail() const {
    switch (kind_) {
        case LengthKind::geometric:
        case LengthKind::custom_pmf:
        case LengthKind::zipf:
        case LengthKind::zipf_log_corrected:
            // Finite support: trivially exponentially bounded.
            return true;
        default:
            return false;
    }
}

// ---------------------------------------------------------------------------

Pmf<double> GridWeights::as_pmf() const {
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < w.size(); ++i)
        pairs.emplace_back(static_cast<double>(i + 1) * h, w[i]);
    return Pmf<double>::from_pairs_unchecked(std::move(pairs));
}

double GridWeights::mean_lengths() const {
    double m = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) m += static_cast<double>(i + 1) * h * w[i];
    return m;
}

GridWeights coarse_grain_length_law(const LengthLaw& law, double h, int cap) {
    if (h <= 0.0) throw ConfigError("coarse-graining mesh must be positive");
    check_cap(cap);
    GridWeights g;
    g.h = h;
    g.w.assign(static_cast<std::size_t>(cap), 0.0);
    if (law.has_density()) {
        double covered = 0.0;
        for (int i = 1; i <= cap; ++i) {
            const double wi = law.integral((i - 1) * h, i * h);
            g.w[static_cast<std::size_t>(i - 1)] = wi;
            covered += wi;
        }
        g.tail = std::max(0.0, 1.0 - covered);
        return g;
    }
    // Discrete law on its own mesh: aggregate atoms n*law.h into the new bins.
    const auto& p = law.pmf();
    double covered = 0.0;
    for (int n = 1; n <= static_cast<int>(p.size()); ++n) {
        const double x = static_cast<double>(n) * law.h();
        const long long i = ceil_grid_index(x, h, 0.0);
        if (i >= 1 && i <= cap) {
            g.w[static_cast<std::size_t>(i - 1)] += p[static_cast<std::size_t>(n - 1)];
            covered += p[static_cast<std::size_t>(n - 1)];
        }
    }
    g.tail = std::max(0.0, 1.0 - covered);
    return g;
}

std::vector<std::pair<double, double>> tail_exponent_estimate(const LengthLaw& law,
                                                              const std::vector<double>& xs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        if (x <= 1.0 || x <= law.s_star())
            throw DomainError("tail exponent diagnostic needs x > max(s_*, 1)");
        double logrho;
        if (law.has_density()) {
            const double d = law.density(x);
            logrho = d > 0.0 ? std::log(d) : -kInf;
        } else {
            const int n = static_cast<int>(std::llround(std::ceil(x / law.h())));
            const double m = law.pmf_at(n);
            logrho = m > 0.0 ? std::log(m) : -kInf;
        }
        out.emplace_back(x, logrho / std::log(x));
    }
    return out;
}

double regularity_modulus(const LengthLaw& law, double t, double h) {
    if (!law.has_density()) throw ConfigError("regularity modulus needs a density kind");
    if (t <= law.s_star()) throw DomainError("regularity modulus needs t > s_*");
    if (h <= 0.0) throw DomainError("regularity modulus needs h > 0");
    const double num = law.integral(t, t + h);
    if (num <= 0.0) return kInf;
    auto val = [&](double v) {
        const double den = law.integral(t + v, t + h + v);
        if (den <= 0.0) return kInf;
        return std::fabs(std::log(num / den));
    };
    if (law.kind() == LengthKind::pareto) {
        // Density nonincreasing on the support: the ratio is monotone in v, so
        // the supremum over the open interval is the boundary limit at v = 2h.
        return val(2.0 * h);
    }
    // Tabulated densities: grid search with refinement.
    int grid = 64;
    double best = 0.0, best_v = h;
    for (int round = 0; round < 24; ++round) {
        double lo = std::max(1e-12 * h, best_v - 2.0 * h / grid);
        double hi = std::min(2.0 * h, best_v + 2.0 * h / grid);
        if (round == 0) {
            lo = 2.0 * h / grid * 0.5;
            hi = 2.0 * h;
        }
        double prev_best = best;
        for (int i = 0; i <= grid; ++i) {
            const double v = lo + (hi - lo) * i / grid;
            const double f = val(v);
            if (f > best) {
                best = f;
                best_v = v;
            }
        }
        if (std::isinf(best)) return best;
        if (round > 0 && best - prev_best < 1e-6) break;
    }
    return best;
}

double RefLaw::rho_at(int n) const {
    if (n < 1 || n > l_max()) return 0.0;
    return rho[static_cast<std::size_t>(n - 1)];
}

double RefLaw::rho_tail_from(int n) const {
    double s = 0.0;
    for (int m = std::max(1, n); m <= l_max(); ++m) s += rho[static_cast<std::size_t>(m - 1)];
    return s;
}

double RefLaw::mass(const Word& w) const {
    double m = rho_at(w.len());
    if (m == 0.0) return 0.0;
    for (char c : w.letters) m *= nu.mass(c);
    return m;
}

double RefLaw::mass_truncated(const Word& w, int tr) const {
    if (w.len() < tr) return mass(w);
    if (w.len() > tr) return 0.0;
    // At full truncated length the letters beyond tr integrate out.
    double m = rho_tail_from(tr);
    for (char c : w.letters) m *= nu.mass(c);
    return m;
}

double RefLaw::mean_length() const {
    double m = 0.0;
    for (int n = 1; n <= l_max(); ++n) m += n * rho[static_cast<std::size_t>(n - 1)];
    return m;
}

Pmf<Word> RefLaw::materialize(std::size_t support_budget) const {
    return reference_word_law(rho, nu, support_budget);
}

Pmf<Word> reference_word_law(const std::vector<double>& rho_d, const LetterLaw& nu,
                             std::size_t support_budget) {
    const int l_max = static_cast<int>(rho_d.size());
    // Support size guard before any enumeration.
    double support = 0.0;
    for (int n = 1; n <= l_max; ++n) {
        if (rho_d[static_cast<std::size_t>(n - 1)] <= 0.0) continue;
        support += std::pow(static_cast<double>(nu.alphabet.size()), n);
        if (support > static_cast<double>(support_budget))
            throw ConfigError("reference word law support exceeds the enumeration budget");
    }
    std::vector<std::pair<Word, double>> pairs;
    pairs.reserve(static_cast<std::size_t>(support));
    std::string buf;
    auto rec = [&](auto&& self, int n, double weight) -> void {
        if (static_cast<int>(buf.size()) == n) {
            pairs.emplace_back(Word(buf), weight);
            return;
        }
        for (std::size_t i = 0; i < nu.pmf.size(); ++i) {
            buf.push_back(nu.pmf.atom(i));
            self(self, n, weight * nu.pmf.mass(i));
            buf.pop_back();
        }
    };
    for (int n = 1; n <= l_max; ++n) {
        const double rn = rho_d[static_cast<std::size_t>(n - 1)];
        if (rn <= 0.0) continue;
        buf.clear();
        rec(rec, n, rn);
    }
    return Pmf<Word>::from_pairs_unchecked(std::move(pairs));
}

Pmf<Word> reference_word_law(const LengthLaw& rho, const LetterLaw& nu,
                             std::size_t support_budget) {
    return reference_word_law(rho.pmf(), nu, support_budget);
}

Pmf<int> length_marginal(const Pmf<Word>& q) {
    std::vector<std::pair<int, double>> pairs;
    pairs.reserve(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) pairs.emplace_back(q.atom(i).len(), q.mass(i));
    return Pmf<int>::from_pairs_unchecked(std::move(pairs));
}

}  // namespace wordlab
