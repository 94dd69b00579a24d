#include "wordlab/skorohod.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wordlab {

TimeChange TimeChange::identity() {
    TimeChange tc;
    tc.id = "identity";
    return tc;
}

TimeChange TimeChange::from_nodes(std::vector<double> s, std::vector<double> ls,
                                  double final_slope) {
    if (s.size() != ls.size()) throw DomainError("time change nodes malformed");
    TimeChange tc;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > tc.s_.back()) || !(ls[i] > tc.l_.back()))
            throw DomainError("time change must be strictly increasing");
        tc.s_.push_back(s[i]);
        tc.l_.push_back(ls[i]);
    }
    if (!(final_slope > 0.0) || !std::isfinite(final_slope))
        throw DomainError("time change needs a positive finite final slope");
    tc.final_slope_ = final_slope;
    return tc;
}

TimeChange TimeChange::single_kink(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("kink coordinates must be positive");
    TimeChange tc = from_nodes({a}, {b}, 1.0);
    tc.id = "kink";
    return tc;
}

double TimeChange::eval(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= s_.back()) return l_.back() + (t - s_.back()) * final_slope_;
    const auto it = std::upper_bound(s_.begin(), s_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - s_.begin());
    const double f = (t - s_[i - 1]) / (s_[i] - s_[i - 1]);
    return l_[i - 1] + f * (l_[i] - l_[i - 1]);
}

double TimeChange::inverse_eval(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= l_.back()) return s_.back() + (y - l_.back()) / final_slope_;
    const auto it = std::upper_bound(l_.begin(), l_.end(), y);
    const std::size_t i = static_cast<std::size_t>(it - l_.begin());
    const double f = (y - l_[i - 1]) / (l_[i] - l_[i - 1]);
    return s_[i - 1] + f * (s_[i] - s_[i - 1]);
}

TimeChange TimeChange::inverse() const {
    TimeChange tc;
    tc.s_ = l_;
    tc.l_ = s_;
    tc.final_slope_ = 1.0 / final_slope_;
    tc.id = id + "^-1";
    return tc;
}

TimeChange TimeChange::compose_after(const TimeChange& inner) const {
    // Kinks of the composition: inner's kinks plus inner-preimages of ours.
    std::set<double> ss(inner.s_.begin(), inner.s_.end());
    for (double s : s_) ss.insert(inner.inverse_eval(s));
    TimeChange tc;
    for (double s : ss) {
        if (s <= 0.0) continue;
        tc.s_.push_back(s);
        tc.l_.push_back(eval(inner.eval(s)));
    }
    tc.final_slope_ = final_slope_ * inner.final_slope_;
    tc.id = id + "o" + inner.id;
    return tc;
}

double TimeChange::gamma() const {
    double g = std::fabs(std::log(final_slope_));
    for (std::size_t i = 1; i < s_.size(); ++i) {
        const double slope = (l_[i] - l_[i - 1]) / (s_[i] - s_[i - 1]);
        if (!(slope > 0.0)) throw DomainError("time change slope must be positive");
        g = std::max(g, std::fabs(std::log(slope)));
    }
    return g;
}

namespace {

// sup_t |p1(t^u) - p2(lambda(t)^u) + offset| evaluated exactly: between the
// candidate t's both arguments are linear, so the max sits on a candidate.
double psi_at(const PathPL& p1, const PathPL& p2, const TimeChange& lam, double offset,
              double u) {
    std::vector<double> cand;
    cand.push_back(0.0);
    cand.push_back(u);
    cand.push_back(lam.inverse_eval(u));
    for (double t : p1.times()) cand.push_back(t);
    for (double y : p2.times()) cand.push_back(lam.inverse_eval(y));
    for (double s : lam.nodes_s()) cand.push_back(s);
    // One point beyond every horizon so the frozen tails are sampled.
    cand.push_back(std::max({u, p1.horizon(), lam.inverse_eval(p2.horizon())}) + 1.0);
    double m = 0.0;
    for (double t : cand) {
        if (t < 0.0) continue;
        const double a = p1.value(std::min(t, u));
        const double b = p2.value(std::min(lam.eval(t), u));
        m = std::max(m, std::fabs(a - b + offset));
    }
    return m;
}

// int_a^b e^{-u} (c0 + c1 u) du in closed form.
double exp_weighted_linear(double a, double b, double c0, double c1) {
    const double ia = std::exp(-a), ib = std::exp(-b);
    return c0 * (ia - ib) + c1 * ((a + 1.0) * ia - (b + 1.0) * ib);
}

double ds_value(const PathPL& p1, const PathPL& p2, const TimeChange& lam, double offset) {
    const double g = lam.gamma();
    // Subdivision points: all path nodes, lambda kinks, and their images both
    // ways. Between consecutive points the integrand sup is a max of linear
    // functions of u, hence convex; the chord gives an exact-or-upper bound.
    std::set<double> pts;
    pts.insert(0.0);
    for (double t : p1.times()) {
        pts.insert(t);
        pts.insert(lam.eval(t));
    }
    for (double y : p2.times()) {
        pts.insert(y);
        pts.insert(lam.inverse_eval(y));
    }
    for (double s : lam.nodes_s()) {
        pts.insert(s);
        pts.insert(lam.eval(s));
    }
    const double u_end =
        std::max({p1.horizon(), p2.horizon(), lam.eval(p1.horizon()),
                  lam.inverse_eval(p2.horizon())});
    pts.insert(u_end);
    double integral = 0.0;
    double prev = 0.0, psi_prev = psi_at(p1, p2, lam, offset, 0.0);
    for (double u : pts) {
        if (u <= prev || u > u_end) continue;
        const double psi_u = psi_at(p1, p2, lam, offset, u);
        // Chord of the convex piece.
        const double c1 = (psi_u - psi_prev) / (u - prev);
        const double c0 = psi_prev - c1 * prev;
        integral += exp_weighted_linear(prev, u, c0, c1);
        prev = u;
        psi_prev = psi_u;
    }
    // Constant tail beyond the last event.
    integral += std::exp(-u_end) * psi_at(p1, p2, lam, offset, u_end);
    return std::max(g, integral);
}

}  // namespace

DsResult ds_upper(const PathPL& p1, const PathPL& p2, const std::vector<TimeChange>& extra,
                  double offset) {
    std::vector<TimeChange> family;
    family.push_back(TimeChange::identity());
    if (p1.horizon() > 0.0 && p2.horizon() > 0.0 && p1.horizon() != p2.horizon()) {
        TimeChange k = TimeChange::single_kink(p1.horizon(), p2.horizon());
        k.id = "horizon-kink";
        family.push_back(k);
    }
    for (const auto& tc : extra) family.push_back(tc);
    const std::size_t base = family.size();
    for (std::size_t i = 0; i < base; ++i) family.push_back(family[i].inverse());

    DsResult best;
    best.value = kInf;
    for (const auto& lam : family) {
        const double v = ds_value(p1, p2, lam, offset);
        if (v < best.value) {
            best.value = v;
            best.lambda_id = lam.id;
        }
    }
    return best;
}

double d_f_upper(const PathWord& y1, const PathWord& y2, const std::vector<TimeChange>& extra) {
    return std::fabs(y1.len - y2.len) + ds_upper(y1.path, y2.path, extra).value;
}

BoundCheck ds_bound_check(const PathPL& phi, int i, int j, double t, double t_prime, double h,
                          int k, std::optional<double> tr) {
    if (!(i >= 1 && j >= i && k >= 1)) throw DomainError("ds_bound_check needs 1 <= i <= j, k >= 1");
    if (!((i - 1) * h < t && t <= i * h)) throw DomainError("t must lie in ((i-1)h, ih]");
    if (!((j - 1) * h < t_prime && t_prime <= j * h))
        throw DomainError("t' must lie in ((j-1)h, jh]");
    if (!(t < t_prime)) throw DomainError("t < t' required");
    if (phi.horizon() < std::max(static_cast<double>(j) * h, static_cast<double>(i + k) * h))
        throw DomainError("path horizon too short for the oscillation windows");

    PathPL p1 = phi.segment(i * h, j * h);
    PathPL p2 = phi.segment(t, t_prime);
    const double offset = phi.value(i * h) - phi.value(t);
    if (tr) {
        p1 = p1.truncated(*tr);
        p2 = p2.truncated(*tr);
    }

    std::vector<TimeChange> extra;
    // The explicit two-piece candidate: slope ((i+k)h - t) / (kh) up to kh,
    // slope 1 afterwards, so that lambda(s) + t = s + ih for s >= kh.
    const double kink_val = (i + k) * h - t;
    if (kink_val > 0.0) {
        TimeChange lemma = TimeChange::from_nodes({k * h}, {kink_val}, 1.0);
        lemma.id = "two-piece";
        extra.push_back(lemma);
    }

    BoundCheck out;
    out.lhs = ds_upper(p1, p2, extra, offset).value;
    const double osc_i = phi.sup_abs_deviation((i - 1) * h, (i + k) * h, (i - 1) * h);
    const double osc_j = phi.sup_abs_deviation((j - 1) * h, j * h, (j - 1) * h);
    out.rhs = std::log(static_cast<double>(k + 1) / k) + 2.0 * osc_i;
    if (!(tr && (j - 1) * h > *tr)) out.rhs += 2.0 * osc_j;
    out.holds = out.lhs <= out.rhs + 1e-9;
    return out;
}

double empirical_tuple_mean(const std::vector<PathWord>& words, int ell,
                            const std::function<double(const std::vector<PathWord>&)>& g) {
    if (words.empty()) throw DomainError("empty word tuple");
    const int n = static_cast<int>(words.size());
    double s = 0.0;
    for (int start = 0; start < n; ++start) {
        std::vector<PathWord> window;
        window.reserve(static_cast<std::size_t>(ell));
        for (int j = 0; j < ell; ++j)
            window.push_back(words[static_cast<std::size_t>((start + j) % n)]);
        s += g(window);
    }
    return s / n;
}

}  // namespace wordlab
