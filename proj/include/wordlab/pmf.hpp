#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wordlab/common.hpp"

namespace wordlab {

// Finite probability mass function over an explicitly enumerated support.
// Atoms are kept unique and canonically sorted (operator< of T); this is the
// carrier used for word laws, projections, letter marginals and coarse-grained
// length laws alike.
template <class T>
class Pmf {
  public:
    Pmf() = default;

    // Aggregates duplicate atoms, sorts, drops exact zeros.
    static Pmf from_pairs(std::vector<std::pair<T, double>> pairs, double sum_tol = 1e-12) {
        std::map<T, double> agg;
        for (auto& [a, m] : pairs) {
            if (m < 0.0 && m > -1e-15) m = 0.0;
            if (m < 0.0) throw DomainError("Pmf: negative mass");
            agg[a] += m;
        }
        Pmf p;
        p.atoms_.reserve(agg.size());
        p.mass_.reserve(agg.size());
        double total = 0.0;
        for (auto& [a, m] : agg) {
            if (m == 0.0) continue;
            p.atoms_.push_back(a);
            p.mass_.push_back(m);
            total += m;
        }
        if (sum_tol > 0 && std::fabs(total - 1.0) > sum_tol) {
            std::ostringstream os;
            os << "Pmf: masses sum to " << total << ", expected 1 within " << sum_tol;
            throw ConfigError(os.str());
        }
        return p;
    }

    // Same but without the normalization check (sub-probability carriers).
    static Pmf from_pairs_unchecked(std::vector<std::pair<T, double>> pairs) {
        return from_pairs(std::move(pairs), -1.0);
    }

    static Pmf delta(const T& atom) { return from_pairs({{atom, 1.0}}); }

    std::size_t size() const { return atoms_.size(); }
    bool empty() const { return atoms_.empty(); }
    const std::vector<T>& atoms() const { return atoms_; }
    const std::vector<double>& masses() const { return mass_; }
    const T& atom(std::size_t i) const { return atoms_[i]; }
    double mass(std::size_t i) const { return mass_[i]; }

    double total_mass() const {
        double s = 0.0;
        for (double m : mass_) s += m;
        return s;
    }

    double mass_of(const T& a) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
        if (it == atoms_.end() || *it < a || a < *it) return 0.0;
        return mass_[static_cast<std::size_t>(it - atoms_.begin())];
    }

    bool contains(const T& a) const { return mass_of(a) > 0.0; }

    double expectation(const std::function<double(const T&)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < size(); ++i) s += mass_[i] * f(atoms_[i]);
        return s;
    }

    Pmf renormalized() const {
        double z = total_mass();
        if (z <= 0.0) throw DomainError("Pmf: cannot renormalize zero mass");
        std::vector<std::pair<T, double>> pairs;
        pairs.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) pairs.emplace_back(atoms_[i], mass_[i] / z);
        return from_pairs(std::move(pairs));
    }

    template <class U>
    Pmf<U> map(const std::function<U(const T&)>& fn) const {
        std::vector<std::pair<U, double>> pairs;
        pairs.reserve(size());
        for (std::size_t i = 0; i < size(); ++i) pairs.emplace_back(fn(atoms_[i]), mass_[i]);
        return Pmf<U>::from_pairs_unchecked(std::move(pairs));
    }

    bool operator==(const Pmf& o) const { return atoms_ == o.atoms_ && mass_ == o.mass_; }

  private:
    std::vector<T> atoms_;
    std::vector<double> mass_;
};

// 1/2 sum |p - r| over the union support.
template <class T>
double tv_distance(const Pmf<T>& p, const Pmf<T>& r) {
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < r.size()) {
        if (j >= r.size() || (i < p.size() && p.atom(i) < r.atom(j))) {
            s += std::fabs(p.mass(i));
            ++i;
        } else if (i >= p.size() || r.atom(j) < p.atom(i)) {
            s += std::fabs(r.mass(j));
            ++j;
        } else {
            s += std::fabs(p.mass(i) - r.mass(j));
            ++i;
            ++j;
        }
    }
    return 0.5 * s;
}

// Independent product of two pmfs with a pairing function.
template <class T, class U, class V>
Pmf<V> product_pmf(const Pmf<T>& p, const Pmf<U>& q, const std::function<V(const T&, const U&)>& pair) {
    std::vector<std::pair<V, double>> out;
    out.reserve(p.size() * q.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            out.emplace_back(pair(p.atom(i), q.atom(j)), p.mass(i) * q.mass(j));
    return Pmf<V>::from_pairs_unchecked(std::move(out));
}

}  // namespace wordlab
