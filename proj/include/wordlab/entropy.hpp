#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordlab/empirical.hpp"
#include "wordlab/laws.hpp"
#include "wordlab/pmf.hpp"
#include "wordlab/stationary.hpp"

namespace wordlab {

// Atom names used in +inf witnesses.
inline std::string atom_token(const std::string& s) { return s; }
inline std::string atom_token(const Word& w) { return w.token(); }
inline std::string atom_token(const WordTuple& t) { return tuple_token(t); }
inline std::string atom_token(char c) { return std::string(1, c); }
inline std::string atom_token(int n) { return std::to_string(n); }
inline std::string atom_token(double x) { return std::to_string(x); }

// Relative entropy in nats; +inf carries a witness atom outside supp(ref).
struct EntropyValue {
    double nats = 0.0;
    std::optional<std::string> witness;

    bool infinite() const { return nats == kInf; }
};

template <class T>
EntropyValue rel_entropy_w(const Pmf<T>& mu, const Pmf<T>& nu) {
    EntropyValue out;
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double p = mu.mass(i);
        if (p == 0.0) continue;
        const double q = nu.mass_of(mu.atom(i));
        if (q == 0.0) {
            out.nats = kInf;
            out.witness = atom_token(mu.atom(i));
            return out;
        }
        s += p * std::log(p / q);
    }
    out.nats = s;
    return out;
}

template <class T>
double rel_entropy(const Pmf<T>& mu, const Pmf<T>& nu) {
    return rel_entropy_w(mu, nu).nats;
}

// Relative entropy against a reference given by a per-atom mass functional
// (avoids materializing large product references).
template <class T>
EntropyValue rel_entropy_vs(const Pmf<T>& mu, const std::function<double(const T&)>& ref_mass) {
    EntropyValue out;
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double p = mu.mass(i);
        if (p == 0.0) continue;
        const double q = ref_mass(mu.atom(i));
        if (q <= 0.0) {
            out.nats = kInf;
            out.witness = atom_token(mu.atom(i));
            return out;
        }
        s += p * std::log(p / q);
    }
    out.nats = s;
    return out;
}

// int f dmu - log int e^f dnu  <=  h(mu|nu), with equality at f = log dmu/dnu.
template <class T>
double legendre_lb(const Pmf<T>& mu, const Pmf<T>& nu, const std::function<double(const T&)>& f) {
    double mean = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) mean += mu.mass(i) * f(mu.atom(i));
    double z = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) z += nu.mass(i) * std::exp(f(nu.atom(i)));
    return mean - std::log(z);
}

struct InequalityCheck {
    double lhs = 0.0, rhs = 0.0;
    bool holds = false;
};

// mu(A) <= (log 2 + h(mu|nu)) / log(1 + 1/nu(A)).
template <class T>
InequalityCheck entropy_inequality_check(const Pmf<T>& mu, const Pmf<T>& nu,
                                         const std::vector<T>& A) {
    double mu_a = 0.0, nu_a = 0.0;
    for (const T& a : A) {
        mu_a += mu.mass_of(a);
        nu_a += nu.mass_of(a);
    }
    InequalityCheck c;
    c.lhs = mu_a;
    if (nu_a <= 0.0) {
        // h(mu|nu) = +inf whenever mu charges A, so the bound holds trivially.
        c.rhs = kInf;
        c.holds = true;
        return c;
    }
    const double h = rel_entropy(mu, nu);
    c.rhs = (std::log(2.0) + h) / std::log1p(1.0 / nu_a);
    c.holds = c.lhs <= c.rhs + 1e-12;
    return c;
}

// Per-level specific relative entropy table with its running supremum. The
// sup is a certified lower bound of H; for product laws every level is exact.
struct EntropyReport {
    std::map<int, double> per_level;
    double sup_value = 0.0;
    bool monotone = true;
    int cap = 0;
    std::optional<std::string> witness;

    double last() const { return per_level.empty() ? 0.0 : per_level.rbegin()->second; }
};

EntropyReport specific_entropy_words(const ProductProcess& Q, const Pmf<Word>& ref_q, int n_cap);
EntropyReport specific_entropy_words(const EmpiricalProcess& R, const Pmf<Word>& ref_q, int n_cap);

// a_L = (1/L) h(pi_L Psi | nu^{(x)L units}); nu is the base-letter law.
EntropyReport specific_entropy_letters(const LetterProcessMarginals& psi, const LetterLaw& nu,
                                       int L_cap);

// h_{L+M} >= h_L + h_M - tol for the unnormalized level entropies.
std::vector<bool> superadditivity_check(const LetterProcessMarginals& psi, const LetterLaw& nu,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        double tol = 1e-9);

// Reference mass of a letter string under iid nu, possibly in unit-blocks.
double iid_string_mass(const LetterLaw& nu, const std::string& s);

}  // namespace wordlab
