#include "wordlab/entropy.hpp"

#include <cmath>

namespace wordlab {

double iid_string_mass(const LetterLaw& nu, const std::string& s) {
    double m = 1.0;
    for (char c : s) m *= nu.mass(c);
    return m;
}

namespace {

void finalize(EntropyReport& r) {
    r.sup_value = 0.0;
    r.monotone = true;
    double prev = -kInf;
    bool first = true;
    for (const auto& [lvl, v] : r.per_level) {
        r.sup_value = std::max(r.sup_value, v);
        if (!first && v < prev - 1e-12) r.monotone = false;
        prev = v;
        first = false;
    }
}

}  // namespace

EntropyReport specific_entropy_words(const ProductProcess& Q, const Pmf<Word>& ref_q, int n_cap) {
    EntropyReport rep;
    rep.cap = n_cap;
    // Product collapse: (1/N) h(q^{(x)N} | ref^{(x)N}) = h(q | ref) at every N.
    const EntropyValue h = rel_entropy_w(Q.q, ref_q);
    rep.witness = h.witness;
    for (int n = 1; n <= n_cap; ++n) rep.per_level[n] = h.nats;
    finalize(rep);
    return rep;
}

EntropyReport specific_entropy_words(const EmpiricalProcess& R, const Pmf<Word>& ref_q,
                                     int n_cap) {
    EntropyReport rep;
    rep.cap = n_cap;
    for (int n = 1; n <= std::min(n_cap, R.level_cap()); ++n) {
        const Pmf<WordTuple> pn = R.project(n);
        const EntropyValue h = rel_entropy_vs<WordTuple>(pn, [&](const WordTuple& t) {
            double m = 1.0;
            for (const Word& w : t) m *= ref_q.mass_of(w);
            return m;
        });
        if (h.infinite()) {
            rep.per_level[n] = kInf;
            rep.witness = h.witness;
            break;
        }
        rep.per_level[n] = h.nats / static_cast<double>(n);
    }
    finalize(rep);
    if (rep.witness) rep.sup_value = kInf;
    return rep;
}

EntropyReport specific_entropy_letters(const LetterProcessMarginals& psi, const LetterLaw& nu,
                                       int L_cap) {
    EntropyReport rep;
    rep.cap = L_cap;
    for (int L = 1; L <= L_cap; ++L) {
        if (psi.levels.find(L) == psi.levels.end()) {
            if (psi.capped) break;
            throw CapacityError("letter marginal level not materialized");
        }
        const auto& pl = psi.level(L);
        const EntropyValue h = rel_entropy_vs<std::string>(
            pl, [&](const std::string& s) { return iid_string_mass(nu, s); });
        if (h.infinite()) {
            rep.per_level[L] = kInf;
            rep.witness = h.witness;
            break;
        }
        rep.per_level[L] = h.nats / static_cast<double>(L);
    }
    finalize(rep);
    if (rep.witness) rep.sup_value = kInf;
    return rep;
}

std::vector<bool> superadditivity_check(const LetterProcessMarginals& psi, const LetterLaw& nu,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        double tol) {
    auto h_level = [&](int L) {
        return rel_entropy_vs<std::string>(
                   psi.level(L), [&](const std::string& s) { return iid_string_mass(nu, s); })
            .nats;
    };
    std::vector<bool> out;
    out.reserve(pairs.size());
    for (const auto& [L, M] : pairs) {
        const double hl = h_level(L), hm = h_level(M), hlm = h_level(L + M);
        out.push_back(hlm >= hl + hm - tol);
    }
    return out;
}

}  // namespace wordlab
