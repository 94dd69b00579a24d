#include "wordlab/stationary.hpp"

#include <algorithm>
#include <cmath>

namespace wordlab {

const Pmf<std::string>& LetterProcessMarginals::level(int L) const {
    auto it = levels.find(L);
    if (it == levels.end()) throw CapacityError("letter marginal level not materialized");
    return it->second;
}

int LetterProcessMarginals::max_level() const {
    return levels.empty() ? 0 : levels.rbegin()->first;
}

double mean_word_length(const Pmf<Word>& q) {
    double m = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) m += q.mass(i) * q.atom(i).len();
    return m;
}

namespace {

// Non-empty-word restriction used for continuation draws; empty words are
// transparent to the letter stream.
Pmf<Word> nonempty_part(const Pmf<Word>& q) {
    std::vector<std::pair<Word, double>> pairs;
    for (std::size_t i = 0; i < q.size(); ++i)
        if (!q.atom(i).is_empty()) pairs.emplace_back(q.atom(i), q.mass(i));
    if (pairs.empty()) throw DomainError("word law has no letter content");
    auto p = Pmf<Word>::from_pairs_unchecked(std::move(pairs));
    return p.renormalized();
}

// Extends every partial string by independent q-words until `target` base
// letters are reached, accumulating finished strings into `out`.
void extend_frontier(std::map<std::string, double> frontier, const Pmf<Word>& q_ne,
                     std::size_t target, std::size_t budget,
                     std::map<std::string, double>& out) {
    std::size_t work = 0;
    while (!frontier.empty()) {
        std::map<std::string, double> next;
        for (const auto& [s, wgt] : frontier) {
            for (std::size_t i = 0; i < q_ne.size(); ++i) {
                std::string t = s + q_ne.atom(i).letters;
                if (t.size() > target) t.resize(target);
                const double w = wgt * q_ne.mass(i);
                if (t.size() == target)
                    out[t] += w;
                else
                    next[t] += w;
                if (++work > budget)
                    throw CapacityError("psi enumeration exceeded the atom budget");
            }
        }
        frontier = std::move(next);
    }
}

LetterProcessMarginals psi_core(const Pmf<Word>& q, int unit, int L_cap, std::size_t budget) {
    if (L_cap < 1) throw DomainError("level cap must be at least 1");
    if (unit < 1) throw DomainError("letter unit must be at least 1");
    const double m = mean_word_length(q);
    if (m <= 0.0) throw DomainError("psi needs a positive mean word length");
    for (std::size_t i = 0; i < q.size(); ++i)
        if (q.atom(i).len() % unit != 0)
            throw AlignmentError("word length is not a multiple of the letter mesh");
    const Pmf<Word> q_ne = nonempty_part(q);

    LetterProcessMarginals psi;
    psi.unit = unit;
    psi.mean_word_length = m;
    psi.provenance = Provenance::exact;
    for (int L = 1; L <= L_cap; ++L) {
        const std::size_t target = static_cast<std::size_t>(L) * static_cast<std::size_t>(unit);
        std::map<std::string, double> result;
        std::map<std::string, double> frontier;
        // First word with a phase offset; weight q(w) * unit / m per phase.
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Word& w = q.atom(i);
            if (w.is_empty()) continue;
            const double per_phase = q.mass(i) * static_cast<double>(unit) / m;
            for (int o = 0; o < w.len(); o += unit) {
                std::string s = w.letters.substr(static_cast<std::size_t>(o));
                if (s.size() > target) s.resize(target);
                if (s.size() == target)
                    result[s] += per_phase;
                else
                    frontier[s] += per_phase;
            }
        }
        try {
            extend_frontier(std::move(frontier), q_ne, target, budget, result);
        } catch (const CapacityError&) {
            if (psi.levels.empty()) throw;
            psi.capped = true;
            return psi;
        }
        std::vector<std::pair<std::string, double>> pairs(result.begin(), result.end());
        psi.levels.emplace(L, Pmf<std::string>::from_pairs(std::move(pairs), 1e-9));
    }
    return psi;
}

}  // namespace

LetterProcessMarginals psi_exact(const Pmf<Word>& q, int L_cap, std::size_t budget) {
    return psi_core(q, 1, L_cap, budget);
}

LetterProcessMarginals psi_coarse(const Pmf<Word>& q_h, int h, int L_cap, std::size_t budget) {
    return psi_core(q_h, h, L_cap, budget);
}

LetterProcessMarginals psi_cesaro(const Pmf<Word>& q, int T, int L_cap, std::size_t budget) {
    if (T < 1) throw DomainError("cesaro horizon must be at least 1");
    const double m = mean_word_length(q);
    if (m <= 0.0) throw DomainError("psi needs a positive mean word length");
    const Pmf<Word> q_ne = nonempty_part(q);

    LetterProcessMarginals psi;
    psi.unit = 1;
    psi.mean_word_length = m;
    psi.provenance = Provenance::cesaro;
    psi.cesaro_T = T;
    for (int L = 1; L <= L_cap; ++L) {
        const std::size_t target = static_cast<std::size_t>(L);
        std::map<std::string, double> result;
        for (int s = 0; s < T; ++s) {
            // Law of letters [s, s+L) of kappa(Y), Y ~ q^{(x)N}: burn `s`
            // letters, then collect L.
            std::map<std::pair<int, std::string>, double> frontier;
            frontier[{s, std::string()}] = 1.0 / static_cast<double>(T);
            std::size_t work = 0;
            while (!frontier.empty()) {
                std::map<std::pair<int, std::string>, double> next;
                for (const auto& [key, wgt] : frontier) {
                    const auto& [skip, partial] = key;
                    for (std::size_t i = 0; i < q_ne.size(); ++i) {
                        const std::string& add = q_ne.atom(i).letters;
                        const double w = wgt * q_ne.mass(i);
                        int new_skip = skip;
                        std::string t = partial;
                        std::size_t pos = 0;
                        if (new_skip > 0) {
                            const int used = std::min<int>(new_skip, static_cast<int>(add.size()));
                            new_skip -= used;
                            pos = static_cast<std::size_t>(used);
                        }
                        if (new_skip == 0 && pos < add.size()) {
                            t += add.substr(pos);
                            if (t.size() > target) t.resize(target);
                        }
                        if (new_skip == 0 && t.size() == target)
                            result[t] += w;
                        else
                            next[{new_skip, t}] += w;
                        if (++work > budget)
                            throw CapacityError("cesaro enumeration exceeded the atom budget");
                    }
                }
                frontier = std::move(next);
            }
        }
        std::vector<std::pair<std::string, double>> pairs(result.begin(), result.end());
        psi.levels.emplace(L, Pmf<std::string>::from_pairs(std::move(pairs), 1e-9));
    }
    return psi;
}

LetterProcessMarginals sblock(const Pmf<std::string>& r, int M, int L_cap, std::size_t budget) {
    if (M < 1) throw DomainError("block length must be at least 1");
    std::vector<std::pair<Word, double>> pairs;
    pairs.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (static_cast<int>(r.atom(i).size()) != M)
            throw DomainError("sblock atoms must all have length M");
        pairs.emplace_back(Word(r.atom(i)), r.mass(i));
    }
    // The stationary mean of i.i.d. M-blocks is exactly Psi of the word law
    // that puts r's mass on deterministic length-M words.
    return psi_exact(Pmf<Word>::from_pairs(std::move(pairs), 1e-9), L_cap, budget);
}

Pmf<std::string> iid_level(const LetterLaw& nu, int L) {
    if (L < 1) throw DomainError("level must be at least 1");
    std::vector<std::pair<std::string, double>> pairs;
    pairs.emplace_back(std::string(), 1.0);
    for (int j = 0; j < L; ++j) {
        std::vector<std::pair<std::string, double>> next;
        next.reserve(pairs.size() * nu.pmf.size());
        for (const auto& [s, w] : pairs)
            for (std::size_t i = 0; i < nu.pmf.size(); ++i)
                next.emplace_back(s + nu.pmf.atom(i), w * nu.pmf.mass(i));
        pairs = std::move(next);
    }
    return Pmf<std::string>::from_pairs(std::move(pairs), 1e-9);
}

Pmf<char> simulate_letter_frequencies(const Pmf<Word>& q, std::size_t n_letters, Rng& rng) {
    const Pmf<Word> q_ne = nonempty_part(q);
    std::map<char, std::size_t> counts;
    std::size_t produced = 0;
    while (produced < n_letters) {
        const Word& w = rng.sample(q_ne);
        for (char c : w.letters) {
            if (produced >= n_letters) break;
            ++counts[c];
            ++produced;
        }
    }
    std::vector<std::pair<char, double>> pairs;
    for (const auto& [c, k] : counts)
        pairs.emplace_back(c, static_cast<double>(k) / static_cast<double>(n_letters));
    return Pmf<char>::from_pairs(std::move(pairs), 1e-9);
}

}  // namespace wordlab
