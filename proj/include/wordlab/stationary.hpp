#pragma once

#include <map>
#include <string>

#include "wordlab/laws.hpp"
#include "wordlab/pmf.hpp"
#include "wordlab/rng.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

enum class Provenance { exact, cesaro, simulated };

// Finite-dimensional letter marginals of a stationarized concatenation.
// Level L holds the law of L consecutive letters (strings of L*unit base
// letters when a coarse letter of E_h spans `unit` base letters).
struct LetterProcessMarginals {
    std::map<int, Pmf<std::string>> levels;
    double mean_word_length = 0.0;  // in base letters
    int unit = 1;
    Provenance provenance = Provenance::exact;
    int cesaro_T = 0;
    bool capped = false;  // true when the atom budget stopped level growth

    const Pmf<std::string>& level(int L) const;
    int max_level() const;
};

double mean_word_length(const Pmf<Word>& q);

// Exact level marginals of Psi_Q for the product process Q = q^{(x)N}, by
// phase enumeration: first word with a uniform phase weighted q(w)/m, then
// independent continuation words until the window is covered.
LetterProcessMarginals psi_exact(const Pmf<Word>& q, int L_cap, std::size_t budget = 1000000);

// Cesaro average (1/T) sum_{s<T} of the level marginals of theta^s kappa(Q),
// computed exactly by finite enumeration.
LetterProcessMarginals psi_cesaro(const Pmf<Word>& q, int T, int L_cap,
                                  std::size_t budget = 1000000);

// Psi_{Q,h}: stationarization in units of h base letters. All word lengths
// must be multiples of h. Level L is a pmf over strings of L*h base letters.
LetterProcessMarginals psi_coarse(const Pmf<Word>& q_h, int h, int L_cap,
                                  std::size_t budget = 1000000);

// Stationary mean of the i.i.d. concatenation of M-blocks drawn from r.
LetterProcessMarginals sblock(const Pmf<std::string>& r, int M, int L_cap,
                              std::size_t budget = 1000000);

// nu^{(x)L} materialized.
Pmf<std::string> iid_level(const LetterLaw& nu, int L);

// Monte Carlo oracle: letter frequencies of a long simulated concatenation.
Pmf<char> simulate_letter_frequencies(const Pmf<Word>& q, std::size_t n_letters, Rng& rng);

}  // namespace wordlab
