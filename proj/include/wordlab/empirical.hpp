#pragma once

#include <map>
#include <vector>

#include "wordlab/pmf.hpp"
#include "wordlab/words.hpp"

namespace wordlab {

// Empirical process of words R_N: mass 1/N on each cyclic shift of the
// N-periodized word sequence. Level-l projections are materialized lazily and
// stored as exact counts over N.
class EmpiricalProcess {
  public:
    EmpiricalProcess(std::vector<Word> ys, int ell_cap = 4);

    int sample_size() const { return static_cast<int>(ys_.size()); }
    int level_cap() const { return ell_cap_; }
    const std::vector<Word>& words() const { return ys_; }

    // N-periodization view.
    const Word& periodized(long long i) const;

    // Exact window counts at level ell (each of the N cyclic windows once).
    const std::map<WordTuple, long long>& level_counts(int ell) const;

    // pi_ell R_N as a pmf (masses are multiples of 1/N).
    Pmf<WordTuple> project(int ell) const;
    Pmf<Word> level1() const;

  private:
    std::vector<Word> ys_;
    int ell_cap_;
    mutable std::map<int, std::map<WordTuple, long long>> counts_;
};

EmpiricalProcess empirical_process(std::vector<Word> ys, int ell_cap = 4);
EmpiricalProcess empirical_from_cuts(const Environment& env, const std::vector<int>& cuts,
                                     int ell_cap = 4);

// Product word process q^{(x) N}.
struct ProductProcess {
    Pmf<Word> q;

    Pmf<WordTuple> project(int ell, std::size_t budget = 1u << 22) const;
};

}  // namespace wordlab
