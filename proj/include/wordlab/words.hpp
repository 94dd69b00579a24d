#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "wordlab/common.hpp"
#include "wordlab/pmf.hpp"

namespace wordlab {

// -------------------------------------------------------------------------
// Discrete mode: a word is a finite letter string; its length is the letter
// count. The empty word is first-class (coarse-graining produces it).
// -------------------------------------------------------------------------

struct Word {
    std::string letters;

    Word() = default;
    explicit Word(std::string s) : letters(std::move(s)) {}

    int len() const { return static_cast<int>(letters.size()); }
    bool is_empty() const { return letters.empty(); }

    auto operator<=>(const Word&) const = default;

    // CSV token, "length:letters".
    std::string token() const { return std::to_string(len()) + ":" + letters; }
    static Word parse_token(const std::string& tok);
};

using WordTuple = std::vector<Word>;

std::string tuple_token(const WordTuple& t);

struct Environment {
    std::string letters;
    std::uint64_t seed = 0;

    int horizon() const { return static_cast<int>(letters.size()); }
};

// Strictly increasing cut times; doubles carry both real times and integer
// grid indices exactly.
struct CutTimes {
    std::vector<double> times;

    std::size_t count() const { return times.size(); }
    void validate(double horizon) const;
};

std::vector<Word> cut(const Environment& env, const std::vector<int>& cuts);

Word truncate_word(const Word& w, int tr);
Pmf<Word> truncate_law(const Pmf<Word>& q, int tr);

// min{(k+u)h : k integer, (k+u)h >= t}; u = 0 gives the plain grid ceiling.
double ceil_grid(double t, double h, double u = 0.0);
long long ceil_grid_index(double t, double h, double u = 0.0);

// Elementwise grid-rounding of cut times; repeated values are kept and mark
// empty words.
CutTimes coarse_grain_cuts(const CutTimes& cuts, double h, double u = 0.0);

// Chop a word into length-h blocks; throws AlignmentError unless len % h == 0.
std::vector<std::string> letterize(const Word& w, int h);
Word glue(const std::vector<std::string>& letters);

std::string concat(const WordTuple& ys);
std::string shift(const std::string& seq, int s);

// Smoothed truncation on a cyclic window: the endpoint of every word at full
// length tr moves left by u_i letters (u_i in {0,1}); the wrapped window keeps
// its total letter content and total length.
WordTuple smooth_truncate(const WordTuple& words, const std::vector<int>& u, int tr);

// -------------------------------------------------------------------------
// Continuous mode: piecewise-linear paths. Closed under cutting, shifting,
// concatenation and truncation, and all operations are exact on this class.
// -------------------------------------------------------------------------

class PathPL {
  public:
    PathPL();  // the zero path on [0,0]

    // Nodes on the uniform grid {0, h, 2h, ...}; values.front() must be 0.
    static PathPL uniform(double h, const std::vector<double>& values);
    static PathPL from_nodes(std::vector<double> ts, std::vector<double> vs);

    double horizon() const { return ts_.back(); }
    std::size_t node_count() const { return ts_.size(); }
    const std::vector<double>& times() const { return ts_; }
    const std::vector<double>& values() const { return vs_; }

    // Linear interpolation inside, constant extrapolation beyond the horizon.
    double value(double t) const;

    // Re-based restriction to [a,b]: s -> value(a+s) - value(a).
    PathPL segment(double a, double b) const;

    // theta^s f = f(s + .) - f(s).
    PathPL shifted(double s) const { return segment(s, horizon() > s ? horizon() : s); }

    // Freeze after tr.
    PathPL truncated(double tr) const;

    // Append another increment path at the end (concatenation step).
    void append_increments(const PathPL& p);

    double sup_abs_deviation(double a, double b, double anchor_t) const;

    bool operator==(const PathPL& o) const { return ts_ == o.ts_ && vs_ == o.vs_; }

  private:
    std::vector<double> ts_, vs_;
};

struct PathWord {
    double len = 0.0;
    PathPL path;  // horizon == len; constant after its duration by convention

    bool is_empty() const { return len == 0.0; }
};

std::vector<PathWord> cut(const PathPL& env, const CutTimes& cuts);
PathWord truncate_word(const PathWord& w, double tr);
PathPL concat(const std::vector<PathWord>& ys);
std::vector<PathPL> letterize(const PathWord& w, double h);
PathWord glue(const std::vector<PathPL>& letters, double h);

// Continuous smoothed truncation on a cyclic window; u_i in [0,1].
std::vector<PathWord> smooth_truncate(const std::vector<PathWord>& words,
                                      const std::vector<double>& u, double tr);

}  // namespace wordlab
