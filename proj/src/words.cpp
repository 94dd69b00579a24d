#include "wordlab/words.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wordlab {

Word Word::parse_token(const std::string& tok) {
    const auto pos = tok.find(':');
    if (pos == std::string::npos) throw ConfigError("word token lacks ':' separator: " + tok);
    const int n = std::stoi(tok.substr(0, pos));
    std::string letters = tok.substr(pos + 1);
    if (n != static_cast<int>(letters.size()))
        throw ConfigError("word token length mismatch: " + tok);
    return Word(std::move(letters));
}

std::string tuple_token(const WordTuple& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += '|';
        out += t[i].token();
    }
    return out;
}

void CutTimes::validate(double horizon) const {
    double prev = 0.0;
    for (double t : times) {
        if (t <= prev) throw DomainError("cut times must be strictly increasing and positive");
        prev = t;
    }
    if (!times.empty() && times.back() > horizon)
        throw RangeError("cut beyond environment horizon");
}

std::vector<Word> cut(const Environment& env, const std::vector<int>& cuts) {
    std::vector<Word> out;
    out.reserve(cuts.size());
    int prev = 0;
    for (int t : cuts) {
        if (t <= prev) throw DomainError("cut times must be strictly increasing");
        if (t > env.horizon()) throw RangeError("cut beyond environment horizon");
        out.emplace_back(env.letters.substr(static_cast<std::size_t>(prev),
                                            static_cast<std::size_t>(t - prev)));
        prev = t;
    }
    return out;
}

Word truncate_word(const Word& w, int tr) {
    if (tr <= 0) throw DomainError("truncation length must be positive");
    if (w.len() <= tr) return w;
    return Word(w.letters.substr(0, static_cast<std::size_t>(tr)));
}

Pmf<Word> truncate_law(const Pmf<Word>& q, int tr) {
    std::vector<std::pair<Word, double>> pairs;
    pairs.reserve(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        pairs.emplace_back(truncate_word(q.atom(i), tr), q.mass(i));
    return Pmf<Word>::from_pairs_unchecked(std::move(pairs));
}

long long ceil_grid_index(double t, double h, double u) {
    if (h <= 0.0) throw DomainError("grid mesh must be positive");
    if (!(t > 0.0)) throw DomainError("ceil_grid requires t > 0");
    long long k = static_cast<long long>(std::ceil((t - u * h) / h));
    // Fix up against rounding so that k is minimal with (k+u)h >= t.
    while ((static_cast<double>(k) + u) * h < t) ++k;
    while ((static_cast<double>(k - 1) + u) * h >= t) --k;
    return k;
}

double ceil_grid(double t, double h, double u) {
    return (static_cast<double>(ceil_grid_index(t, h, u)) + u) * h;
}

CutTimes coarse_grain_cuts(const CutTimes& cuts, double h, double u) {
    CutTimes out;
    out.times.reserve(cuts.times.size());
    for (double t : cuts.times) out.times.push_back(ceil_grid(t, h, u));
    return out;
}

std::vector<std::string> letterize(const Word& w, int h) {
    if (h <= 0) throw DomainError("letter mesh must be positive");
    if (w.len() % h != 0) throw AlignmentError("word length is not a multiple of the mesh");
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(w.len() / h));
    for (int i = 0; i < w.len(); i += h)
        out.push_back(w.letters.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(h)));
    return out;
}

Word glue(const std::vector<std::string>& letters) {
    std::string s;
    for (const auto& l : letters) s += l;
    return Word(std::move(s));
}

std::string concat(const WordTuple& ys) {
    std::string s;
    for (const auto& w : ys) s += w.letters;
    return s;
}

std::string shift(const std::string& seq, int s) {
    if (s < 0 || s > static_cast<int>(seq.size())) throw RangeError("shift beyond horizon");
    return seq.substr(static_cast<std::size_t>(s));
}

WordTuple smooth_truncate(const WordTuple& words, const std::vector<int>& u, int tr) {
    if (words.empty()) return {};
    if (u.size() != words.size()) throw DomainError("smooth_truncate: one shift per word");
    const int n = static_cast<int>(words.size());
    std::vector<long long> bound(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) {
        if (words[static_cast<std::size_t>(i)].len() > tr)
            throw DomainError("smooth_truncate: input must be hard-truncated first");
        if (u[static_cast<std::size_t>(i)] != 0 && u[static_cast<std::size_t>(i)] != 1)
            throw DomainError("discrete smooth_truncate shifts must be 0 or 1");
        bound[static_cast<std::size_t>(i) + 1] =
            bound[static_cast<std::size_t>(i)] + words[static_cast<std::size_t>(i)].len();
    }
    const long long total = bound[static_cast<std::size_t>(n)];
    if (total == 0) return words;
    const std::string content = concat(words);
    // New endpoint of word i (i = 1..n); boundary 0 wraps and carries word n's shift.
    auto new_bound = [&](int i) -> long long {
        const auto& w = words[static_cast<std::size_t>(i - 1)];
        const long long shift = (w.len() == tr) ? u[static_cast<std::size_t>(i - 1)] : 0;
        return bound[static_cast<std::size_t>(i)] - shift;
    };
    WordTuple out;
    out.reserve(words.size());
    long long prev = new_bound(n) - total;  // boundary 0, expressed left of 0
    for (int i = 1; i <= n; ++i) {
        const long long b = new_bound(i);
        std::string s;
        for (long long p = prev; p < b; ++p) {
            const long long q = ((p % total) + total) % total;
            s += content[static_cast<std::size_t>(q)];
        }
        out.emplace_back(std::move(s));
        prev = b;
    }
    return out;
}

// ---------------------------------------------------------------------------
// PathPL
// ---------------------------------------------------------------------------

PathPL::PathPL() : ts_{0.0}, vs_{0.0} {}

PathPL PathPL::uniform(double h, const std::vector<double>& values) {
    if (h <= 0.0) throw DomainError("mesh must be positive");
    if (values.empty() || values.front() != 0.0)
        throw DomainError("PathPL values must start at 0");
    std::vector<double> ts(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) ts[i] = static_cast<double>(i) * h;
    return from_nodes(std::move(ts), values);
}

PathPL PathPL::from_nodes(std::vector<double> ts, std::vector<double> vs) {
    if (ts.size() != vs.size() || ts.empty()) throw DomainError("PathPL nodes malformed");
    if (ts.front() != 0.0 || vs.front() != 0.0) throw DomainError("PathPL must start at (0,0)");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw DomainError("PathPL node times must increase");
    PathPL p;
    p.ts_ = std::move(ts);
    p.vs_ = std::move(vs);
    return p;
}

double PathPL::value(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= ts_.back()) return vs_.back();
    const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts_.begin());
    const double t0 = ts_[i - 1], t1 = ts_[i];
    const double v0 = vs_[i - 1], v1 = vs_[i];
    if (t == t0) return v0;
    return v0 + (v1 - v0) * ((t - t0) / (t1 - t0));
}

PathPL PathPL::segment(double a, double b) const {
    if (a < 0.0 || b < a) throw DomainError("PathPL segment endpoints out of order");
    const double va = value(a);
    std::vector<double> ts{0.0}, vs{0.0};
    for (std::size_t i = 0; i < ts_.size(); ++i) {
        if (ts_[i] > a && ts_[i] < b) {
            ts.push_back(ts_[i] - a);
            vs.push_back(vs_[i] - va);
        }
    }
    if (b > a) {
        ts.push_back(b - a);
        vs.push_back(value(b) - va);
    }
    return from_nodes(std::move(ts), std::move(vs));
}

PathPL PathPL::truncated(double tr) const {
    if (tr <= 0.0) throw DomainError("truncation length must be positive");
    if (tr >= horizon()) return *this;
    return segment(0.0, tr);
}

void PathPL::append_increments(const PathPL& p) {
    const double t_off = ts_.back(), v_off = vs_.back();
    for (std::size_t i = 1; i < p.ts_.size(); ++i) {
        ts_.push_back(t_off + p.ts_[i]);
        vs_.push_back(v_off + p.vs_[i]);
    }
}

double PathPL::sup_abs_deviation(double a, double b, double anchor_t) const {
    const double ref = value(anchor_t);
    double m = std::max(std::fabs(value(a) - ref), std::fabs(value(b) - ref));
    for (std::size_t i = 0; i < ts_.size(); ++i)
        if (ts_[i] > a && ts_[i] < b) m = std::max(m, std::fabs(vs_[i] - ref));
    return m;
}

std::vector<PathWord> cut(const PathPL& env, const CutTimes& cuts) {
    cuts.validate(env.horizon());
    std::vector<PathWord> out;
    out.reserve(cuts.times.size());
    double prev = 0.0;
    for (double t : cuts.times) {
        out.push_back(PathWord{t - prev, env.segment(prev, t)});
        prev = t;
    }
    return out;
}

PathWord truncate_word(const PathWord& w, double tr) {
    if (w.len <= tr) return w;
    return PathWord{tr, w.path.truncated(tr)};
}

PathPL concat(const std::vector<PathWord>& ys) {
    PathPL out;
    for (const auto& w : ys) {
        if (w.is_empty()) continue;
        out.append_increments(w.path);
    }
    return out;
}

std::vector<PathPL> letterize(const PathWord& w, double h) {
    if (h <= 0.0) throw DomainError("letter mesh must be positive");
    const double n_real = w.len / h;
    const long long n = std::llround(n_real);
    if (n <= 0 || std::fabs(n_real - static_cast<double>(n)) > 1e-9)
        throw AlignmentError("word duration is not a multiple of the mesh");
    std::vector<PathPL> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        out.push_back(w.path.segment(static_cast<double>(i) * h,
                                     static_cast<double>(i + 1) * h));
    return out;
}

PathWord glue(const std::vector<PathPL>& letters, double h) {
    PathPL p;
    for (const auto& l : letters) p.append_increments(l);
    return PathWord{static_cast<double>(letters.size()) * h, p};
}

std::vector<PathWord> smooth_truncate(const std::vector<PathWord>& words,
                                      const std::vector<double>& u, double tr) {
    if (words.empty()) return {};
    if (u.size() != words.size()) throw DomainError("smooth_truncate: one shift per word");
    const int n = static_cast<int>(words.size());
    std::vector<double> bound(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        const auto& w = words[static_cast<std::size_t>(i)];
        if (w.len > tr) throw DomainError("smooth_truncate: input must be hard-truncated first");
        if (u[static_cast<std::size_t>(i)] < 0.0 || u[static_cast<std::size_t>(i)] > 1.0)
            throw DomainError("smooth_truncate shifts must lie in [0,1]");
        bound[static_cast<std::size_t>(i) + 1] = bound[static_cast<std::size_t>(i)] + w.len;
    }
    const double total = bound[static_cast<std::size_t>(n)];
    if (total == 0.0) return words;
    // Cyclic content: the window content followed by itself, so that the
    // wrapped boundary 0 can reach back into the window end.
    PathPL content = concat(words);
    PathPL doubled = content;
    doubled.append_increments(content);
    // New endpoint of word i (i = 1..n); boundary 0 wraps and carries word n's shift.
    auto new_bound = [&](int i) -> double {
        const auto& w = words[static_cast<std::size_t>(i - 1)];
        const double shift = (w.len == tr) ? u[static_cast<std::size_t>(i - 1)] : 0.0;
        return bound[static_cast<std::size_t>(i)] - shift;
    };
    std::vector<PathWord> out;
    out.reserve(words.size());
    // Work in the coordinates of the doubled content: boundary 0 sits at
    // total - shift_n, boundary i at total + new_bound(i).
    double start = new_bound(n);  // == total - shift_n
    for (int i = 1; i <= n; ++i) {
        const double b = new_bound(i) + total;
        out.push_back(PathWord{b - start, doubled.segment(start, b)});
        start = b;
    }
    return out;
}

}  // namespace wordlab
