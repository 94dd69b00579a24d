#include "wordlab/empirical.hpp"

#include <cmath>

namespace wordlab {

EmpiricalProcess::EmpiricalProcess(std::vector<Word> ys, int ell_cap)
    : ys_(std::move(ys)), ell_cap_(ell_cap) {
    if (ys_.empty()) throw DomainError("empirical process needs at least one word");
    if (ell_cap_ < 1) throw DomainError("level cap must be at least 1");
}

const Word& EmpiricalProcess::periodized(long long i) const {
    const long long n = static_cast<long long>(ys_.size());
    return ys_[static_cast<std::size_t>(((i % n) + n) % n)];
}

const std::map<WordTuple, long long>& EmpiricalProcess::level_counts(int ell) const {
    if (ell < 1 || ell > ell_cap_) throw CapacityError("level beyond the materialization cap");
    auto it = counts_.find(ell);
    if (it != counts_.end()) return it->second;
    std::map<WordTuple, long long> c;
    const int n = sample_size();
    for (int s = 0; s < n; ++s) {
        WordTuple window;
        window.reserve(static_cast<std::size_t>(ell));
        for (int j = 0; j < ell; ++j) window.push_back(periodized(s + j));
        ++c[window];
    }
    return counts_.emplace(ell, std::move(c)).first->second;
}

Pmf<WordTuple> EmpiricalProcess::project(int ell) const {
    const auto& c = level_counts(ell);
    const double n = static_cast<double>(sample_size());
    std::vector<std::pair<WordTuple, double>> pairs;
    pairs.reserve(c.size());
    for (const auto& [tuple, count] : c)
        pairs.emplace_back(tuple, static_cast<double>(count) / n);
    return Pmf<WordTuple>::from_pairs(std::move(pairs));
}

Pmf<Word> EmpiricalProcess::level1() const {
    return project(1).map<Word>([](const WordTuple& t) { return t.front(); });
}

EmpiricalProcess empirical_process(std::vector<Word> ys, int ell_cap) {
    return EmpiricalProcess(std::move(ys), ell_cap);
}

EmpiricalProcess empirical_from_cuts(const Environment& env, const std::vector<int>& cuts,
                                     int ell_cap) {
    return EmpiricalProcess(cut(env, cuts), ell_cap);
}

Pmf<WordTuple> ProductProcess::project(int ell, std::size_t budget) const {
    if (ell < 1) throw DomainError("projection level must be at least 1");
    double size = 1.0;
    for (int j = 0; j < ell; ++j) {
        size *= static_cast<double>(q.size());
        if (size > static_cast<double>(budget))
            throw CapacityError("product projection exceeds the enumeration budget");
    }
    std::vector<std::pair<WordTuple, double>> pairs;
    pairs.emplace_back(WordTuple{}, 1.0);
    for (int j = 0; j < ell; ++j) {
        std::vector<std::pair<WordTuple, double>> next;
        next.reserve(pairs.size() * q.size());
        for (const auto& [tuple, w] : pairs) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                WordTuple t = tuple;
                t.push_back(q.atom(i));
                next.emplace_back(std::move(t), w * q.mass(i));
            }
        }
        pairs = std::move(next);
    }
    return Pmf<WordTuple>::from_pairs_unchecked(std::move(pairs));
}

}  // namespace wordlab
