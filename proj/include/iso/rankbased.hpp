#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "iso/graph.hpp"
#include "iso/solutions.hpp"
#include "iso/weights.hpp"

namespace iso {

// Dense GF(2) matrix, rows packed into 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return data_[r * words_ + c / 64] >> (c % 64) & 1; }
    void set(std::size_t r, std::size_t c, bool v = true) {
        auto& w = data_[r * words_ + c / 64];
        std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }

    std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }
    std::size_t words() const { return words_; }

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
};

inline std::size_t gf2_rank(BitMatrix m) {
    std::size_t rank = 0;
    const std::size_t W = m.words();
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && !m.get(piv, c)) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rank) std::swap_ranges(m.row(piv), m.row(piv) + W, m.row(rank));
        const std::uint64_t* pr = m.row(rank);
        for (std::size_t r = rank + 1; r < m.rows(); ++r)
            if (m.get(r, c)) {
                std::uint64_t* rr = m.row(r);
                for (std::size_t k = c / 64; k < W; ++k) rr[k] ^= pr[k];
            }
        ++rank;
    }
    return rank;
}

// Header "<rows> <cols>", then one hex string per row; hex digit i covers
// columns 4i..4i+3 with column 4i as its most significant bit.
inline void write_bit_matrix(std::ostream& out, const BitMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    static const char* hex = "0123456789abcdef";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); c += 4) {
            int d = 0;
            for (std::size_t k = 0; k < 4; ++k) d = d << 1 | (c + k < m.cols() && m.get(r, c + k));
            out << hex[d];
        }
        out << '\n';
    }
}

struct CompatibilityMatrix {
    std::vector<std::vector<Edge>> matchings; // row/column order
    BitMatrix bits;
};

// M ∪ M' is a single cycle through all of X; a doubled edge is a 2-cycle.
inline bool single_cycle(const std::vector<Edge>& m1, const std::vector<Edge>& m2, int max_label) {
    if (m1.empty()) return false;
    std::vector<int> p1(max_label + 1, 0), p2(max_label + 1, 0);
    for (auto [a, b] : m1) p1[a] = b, p1[b] = a;
    for (auto [a, b] : m2) p2[a] = b, p2[b] = a;
    int start = m1[0].first, cur = start;
    std::size_t len = 0;
    do {
        cur = p2[p1[cur]];
        len += 2;
    } while (cur != start);
    return len == 2 * m1.size();
}

inline constexpr int kRankMaxBoundary = 12;

inline CompatibilityMatrix compat_matrix(const VertexSet& x) {
    if (x.size() % 2) throw PreconditionError("compat_matrix: |X| must be even");
    if (static_cast<int>(x.size()) > kRankMaxBoundary) throw SizeRefused("compat_matrix: |X| > 12");
    CompatibilityMatrix cm;
    cm.matchings = perfect_matchings(x);
    const std::size_t N = cm.matchings.size();
    cm.bits = BitMatrix(N, N);
    int mx = x.empty() ? 0 : *std::max_element(x.begin(), x.end());
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (single_cycle(cm.matchings[i], cm.matchings[j], mx)) cm.bits.set(i, j);
    return cm;
}

inline CompatibilityMatrix compat_matrix(int size) {
    VertexSet x;
    for (int i = 1; i <= size; ++i) x.push_back(i);
    return compat_matrix(x);
}

// floor(3^|X| * 2^(|X|/2 - 1)), at least 1
inline BigNat min_solution_bound(std::size_t x) {
    BigNat p3 = boost::multiprecision::pow(BigNat(3), static_cast<unsigned>(x));
    if (x == 0) return 1;
    if (x == 1) return 2; // floor(3 / sqrt 2)
    if (x % 2 == 0) return p3 << (x / 2 - 1);
    BigNat sq = (p3 * p3) << (x - 2);
    return boost::multiprecision::sqrt(sq);
}

struct MinSolutionReport {
    bool precondition = true; // every |Min(c)| <= 1
    std::size_t count = 0;    // |K|, union of the Min sets
    BigNat bound = 0;
    bool holds = true;
    std::size_t configurations = 0;
    std::optional<Configuration> violating; // first configuration with |Min| >= 2
};

// Empirical check of the rank-based bound on the number of minimum-weight compliant sets.
inline MinSolutionReport min_solution_count_check(const Graph& g, const VertexSet& x, const WeightFunction& w) {
    auto table = min_compliant_all(w, Subgraph::whole(g), x);
    MinSolutionReport rep;
    std::vector<EdgeSet> k;
    for (auto& [c, ms] : table) {
        if (ms.sets.empty()) continue;
        ++rep.configurations;
        if (ms.sets.size() > 1 && rep.precondition) {
            rep.precondition = false;
            rep.violating = c;
        }
        k.insert(k.end(), ms.sets.begin(), ms.sets.end());
    }
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    rep.count = k.size();
    rep.bound = min_solution_bound(x.size());
    rep.holds = rep.count <= rep.bound;
    return rep;
}

} // namespace iso
