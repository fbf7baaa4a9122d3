#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iso/graph.hpp"

namespace iso {

// Rooted forest on 1..n given by parent pointers, 0 marking a root.
class EliminationForest {
public:
    EliminationForest() = default;

    explicit EliminationForest(std::vector<int> parent) : parent_(std::move(parent)) {
        if (parent_.empty()) parent_.push_back(0);
        const int n = this->n();
        parent_[0] = 0;
        level_.assign(n + 1, -1);
        children_.assign(n + 1, {});
        for (int v = 1; v <= n; ++v) {
            int p = parent_[v];
            if (p < 0 || p > n) throw ValidationError("forest: parent of " + std::to_string(v) + " out of range");
            if (p == v) throw ValidationError("forest: " + std::to_string(v) + " is its own parent");
            if (p) children_[p].push_back(v);
        }
        for (int v = 1; v <= n; ++v) {
            // walk up until a vertex with known level; bounded by n steps
            std::vector<int> chain;
            int x = v;
            while (x && level_[x] < 0) {
                chain.push_back(x);
                if (static_cast<int>(chain.size()) > n) throw ValidationError("forest: parent pointers contain a cycle");
                x = parent_[x];
            }
            int base = x ? level_[x] : -1;
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) level_[*it] = ++base;
        }
        for (int v = 1; v <= n; ++v) height_ = std::max(height_, level_[v] + 1);
    }

    int n() const { return static_cast<int>(parent_.size()) - 1; }
    int parent(int v) const { return parent_.at(v); }
    const std::vector<int>& parents() const { return parent_; }
    int level(int v) const { return level_.at(v); }
    int height() const { return height_; }
    const std::vector<int>& children(int v) const { return children_.at(v); }

    VertexSet roots() const {
        VertexSet r;
        for (int v = 1; v <= n(); ++v)
            if (!parent_[v]) r.push_back(v);
        return r;
    }

    // a is an ancestor of v or equal to it
    bool is_ancestor(int a, int v) const {
        while (v && level_[v] > level_[a]) v = parent_[v];
        return v == a;
    }

    // strict ancestors of v
    VertexSet tail(int v) const {
        VertexSet t;
        for (int x = parent_.at(v); x; x = parent_[x]) t.push_back(x);
        std::sort(t.begin(), t.end());
        return t;
    }

    // v and all its descendants
    VertexSet subtree(int v) const {
        VertexSet s{v};
        for (std::size_t i = 0; i < s.size(); ++i)
            for (int c : children_[s[i]]) s.push_back(c);
        std::sort(s.begin(), s.end());
        return s;
    }

    friend bool operator==(const EliminationForest& a, const EliminationForest& b) { return a.parent_ == b.parent_; }

private:
    std::vector<int> parent_{0};
    std::vector<int> level_;
    std::vector<std::vector<int>> children_;
    int height_ = 0;
};

struct ForestViolation : ValidationError {
    Edge witness;
    ForestViolation(Edge e, const std::string& what) : ValidationError(what), witness(e) {}
};

// Returns the height. Every edge must join an ancestor-descendant pair.
inline int validate_elim_forest(const Graph& g, const EliminationForest& f) {
    if (f.n() != g.n()) throw ValidationError("forest has " + std::to_string(f.n()) + " vertices, graph has " + std::to_string(g.n()));
    for (auto e : g.edges()) {
        auto [u, v] = e;
        if (!f.is_ancestor(u, v) && !f.is_ancestor(v, u))
            throw ForestViolation(e, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                         ") joins two vertices in different branches");
    }
    return f.height();
}

inline bool is_elim_forest(const Graph& g, const EliminationForest& f) {
    try {
        validate_elim_forest(g, f);
        return true;
    } catch (const ValidationError&) {
        return false;
    }
}

// ---- .ef format: one "v parent" line per vertex --------------------------

inline EliminationForest parse_forest(std::istream& in) {
    std::string line;
    int ln = 0;
    std::vector<std::pair<int, int>> rows;
    while (std::getline(in, line)) {
        ++ln;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c') continue;
        std::istringstream ls(line);
        long long v, p;
        std::string extra;
        if (!(ls >> v >> p) || (ls >> extra)) throw ParseError(ParseErrorKind::malformed_line, ln, line);
        if (v < 1 || p < 0 || v > 1'000'000 || p > 1'000'000) throw ParseError(ParseErrorKind::vertex_out_of_range, ln, line);
        rows.emplace_back(static_cast<int>(v), static_cast<int>(p));
    }
    const int n = static_cast<int>(rows.size());
    std::vector<int> parent(n + 1, -1);
    for (auto [v, p] : rows) {
        if (v > n || p > n) throw ParseError(ParseErrorKind::vertex_out_of_range, ln, std::to_string(v));
        if (parent[v] != -1) throw ParseError(ParseErrorKind::duplicate_edge, ln, "vertex " + std::to_string(v) + " listed twice");
        parent[v] = p;
    }
    parent[0] = 0;
    return EliminationForest(parent);
}

inline EliminationForest read_forest_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(ParseErrorKind::io, 0, "cannot open " + path);
    return parse_forest(in);
}

inline void write_forest(std::ostream& out, const EliminationForest& f) {
    for (int v = 1; v <= f.n(); ++v) out << v << ' ' << f.parent(v) << '\n';
}

// ---- exact treedepth ---------------------------------------------------

inline constexpr int kTreedepthDefaultBound = 12;

struct TreedepthResult {
    int depth;
    EliminationForest forest;
};

namespace detail {

struct TdSolver {
    std::vector<std::uint64_t> nbr;
    std::vector<std::int8_t> memo, best;

    int connected(std::uint64_t c) {
        if (memo[c] >= 0) return memo[c];
        if ((c & (c - 1)) == 0) {
            best[c] = static_cast<std::int8_t>(__builtin_ctzll(c));
            return memo[c] = 1;
        }
        int bestv = 1 << 20;
        for (std::uint64_t rest = c; rest; rest &= rest - 1) {
            int v = __builtin_ctzll(rest);
            int d = forest(c & ~(std::uint64_t{1} << v));
            if (d < bestv) {
                bestv = d;
                best[c] = static_cast<std::int8_t>(v);
            }
        }
        return memo[c] = static_cast<std::int8_t>(bestv + 1);
    }

    int forest(std::uint64_t mask) {
        int d = 0;
        for (auto c : components_mask(nbr, mask)) d = std::max(d, connected(c));
        return d;
    }

    void build(std::uint64_t mask, int parent, std::vector<int>& out) {
        for (auto c : components_mask(nbr, mask)) {
            connected(c);
            int r = best[c];
            out[r + 1] = parent;
            build(c & ~(std::uint64_t{1} << r), r + 1, out);
        }
    }
};

} // namespace detail

inline TreedepthResult treedepth_exact(const Graph& g, int bound = kTreedepthDefaultBound) {
    if (g.n() > bound) throw SizeRefused("treedepth_exact: n = " + std::to_string(g.n()) + " exceeds bound " + std::to_string(bound));
    if (g.n() > 24) throw SizeRefused("treedepth_exact: subset table limited to n <= 24");
    detail::TdSolver s;
    s.nbr = neighbor_masks(g);
    std::size_t full = (std::size_t{1} << g.n());
    s.memo.assign(full, -1);
    s.best.assign(full, -1);
    std::uint64_t all = full - 1;
    int d = s.forest(all);
    std::vector<int> parent(g.n() + 1, 0);
    s.build(all, 0, parent);
    EliminationForest f(parent);
    if (f.height() != d || !is_elim_forest(g, f)) throw IntegrityError("treedepth_exact: reconstructed forest is inconsistent");
    return {d, f};
}

} // namespace iso
