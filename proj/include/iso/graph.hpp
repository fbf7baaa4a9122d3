#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "iso/error.hpp"

namespace iso {

using Edge = std::pair<int, int>; // u < v
using VertexSet = std::vector<int>; // sorted, 1-based
using EdgeSet = std::vector<int>;   // sorted edge ids, 1-based

// Simple undirected graph on vertices 1..n. Edge ids are positions (from 1)
// in the lexicographically sorted edge list.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n) {
        if (n < 0) throw PreconditionError("graph: negative vertex count");
        for (auto& [u, v] : edges) {
            if (u < 1 || v < 1 || u > n || v > n)
                throw ValidationError("graph: edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            if (u == v) throw ValidationError("graph: self-loop at " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end())
            throw ValidationError("graph: duplicate edge (" + std::to_string(it->first) + "," +
                                  std::to_string(it->second) + ")");
        edges_ = std::move(edges);
        adj_.assign(n + 1, {});
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_.at(id - 1); }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    bool adjacent(int u, int v) const {
        if (u < 1 || v < 1 || u > n_ || v > n_) return false;
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    // 0 if absent
    int edge_id(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
        if (it == edges_.end() || *it != Edge{u, v}) return 0;
        return static_cast<int>(it - edges_.begin()) + 1;
    }

    // bitmask of neighbours, n <= 64, bit v-1 for vertex v
    std::uint64_t nbr_mask(int v) const {
        std::uint64_t m = 0;
        for (int u : adj_.at(v)) m |= std::uint64_t{1} << (u - 1);
        return m;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

// Induced subgraph on `keep` with vertices renumbered 1..|keep| in increasing order.
struct Induced {
    Graph graph;
    std::vector<int> to_parent;   // local -> original, index 0 unused
};

inline Induced induced_subgraph(const Graph& g, const VertexSet& keep) {
    std::vector<int> local(g.n() + 1, 0);
    Induced r;
    r.to_parent.push_back(0);
    for (int v : keep) {
        local.at(v) = static_cast<int>(r.to_parent.size());
        r.to_parent.push_back(v);
    }
    std::vector<Edge> es;
    for (auto [u, v] : g.edges())
        if (local[u] && local[v]) es.emplace_back(local[u], local[v]);
    r.graph = Graph(static_cast<int>(keep.size()), std::move(es));
    return r;
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm /* perm[v] = new label, index 0 unused */) {
    std::vector<Edge> es;
    for (auto [u, v] : g.edges()) es.emplace_back(perm.at(u), perm.at(v));
    return Graph(g.n(), std::move(es));
}

// Connected components of G restricted to `alive` (bitmask form, n <= 64).
inline std::vector<std::uint64_t> components_mask(const std::vector<std::uint64_t>& nbr, std::uint64_t alive) {
    std::vector<std::uint64_t> out;
    while (alive) {
        std::uint64_t comp = alive & (~alive + 1), frontier = comp;
        while (frontier) {
            int v = __builtin_ctzll(frontier);
            frontier &= frontier - 1;
            std::uint64_t nx = nbr[v] & alive & ~comp;
            comp |= nx;
            frontier |= nx;
        }
        out.push_back(comp);
        alive &= ~comp;
    }
    return out;
}

// nbr[i] = neighbour mask of vertex i+1
inline std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
    if (g.n() > 64) throw SizeRefused("bitmask routines need n <= 64");
    std::vector<std::uint64_t> nbr(g.n());
    for (int v = 1; v <= g.n(); ++v) nbr[v - 1] = g.nbr_mask(v);
    return nbr;
}

inline std::uint64_t to_mask(const VertexSet& s) {
    std::uint64_t m = 0;
    for (int v : s) m |= std::uint64_t{1} << (v - 1);
    return m;
}

inline VertexSet from_mask(std::uint64_t m) {
    VertexSet s;
    while (m) {
        s.push_back(__builtin_ctzll(m) + 1);
        m &= m - 1;
    }
    return s;
}

inline std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& alive) {
    std::vector<char> in(g.n() + 1, 0), seen(g.n() + 1, 0);
    for (int v : alive) in.at(v) = 1;
    std::vector<VertexSet> out;
    for (int s : alive) {
        if (seen[s]) continue;
        VertexSet comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int u : g.neighbors(comp[i]))
                if (in[u] && !seen[u]) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline VertexSet all_vertices(const Graph& g) {
    VertexSet v(g.n());
    for (int i = 0; i < g.n(); ++i) v[i] = i + 1;
    return v;
}

inline bool is_connected(const Graph& g) {
    return g.n() <= 1 || connected_components(g, all_vertices(g)).size() == 1;
}

// closed neighbourhood N[A]
inline VertexSet closed_neighborhood(const Graph& g, const VertexSet& a) {
    std::vector<char> in(g.n() + 1, 0);
    for (int v : a) {
        in.at(v) = 1;
        for (int u : g.neighbors(v)) in[u] = 1;
    }
    VertexSet r;
    for (int v = 1; v <= g.n(); ++v)
        if (in[v]) r.push_back(v);
    return r;
}

// ---- .gr format ----------------------------------------------------------
// "p gr n m", then m lines "e u v"; lines starting with 'c' are comments.
// Bare "u v" edge lines are accepted as well.

inline Graph parse_graph(std::istream& in) {
    std::string line;
    int ln = 0, n = -1, m = -1;
    std::vector<Edge> es;
    std::vector<std::pair<Edge, int>> seen;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == 'c') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string p, fmt, extra;
            long long nn, mm;
            if (!(ls >> p >> fmt >> nn >> mm) || p != "p" || fmt != "gr" || (ls >> extra) || nn < 0 || mm < 0)
                throw ParseError(ParseErrorKind::malformed_header, ln, "expected 'p gr <n> <m>'");
            n = static_cast<int>(nn);
            m = static_cast<int>(mm);
            continue;
        }
        std::string tok, extra;
        long long u, v;
        ls >> tok;
        if (tok == "e") {
            if (!(ls >> u >> v) || (ls >> extra)) throw ParseError(ParseErrorKind::malformed_line, ln, line);
        } else {
            std::istringstream ls2(line);
            if (!(ls2 >> u >> v) || (ls2 >> extra)) throw ParseError(ParseErrorKind::malformed_line, ln, line);
        }
        if (u < 1 || v < 1 || u > n || v > n)
            throw ParseError(ParseErrorKind::vertex_out_of_range, ln, line);
        if (u == v) throw ParseError(ParseErrorKind::self_loop, ln, line);
        es.emplace_back(static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v)));
        seen.push_back({es.back(), ln});
    }
    if (n < 0) throw ParseError(ParseErrorKind::malformed_header, ln, "missing 'p' line");
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
        if (seen[i].first == seen[i - 1].first)
            throw ParseError(ParseErrorKind::duplicate_edge, seen[i].second,
                             std::to_string(seen[i].first.first) + " " + std::to_string(seen[i].first.second));
    if (static_cast<int>(es.size()) != m)
        throw ParseError(ParseErrorKind::count_mismatch, ln,
                         "header says " + std::to_string(m) + " edges, found " + std::to_string(es.size()));
    return Graph(n, std::move(es));
}

inline Graph parse_graph_string(const std::string& s) {
    std::istringstream in(s);
    return parse_graph(in);
}

inline Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(ParseErrorKind::io, 0, "cannot open " + path);
    return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    out << "p gr " << g.n() << ' ' << g.m() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

inline std::string graph_to_string(const Graph& g) {
    std::ostringstream o;
    write_graph(o, g);
    return o.str();
}

} // namespace iso
