#pragma once

// Instance generators and brute-force oracles for the test suites. The oracles
// deliberately avoid the library's own search routines.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "iso/iso.hpp"

namespace gen {

using iso::Edge;
using iso::Graph;
using Rng = std::mt19937_64;

inline int uniform(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
inline bool coin(Rng& r, double p) { return std::uniform_real_distribution<double>(0, 1)(r) < p; }

inline Graph path(int n) {
    std::vector<Edge> es;
    for (int i = 1; i < n; ++i) es.emplace_back(i, i + 1);
    return Graph(n, es);
}

inline Graph cycle(int n) {
    std::vector<Edge> es;
    for (int i = 1; i < n; ++i) es.emplace_back(i, i + 1);
    if (n >= 3) es.emplace_back(1, n);
    return Graph(n, es);
}

inline Graph complete(int n) {
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) es.emplace_back(i, j);
    return Graph(n, es);
}

inline Graph grid(int r, int c) {
    std::vector<Edge> es;
    auto id = [&](int i, int j) { return i * c + j + 1; };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (i + 1 < r) es.emplace_back(id(i, j), id(i + 1, j));
            if (j + 1 < c) es.emplace_back(id(i, j), id(i, j + 1));
        }
    return Graph(r * c, es);
}

inline Graph random_graph(Rng& r, int n, double p) {
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(r, p)) es.emplace_back(i, j);
    return Graph(n, es);
}

inline std::vector<int> random_perm(Rng& r, int n) {
    std::vector<int> p(n + 1);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin() + 1, p.end(), r);
    return p;
}

inline Graph random_tree(Rng& r, int n) {
    std::vector<Edge> es;
    for (int v = 2; v <= n; ++v) es.emplace_back(uniform(r, 1, v - 1), v);
    return iso::relabel(Graph(n, es), random_perm(r, n));
}

inline Graph random_connected(Rng& r, int n, double p) {
    std::vector<Edge> es = random_tree(r, n).edges();
    std::set<Edge> have(es.begin(), es.end());
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!have.count({i, j}) && coin(r, p)) es.emplace_back(i, j);
    return Graph(n, es);
}

// Hamiltonian cycle through a random order plus random chords.
inline Graph random_hamiltonian(Rng& r, int n, double p) {
    auto perm = random_perm(r, n);
    std::set<Edge> es;
    for (int i = 1; i <= n; ++i) {
        int a = perm[i], b = perm[i % n + 1];
        es.insert({std::min(a, b), std::max(a, b)});
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (coin(r, p)) es.insert({i, j});
    return Graph(n, std::vector<Edge>(es.begin(), es.end()));
}

// Cycle v_1..v_n with chords of span <= 2, relabelled at random, with a path
// decomposition of width <= 3 (bags {v_1, v_i, v_{i+1}, v_{i+2}}).
struct Windowed {
    Graph g;
    iso::TreeDecomposition td;
};

inline Windowed windowed_hamiltonian(Rng& r, int n, double p) {
    std::set<Edge> es;
    auto add = [&](int a, int b) { es.insert({std::min(a, b), std::max(a, b)}); };
    for (int i = 1; i <= n; ++i) add(i, i % n + 1);
    for (int i = 2; i + 2 <= n; ++i)
        if (coin(r, p)) add(i, i + 2);
    auto perm = random_perm(r, n);
    std::vector<Edge> rel;
    for (auto [a, b] : es) rel.emplace_back(perm[a], perm[b]);
    std::vector<iso::VertexSet> bags;
    for (int i = 2; i + 2 <= n; ++i) bags.push_back({perm[1], perm[i], perm[i + 1], perm[i + 2]});
    if (bags.empty()) {
        iso::VertexSet all;
        for (int i = 1; i <= n; ++i) all.push_back(i);
        bags.push_back(all);
    }
    return {Graph(n, rel), iso::path_decomposition(n, bags)};
}

// Series-parallel style: start from an edge, repeatedly subdivide or add a parallel path.
inline Graph random_partial_2tree(Rng& r, int n) {
    std::vector<Edge> es{{1, 2}};
    std::set<Edge> have{{1, 2}};
    int cur = 2;
    while (cur < n) {
        auto [a, b] = es[uniform(r, 0, static_cast<int>(es.size()) - 1)];
        int v = ++cur;
        for (Edge e : {Edge{a, v}, Edge{b, v}})
            if (!have.count(e)) {
                have.insert(e);
                es.push_back(e);
            }
    }
    std::vector<Edge> keep;
    for (auto e : es)
        if (coin(r, 0.85)) keep.push_back(e);
    // stay connected: add back a spanning structure of the 2-tree
    Graph g(n, keep);
    auto comps = iso::connected_components(g, iso::all_vertices(g));
    for (std::size_t i = 1; i < comps.size(); ++i) {
        // join to an earlier component through an original edge
        for (auto [a, b] : es) {
            bool ai = std::binary_search(comps[i].begin(), comps[i].end(), a);
            bool bi = std::binary_search(comps[i].begin(), comps[i].end(), b);
            if (ai != bi) {
                keep.emplace_back(a, b);
                break;
            }
        }
        g = Graph(n, keep);
        comps = iso::connected_components(g, iso::all_vertices(g));
        i = 0;
    }
    return iso::relabel(g, random_perm(r, n));
}

// A DFS forest is an elimination forest.
inline iso::EliminationForest dfs_forest(Rng& r, const Graph& g) {
    std::vector<int> parent(g.n() + 1, 0);
    std::vector<char> seen(g.n() + 1, 0);
    auto order = random_perm(r, g.n());
    std::function<void(int)> dfs = [&](int v) {
        seen[v] = 1;
        auto nb = g.neighbors(v);
        std::shuffle(nb.begin(), nb.end(), r);
        for (int u : nb)
            if (!seen[u]) {
                parent[u] = v;
                dfs(u);
            }
    };
    for (int i = 1; i <= g.n(); ++i)
        if (!seen[order[i]]) dfs(order[i]);
    return iso::EliminationForest(parent);
}

// Segment of T with boundary within {u, v}: the u-v path, every branch hanging
// off its interior, and a random selection of whole branches at u and v.
inline iso::VertexSet random_segment(Rng& r, const Graph& t) {
    int n = t.n();
    int u = uniform(r, 1, n), v = coin(r, 0.2) ? u : uniform(r, 1, n);
    std::vector<int> par(n + 1, -1);
    std::vector<int> q{u};
    par[u] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int x : t.neighbors(q[i]))
            if (par[x] < 0) par[x] = q[i], q.push_back(x);
    std::vector<int> pathv;
    for (int x = v; x; x = par[x]) pathv.push_back(x);
    std::vector<char> on(n + 1, 0), in(n + 1, 0);
    for (int x : pathv) on[x] = in[x] = 1;
    auto grab = [&](int from, int start) {
        std::vector<int> st{start};
        in[start] = 1;
        while (!st.empty()) {
            int y = st.back();
            st.pop_back();
            for (int z : t.neighbors(y))
                if (!in[z] && z != from) in[z] = 1, st.push_back(z);
        }
    };
    bool whole = coin(r, 0.1);
    for (int x : pathv) {
        bool end = (x == u || x == v);
        for (int y : t.neighbors(x)) {
            if (on[y] || in[y]) continue;
            if (whole || !end || coin(r, 0.5)) grab(x, y);
        }
    }
    iso::VertexSet s;
    for (int x = 1; x <= n; ++x)
        if (in[x]) s.push_back(x);
    return s;
}

// ---- oracles -------------------------------------------------------------------

inline bool oracle_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// treedepth by trying every parent function (n <= 6)
inline int oracle_treedepth(const Graph& g) {
    const int n = g.n();
    if (n == 0) return 0;
    std::vector<int> par(n + 1, 0);
    int best = n;
    std::function<void(int)> rec = [&](int v) {
        if (v > n) {
            try {
                iso::EliminationForest f(par);
                if (f.height() < best && iso::is_elim_forest(g, f)) best = f.height();
            } catch (const iso::ValidationError&) {
            }
            return;
        }
        for (int p = 0; p <= n; ++p) {
            if (p == v) continue;
            par[v] = p;
            rec(v + 1);
        }
    };
    rec(1);
    return best;
}

// Hamiltonian cycles as sorted edge-id sets via permutations fixing vertex 1
inline iso::Family oracle_hc(const Graph& g) {
    std::set<std::vector<int>> out;
    int n = g.n();
    if (n < 3) return {};
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do {
        bool ok = true;
        std::vector<int> ids;
        for (int i = 0; i < n && ok; ++i) {
            int id = g.edge_id(p[i], p[(i + 1) % n]);
            if (!id) ok = false;
            ids.push_back(id);
        }
        if (ok) {
            std::sort(ids.begin(), ids.end());
            out.insert(ids);
        }
    } while (std::next_permutation(p.begin() + 1, p.end()));
    return {out.begin(), out.end()};
}

inline iso::Family oracle_mis(const Graph& g) {
    int n = g.n(), best = -1;
    iso::Family fam;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if ((s >> (u - 1) & 1) && (s >> (v - 1) & 1)) ok = false;
        if (!ok) continue;
        int c = __builtin_popcount(s);
        if (c > best) best = c, fam.clear();
        if (c == best) fam.push_back(iso::from_mask(s));
    }
    std::sort(fam.begin(), fam.end());
    return fam;
}

inline bool is_matching(const Graph& g, std::uint32_t s) {
    std::vector<int> deg(g.n() + 1, 0);
    for (int id = 1; id <= g.m(); ++id)
        if (s >> (id - 1) & 1) {
            if (++deg[g.edge(id).first] > 1 || ++deg[g.edge(id).second] > 1) return false;
        }
    return true;
}

inline bool is_maximal_matching(const Graph& g, std::uint32_t s) {
    if (!is_matching(g, s)) return false;
    for (int id = 1; id <= g.m(); ++id)
        if (!(s >> (id - 1) & 1) && is_matching(g, s | 1u << (id - 1))) return false;
    return true;
}

// edge-subset enumeration, m <= 24
inline iso::Family oracle_matchings(const Graph& g, bool maximum) {
    iso::Family fam;
    int best = -1;
    for (std::uint32_t s = 0; s < (1u << g.m()); ++s) {
        if (maximum ? !is_matching(g, s) : !is_maximal_matching(g, s)) continue;
        int c = __builtin_popcount(s);
        if (best < 0 || (maximum ? c > best : c < best)) best = c, fam.clear();
        if (c == best) fam.push_back(iso::from_mask(s));
    }
    std::sort(fam.begin(), fam.end());
    return fam;
}

inline iso::Family oracle_steiner(const Graph& g, const iso::VertexSet& t) {
    iso::Family fam;
    int best = -1;
    std::uint32_t tm = static_cast<std::uint32_t>(iso::to_mask(t));
    for (std::uint32_t s = 0; s < (1u << g.n()); ++s) {
        if ((s & tm) != tm) continue;
        iso::VertexSet vs = iso::from_mask(s);
        if (vs.size() > 1 && iso::connected_components(g, vs).size() != 1) continue;
        int c = __builtin_popcount(s);
        if (best < 0 || c < best) best = c, fam.clear();
        if (c == best) fam.push_back(vs);
    }
    std::sort(fam.begin(), fam.end());
    return fam;
}

// rank over GF(2) on plain vectors
inline int oracle_rank(std::vector<std::vector<int>> m) {
    int rank = 0, rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c]) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(m[p], m[rank]);
        for (int r = 0; r < rows; ++r)
            if (r != rank && m[r][c])
                for (int k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
        ++rank;
    }
    return rank;
}

inline iso::WeightFunction random_weights(Rng& r, iso::Domain d, int size, int lo, int hi) {
    std::vector<iso::BigNat> w;
    for (int i = 0; i < size; ++i) w.push_back(uniform(r, lo, hi));
    return iso::plain_weights(d, w);
}

} // namespace gen
