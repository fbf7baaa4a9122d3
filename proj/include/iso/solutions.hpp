#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/forest.hpp"
#include "iso/graph.hpp"
#include "iso/weights.hpp"

namespace iso {

enum class Problem { hc, mis, max_matching, min_steiner, min_maximal_matching };

inline const char* to_string(Problem p) {
    switch (p) {
    case Problem::hc: return "hc";
    case Problem::mis: return "mis";
    case Problem::max_matching: return "mm";
    case Problem::min_steiner: return "steiner";
    case Problem::min_maximal_matching: return "mmm";
    }
    return "?";
}

inline Problem parse_problem(const std::string& s) {
    if (s == "hc") return Problem::hc;
    if (s == "mis") return Problem::mis;
    if (s == "mm") return Problem::max_matching;
    if (s == "steiner") return Problem::min_steiner;
    if (s == "mmm") return Problem::min_maximal_matching;
    throw PreconditionError("unknown problem '" + s + "'");
}

inline bool is_edge_problem(Problem p) { return p == Problem::hc || p == Problem::max_matching || p == Problem::min_maximal_matching; }

using Family = std::vector<std::vector<int>>; // each member sorted, family sorted

inline constexpr int kHcEnumBound = 14;
inline constexpr int kEnumBound = 16;

namespace detail {

inline void hc_dfs(const Graph& g, std::vector<int>& path, std::vector<char>& used, Family& out) {
    const int n = g.n();
    int last = path.back();
    if (static_cast<int>(path.size()) == n) {
        if (g.adjacent(last, path[0]) && path[1] < last) {
            std::vector<int> ids;
            for (int i = 0; i < n; ++i) ids.push_back(g.edge_id(path[i], path[(i + 1) % n]));
            std::sort(ids.begin(), ids.end());
            out.push_back(std::move(ids));
        }
        return;
    }
    for (int u : g.neighbors(last)) {
        if (used[u]) continue;
        used[u] = 1;
        path.push_back(u);
        hc_dfs(g, path, used, out);
        path.pop_back();
        used[u] = 0;
    }
}

// Every maximal matching exactly once. Vertices are decided in increasing
// order: either left exposed (no exposed neighbour allowed) or matched upward.
inline void maximal_matchings(const Graph& g, int v, std::vector<signed char>& state, std::vector<int>& cur,
                              const std::function<void(const std::vector<int>&)>& emit,
                              const std::function<bool(int, int)>& prune) {
    const int n = g.n();
    while (v <= n && state[v] == 1) ++v;
    if (v > n) {
        emit(cur);
        return;
    }
    if (prune(static_cast<int>(cur.size()), v)) return;
    bool can_expose = true;
    for (int u : g.neighbors(v))
        if (state[u] == 2) can_expose = false;
    if (can_expose) {
        state[v] = 2;
        maximal_matchings(g, v + 1, state, cur, emit, prune);
        state[v] = 0;
    }
    for (int u : g.neighbors(v)) {
        if (u < v || state[u] != 0) continue;
        state[v] = state[u] = 1;
        cur.push_back(g.edge_id(v, u));
        maximal_matchings(g, v + 1, state, cur, emit, prune);
        cur.pop_back();
        state[v] = state[u] = 0;
    }
}

inline void keep_best(Family& fam, std::vector<int> s, int& best, bool want_max) {
    int sz = static_cast<int>(s.size());
    if (best >= 0 && (want_max ? sz < best : sz > best)) return;
    if (best < 0 || sz != best) {
        fam.clear();
        best = sz;
    }
    std::sort(s.begin(), s.end());
    fam.push_back(std::move(s));
}

} // namespace detail

// Brute-force solution family. Vertex problems return vertex sets, edge problems
// return edge-id sets.
inline Family enumerate_family(Problem p, const Graph& g, const VertexSet& terminals = {}, int bound = -1) {
    if (bound < 0) bound = p == Problem::hc ? kHcEnumBound : kEnumBound;
    if (g.n() > bound)
        throw SizeRefused(std::string("enumerate_family(") + to_string(p) + "): n = " + std::to_string(g.n()) +
                          " exceeds bound " + std::to_string(bound));
    Family fam;
    const int n = g.n();
    switch (p) {
    case Problem::hc: {
        if (n < 3) break;
        std::vector<int> path{1};
        std::vector<char> used(n + 1, 0);
        used[1] = 1;
        detail::hc_dfs(g, path, used, fam);
        break;
    }
    case Problem::mis: {
        if (n > 30) throw SizeRefused("mis enumeration limited to n <= 30");
        auto nbr = neighbor_masks(g);
        int best = -1;
        std::function<void(int, std::uint64_t, std::uint64_t)> rec = [&](int v, std::uint64_t chosen, std::uint64_t banned) {
            int cnt = __builtin_popcountll(chosen);
            if (cnt + (n - v) < best) return;
            if (v == n) {
                detail::keep_best(fam, from_mask(chosen), best, true);
                return;
            }
            std::uint64_t bit = std::uint64_t{1} << v;
            if (!(banned & bit)) rec(v + 1, chosen | bit, banned | nbr[v]);
            rec(v + 1, chosen, banned);
        };
        rec(0, 0, 0);
        break;
    }
    case Problem::max_matching:
    case Problem::min_maximal_matching: {
        bool want_max = p == Problem::max_matching;
        int best = -1;
        std::vector<signed char> state(n + 1, 0);
        std::vector<int> cur;
        detail::maximal_matchings(
            g, 1, state, cur, [&](const std::vector<int>& m) { detail::keep_best(fam, m, best, want_max); },
            [&](int size, int v) {
                if (best < 0) return false;
                if (want_max) return size + (n - v + 1) / 2 < best;
                return size > best;
            });
        if (fam.empty()) fam.push_back({});
        break;
    }
    case Problem::min_steiner: {
        for (int t : terminals)
            if (t < 1 || t > n) throw PreconditionError("steiner: terminal out of range");
        if (terminals.size() <= 1) {
            fam.push_back(terminals);
            break;
        }
        auto nbr = neighbor_masks(g);
        std::uint64_t tm = to_mask(terminals);
        std::vector<int> others;
        for (int v = 0; v < n; ++v)
            if (!(tm >> v & 1)) others.push_back(v);
        for (int k = 0; k <= static_cast<int>(others.size()) && fam.empty(); ++k) {
            std::function<void(int, int, std::uint64_t)> rec = [&](int start, int left, std::uint64_t s) {
                if (left == 0) {
                    if (components_mask(nbr, s).size() == 1) fam.push_back(from_mask(s));
                    return;
                }
                for (int i = start; i + left <= static_cast<int>(others.size()); ++i)
                    rec(i + 1, left - 1, s | std::uint64_t{1} << others[i]);
            };
            rec(0, k, tm);
        }
        break;
    }
    }
    std::sort(fam.begin(), fam.end());
    return fam;
}

// ---- configurations ---------------------------------------------------------

// (V0, V1, V2, M) on a boundary X: vertices of X with 0, 1, 2 incident edges
// of a partial solution, and the pairing of V1 by the solution's paths.
struct Configuration {
    VertexSet v0, v1, v2;
    std::vector<Edge> m;
    auto operator<=>(const Configuration&) const = default;
};

inline std::ostream& operator<<(std::ostream& o, const Configuration& c) {
    auto set = [&](const VertexSet& s) {
        o << '{';
        for (std::size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i];
        o << '}';
    };
    o << '(';
    set(c.v0);
    o << ' ';
    set(c.v1);
    o << ' ';
    set(c.v2);
    o << " {";
    for (std::size_t i = 0; i < c.m.size(); ++i) o << (i ? "," : "") << c.m[i].first << '-' << c.m[i].second;
    return o << "})";
}

inline void validate_configuration(const VertexSet& x, const Configuration& c) {
    VertexSet all;
    for (auto* s : {&c.v0, &c.v1, &c.v2}) all.insert(all.end(), s->begin(), s->end());
    std::sort(all.begin(), all.end());
    if (all != x) throw ValidationError("configuration is not a partition of the boundary");
    VertexSet ends;
    for (auto [a, b] : c.m) {
        ends.push_back(a);
        ends.push_back(b);
    }
    std::sort(ends.begin(), ends.end());
    if (ends != c.v1) throw ValidationError("configuration matching is not perfect on V1");
}

// Perfect matchings of an even-size sorted list, lexicographic by sorted pair list.
inline std::vector<std::vector<Edge>> perfect_matchings(const VertexSet& x) {
    std::vector<std::vector<Edge>> out;
    if (x.size() % 2) return out;
    std::vector<Edge> cur;
    std::function<void(VertexSet)> rec = [&](VertexSet rest) {
        if (rest.empty()) {
            out.push_back(cur);
            return;
        }
        int a = rest[0];
        for (std::size_t j = 1; j < rest.size(); ++j) {
            VertexSet nxt;
            for (std::size_t k = 1; k < rest.size(); ++k)
                if (k != j) nxt.push_back(rest[k]);
            cur.emplace_back(a, rest[j]);
            rec(nxt);
            cur.pop_back();
        }
    };
    rec(x);
    return out;
}

// every configuration on X
inline std::vector<Configuration> all_configurations(const VertexSet& x) {
    std::vector<Configuration> out;
    const std::size_t k = x.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        Configuration c;
        std::size_t r = code;
        for (std::size_t i = 0; i < k; ++i, r /= 3) (r % 3 == 0 ? c.v0 : r % 3 == 1 ? c.v1 : c.v2).push_back(x[i]);
        if (c.v1.size() % 2) continue;
        for (auto& m : perfect_matchings(c.v1)) {
            c.m = m;
            out.push_back(c);
        }
    }
    return out;
}

namespace detail {

struct Degrees {
    std::vector<int> deg;
    std::vector<std::vector<int>> adj;
};

inline Degrees solution_degrees(const Graph& g, const EdgeSet& s) {
    Degrees d{std::vector<int>(g.n() + 1, 0), std::vector<std::vector<int>>(g.n() + 1)};
    for (int id : s) {
        auto [u, v] = g.edge(id);
        ++d.deg[u];
        ++d.deg[v];
        d.adj[u].push_back(v);
        d.adj[v].push_back(u);
    }
    return d;
}

// follow the path starting at endpoint v, return the other end
inline int path_end(const Degrees& d, int v) {
    int prev = 0, cur = v;
    for (;;) {
        int nxt = 0;
        for (int u : d.adj[cur])
            if (u != prev) {
                nxt = u;
                break;
            }
        if (!nxt) return cur;
        prev = cur;
        cur = nxt;
    }
}

inline bool has_cycle(const Graph& g, const EdgeSet& s) {
    std::vector<int> uf(g.n() + 1);
    for (int i = 0; i <= g.n(); ++i) uf[i] = i;
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (int id : s) {
        auto [u, v] = g.edge(id);
        int a = find(u), b = find(v);
        if (a == b) return true;
        uf[a] = b;
    }
    return false;
}

} // namespace detail

// c_X(S) for a partial solution S (edge ids of G).
inline Configuration configuration_of(const Graph& g, const EdgeSet& s, const VertexSet& x) {
    for (int id : s)
        if (id < 1 || id > g.m()) throw ValidationError("partial solution: unknown edge id");
    auto d = detail::solution_degrees(g, s);
    for (int v = 1; v <= g.n(); ++v)
        if (d.deg[v] > 2) throw ValidationError("partial solution: vertex " + std::to_string(v) + " has degree > 2");
    if (detail::has_cycle(g, s)) throw ValidationError("partial solution contains a cycle");
    Configuration c;
    std::vector<char> inx(g.n() + 1, 0);
    for (int v : x) inx.at(v) = 1;
    for (int v : x) (d.deg[v] == 0 ? c.v0 : d.deg[v] == 1 ? c.v1 : c.v2).push_back(v);
    for (int v : c.v1) {
        int w = detail::path_end(d, v);
        if (!inx[w]) throw ValidationError("partial solution: path from " + std::to_string(v) + " ends outside X");
        if (v < w) c.m.emplace_back(v, w);
    }
    return c;
}

// H given by vertex and edge subsets of G (edge ids of G).
struct Subgraph {
    const Graph* g = nullptr;
    VertexSet vertices;
    EdgeSet edges;

    static Subgraph whole(const Graph& g) {
        Subgraph h{&g, all_vertices(g), {}};
        for (int i = 1; i <= g.m(); ++i) h.edges.push_back(i);
        return h;
    }
};

// S ∩ M = ∅ and S ∪ M is one Hamiltonian cycle on V(H) \ V2. A cycle on at
// most two vertices does not exist, except the empty one (S = M = ∅).
inline bool is_compliant(const Subgraph& h, const Configuration& c, const EdgeSet& s) {
    const Graph& g = *h.g;
    std::vector<char> inh(g.n() + 1, 0), inv2(g.n() + 1, 0);
    for (int v : h.vertices) inh.at(v) = 1;
    for (int v : c.v2) inv2.at(v) = 1;
    for (int id : s) {
        if (!std::binary_search(h.edges.begin(), h.edges.end(), id)) return false;
        auto [u, v] = g.edge(id);
        if (inv2[u] || inv2[v]) return false;
    }
    for (auto [a, b] : c.m)
        if (g.edge_id(a, b) && std::binary_search(s.begin(), s.end(), g.edge_id(a, b))) return false;
    VertexSet u;
    for (int v : h.vertices)
        if (!inv2[v]) u.push_back(v);
    if (u.empty()) return s.empty() && c.m.empty();
    if (u.size() <= 2) return false;
    std::vector<std::vector<int>> adj(g.n() + 1);
    for (int id : s) {
        auto [a, b] = g.edge(id);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto [a, b] : c.m) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (int v : u)
        if (adj[v].size() != 2) return false;
    // walk the cycle from u[0]
    int prev = 0, cur = u[0];
    std::size_t steps = 0;
    do {
        int nxt = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
        prev = cur;
        cur = nxt;
        ++steps;
    } while (cur != u[0] && steps <= u.size());
    return steps == u.size();
}

struct MinSet {
    std::vector<EdgeSet> sets; // sorted
    BigNat weight = 0;
};

// Min(ω, H, c) by degree-constrained backtracking over E(H).
inline MinSet min_compliant(const WeightFunction& w, const Subgraph& h, const Configuration& c) {
    const Graph& g = *h.g;
    if (g.n() > kEnumBound) throw SizeRefused("min_compliant: n exceeds bound");
    std::vector<int> need(g.n() + 1, 0);
    for (int v : h.vertices) need[v] = 2;
    for (int v : c.v1) need.at(v) = 1;
    for (int v : c.v2) need.at(v) = 0;
    std::vector<int> left(g.n() + 1, 0); // incident edges not yet decided
    for (int id : h.edges) {
        ++left[g.edge(id).first];
        ++left[g.edge(id).second];
    }
    MinSet best;
    bool any = false;
    EdgeSet cur;
    BigNat curw = 0;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == h.edges.size()) {
            for (int v : h.vertices)
                if (need[v]) return;
            if (!is_compliant(h, c, cur)) return;
            if (!any || curw < best.weight) {
                any = true;
                best.weight = curw;
                best.sets.clear();
            }
            if (curw == best.weight) best.sets.push_back(cur);
            return;
        }
        int id = h.edges[i];
        auto [a, b] = g.edge(id);
        --left[a];
        --left[b];
        if (need[a] && need[b]) {
            --need[a];
            --need[b];
            cur.push_back(id);
            curw += w(id);
            if (need[a] <= left[a] && need[b] <= left[b]) rec(i + 1);
            curw -= w(id);
            cur.pop_back();
            ++need[a];
            ++need[b];
        }
        if (need[a] <= left[a] && need[b] <= left[b]) rec(i + 1);
        ++left[a];
        ++left[b];
    };
    bool feasible = true;
    for (int v : h.vertices)
        if (need[v] > left[v]) feasible = false;
    if (feasible) rec(0);
    std::sort(best.sets.begin(), best.sets.end());
    return best;
}

// Min(ω, H, c) for every configuration c on X at once: enumerate each
// candidate edge set once and bucket it under every configuration it complies with.
inline std::map<Configuration, MinSet> min_compliant_all(const WeightFunction& w, const Subgraph& h, const VertexSet& x) {
    const Graph& g = *h.g;
    if (g.n() > kEnumBound) throw SizeRefused("min_compliant_all: n exceeds bound");
    std::vector<char> inx(g.n() + 1, 0);
    for (int v : x) inx.at(v) = 1;
    std::map<Configuration, MinSet> out;
    auto offer = [&](const Configuration& c, const EdgeSet& s, const BigNat& wt) {
        auto [it, fresh] = out.try_emplace(c);
        if (fresh || wt < it->second.weight) {
            it->second.weight = wt;
            it->second.sets.clear();
        }
        if (wt == it->second.weight) it->second.sets.push_back(s);
    };
    std::vector<int> deg(g.n() + 1, 0);
    EdgeSet cur;
    BigNat curw = 0;
    auto finish = [&]() {
        for (int v : h.vertices)
            if (!inx[v] && deg[v] != 2) return;
        Configuration base;
        for (int v : x) (deg[v] == 2 ? base.v0 : deg[v] == 1 ? base.v1 : base.v2).push_back(v);
        if (cur.empty()) {
            // only the empty cycle, when H has nothing outside X
            bool ok = true;
            for (int v : h.vertices)
                if (!inx[v]) ok = false;
            if (ok) offer(base, cur, curw);
            return;
        }
        if (base.v1.empty()) {
            Configuration c = base;
            if (is_compliant(h, c, cur)) offer(c, cur, curw);
            return;
        }
        if (detail::has_cycle(g, cur)) return;
        for (auto& m : perfect_matchings(base.v1)) {
            Configuration c = base;
            c.m = m;
            if (is_compliant(h, c, cur)) offer(c, cur, curw);
        }
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == h.edges.size()) {
            finish();
            return;
        }
        rec(i + 1);
        int id = h.edges[i];
        auto [a, b] = g.edge(id);
        if (deg[a] < 2 && deg[b] < 2) {
            ++deg[a];
            ++deg[b];
            cur.push_back(id);
            curw += w(id);
            rec(i + 1);
            curw -= w(id);
            cur.pop_back();
            --deg[a];
            --deg[b];
        }
    };
    rec(0);
    for (auto& [c, ms] : out) std::sort(ms.sets.begin(), ms.sets.end());
    return out;
}

// ---- pivotal vertices -------------------------------------------------------

inline VertexSet symmetric_difference(const std::vector<int>& a, const std::vector<int>& b) {
    VertexSet r;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

struct PivotalResult {
    VertexSet vertices;
    bool empty_despite_difference = false; // A != B but nothing qualified
};

// u ∈ A△B whose strict ancestors meet A and B in the same set.
inline PivotalResult pivotal_vertices(const VertexSet& a, const VertexSet& b, const EliminationForest& f) {
    if (a == b) throw PreconditionError("pivotal_vertices: A = B");
    PivotalResult r;
    std::vector<char> ina(f.n() + 1, 0), inb(f.n() + 1, 0);
    for (int v : a) ina.at(v) = 1;
    for (int v : b) inb.at(v) = 1;
    auto diff = symmetric_difference(a, b);
    for (int u : diff) {
        bool ok = true;
        for (int x = f.parent(u); x && ok; x = f.parent(x))
            if (ina[x] != inb[x]) ok = false;
        if (ok) r.vertices.push_back(u);
    }
    r.empty_despite_difference = !diff.empty() && r.vertices.empty();
    return r;
}

// Edge variant on edge-id sets: (1) every edge from u to a strict ancestor is
// in both or neither, (2) some edge from u into its subtree is in exactly one,
// (3) no strict ancestor of u satisfies (1) and (2).
inline PivotalResult edge_pivotal_vertices(const EdgeSet& a, const EdgeSet& b, const EliminationForest& f, const Graph& g) {
    if (a == b) throw PreconditionError("edge_pivotal_vertices: A = B");
    auto diff = symmetric_difference(a, b);
    auto in = [](const EdgeSet& s, int id) { return id && std::binary_search(s.begin(), s.end(), id); };
    std::vector<char> cand(g.n() + 1, 0);
    for (int u = 1; u <= g.n(); ++u) {
        bool c1 = true, c2 = false;
        for (int x = f.parent(u); x; x = f.parent(x)) {
            int id = g.edge_id(u, x);
            if (in(a, id) != in(b, id)) c1 = false;
        }
        for (int x : f.subtree(u)) {
            int id = g.edge_id(u, x);
            if (in(a, id) != in(b, id)) c2 = true;
        }
        cand[u] = c1 && c2;
    }
    PivotalResult r;
    for (int u = 1; u <= g.n(); ++u) {
        if (!cand[u]) continue;
        bool ok = true;
        for (int x = f.parent(u); x; x = f.parent(x))
            if (cand[x]) ok = false;
        if (ok) r.vertices.push_back(u);
    }
    r.empty_despite_difference = !diff.empty() && r.vertices.empty();
    return r;
}

// Exhaustive: if two distinct minimizers exist, is there a pair of minimizers
// with exactly one (edge-)pivotal vertex?
inline bool exchange_check(Problem p, const Graph& g, const EliminationForest& f, const WeightFunction& w) {
    if (p != Problem::mis && p != Problem::max_matching)
        throw PreconditionError("exchange_check: only mis and mm are supported");
    validate_elim_forest(g, f);
    auto fam = enumerate_family(p, g);
    if (fam.empty()) return true;
    BigNat best = w.weight(fam[0]);
    for (auto& s : fam) best = std::min(best, w.weight(s));
    std::vector<const std::vector<int>*> mins;
    for (auto& s : fam)
        if (w.weight(s) == best) mins.push_back(&s);
    if (mins.size() < 2) return true;
    for (std::size_t i = 0; i < mins.size(); ++i)
        for (std::size_t j = i + 1; j < mins.size(); ++j) {
            auto r = p == Problem::mis ? pivotal_vertices(*mins[i], *mins[j], f)
                                       : edge_pivotal_vertices(*mins[i], *mins[j], f, g);
            if (r.vertices.size() == 1) return true;
        }
    return false;
}

// ---- family dump: one member per line, ids space separated --------------------

inline void write_family(std::ostream& out, const Family& fam) {
    for (auto& s : fam) {
        for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
        out << '\n';
    }
}

} // namespace iso
