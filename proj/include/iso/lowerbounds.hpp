#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iso/forest.hpp"
#include "iso/graph.hpp"
#include "iso/schemes.hpp"
#include "iso/solutions.hpp"
#include "iso/tree_decomposition.hpp"
#include "iso/weights.hpp"

namespace iso {

struct CollidingPair {
    VertexSet a, b; // subsets of the universe [n]
    int k = 0;      // |A \ B| = |B \ A|
};

inline constexpr int kCollisionMaxUniverse = 24;

// Pigeonhole search: smallest k in [k_min, k_max] admitting two disjoint
// k-subsets with equal weight under every ω_i; the rest of [n] is added to both.
inline CollidingPair find_colliding_pair(const std::vector<WeightFunction>& ws, Rational beta, int k_min = 1,
                                         int k_max = -1) {
    if (ws.empty()) throw PreconditionError("find_colliding_pair: need at least one weight function");
    const int n = static_cast<int>(ws[0].size());
    for (auto& w : ws)
        if (static_cast<int>(w.size()) != n) throw PreconditionError("find_colliding_pair: weight functions differ in domain");
    if (n > kCollisionMaxUniverse) throw SizeRefused("find_colliding_pair: universe larger than 24");
    int cap = static_cast<int>(static_cast<long>(n) * beta.num / beta.den);
    if (k_max >= 0) cap = std::min(cap, k_max);
    k_min = std::max(k_min, 1);

    bool small = true;
    for (auto& w : ws)
        if (bit_length(w.max_weight()) + 5 > 63) small = false;

    for (int k = k_min; k <= cap && 2 * k <= n; ++k) {
        std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> fast;
        std::map<std::vector<BigNat>, std::vector<std::uint32_t>> slow;
        std::vector<std::uint64_t> su(ws.size(), 0);
        std::vector<BigNat> sb(ws.size(), BigNat(0));
        std::optional<std::pair<std::uint32_t, std::uint32_t>> hit;
        std::vector<std::vector<std::uint64_t>> wu(ws.size(), std::vector<std::uint64_t>(n, 0));
        if (small)
            for (std::size_t i = 0; i < ws.size(); ++i)
                for (int v = 0; v < n; ++v) wu[i][v] = to_u64(ws[i].w[v]);

        auto offer = [&](std::uint32_t mask) {
            if (small) {
                std::uint64_t h = 0x9e3779b97f4a7c15ULL;
                for (auto x : su) h = splitmix64(h ^ x);
                auto& bucket = fast[h];
                for (auto other : bucket) {
                    if (other & mask) continue;
                    bool same = true; // guard against hash collisions
                    for (std::size_t i = 0; i < ws.size() && same; ++i) {
                        std::uint64_t s = 0;
                        for (int v = 0; v < n; ++v)
                            if (other >> v & 1) s += wu[i][v];
                        same = s == su[i];
                    }
                    if (same) {
                        hit = {other, mask};
                        return true;
                    }
                }
                bucket.push_back(mask);
            } else {
                auto& bucket = slow[sb];
                for (auto other : bucket)
                    if (!(other & mask)) {
                        hit = {other, mask};
                        return true;
                    }
                bucket.push_back(mask);
            }
            return false;
        };
        std::function<bool(int, int, std::uint32_t)> rec = [&](int start, int left, std::uint32_t mask) {
            if (left == 0) return offer(mask);
            for (int v = start; v + left <= n; ++v) {
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    if (small) su[i] += wu[i][v];
                    else sb[i] += ws[i].w[v];
                }
                bool done = rec(v + 1, left - 1, mask | (std::uint32_t{1} << v));
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    if (small) su[i] -= wu[i][v];
                    else sb[i] -= ws[i].w[v];
                }
                if (done) return true;
            }
            return false;
        };
        if (rec(0, k, 0)) {
            std::uint32_t all = (n == 32 ? ~0u : (1u << n) - 1);
            std::uint32_t rest = all & ~(hit->first | hit->second);
            CollidingPair cp;
            cp.a = from_mask(hit->first | rest);
            cp.b = from_mask(hit->second | rest);
            cp.k = k;
            return cp;
        }
    }
    throw NotFound("find_colliding_pair: no colliding pair with k in [" + std::to_string(k_min) + ", " + std::to_string(cap) + "]");
}

// ---- adversarial instances ---------------------------------------------------

enum class LbKind { mis, steiner, mmm, hc };

inline const char* to_string(LbKind k) {
    switch (k) {
    case LbKind::mis: return "mis";
    case LbKind::steiner: return "steiner";
    case LbKind::mmm: return "mmm";
    case LbKind::hc: return "hc";
    }
    return "?";
}

inline LbKind parse_lb_kind(const std::string& s) {
    if (s == "mis") return LbKind::mis;
    if (s == "steiner") return LbKind::steiner;
    if (s == "mmm") return LbKind::mmm;
    if (s == "hc") return LbKind::hc;
    throw PreconditionError("unknown lower-bound kind '" + s + "'");
}

inline Problem problem_of(LbKind k) {
    switch (k) {
    case LbKind::mis: return Problem::mis;
    case LbKind::steiner: return Problem::min_steiner;
    case LbKind::mmm: return Problem::min_maximal_matching;
    case LbKind::hc: return Problem::hc;
    }
    return Problem::mis;
}

inline bool is_edge_kind(LbKind k) { return k == LbKind::mmm || k == LbKind::hc; }

inline Rational lb_beta(LbKind k) {
    switch (k) {
    case LbKind::mis: return {1, 2};
    case LbKind::steiner: return {1, 3};
    case LbKind::mmm: return {1, 5};
    case LbKind::hc: return {1, 3};
    }
    return {1, 2};
}

inline int lb_min_k(LbKind k) {
    switch (k) {
    case LbKind::mis: return 1;
    case LbKind::steiner: return 3; // with k = 2 the terminals are already connected
    case LbKind::mmm: return 2;
    case LbKind::hc: return 3;
    }
    return 1;
}

// largest admissible k for a universe of size n
inline int lb_max_k(LbKind kind, int n) {
    switch (kind) {
    case LbKind::mis: return n / 2;
    case LbKind::steiner: return (n + 1) / 3;    // |A∩B| >= k-1
    case LbKind::mmm: return (n + 2) / 5;        // |A∩B| >= 3k-2
    case LbKind::hc: return (n - 1) / 3;         // |A∩B| >= k+1, the subdivided chord needs length >= 2
    }
    return 0;
}

struct LbInstance {
    LbKind kind = LbKind::mis;
    int universe = 0; // elements are 1..universe: vertices, or edges for edge kinds
    int k = 0;
    Graph graph;
    VertexSet terminals;
    VertexSet a, b;          // the colliding pair
    VertexSet opt_a, opt_b;  // intended optima, as universe elements
    std::vector<int> label_of_edge; // edge kinds: canonical edge id -> element, index 0 unused
    std::optional<EliminationForest> forest;
    std::optional<TreeDecomposition> path_decomposition;
};

namespace detail {

struct LabeledEdges {
    int n = 0;
    std::vector<std::pair<Edge, int>> es; // (endpoints, element)

    void add(int u, int v, int label) { es.push_back({{std::min(u, v), std::max(u, v)}, label}); }
};

inline void finish_edge_instance(LbInstance& inst, const LabeledEdges& le) {
    std::vector<Edge> es;
    for (auto& [e, l] : le.es) es.push_back(e);
    inst.graph = Graph(le.n, es);
    inst.label_of_edge.assign(inst.graph.m() + 1, 0);
    for (auto& [e, l] : le.es) inst.label_of_edge[inst.graph.edge_id(e.first, e.second)] = l;
}

} // namespace detail

inline LbInstance build_lb_instance(LbKind kind, const VertexSet& a_in, const VertexSet& b_in, int universe) {
    VertexSet A = a_in, B = b_in;
    std::sort(A.begin(), A.end());
    std::sort(B.begin(), B.end());
    VertexSet uni, onlyA, onlyB, both;
    std::set_union(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(uni));
    std::set_difference(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(onlyA));
    std::set_difference(B.begin(), B.end(), A.begin(), A.end(), std::back_inserter(onlyB));
    std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(both));
    if (static_cast<int>(uni.size()) != universe || (universe && (uni.front() != 1 || uni.back() != universe)))
        throw PreconditionError("build_lb_instance: A ∪ B must be the whole universe");
    if (onlyA.size() != onlyB.size() || onlyA.empty())
        throw PreconditionError("build_lb_instance: need |A \\ B| = |B \\ A| >= 1");
    const int k = static_cast<int>(onlyA.size());
    const int common = static_cast<int>(both.size());
    if (k < lb_min_k(kind))
        throw PreconditionError(std::string("build_lb_instance(") + to_string(kind) + "): k = " + std::to_string(k) +
                                " is below the minimum " + std::to_string(lb_min_k(kind)));

    LbInstance inst;
    inst.kind = kind;
    inst.universe = universe;
    inst.k = k;
    inst.a = A;
    inst.b = B;
    inst.opt_a = A;
    inst.opt_b = B;
    const auto& av = onlyA;
    const auto& bv = onlyB;

    switch (kind) {
    case LbKind::mis: {
        std::vector<Edge> es;
        for (int i = 0; i < k; ++i) es.emplace_back(av[i], bv[i]);
        for (int i = 1; i < k; ++i) {
            es.emplace_back(av[i], bv[0]);
            es.emplace_back(av[0], bv[i]);
        }
        inst.graph = Graph(universe, es);
        std::vector<int> parent(universe + 1, 0);
        parent[bv[0]] = av[0];
        for (int i = 1; i < k; ++i) {
            parent[av[i]] = bv[0];
            parent[bv[i]] = av[i];
        }
        inst.forest = EliminationForest(parent);
        break;
    }
    case LbKind::steiner: {
        if (common < k - 1) throw PreconditionError("build_lb_instance(steiner): need |A ∩ B| >= k - 1");
        inst.terminals = both;
        std::vector<Edge> es;
        const int t1 = both[0];
        for (int j = k - 1; j < common; ++j) es.emplace_back(both[j], t1);
        for (int i = 0; i < k - 1; ++i) {
            es.emplace_back(both[i], av[i]);
            es.emplace_back(both[i], bv[i]);
            es.emplace_back(av[i], av[k - 1]);
            es.emplace_back(bv[i], bv[k - 1]);
        }
        inst.graph = Graph(universe, es);
        std::vector<int> parent(universe + 1, 0);
        parent[bv[k - 1]] = av[k - 1];
        for (int i = 0; i < k - 1; ++i) {
            parent[both[i]] = bv[k - 1];
            parent[av[i]] = both[i];
            parent[bv[i]] = both[i];
        }
        for (int j = k - 1; j < common; ++j) parent[both[j]] = t1;
        inst.forest = EliminationForest(parent);
        break;
    }
    case LbKind::mmm: {
        if (common < 3 * k - 2) throw PreconditionError("build_lb_instance(mmm): need |A ∩ B| >= 3k - 2");
        // K̄ = the 3k-2 smallest common elements: d_1..d_k, c_1..c_{k-1}, c'_1..c'_{k-1}
        VertexSet d(both.begin(), both.begin() + k), c(both.begin() + k, both.begin() + 2 * k - 1),
            cp(both.begin() + 2 * k - 1, both.begin() + 3 * k - 2), K(both.begin() + 3 * k - 2, both.end());
        // vertices: v^c_i = i, v^a_i = k+i, v^b_i = 2k+i, v^d_i = 3k+i
        auto vc = [&](int i) { return i + 1; };
        auto va = [&](int i) { return k + i + 1; };
        auto vb = [&](int i) { return 2 * k + i + 1; };
        auto vd = [&](int i) { return 3 * k + i + 1; };
        detail::LabeledEdges le;
        le.n = 4 * k + 2 * static_cast<int>(K.size());
        for (int i = 0; i < k; ++i) {
            le.add(vc(i), va(i), av[i]);
            le.add(vc(i), vb(i), bv[i]);
            le.add(vc(i), vd(i), d[i]);
        }
        for (int i = 0; i < k - 1; ++i) {
            le.add(vb(k - 1), va(i), c[i]);
            le.add(va(k - 1), vb(i), cp[i]);
        }
        std::vector<int> parent(le.n + 1, 0);
        for (std::size_t j = 0; j < K.size(); ++j) {
            int x = 4 * k + 2 * static_cast<int>(j) + 1;
            le.add(x, x + 1, K[j]);
            parent[x + 1] = x;
        }
        detail::finish_edge_instance(inst, le);
        parent[vb(k - 1)] = va(k - 1);
        for (int i = 0; i < k; ++i) {
            parent[vc(i)] = vb(k - 1);
            parent[vd(i)] = vc(i);
            if (i < k - 1) {
                parent[va(i)] = vc(i);
                parent[vb(i)] = vc(i);
            }
        }
        inst.forest = EliminationForest(parent);
        inst.opt_a = onlyA;
        inst.opt_b = onlyB;
        inst.opt_a.insert(inst.opt_a.end(), K.begin(), K.end());
        inst.opt_b.insert(inst.opt_b.end(), K.begin(), K.end());
        std::sort(inst.opt_a.begin(), inst.opt_a.end());
        std::sort(inst.opt_b.begin(), inst.opt_b.end());
        break;
    }
    case LbKind::hc: {
        // Alternating 2k-cycle w_0..w_{2k-1}: edges w_{2i}w_{2i+1} carry A \ B,
        // edges w_{2i+1}w_{2i+2} carry B \ A. Common elements sit on the chords
        // w_{2j-1}w_{2j+2} (j = 1..k-2) and w_{2k-3}w_{2k-1}, and on a path
        // w_0 .. w_2 of length |A∩B| - k + 1 >= 2.
        const int L = common - (k - 1);
        if (L < 2) throw PreconditionError("build_lb_instance(hc): need |A ∩ B| >= k + 1");
        auto w = [&](int j) { return ((j % (2 * k)) + 2 * k) % (2 * k) + 1; };
        detail::LabeledEdges le;
        le.n = 2 * k + (L - 1);
        for (int i = 0; i < k; ++i) {
            le.add(w(2 * i), w(2 * i + 1), av[i]);
            le.add(w(2 * i + 1), w(2 * i + 2), bv[i]);
        }
        int next = 0;
        for (int j = 1; j <= k - 2; ++j) le.add(w(2 * j - 1), w(2 * j + 2), both[next++]);
        le.add(w(2 * k - 3), w(2 * k - 1), both[next++]);
        std::vector<int> path{w(0)};
        for (int i = 1; i < L; ++i) path.push_back(2 * k + i);
        path.push_back(w(2));
        for (int i = 0; i < L; ++i) le.add(path[i], path[i + 1], both[next++]);
        detail::finish_edge_instance(inst, le);
        std::vector<VertexSet> bags;
        for (int i = 0; i < L; ++i) {
            VertexSet bag{w(0), w(2), path[i], path[i + 1]};
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            bags.push_back(bag);
        }
        for (int j = 1; j <= 2 * k - 4; ++j) bags.push_back({w(0), w(j), w(j + 1), w(j + 2), w(j + 3)});
        inst.path_decomposition = path_decomposition(le.n, bags);
        break;
    }
    }
    return inst;
}

inline LbInstance build_lb_instance(LbKind kind, const std::vector<WeightFunction>& ws) {
    if (ws.empty()) throw PreconditionError("build_lb_instance: empty weight tuple");
    int n = static_cast<int>(ws[0].size());
    auto cp = find_colliding_pair(ws, lb_beta(kind), lb_min_k(kind), lb_max_k(kind, n));
    return build_lb_instance(kind, cp.a, cp.b, n);
}

struct LbVerdict {
    bool ok = true;
    std::string diagnosis;
};

inline std::vector<int> to_labels(const LbInstance& inst, const std::vector<int>& member) {
    if (!is_edge_kind(inst.kind)) return member;
    std::vector<int> r;
    for (int id : member) r.push_back(inst.label_of_edge.at(id));
    std::sort(r.begin(), r.end());
    return r;
}

inline LbVerdict verify_lb_instance(const LbInstance& inst, const std::vector<WeightFunction>& ws) {
    LbVerdict v;
    auto fail = [&](const std::string& s) {
        if (!v.diagnosis.empty()) v.diagnosis += "; ";
        v.diagnosis += s;
        v.ok = false;
    };
    Family fam;
    try {
        fam = enumerate_family(problem_of(inst.kind), inst.graph, inst.terminals, std::max(inst.graph.n(), kEnumBound));
    } catch (const std::exception& e) {
        fail(std::string("enumeration failed: ") + e.what());
        return v;
    }
    Family labeled;
    for (auto& s : fam) labeled.push_back(to_labels(inst, s));
    std::sort(labeled.begin(), labeled.end());
    Family want{inst.opt_a, inst.opt_b};
    std::sort(want.begin(), want.end());
    if (labeled.size() != 2) fail("instance has " + std::to_string(labeled.size()) + " optima, expected 2");
    else if (labeled != want) fail("optima differ from the intended pair");
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (static_cast<int>(ws[i].size()) < inst.universe) {
            fail("weight function " + std::to_string(i) + " does not cover the universe");
            continue;
        }
        if (ws[i].weight(inst.opt_a) != ws[i].weight(inst.opt_b))
            fail("weight function " + std::to_string(i) + " separates the optima");
    }
    try {
        if (inst.forest) {
            int h = validate_elim_forest(inst.graph, *inst.forest);
            if (h > 4) fail("elimination forest height " + std::to_string(h) + " > 4");
        } else if (inst.path_decomposition) {
            int w = validate_tree_decomposition(inst.graph, *inst.path_decomposition);
            if (!is_path_shaped(*inst.path_decomposition)) fail("decomposition is not a path");
            if (w > 4) fail("path decomposition width " + std::to_string(w) + " > 4");
        } else {
            fail("no decomposition attached");
        }
    } catch (const ValidationError& e) {
        fail(std::string("decomposition invalid: ") + e.what());
    }
    return v;
}

// prefix.gr, prefix.ef or prefix.td, prefix.manifest
inline void write_lb_instance(const std::string& prefix, const LbInstance& inst) {
    auto open = [](const std::string& p) {
        std::ofstream o(p);
        if (!o) throw ParseError(ParseErrorKind::io, 0, "cannot write " + p);
        return o;
    };
    {
        auto o = open(prefix + ".gr");
        write_graph(o, inst.graph);
    }
    if (inst.forest) {
        auto o = open(prefix + ".ef");
        write_forest(o, *inst.forest);
    }
    if (inst.path_decomposition) {
        auto o = open(prefix + ".td");
        write_tree_decomposition(o, *inst.path_decomposition);
    }
    auto o = open(prefix + ".manifest");
    auto list = [&](const char* key, const std::vector<int>& xs) {
        o << key;
        for (int x : xs) o << ' ' << x;
        o << '\n';
    };
    o << "kind " << to_string(inst.kind) << '\n' << "universe " << inst.universe << '\n' << "k " << inst.k << '\n';
    list("A", inst.a);
    list("B", inst.b);
    list("optimum_a", inst.opt_a);
    list("optimum_b", inst.opt_b);
    list("terminals", inst.terminals);
    if (is_edge_kind(inst.kind))
        list("edge_labels", std::vector<int>(inst.label_of_edge.begin() + 1, inst.label_of_edge.end()));
}

} // namespace iso
