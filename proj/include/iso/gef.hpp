#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/forest.hpp"
#include "iso/graph.hpp"

namespace iso {

namespace detail {

inline bool balanced_mask(const std::vector<std::uint64_t>& nbr, std::uint64_t all, std::uint64_t x, std::uint64_t s,
                          int cap) {
    for (auto c : components_mask(nbr, all & ~x))
        if (__builtin_popcountll(c & s) > cap) return false;
    return true;
}

inline bool combos(int n, int k, int start, std::uint64_t cur, const std::function<bool(std::uint64_t)>& f) {
    if (k == 0) return f(cur);
    for (int v = start; v <= n - k; ++v)
        if (combos(n, k - 1, v + 1, cur | (std::uint64_t{1} << v), f)) return true;
    return false;
}

} // namespace detail

// Is every component of G - X holding at most floor(|S|/2) vertices of S?
inline bool is_balanced_separator(const Graph& g, const VertexSet& s, const VertexSet& x) {
    auto nbr = neighbor_masks(g);
    std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
    return detail::balanced_mask(nbr, all, to_mask(x), to_mask(s), static_cast<int>(s.size()) / 2);
}

// Minimum-cardinality balanced separator by exhaustive search, lexicographically
// first among the minimum ones.
inline VertexSet balanced_separator(const Graph& g, const VertexSet& s) {
    if (g.n() > 64) throw SizeRefused("balanced_separator: n > 64");
    auto nbr = neighbor_masks(g);
    std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
    std::uint64_t sm = to_mask(s);
    int cap = static_cast<int>(s.size()) / 2;
    std::uint64_t found = 0;
    for (int k = 0; k <= g.n(); ++k) {
        bool hit = detail::combos(g.n(), k, 0, 0, [&](std::uint64_t x) {
            if (!detail::balanced_mask(nbr, all, x, sm, cap)) return false;
            found = x;
            return true;
        });
        if (hit) return from_mask(found);
    }
    throw IntegrityError("balanced_separator: V(G) itself should always qualify");
}

using SeparatorOracle = std::function<VertexSet(const Graph&, const VertexSet&)>;

struct GefNode {
    int parent = -1;
    int depth = 0;
    VertexSet preimage;       // eta^{-1}(x)
    std::vector<int> children;
    // diagnostics from the construction step that created this node
    int subtree_vertices = 0; // |A|
    int boundary_vertices = 0; // |N(A)|
    int separator_a = 0;       // |X|
    int separator_s = 0;       // |Y|
};

struct Gef {
    int n = 0;
    std::vector<GefNode> nodes;
    std::vector<int> eta; // vertex -> node, index 0 unused

    int topological_height() const {
        int h = 0;
        for (auto& x : nodes) h = std::max(h, x.depth + 1);
        return h;
    }

    // max over root-to-node paths of the total preimage size
    int height() const {
        std::vector<int> acc(nodes.size(), 0);
        int h = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) { // parents precede children
            int up = nodes[i].parent < 0 ? 0 : acc[nodes[i].parent];
            acc[i] = up + static_cast<int>(nodes[i].preimage.size());
            h = std::max(h, acc[i]);
        }
        return h;
    }

    VertexSet subtree_preimage(int x) const {
        VertexSet r;
        std::vector<int> st{x};
        while (!st.empty()) {
            int y = st.back();
            st.pop_back();
            r.insert(r.end(), nodes[y].preimage.begin(), nodes[y].preimage.end());
            for (int c : nodes[y].children) st.push_back(c);
        }
        std::sort(r.begin(), r.end());
        return r;
    }

    bool node_is_ancestor(int a, int x) const {
        while (x >= 0 && x != a) x = nodes[x].parent;
        return x == a;
    }

    // Each node's preimage becomes a path, hung below the last vertex placed above it.
    EliminationForest to_elimination_forest() const {
        std::vector<int> parent(n + 1, 0), attach(nodes.size(), 0);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            int above = nodes[i].parent < 0 ? 0 : attach[nodes[i].parent];
            for (int v : nodes[i].preimage) {
                parent[v] = above;
                above = v;
            }
            attach[i] = above;
        }
        return EliminationForest(parent);
    }
};

struct GefCheck {
    bool ok = true;
    std::vector<std::string> failures;
    int max_children = 0;
    int topological_height = 0;
    int height_bound = 0;
};

inline GefCheck check_gef(const Graph& g, const Gef& gef) {
    GefCheck c;
    auto fail = [&](std::string s) {
        c.ok = false;
        c.failures.push_back(std::move(s));
    };
    int roots = 0;
    std::vector<int> owner(g.n() + 1, -1);
    for (std::size_t i = 0; i < gef.nodes.size(); ++i) {
        const auto& x = gef.nodes[i];
        if (x.parent < 0) ++roots;
        c.max_children = std::max(c.max_children, static_cast<int>(x.children.size()));
        for (int v : x.preimage) {
            if (owner.at(v) >= 0) fail("vertex " + std::to_string(v) + " mapped twice");
            owner[v] = static_cast<int>(i);
        }
    }
    for (int v = 1; v <= g.n(); ++v)
        if (owner[v] < 0 || gef.eta.at(v) != owner[v]) fail("vertex " + std::to_string(v) + " not mapped consistently");
    if (!c.ok) return c;
    for (auto [u, v] : g.edges())
        if (!gef.node_is_ancestor(owner[u], owner[v]) && !gef.node_is_ancestor(owner[v], owner[u]))
            fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") spans incomparable nodes");
    if (g.n() > 0 && roots != 1) fail("expected one root, found " + std::to_string(roots));
    if (c.max_children > 7) fail("a node has " + std::to_string(c.max_children) + " children");
    c.topological_height = gef.topological_height();
    c.height_bound = 1 + static_cast<int>(ceil_log2(static_cast<std::uint64_t>(std::max(g.n(), 1))));
    if (c.topological_height > c.height_bound)
        fail("topological height " + std::to_string(c.topological_height) + " > " + std::to_string(c.height_bound));
    for (std::size_t i = 0; i < gef.nodes.size(); ++i) {
        auto sz = static_cast<long long>(gef.subtree_preimage(static_cast<int>(i)).size());
        if ((sz << gef.nodes[i].depth) > g.n())
            fail("node " + std::to_string(i) + " at depth " + std::to_string(gef.nodes[i].depth) + " covers " +
                 std::to_string(sz) + " vertices");
    }
    return c;
}

// Recursive separator-based construction. For the current vertex set A the
// step works in H' = G[N[A]], separates A and N(A) in H', and groups the
// remaining components into at most seven parts.
inline Gef build_gef(const Graph& g, const SeparatorOracle& oracle = balanced_separator) {
    if (g.n() > 64) throw SizeRefused("build_gef: n > 64");
    Gef gef;
    gef.n = g.n();
    gef.eta.assign(g.n() + 1, -1);
    struct Job {
        VertexSet a;
        int parent;
        int depth;
    };
    std::vector<Job> queue{{all_vertices(g), -1, 0}};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        Job job = queue[qi];
        const VertexSet& A = job.a;
        VertexSet NA = closed_neighborhood(g, A);
        VertexSet S;
        std::set_difference(NA.begin(), NA.end(), A.begin(), A.end(), std::back_inserter(S));
        auto h = induced_subgraph(g, NA);
        std::vector<int> local(g.n() + 1, 0);
        for (int i = 1; i < static_cast<int>(h.to_parent.size()); ++i) local[h.to_parent[i]] = i;
        VertexSet aloc, sloc;
        for (int v : A) aloc.push_back(local[v]);
        for (int v : S) sloc.push_back(local[v]);

        VertexSet X = oracle(h.graph, aloc), Y = oracle(h.graph, sloc);
        for (auto* sep : {&X, &Y}) {
            std::sort(sep->begin(), sep->end());
            for (int v : *sep)
                if (v < 1 || v > h.graph.n()) throw IntegrityError("build_gef: oracle returned a vertex outside H'");
        }
        if (!is_balanced_separator(h.graph, aloc, X) || !is_balanced_separator(h.graph, sloc, Y))
            throw IntegrityError("build_gef: oracle output is not a balanced separator");

        std::uint64_t zm = to_mask(X) | to_mask(Y), am = to_mask(aloc), sm = to_mask(sloc);
        GefNode node;
        node.parent = job.parent;
        node.depth = job.depth;
        for (int v : from_mask(zm & am)) node.preimage.push_back(h.to_parent[v]);
        std::sort(node.preimage.begin(), node.preimage.end());
        node.subtree_vertices = static_cast<int>(A.size());
        node.boundary_vertices = static_cast<int>(S.size());
        node.separator_a = static_cast<int>(X.size());
        node.separator_s = static_cast<int>(Y.size());
        int id = static_cast<int>(gef.nodes.size());
        for (int v : node.preimage) gef.eta[v] = id;
        if (job.parent >= 0) gef.nodes[job.parent].children.push_back(id);
        gef.nodes.push_back(std::move(node));

        std::uint64_t hall = h.graph.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h.graph.n()) - 1;
        auto parts = components_mask(neighbor_masks(h.graph), hall & ~zm);
        const long long na = static_cast<long long>(aloc.size()), ns = static_cast<long long>(sloc.size());
        auto bad = [&](std::uint64_t p) {
            return 4LL * __builtin_popcountll(p & am) > na || (ns > 0 && 4LL * __builtin_popcountll(p & sm) > ns);
        };
        auto mass = [&](std::uint64_t p) {
            return __builtin_popcountll(p & am) * std::max(ns, 1LL) + __builtin_popcountll(p & sm) * na;
        };
        while (parts.size() > 7) {
            std::vector<std::size_t> good;
            for (std::size_t i = 0; i < parts.size(); ++i)
                if (!bad(parts[i])) good.push_back(i);
            if (good.size() < 2) throw IntegrityError("build_gef: grouping found fewer than two light parts");
            std::sort(good.begin(), good.end(), [&](std::size_t i, std::size_t j) {
                return mass(parts[i]) != mass(parts[j]) ? mass(parts[i]) < mass(parts[j]) : i < j;
            });
            std::size_t i = std::min(good[0], good[1]), j = std::max(good[0], good[1]);
            parts[i] |= parts[j];
            parts.erase(parts.begin() + static_cast<long>(j));
        }
        for (auto p : parts)
            if (2LL * __builtin_popcountll(p & am) > na || 2LL * __builtin_popcountll(p & sm) > ns)
                throw IntegrityError("build_gef: a grouped part holds more than half of A or of N(A)");
        for (auto p : parts) {
            std::uint64_t pa = p & am;
            if (!pa) continue;
            VertexSet child;
            for (int v : from_mask(pa)) child.push_back(h.to_parent[v]);
            std::sort(child.begin(), child.end());
            queue.push_back({std::move(child), id, job.depth + 1});
        }
    }
    return gef;
}

inline void write_gef(std::ostream& out, const Gef& gef) {
    out << "gef nodes=" << gef.nodes.size() << " height=" << gef.height()
        << " topological_height=" << gef.topological_height() << '\n';
    for (std::size_t i = 0; i < gef.nodes.size(); ++i) {
        const auto& x = gef.nodes[i];
        out << "node " << i << " parent=" << x.parent << " depth=" << x.depth << " A=" << x.subtree_vertices
            << " NA=" << x.boundary_vertices << " X=" << x.separator_a << " Y=" << x.separator_s << " preimage=";
        for (std::size_t k = 0; k < x.preimage.size(); ++k) out << (k ? "," : "") << x.preimage[k];
        out << '\n';
    }
}

} // namespace iso
