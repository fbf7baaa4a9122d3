#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "iso/graph.hpp"

namespace iso {

// A segment of a tree T is a connected node set I whose boundary (nodes of I
// with a neighbour outside I) has at most two nodes. Its size is |E(T[I])|.

inline bool is_tree(const Graph& t) { return t.n() >= 1 && t.m() == t.n() - 1 && is_connected(t); }

inline VertexSet segment_boundary(const Graph& t, const VertexSet& seg) {
    std::vector<char> in(t.n() + 1, 0);
    for (int v : seg) in.at(v) = 1;
    VertexSet b;
    for (int v : seg)
        for (int u : t.neighbors(v))
            if (!in[u]) {
                b.push_back(v);
                break;
            }
    return b;
}

inline int segment_size(const Graph& t, const VertexSet& seg) {
    std::vector<char> in(t.n() + 1, 0);
    for (int v : seg) in.at(v) = 1;
    int c = 0;
    for (auto [u, v] : t.edges())
        if (in[u] && in[v]) ++c;
    return c;
}

inline bool is_segment(const Graph& t, const VertexSet& seg) {
    if (seg.empty() || !std::is_sorted(seg.begin(), seg.end())) return false;
    if (std::adjacent_find(seg.begin(), seg.end()) != seg.end()) return false;
    if (seg.front() < 1 || seg.back() > t.n()) return false;
    return connected_components(t, seg).size() == 1 && segment_boundary(t, seg).size() <= 2;
}

namespace detail {

// nodes of the component of T[I] - z that contains x
inline VertexSet branch(const Graph& t, const std::vector<char>& in, int z, int x) {
    VertexSet s{x};
    std::vector<char> seen(t.n() + 1, 0);
    seen[x] = seen[z] = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (int u : t.neighbors(s[i]))
            if (in[u] && !seen[u]) {
                seen[u] = 1;
                s.push_back(u);
            }
    std::sort(s.begin(), s.end());
    return s;
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

inline VertexSet tree_path(const Graph& t, const std::vector<char>& in, int a, int b) {
    std::vector<int> par(t.n() + 1, -1);
    std::vector<int> q{a};
    par[a] = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (int u : t.neighbors(q[i]))
            if (in[u] && par[u] < 0) {
                par[u] = q[i];
                q.push_back(u);
            }
    VertexSet p;
    for (int x = b; x; x = par[x]) p.push_back(x);
    std::reverse(p.begin(), p.end()); // a ... b
    return p;
}

// Split J at the median d of its three boundary nodes so that every piece
// keeps d plus at most one of them.
inline std::vector<VertexSet> split_three(const Graph& t, const VertexSet& J, const VertexSet& bd) {
    std::vector<char> in(t.n() + 1, 0);
    for (int v : J) in[v] = 1;
    int a = bd[0], b = bd[1], c = bd[2];
    auto pab = tree_path(t, in, a, b), pac = tree_path(t, in, a, c);
    std::size_t i = 0;
    while (i + 1 < pab.size() && i + 1 < pac.size() && pab[i + 1] == pac[i + 1]) ++i;
    int d = pab[i];
    std::vector<VertexSet> groups(3);
    for (int x : t.neighbors(d)) {
        if (!in[x]) continue;
        auto comp = branch(t, in, d, x);
        int g = 0;
        for (int k = 0; k < 3; ++k)
            if (std::binary_search(comp.begin(), comp.end(), bd[k])) g = k;
        groups[g] = set_union(groups[g], comp);
    }
    for (auto& gset : groups) gset = set_union(gset, VertexSet{d});
    return groups;
}

} // namespace detail

// Partition a segment of size >= 2 into at most five edge-disjoint segments,
// each of size at most half the original.
inline std::vector<VertexSet> split_segment(const Graph& t, const VertexSet& I) {
    if (!is_tree(t)) throw PreconditionError("split_segment: input graph is not a tree");
    if (!is_segment(t, I)) throw PreconditionError("split_segment: node set is not a segment");
    const int ell = segment_size(t, I);
    if (ell < 2) throw PreconditionError("split_segment: segment size must be at least 2");

    std::vector<char> in(t.n() + 1, 0);
    for (int v : I) in[v] = 1;

    // edge-centroid z: every branch at z has at most as many edges as the rest
    int z = -1;
    std::vector<std::pair<int, VertexSet>> branches; // (neighbour x, branch nodes)
    for (int cand : I) {
        std::vector<std::pair<int, VertexSet>> bs;
        bool ok = true;
        for (int x : t.neighbors(cand)) {
            if (!in[x]) continue;
            auto br = detail::branch(t, in, cand, x);
            int sx = static_cast<int>(br.size()) - 1;
            if (sx > ell - 1 - sx) {
                ok = false;
                break;
            }
            bs.emplace_back(x, std::move(br));
        }
        if (ok) {
            z = cand;
            branches = std::move(bs);
            break;
        }
    }
    if (z < 0) throw IntegrityError("split_segment: no edge-centroid");

    std::vector<VertexSet> parts;
    bool corner = false;
    for (auto& [x, br] : branches) {
        int hat = static_cast<int>(br.size()); // edges of branch plus xz
        if (2 * hat > ell) {
            VertexSet rest;
            std::set_difference(I.begin(), I.end(), br.begin(), br.end(), std::back_inserter(rest));
            parts = {br, rest, VertexSet{std::min(x, z), std::max(x, z)}};
            corner = true;
            break;
        }
    }
    if (!corner) {
        for (auto& [x, br] : branches) parts.push_back(detail::set_union(br, VertexSet{z}));
        auto edges = [](const VertexSet& s) { return static_cast<int>(s.size()) - 1; };
        for (;;) {
            std::sort(parts.begin(), parts.end(), [&](const VertexSet& a, const VertexSet& b) {
                return edges(a) != edges(b) ? edges(a) < edges(b) : a < b;
            });
            if (parts.size() < 2 || 2 * (edges(parts[0]) + edges(parts[1])) > ell) break;
            auto merged = detail::set_union(parts[0], parts[1]);
            parts.erase(parts.begin(), parts.begin() + 2);
            parts.push_back(std::move(merged));
        }
    }

    std::vector<VertexSet> out;
    for (auto& J : parts) {
        auto bd = segment_boundary(t, J);
        if (bd.size() <= 2) {
            out.push_back(J);
        } else if (bd.size() == 3) {
            for (auto& piece : detail::split_three(t, J, bd)) out.push_back(std::move(piece));
        } else {
            throw IntegrityError("split_segment: part with " + std::to_string(bd.size()) + " boundary nodes");
        }
    }
    std::erase_if(out, [](const VertexSet& s) { return s.size() < 2; });
    std::sort(out.begin(), out.end());

    if (out.size() > 5) throw IntegrityError("split_segment: more than five parts");
    int total = 0;
    for (auto& s : out) {
        if (!is_segment(t, s) || 2 * segment_size(t, s) > ell) throw IntegrityError("split_segment: bad part");
        total += segment_size(t, s);
    }
    if (total != ell) throw IntegrityError("split_segment: parts do not cover the segment's edges exactly once");
    return out;
}

} // namespace iso
