#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "iso/graph.hpp"

namespace iso {

// Bags are numbered 1..B; bags[0] is unused.
struct TreeDecomposition {
    int n = 0;
    std::vector<VertexSet> bags{VertexSet{}};
    std::vector<Edge> tree_edges;

    int num_bags() const { return static_cast<int>(bags.size()) - 1; }
    int width() const {
        std::size_t w = 0;
        for (const auto& b : bags) w = std::max(w, b.size());
        return static_cast<int>(w) - 1;
    }
};

// Returns the width.
inline int validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    const int B = td.num_bags();
    if (td.n != g.n()) throw ValidationError("decomposition is over a different vertex count");
    if (B == 0) {
        if (g.n() > 0) throw ValidationError("decomposition has no bags");
        return -1;
    }
    // bag tree must be a tree
    if (static_cast<int>(td.tree_edges.size()) != B - 1) throw ValidationError("bag graph is not a tree (edge count)");
    std::vector<Edge> te;
    for (auto [a, b] : td.tree_edges) {
        if (a < 1 || b < 1 || a > B || b > B || a == b) throw ValidationError("bad bag tree edge");
        te.emplace_back(a, b);
    }
    Graph tree(B, te);
    if (!is_connected(tree)) throw ValidationError("bag graph is not connected");
    std::vector<std::vector<int>> holds(g.n() + 1);
    for (int b = 1; b <= B; ++b)
        for (int v : td.bags[b]) {
            if (v < 1 || v > g.n()) throw ValidationError("bag " + std::to_string(b) + " holds unknown vertex");
            holds[v].push_back(b);
        }
    for (int v = 1; v <= g.n(); ++v) {
        if (holds[v].empty()) throw ValidationError("vertex " + std::to_string(v) + " is in no bag");
        std::sort(holds[v].begin(), holds[v].end());
        if (connected_components(tree, holds[v]).size() != 1)
            throw ValidationError("bags holding vertex " + std::to_string(v) + " are not connected");
    }
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (int b : holds[u])
            if (std::binary_search(holds[v].begin(), holds[v].end(), b)) ok = true;
        if (!ok) throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is in no bag");
    }
    return td.width();
}

inline bool is_path_shaped(const TreeDecomposition& td) {
    std::vector<int> deg(td.num_bags() + 1, 0);
    for (auto [a, b] : td.tree_edges) {
        if (++deg.at(a) > 2 || ++deg.at(b) > 2) return false;
    }
    return true;
}

inline TreeDecomposition path_decomposition(int n, std::vector<VertexSet> bags) {
    TreeDecomposition td;
    td.n = n;
    for (auto& b : bags) {
        std::sort(b.begin(), b.end());
        td.bags.push_back(std::move(b));
    }
    for (int i = 1; i < td.num_bags(); ++i) td.tree_edges.emplace_back(i, i + 1);
    return td;
}

// Min-degree elimination heuristic. Bag i holds the i-th eliminated vertex and
// its neighbours at that moment; it hangs below the bag of the neighbour
// eliminated next.
inline TreeDecomposition min_degree_decomposition(const Graph& g) {
    const int n = g.n();
    TreeDecomposition td;
    td.n = n;
    if (n == 0) return td;
    std::vector<std::vector<char>> adj(n + 1, std::vector<char>(n + 1, 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<char> gone(n + 1, 0);
    std::vector<int> order, pos(n + 1, 0);
    std::vector<VertexSet> nb(n + 1);
    for (int step = 0; step < n; ++step) {
        int best = -1, bd = n + 1;
        for (int v = 1; v <= n; ++v) {
            if (gone[v]) continue;
            int d = 0;
            for (int u = 1; u <= n; ++u) d += !gone[u] && adj[v][u];
            if (d < bd) bd = d, best = v;
        }
        int v = best;
        for (int u = 1; u <= n; ++u)
            if (!gone[u] && adj[v][u]) nb[v].push_back(u);
        for (int a : nb[v])
            for (int b : nb[v])
                if (a != b) adj[a][b] = 1;
        gone[v] = 1;
        pos[v] = step;
        order.push_back(v);
    }
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        VertexSet bag = nb[v];
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
    }
    // bag index = position + 1
    for (int i = 0; i < n; ++i) {
        int v = order[i], next = -1;
        for (int u : nb[v])
            if (next < 0 || pos[u] < pos[next]) next = u;
        if (next >= 0) td.tree_edges.emplace_back(i + 1, pos[next] + 1);
        else if (i + 1 < n) td.tree_edges.emplace_back(i + 1, n); // join components at the last bag
    }
    return td;
}

inline int treewidth_upper_bound(const Graph& g) { return std::max(min_degree_decomposition(g).width(), 0); }

// ---- .td format ---------------------------------------------------------
// "s td <bags> <w+1> <n>", "b <id> <v>...", then "<x> <y>" tree edges.

inline TreeDecomposition parse_tree_decomposition(std::istream& in) {
    std::string line;
    int ln = 0;
    bool header = false;
    TreeDecomposition td;
    int nb = 0, declared_w = 0;
    while (std::getline(in, line)) {
        ++ln;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c') continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (!header) {
            std::string fmt;
            if (tok != "s" || !(ls >> fmt >> nb >> declared_w >> td.n) || fmt != "td" || nb < 0 || td.n < 0)
                throw ParseError(ParseErrorKind::malformed_header, ln, "expected 's td <bags> <w+1> <n>'");
            td.bags.assign(nb + 1, {});
            header = true;
            continue;
        }
        if (tok == "b") {
            int id;
            if (!(ls >> id) || id < 1 || id > nb) throw ParseError(ParseErrorKind::malformed_line, ln, line);
            int v;
            while (ls >> v) {
                if (v < 1 || v > td.n) throw ParseError(ParseErrorKind::vertex_out_of_range, ln, line);
                td.bags[id].push_back(v);
            }
            if (!ls.eof()) throw ParseError(ParseErrorKind::malformed_line, ln, line);
            std::sort(td.bags[id].begin(), td.bags[id].end());
        } else {
            std::istringstream es(line);
            int a, b;
            std::string extra;
            if (!(es >> a >> b) || (es >> extra)) throw ParseError(ParseErrorKind::malformed_line, ln, line);
            if (a < 1 || b < 1 || a > nb || b > nb) throw ParseError(ParseErrorKind::vertex_out_of_range, ln, line);
            td.tree_edges.emplace_back(a, b);
        }
    }
    if (!header) throw ParseError(ParseErrorKind::malformed_header, ln, "missing 's td' line");
    if (nb > 0 && td.width() + 1 > declared_w)
        throw ParseError(ParseErrorKind::count_mismatch, ln, "a bag is larger than the declared width");
    return td;
}

inline TreeDecomposition read_tree_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(ParseErrorKind::io, 0, "cannot open " + path);
    return parse_tree_decomposition(in);
}

inline void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td) {
    out << "s td " << td.num_bags() << ' ' << td.width() + 1 << ' ' << td.n << '\n';
    for (int b = 1; b <= td.num_bags(); ++b) {
        out << "b " << b;
        for (int v : td.bags[b]) out << ' ' << v;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a << ' ' << b << '\n';
}

} // namespace iso
