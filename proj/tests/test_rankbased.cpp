#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "gen.hpp"

using namespace iso;

namespace {

VertexSet iota_set(int k) {
    VertexSet x(k);
    std::iota(x.begin(), x.end(), 1);
    return x;
}

// number of cycles in the multigraph union of two perfect matchings
int union_cycles(const std::vector<Edge>& a, const std::vector<Edge>& b, int n) {
    std::vector<int> parent(n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
    for (auto* m : {&a, &b})
        for (auto [u, v] : *m) parent[find(u)] = find(v);
    std::set<int> roots;
    for (auto [u, v] : a) roots.insert(find(u));
    return static_cast<int>(roots.size());
}

std::vector<std::vector<int>> dense(const BitMatrix& m) {
    std::vector<std::vector<int>> d(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m.get(i, j);
    return d;
}

} // namespace

TEST(CompatMatrix, TwoByTwo) {
    auto cm = compat_matrix(2);
    ASSERT_EQ(cm.bits.rows(), 1u);
    EXPECT_TRUE(cm.bits.get(0, 0));
}

TEST(CompatMatrix, FourIsZeroDiagonalOnesElsewhere) {
    auto cm = compat_matrix(4);
    ASSERT_EQ(cm.bits.rows(), 3u);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_EQ(cm.bits.get(i, j), i != j);
    EXPECT_EQ(gf2_rank(cm.bits), 2u);
}

TEST(CompatMatrix, SixIsSymmetric15) {
    auto cm = compat_matrix(6);
    ASSERT_EQ(cm.bits.rows(), 15u);
    for (int i = 0; i < 15; ++i) {
        EXPECT_FALSE(cm.bits.get(i, i));
        for (int j = 0; j < 15; ++j) EXPECT_EQ(cm.bits.get(i, j), cm.bits.get(j, i));
    }
}

TEST(CompatMatrix, OddBoundaryRejected) {
    EXPECT_THROW(compat_matrix(3), PreconditionError);
    EXPECT_THROW(compat_matrix(14), SizeRefused);
}

TEST(CompatMatrix, EntriesMatchCycleCount) {
    for (int k : {4, 6, 8}) {
        auto cm = compat_matrix(k);
        for (std::size_t i = 0; i < cm.matchings.size(); ++i)
            for (std::size_t j = 0; j < cm.matchings.size(); ++j)
                ASSERT_EQ(cm.bits.get(i, j), union_cycles(cm.matchings[i], cm.matchings[j], k) == 1);
    }
}

TEST(CompatMatrix, MatchingOrderIsLexicographic) {
    auto cm = compat_matrix(6);
    for (std::size_t i = 1; i < cm.matchings.size(); ++i) EXPECT_LT(cm.matchings[i - 1], cm.matchings[i]);
}

TEST(Rank, Identity) {
    for (int k : {2, 4, 6, 8, 10}) EXPECT_EQ(gf2_rank(compat_matrix(k).bits), std::size_t{1} << (k / 2 - 1)) << k;
}

TEST(Rank, SmallCasesAgreeWithPlainElimination) {
    for (int k : {2, 4, 6, 8}) {
        auto cm = compat_matrix(iota_set(k));
        EXPECT_EQ(static_cast<int>(gf2_rank(cm.bits)), gen::oracle_rank(dense(cm.bits)));
    }
}

TEST(Rank, TrivialMatrices) {
    BitMatrix id(70, 70), zero(5, 9);
    for (int i = 0; i < 70; ++i) id.set(i, i);
    EXPECT_EQ(gf2_rank(id), 70u);
    EXPECT_EQ(gf2_rank(zero), 0u);
}

TEST(Rank, RandomMatricesAgreeWithOracle) {
    gen::Rng r(1);
    for (int rep = 0; rep < 100; ++rep) {
        int rows = gen::uniform(r, 1, 90), cols = gen::uniform(r, 1, 140);
        BitMatrix m(rows, cols);
        double p = gen::uniform(r, 1, 9) / 10.0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (gen::coin(r, p)) m.set(i, j);
        ASSERT_EQ(static_cast<int>(gf2_rank(m)), gen::oracle_rank(dense(m)));
    }
}

TEST(Rank, DumpFormat) {
    BitMatrix m(2, 5);
    m.set(0, 0);
    m.set(1, 4);
    std::ostringstream ss;
    write_bit_matrix(ss, m);
    EXPECT_EQ(ss.str(), "2 5\n80\n08\n");
}

TEST(MinSolutions, BoundFormula) {
    EXPECT_EQ(min_solution_bound(0), 1);
    EXPECT_EQ(min_solution_bound(1), 2);  // floor(3 / sqrt 2)
    EXPECT_EQ(min_solution_bound(2), 9);
    EXPECT_EQ(min_solution_bound(3), 38); // floor(27 * sqrt 2)
    EXPECT_EQ(min_solution_bound(4), 162);
}

TEST(MinSolutions, EmptyBoundary) {
    gen::Rng r(2);
    for (int rep = 0; rep < 10; ++rep) {
        Graph g = gen::random_hamiltonian(r, gen::uniform(r, 3, 7), 0.3);
        auto w = gen::random_weights(r, Domain::edge, g.m(), 1, 1000);
        auto rep_ = min_solution_count_check(g, {}, w);
        EXPECT_LE(rep_.count, 1u);
        EXPECT_TRUE(rep_.holds);
    }
}

TEST(MinSolutions, BoundHoldsWithInjectiveWeights) {
    gen::Rng r(3);
    int checked = 0;
    for (int rep = 0; rep < 30; ++rep) {
        Graph g = gen::random_connected(r, gen::uniform(r, 5, 8), 0.35);
        if (g.m() > 16) continue;
        std::vector<BigNat> w;
        for (int id = 1; id <= g.m(); ++id) w.push_back(pow2(id)); // distinct subset sums
        std::vector<int> perm(g.m());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), r);
        std::vector<BigNat> shuffled(g.m());
        for (int i = 0; i < g.m(); ++i) shuffled[i] = w[perm[i]];
        VertexSet x;
        for (int v : gen::random_perm(r, g.n())) {
            if (v && x.size() < 4) x.push_back(v);
        }
        std::sort(x.begin(), x.end());
        auto rep_ = min_solution_count_check(g, x, plain_weights(Domain::edge, shuffled));
        ASSERT_TRUE(rep_.precondition);
        EXPECT_TRUE(rep_.holds) << rep_.count << " > " << rep_.bound;
        ++checked;
    }
    EXPECT_GT(checked, 15);
}

TEST(MinSolutions, ZeroWeightsViolatePrecondition) {
    Graph k5 = gen::complete(5);
    auto rep_ = min_solution_count_check(k5, {1, 2}, plain_weights(Domain::edge, std::vector<BigNat>(10, 0)));
    EXPECT_FALSE(rep_.precondition);
    ASSERT_TRUE(rep_.violating.has_value());
    auto ms = min_compliant(plain_weights(Domain::edge, std::vector<BigNat>(10, 0)), Subgraph::whole(k5), *rep_.violating);
    EXPECT_GE(ms.sets.size(), 2u);
}

TEST(MinSolutions, RealizedRowsAreIndependent) {
    // Rows of the block matrix indexed by the configurations of the acyclic
    // members of K are linearly independent over GF(2).
    gen::Rng r(4);
    int checked = 0;
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = gen::random_connected(r, gen::uniform(r, 4, 7), 0.4);
        if (g.m() > 14) continue;
        std::vector<BigNat> w;
        for (int id : gen::random_perm(r, g.m()))
            if (id) w.push_back(pow2(id));
        auto wf = plain_weights(Domain::edge, w);
        VertexSet x;
        for (int v = 1; v <= g.n(); ++v)
            if (gen::coin(r, 0.6) && x.size() < 6) x.push_back(v);
        auto table = min_compliant_all(wf, Subgraph::whole(g), x);
        std::set<EdgeSet> k;
        for (auto& [c, ms] : table) {
            ASSERT_LE(ms.sets.size(), 1u);
            for (auto& s : ms.sets) k.insert(s);
        }
        auto columns = all_configurations(x);
        std::vector<std::vector<int>> rows;
        for (auto& s : k) {
            Configuration own;
            try {
                own = configuration_of(g, s, x);
            } catch (const ValidationError&) {
                continue; // a whole cycle has no configuration of its own
            }
            std::vector<int> row;
            for (auto& d : columns) {
                bool block = own.v2 == d.v0 && own.v1 == d.v1 && own.v0 == d.v2;
                bool entry = false;
                if (block) entry = own.v1.empty() ? true : union_cycles(own.m, d.m, g.n()) == 1;
                row.push_back(entry);
            }
            rows.push_back(row);
        }
        if (rows.empty()) continue;
        ASSERT_EQ(gen::oracle_rank(rows), static_cast<int>(rows.size())) << graph_to_string(g);
        ++checked;
    }
    EXPECT_GT(checked, 10);
}
