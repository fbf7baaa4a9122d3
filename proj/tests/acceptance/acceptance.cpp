// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "gen.hpp"

using namespace iso;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        if (ok) note << "first failure: " << why << "; ";
        ok = false;
    }
};

std::uint64_t u64(const BigNat& x) { return static_cast<std::uint64_t>(x); }

// ---- 1 ---------------------------------------------------------------------------

void rank_identity(Outcome& o) {
    for (int x = 2; x <= 10; x += 2) {
        std::size_t r = gf2_rank(compat_matrix(x).bits), want = std::size_t{1} << (x / 2 - 1);
        o.note << "|X|=" << x << ":" << r << " ";
        if (r != want) o.fail("rank " + std::to_string(r) + " at |X|=" + std::to_string(x));
    }
}

// ---- 2 and 3: every connected labelled graph on at most 7 vertices ----------------

struct SmallCorpus {
    template <class F>
    static std::uint64_t each(F&& f) {
        std::uint64_t count = 0;
        for (int n = 1; n <= 7; ++n) {
            std::vector<Edge> pairs;
            for (int a = 1; a <= n; ++a)
                for (int b = a + 1; b <= n; ++b) pairs.emplace_back(a, b);
            const std::uint32_t P = static_cast<std::uint32_t>(pairs.size());
            for (std::uint32_t mask = 0; mask < (1u << P); ++mask) {
                std::vector<std::uint32_t> nb(n + 1, 0);
                for (std::uint32_t i = 0; i < P; ++i)
                    if (mask >> i & 1) nb[pairs[i].first] |= 1u << pairs[i].second, nb[pairs[i].second] |= 1u << pairs[i].first;
                std::uint32_t seen = 2, frontier = 2;
                while (frontier) {
                    std::uint32_t next = 0;
                    for (int v = 1; v <= n; ++v)
                        if (frontier >> v & 1) next |= nb[v];
                    frontier = next & ~seen;
                    seen |= next;
                }
                if (__builtin_popcount(seen) != n) continue;
                std::vector<Edge> es;
                for (std::uint32_t i = 0; i < P; ++i)
                    if (mask >> i & 1) es.push_back(pairs[i]);
                Graph g(n, es);
                ++count;
                if (!f(g)) return count;
            }
        }
        return count;
    }
};

// unique minimum of sum of w over maximum independent sets, by subset scan
bool mis_unique_min(const Graph& g, const std::vector<std::uint64_t>& w) {
    const int n = g.n();
    std::vector<std::uint32_t> nb(n, 0);
    for (auto [a, b] : g.edges()) nb[a - 1] |= 1u << (b - 1), nb[b - 1] |= 1u << (a - 1);
    int best_size = -1, ties = 0;
    std::uint64_t best_w = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool indep = true;
        std::uint64_t sw = 0;
        for (int v = 0; v < n && indep; ++v)
            if (s >> v & 1) {
                if (nb[v] & s) indep = false;
                sw += w[v];
            }
        if (!indep) continue;
        int c = __builtin_popcount(s);
        if (c > best_size || (c == best_size && sw < best_w)) best_size = c, best_w = sw, ties = 1;
        else if (c == best_size && sw == best_w) ++ties;
    }
    return ties == 1;
}

// unique minimum of w over maximum matchings, by DFS over edges
bool mm_unique_min(const Graph& g, const std::vector<std::uint64_t>& w) {
    int best_size = -1, ties = 0;
    std::uint64_t best_w = 0;
    const int m = g.m();
    std::function<void(int, std::uint32_t, int, std::uint64_t)> go = [&](int id, std::uint32_t used, int size, std::uint64_t sw) {
        if (id > m) {
            if (size > best_size || (size == best_size && sw < best_w)) best_size = size, best_w = sw, ties = 1;
            else if (size == best_size && sw == best_w) ++ties;
            return;
        }
        go(id + 1, used, size, sw);
        auto [a, b] = g.edge(id);
        std::uint32_t bits = 1u << a | 1u << b;
        if (!(used & bits)) go(id + 1, used | bits, size + 1, sw + w[id - 1]);
    };
    go(1, 0, 0, 0);
    return ties == 1;
}

void deterministic_mis(Outcome& o) {
    std::uint64_t bad = 0;
    auto count = SmallCorpus::each([&](const Graph& g) {
        auto f = treedepth_exact(g).forest;
        auto w = mis_det_weights(g, f);
        std::vector<std::uint64_t> ws;
        for (auto& x : w.w) ws.push_back(u64(x));
        if (!mis_unique_min(g, ws)) {
            ++bad;
            o.fail(graph_to_string(g));
            return false;
        }
        return true;
    });
    o.note << "graphs=" << count << " failures=" << bad;
}

void deterministic_matching(Outcome& o) {
    std::uint64_t bad = 0;
    auto count = SmallCorpus::each([&](const Graph& g) {
        if (g.m() == 0) return true;
        auto f = treedepth_exact(g).forest;
        auto w = matching_det_weights(g, f);
        std::vector<std::uint64_t> ws;
        for (auto& x : w.w) ws.push_back(u64(x));
        if (!mm_unique_min(g, ws)) {
            ++bad;
            o.fail(graph_to_string(g));
            return false;
        }
        return true;
    });
    o.note << "graphs=" << count << " failures=" << bad;
}

// ---- 4 -----------------------------------------------------------------------------

constexpr std::uint64_t kMisBitsPerLevel = 32; // recorded constant c

void randomized_mis(Outcome& o) {
    gen::Rng r(404);
    double worst = 1, worst_lb = 1;
    std::uint64_t max_bits_ratio_num = 0, max_bits_ratio_den = 1;
    for (int i = 0; i < 30; ++i) {
        int n = gen::uniform(r, 8, 16);
        Graph g = gen::random_connected(r, n, 0.25);
        auto f = treedepth_exact(g, 16).forest;
        int d = f.height();
        auto fam = enumerate_family(Problem::mis, g);
        BigNat cap = BigNat(64) * boost::multiprecision::pow(BigNat(n), 6);
        std::uint64_t succ = 0;
        for (std::uint64_t s = 0; s < 200; ++s) {
            auto lw = mis_rand_weights(n, d, derive_seed(7000 + i, s), MisRandOptions{true});
            auto w = apply_levels(lw, g, f);
            succ += is_isolating(w, fam);
            if (w.random_bits > kMisBitsPerLevel * static_cast<std::uint64_t>(d)) o.fail("random bits above c*d");
            if (w.random_bits * max_bits_ratio_den > max_bits_ratio_num * static_cast<std::uint64_t>(d))
                max_bits_ratio_num = w.random_bits, max_bits_ratio_den = static_cast<std::uint64_t>(d);
            if (w.max_weight() > cap) o.fail("weight above 64 n^6");
        }
        double rate = succ / 200.0;
        worst = std::min(worst, rate);
        worst_lb = std::min(worst_lb, binomial_lower_bound(succ, 200));
        if (rate < 0.5) o.fail("rate " + std::to_string(rate) + " on n=" + std::to_string(n));
    }
    o.note << "min rate=" << worst << " min 99% lower bound=" << worst_lb << " c=" << kMisBitsPerLevel
           << " max bits/d=" << static_cast<double>(max_bits_ratio_num) / static_cast<double>(max_bits_ratio_den);
}

// ---- 5 and 6 ---------------------------------------------------------------------

constexpr std::size_t kHcBitsPerVertex = 32; // recorded constant c'

void general_hc(Outcome& o) {
    gen::Rng r(505);
    SchemeParams sp;
    sp.C = 4;
    double worst = 1, worst_lb = 1, bits_ratio = 0;
    for (int i = 0; i < 20; ++i) {
        int n = gen::uniform(r, 6, 10);
        Graph g = gen::random_hamiltonian(r, n, 0.3);
        auto fam = enumerate_family(Problem::hc, g);
        auto rep = success_rate(fam, [&](std::uint64_t s) { return hc_scheme_sample(HcKind::general, g, sp, s); }, 200,
                                derive_seed(5000, i));
        worst = std::min(worst, rep.rate());
        worst_lb = std::min(worst_lb, binomial_lower_bound(rep.successes, rep.trials));
        bits_ratio = std::max(bits_ratio, static_cast<double>(rep.max_weight_bits) / n);
        if (rep.rate() < 0.5) o.fail("rate " + std::to_string(rep.rate()) + " on n=" + std::to_string(n));
        if (rep.max_weight_bits > kHcBitsPerVertex * static_cast<std::size_t>(n)) o.fail("weight bits above c'n");
    }
    o.note << "C=4 min rate=" << worst << " min 99% lower bound=" << worst_lb << " c'=" << kHcBitsPerVertex
           << " max bits/n=" << bits_ratio;
}

void treewidth_hc(Outcome& o) {
    gen::Rng r(606);
    double worst = 1, worst_lb = 1;
    int max_k = 0;
    for (int i = 0; i < 20; ++i) {
        int n = gen::uniform(r, 5, 12);
        auto wd = gen::windowed_hamiltonian(r, n, 0.5);
        int k = validate_tree_decomposition(wd.g, wd.td);
        max_k = std::max(max_k, k);
        if (k > 3) o.fail("decomposition wider than 3");
        SchemeParams sp;
        sp.k = std::max(k, 1);
        const BigNat M = pow2(sp.C * (static_cast<unsigned>(sp.k) + ceil_log2(static_cast<std::uint64_t>(n))));
        auto plan = hc_plan(HcKind::treewidth, n, sp);
        if (plan.ranges.size() != 3 * ceil_log2(static_cast<std::uint64_t>(n))) o.fail("prime count is not 3 log n");
        for (auto& x : plan.ranges)
            if (x != M) o.fail("prime range differs from the single range M");
        auto fam = enumerate_family(Problem::hc, wd.g);
        bool in_range = true;
        auto rep = success_rate(
            fam,
            [&](std::uint64_t s) {
                auto w = hc_scheme_sample(HcKind::treewidth, wd.g, sp, s);
                for (auto& p : w.primes) in_range &= p <= M && is_prime(p);
                return w;
            },
            200, derive_seed(6000, i));
        if (!in_range) o.fail("prime outside [2, M]");
        worst = std::min(worst, rep.rate());
        worst_lb = std::min(worst_lb, binomial_lower_bound(rep.successes, rep.trials));
        if (rep.rate() < 0.5) o.fail("rate " + std::to_string(rep.rate()) + " on n=" + std::to_string(n));
    }
    o.note << "max width=" << max_k << " min rate=" << worst << " min 99% lower bound=" << worst_lb;
}

// ---- 7 -----------------------------------------------------------------------------

void segment_split(Outcome& o) {
    gen::Rng r(707);
    int tested = 0, max_parts = 0;
    while (tested < 500) {
        Graph t = gen::random_tree(r, gen::uniform(r, 3, 200));
        auto seg = gen::random_segment(r, t);
        std::set<Edge> whole;
        auto inside = [](const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); };
        for (auto e : t.edges())
            if (inside(seg, e.first) && inside(seg, e.second)) whole.insert(e);
        const int l = static_cast<int>(whole.size());
        if (l < 2) continue; // a single edge cannot be halved
        ++tested;
        auto parts = split_segment(t, seg);
        max_parts = std::max(max_parts, static_cast<int>(parts.size()));
        if (parts.size() > 5) o.fail("more than five parts");
        std::set<Edge> seen;
        for (auto& p : parts) {
            int edges = 0, boundary = 0;
            for (auto e : t.edges())
                if (inside(p, e.first) && inside(p, e.second)) {
                    ++edges;
                    if (!seen.insert(e).second) o.fail("edge in two parts");
                }
            for (int v : p)
                for (int u : t.neighbors(v))
                    if (!inside(p, u)) {
                        ++boundary;
                        break;
                    }
            if (2 * edges > l) o.fail("part larger than half");
            if (boundary > 2) o.fail("part with more than two boundary nodes");
            if (edges + 1 != static_cast<int>(p.size())) o.fail("part is not a subtree");
        }
        if (seen != whole) o.fail("parts do not cover the segment's edges");
    }
    o.note << "segments=" << tested << " max parts=" << max_parts;
}

// ---- 8 -----------------------------------------------------------------------------

void gef_conditions(Outcome& o) {
    gen::Rng r(808);
    int max_children = 0, worst_slack = 1 << 20;
    for (int i = 0; i < 50; ++i) {
        Graph g;
        switch (i % 3) {
        case 0: g = gen::random_partial_2tree(r, gen::uniform(r, 8, 64)); break;
        case 1: g = gen::random_tree(r, gen::uniform(r, 8, 64)); break;
        default: g = gen::grid(3, gen::uniform(r, 3, 21)); break;
        }
        Gef gef = build_gef(g);
        auto c = check_gef(g, gef);
        if (!c.ok) o.fail(c.failures.empty() ? "check failed" : c.failures.front());
        // independent re-check of the structural conditions
        int roots = 0;
        for (std::size_t x = 0; x < gef.nodes.size(); ++x) {
            auto& node = gef.nodes[x];
            roots += node.parent < 0;
            max_children = std::max(max_children, static_cast<int>(node.children.size()));
            if (node.children.size() > 7) o.fail("node with more than seven children");
            double cap = static_cast<double>(g.n()) / std::ldexp(1.0, node.depth);
            if (static_cast<double>(gef.subtree_preimage(static_cast<int>(x)).size()) > cap) o.fail("subtree too large");
        }
        if (roots != 1) o.fail("forest has " + std::to_string(roots) + " roots");
        int bound = 1 + static_cast<int>(ceil_log2(static_cast<std::uint64_t>(g.n())));
        worst_slack = std::min(worst_slack, bound - gef.topological_height());
        if (gef.topological_height() > bound) o.fail("topological height above 1 + log n");
        std::vector<int> covered(g.n() + 1, 0);
        for (auto& node : gef.nodes)
            for (int v : node.preimage) ++covered[v];
        for (int v = 1; v <= g.n(); ++v)
            if (covered[v] != 1) o.fail("vertex not mapped to exactly one node");
        if (!is_elim_forest(g, gef.to_elimination_forest())) o.fail("flattened forest is not an elimination forest");
    }
    o.note << "graphs=50 max children=" << max_children << " min height slack=" << worst_slack;
}

// ---- 9 -----------------------------------------------------------------------------

void lower_bounds(Outcome& o) {
    int built = 0;
    for (int rep = 0; rep < 10; ++rep) {
        gen::Rng r(900 + rep);
        std::vector<WeightFunction> ws;
        for (int i = 0; i < 2; ++i) ws.push_back(gen::random_weights(r, Domain::vertex, 12, 1, 12));
        for (LbKind kind : {LbKind::mis, LbKind::steiner, LbKind::mmm, LbKind::hc}) {
            try {
                auto cp = find_colliding_pair(ws, lb_beta(kind), lb_min_k(kind), lb_max_k(kind, 12));
                for (auto& w : ws)
                    if (w.weight(cp.a) != w.weight(cp.b)) o.fail("colliding pair separated");
                auto inst = build_lb_instance(kind, cp.a, cp.b, 12);
                auto v = verify_lb_instance(inst, ws);
                if (!v.ok) o.fail(std::string(to_string(kind)) + ": " + v.diagnosis);
                if (kind == LbKind::hc ? !inst.path_decomposition : !inst.forest) o.fail("missing decomposition");
                ++built;
            } catch (const std::exception& e) {
                o.fail(std::string(to_string(kind)) + " tuple " + std::to_string(rep) + ": " + e.what());
            }
        }
    }
    o.note << "instances built=" << built << "/40";
}

// ---- 10 ----------------------------------------------------------------------------

std::vector<std::uint64_t> ntt_primes(int count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = (std::uint64_t{1} << 20) + 1; static_cast<int>(out.size()) < count; p -= 64)
        if (p < (std::uint64_t{1} << 20) && is_prime_u64(p)) out.push_back(p);
    return out;
}

void finite_field(Outcome& o) {
    auto primes = ntt_primes(3);
    RandomStream rs(1010);
    constexpr std::uint64_t N = 64;
    int polys = 0;
    auto eval_at = [](const std::vector<std::uint64_t>& c, std::uint64_t p) {
        return [&c, p](std::uint64_t x) {
            std::uint64_t acc = 0;
            for (std::size_t i = c.size(); i-- > 0;) acc = (mulmod(acc, x, p) + c[i]) % p;
            return acc;
        };
    };
    for (auto p : primes) {
        std::uint64_t rho = root_of_unity(p, N);
        for (int k = 0; k < 200; ++k, ++polys) {
            std::vector<std::uint64_t> c(N);
            for (auto& x : c) x = rs.uniform(0, p - 1);
            auto P = eval_at(c, p);
            for (std::uint64_t t = 0; t < N; ++t)
                if (dft_coefficient(P, rho, N, t, p) != c[t]) {
                    o.fail("dft mismatch mod " + std::to_string(p));
                    break;
                }
        }
        // full multiplicative group as the evaluation domain
        std::vector<std::uint64_t> c{rs.uniform(0, p - 1), rs.uniform(0, p - 1), rs.uniform(0, p - 1)};
        auto P = eval_at(c, p);
        std::uint64_t g = root_of_unity(p, p - 1);
        for (std::uint64_t t = 0; t < 3; ++t)
            if (dft_coefficient(P, g, p - 1, t, p) != c[t]) o.fail("full-length dft mismatch");
    }
    int crts = 0;
    for (; crts < 1000; ++crts) {
        BigNat x = rs.uniform(BigNat(0), pow2(40) - 1);
        std::vector<Residue> res;
        for (auto p : primes) res.push_back({x % p, BigNat(p)});
        if (crt_reconstruct(res, pow2(40)) != x) o.fail("crt mismatch");
    }
    o.note << "primes=" << primes[0] << "," << primes[1] << "," << primes[2] << " polynomials=" << polys
           << " crt values=" << crts;
}

// ---- 11 ----------------------------------------------------------------------------

void solver_equivalence(Outcome& o) {
    gen::Rng r(1111);
    int positives = 0, unsound = 0, inconclusive = 0, wrong = 0;
    for (int i = 0; i < 50; ++i) {
        int n = gen::uniform(r, 3, 8);
        Graph g = i % 2 ? gen::random_hamiltonian(r, n, 0.2) : gen::random_connected(r, n, 0.2);
        bool ham = !gen::oracle_hc(g).empty();
        positives += ham;
        auto res = solve_hc_deterministic(g);
        if (res.verdict == Verdict::inconclusive) ++inconclusive;
        else if (res.verdict == Verdict::hamiltonian && !ham) ++unsound;
        else if ((res.verdict == Verdict::hamiltonian) != ham) ++wrong;
    }
    if (unsound) o.fail("unsound positives");
    if (inconclusive) o.fail("inconclusive verdicts");
    if (wrong) o.fail("missed cycles");
    o.note << "graphs=50 hamiltonian=" << positives << " unsound=" << unsound << " inconclusive=" << inconclusive
           << " missed=" << wrong;
}

// ---- 12 ----------------------------------------------------------------------------

void exchange(Outcome& o) {
    gen::Rng r(1212);
    int ties_mis = 0, ties_mm = 0;
    for (int i = 0; i < 100; ++i) {
        Graph g = gen::random_connected(r, gen::uniform(r, 2, 8), 0.35);
        auto f = gen::dfs_forest(r, g);
        auto wv = gen::random_weights(r, Domain::vertex, g.n(), 1, 3);
        auto we = gen::random_weights(r, Domain::edge, g.m(), 1, 3);
        ties_mis += !is_isolating(wv, gen::oracle_mis(g));
        ties_mm += !is_isolating(we, enumerate_family(Problem::max_matching, g));
        if (!exchange_check(Problem::mis, g, f, wv)) o.fail("mis: " + graph_to_string(g));
        if (!exchange_check(Problem::max_matching, g, f, we)) o.fail("mm: " + graph_to_string(g));
    }
    o.note << "instances=100 tied MIS=" << ties_mis << " tied MM=" << ties_mm;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        void (*run)(Outcome&);
    };
    const Criterion all[] = {
        {"rank identity", 10, rank_identity},
        {"deterministic MIS isolation", 300, deterministic_mis},
        {"deterministic matching isolation", 300, deterministic_matching},
        {"randomized MIS scheme", 600, randomized_mis},
        {"general HC scheme", 900, general_hc},
        {"treewidth HC scheme", 900, treewidth_hc},
        {"segment splitting", 30, segment_split},
        {"GEF conditions", 600, gef_conditions},
        {"lower-bound pipeline", 300, lower_bounds},
        {"finite-field pipeline", 30, finite_field},
        {"solver oracle equivalence", 600, solver_equivalence},
        {"exchange property", 600, exchange},
    };
    int failed = 0, idx = 0;
    for (auto& c : all) {
        ++idx;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_s) o.fail("runtime over " + std::to_string(static_cast<int>(c.limit_s)) + " s");
        failed += !o.ok;
        std::printf("%s %2d %s: %s (%.1f s)\n", o.ok ? "PASS" : "FAIL", idx, c.name, o.note.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
