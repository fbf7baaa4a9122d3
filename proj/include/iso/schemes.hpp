#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/forest.hpp"
#include "iso/graph.hpp"
#include "iso/number_theory.hpp"
#include "iso/rng.hpp"
#include "iso/weights.hpp"

namespace iso {

enum class HcKind { general, treewidth, separable, parametric };

inline const char* to_string(HcKind k) {
    switch (k) {
    case HcKind::general: return "general";
    case HcKind::treewidth: return "treewidth";
    case HcKind::separable: return "separable";
    case HcKind::parametric: return "parametric";
    }
    return "?";
}

inline HcKind parse_hc_kind(const std::string& s) {
    if (s == "general") return HcKind::general;
    if (s == "treewidth") return HcKind::treewidth;
    if (s == "separable") return HcKind::separable;
    if (s == "parametric") return HcKind::parametric;
    throw PreconditionError("unknown HC scheme kind '" + s + "'");
}

struct Rational {
    long num = 1, den = 2;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// "p/q" or a decimal such as "0.5"
inline Rational parse_rational(const std::string& s) {
    Rational r;
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            r.num = std::stol(s.substr(0, slash));
            r.den = std::stol(s.substr(slash + 1));
        } else {
            auto dot = s.find('.');
            std::string digits = dot == std::string::npos ? s : s.substr(0, dot) + s.substr(dot + 1);
            r.num = std::stol(digits);
            r.den = 1;
            if (dot != std::string::npos)
                for (std::size_t i = dot + 1; i < s.size(); ++i) r.den *= 10;
        }
    } catch (const std::exception&) {
        throw PreconditionError("not a rational: '" + s + "'");
    }
    if (r.den <= 0) throw PreconditionError("not a rational: '" + s + "'");
    return r;
}

inline constexpr unsigned kDefaultC = 4;

struct SchemeParams {
    unsigned C = kDefaultC;
    Rational alpha{1, 2};        // separable kind, must lie in (0,1)
    int k = -1;                  // treewidth kind
    std::optional<BigNat> M;     // parametric kind
};

// One prime per slot. Slot j's weight layer is mult[j] * previous + (2^id mod p_j),
// starting from an all-zero layer.
struct HcPlan {
    std::vector<BigNat> ranges; // p_j is drawn among the primes in [1, ranges[j]]
    std::vector<BigNat> mult;
};

inline HcPlan hc_plan(HcKind kind, int n, const SchemeParams& sp) {
    if (n < 1) throw PreconditionError("HC scheme: empty graph");
    if (sp.C == 0) throw PreconditionError("HC scheme: C must be positive");
    const unsigned L = ceil_log2(static_cast<std::uint64_t>(n));
    const unsigned C = sp.C;
    HcPlan plan;
    BigNat nn = n;
    switch (kind) {
    case HcKind::general:
        for (unsigned i = 0; i <= L; ++i) {
            plan.ranges.push_back(pow2(C * (L + (1u << i))));
            plan.mult.push_back(i == 0 ? BigNat(0) : plan.ranges[i - 1] * nn);
        }
        break;
    case HcKind::treewidth: {
        if (sp.k < 1) throw PreconditionError("treewidth scheme needs a width bound k >= 1");
        BigNat M = pow2(C * (static_cast<unsigned>(sp.k) + L));
        for (unsigned i = 0; i < 3 * L; ++i) {
            plan.ranges.push_back(M);
            plan.mult.push_back(M * nn);
        }
        break;
    }
    case HcKind::parametric: {
        if (!sp.M || *sp.M < 2) throw PreconditionError("parametric scheme needs M >= 2");
        for (unsigned i = 0; i <= L; ++i) {
            plan.ranges.push_back(*sp.M);
            plan.mult.push_back(*sp.M * nn * nn);
        }
        break;
    }
    case HcKind::separable: {
        double a = sp.alpha.value();
        if (!(a > 0 && a < 1)) throw PreconditionError("separable scheme needs alpha in (0,1)");
        const double eps = 1e-9;
        unsigned la = static_cast<unsigned>(std::ceil(a * std::log2(static_cast<double>(n)) - eps));
        unsigned top = la + C;
        for (unsigned i = 0; i <= top; ++i) {
            if (i >= 60) throw SizeRefused("separable scheme: prime ranges too large");
            plan.ranges.push_back(pow2(C * (la + (1u << i))));
            plan.mult.push_back(i == 0 ? BigNat(0) : plan.ranges[i - 1] * nn);
        }
        auto N = [&](unsigned i) {
            double r = std::pow(static_cast<double>(n) / std::ldexp(1.0, static_cast<int>(i)), a);
            return pow2(C * (L + static_cast<unsigned>(std::ceil(r - eps))));
        };
        // xi_L first, then xi_{L-1}, ..., xi_0
        plan.ranges.push_back(N(L));
        plan.mult.push_back(plan.ranges[top] * nn);
        for (int i = static_cast<int>(L) - 1; i >= 0; --i) {
            plan.ranges.push_back(N(static_cast<unsigned>(i)));
            plan.mult.push_back(N(static_cast<unsigned>(i + 1)) * nn);
        }
        break;
    }
    }
    return plan;
}

inline BigNat hc_declared_bound(const HcPlan& plan) {
    BigNat w = 0;
    for (std::size_t j = 0; j < plan.ranges.size(); ++j) w = plan.mult[j] * w + (plan.ranges[j] - 1);
    return w + 1;
}

inline BigNat pow2_mod(int e, const BigNat& p) {
    if (fits_u64(p)) return BigNat(powmod(2, static_cast<std::uint64_t>(e), to_u64(p)));
    return boost::multiprecision::powm(BigNat(2), BigNat(e), p);
}

// Every layer, in slot order; the weight function is the last one.
inline std::vector<std::vector<BigNat>> hc_layers(HcKind kind, const Graph& g, const SchemeParams& sp,
                                                  const std::vector<BigNat>& primes) {
    HcPlan plan = hc_plan(kind, g.n(), sp);
    if (primes.size() != plan.ranges.size())
        throw PreconditionError("HC scheme: expected " + std::to_string(plan.ranges.size()) + " primes, got " +
                                std::to_string(primes.size()));
    for (std::size_t j = 0; j < primes.size(); ++j)
        if (primes[j] < 2 || primes[j] > plan.ranges[j]) throw PreconditionError("HC scheme: prime outside its range");
    std::vector<std::vector<BigNat>> layers;
    std::vector<BigNat> cur(g.m(), BigNat(0));
    for (std::size_t j = 0; j < primes.size(); ++j) {
        for (int id = 1; id <= g.m(); ++id) cur[id - 1] = plan.mult[j] * cur[id - 1] + pow2_mod(id, primes[j]);
        layers.push_back(cur);
    }
    return layers;
}

inline WeightFunction hc_scheme_from_primes(HcKind kind, const Graph& g, const SchemeParams& sp,
                                            const std::vector<BigNat>& primes) {
    HcPlan plan = hc_plan(kind, g.n(), sp);
    auto layers = hc_layers(kind, g, sp, primes);
    WeightFunction f;
    f.domain = Domain::edge;
    f.w = layers.empty() ? std::vector<BigNat>(g.m(), BigNat(0)) : layers.back();
    f.scheme = to_string(kind);
    f.params.emplace_back("C", std::to_string(sp.C));
    if (kind == HcKind::treewidth) f.params.emplace_back("k", std::to_string(sp.k));
    if (kind == HcKind::separable) f.params.emplace_back("alpha", sp.alpha.str());
    if (kind == HcKind::parametric) f.params.emplace_back("M", to_decimal(*sp.M));
    f.primes = primes;
    f.declared_bound = hc_declared_bound(plan);
    for (auto& r : plan.ranges) f.random_bits += bit_length(r - 1);
    return f;
}

inline WeightFunction hc_scheme_sample(HcKind kind, const Graph& g, const SchemeParams& sp, std::uint64_t seed) {
    HcPlan plan = hc_plan(kind, g.n(), sp);
    RandomStream rs(seed, std::string("hc-primes/") + to_string(kind));
    std::vector<BigNat> primes;
    for (auto& r : plan.ranges) primes.push_back(sample_prime(r, rs).p);
    auto f = hc_scheme_from_primes(kind, g, sp, primes);
    f.seed = seed;
    return f;
}

// ---- MIS --------------------------------------------------------------------

inline WeightFunction mis_det_weights(const Graph& g, const EliminationForest& f) {
    validate_elim_forest(g, f);
    WeightFunction w;
    w.domain = Domain::vertex;
    w.scheme = "mis-det";
    for (int v = 1; v <= g.n(); ++v) w.w.push_back(pow2(static_cast<std::size_t>(f.level(v))));
    w.declared_bound = pow2(static_cast<std::size_t>(f.height()));
    return w;
}

// Weight as a function of forest level only.
struct LevelWeights {
    std::vector<BigNat> by_level;
    bool fallback = false; // depth too small for the randomized construction
    std::vector<BigNat> draws;
    std::uint64_t seed = 0;
    std::uint64_t random_bits = 0;
    BigNat declared_bound = 0;
    int n = 0;
    int d = 0;
};

struct MisRandOptions {
    bool force_randomized = false;
};

// Levels i = L*e + f (0 <= f < L) get r_e * 2^f with r_e uniform in [1, 32 n^5].
inline LevelWeights mis_rand_weights(int n, int d, std::uint64_t seed, MisRandOptions opt = {}) {
    if (n < 2 || d < 1 || d > n) throw PreconditionError("mis_rand_weights: need n >= 2 and 1 <= d <= n");
    const unsigned L = ceil_log2(static_cast<std::uint64_t>(n));
    LevelWeights lw;
    lw.n = n;
    lw.d = d;
    lw.seed = seed;
    if (d < static_cast<int>(5 * L) && !opt.force_randomized) {
        lw.fallback = true;
        for (int i = 0; i < d; ++i) lw.by_level.push_back(pow2(static_cast<std::size_t>(i)));
        lw.declared_bound = pow2(static_cast<std::size_t>(d));
        return lw;
    }
    const int kappa = d / static_cast<int>(L);
    BigNat range = BigNat(32) * boost::multiprecision::pow(BigNat(n), 5);
    RandomStream rs(seed, "mis-levels");
    for (int e = 0; e <= kappa; ++e) lw.draws.push_back(rs.uniform(BigNat(1), range));
    for (int i = 0; i < d; ++i) lw.by_level.push_back(lw.draws[i / L] << (i % L));
    lw.random_bits = static_cast<std::uint64_t>(kappa + 1) * bit_length(range - 1);
    lw.declared_bound = (range << (L - 1)) + 1;
    return lw;
}

inline WeightFunction apply_levels(const LevelWeights& lw, const Graph& g, const EliminationForest& f) {
    int h = validate_elim_forest(g, f);
    if (h > static_cast<int>(lw.by_level.size())) throw PreconditionError("apply_levels: forest deeper than the level table");
    WeightFunction w;
    w.domain = Domain::vertex;
    w.scheme = lw.fallback ? "mis-rand(fallback)" : "mis-rand";
    w.params.emplace_back("d", std::to_string(lw.d));
    w.seed = lw.seed;
    w.random_bits = lw.random_bits;
    w.declared_bound = lw.declared_bound;
    for (int v = 1; v <= g.n(); ++v) w.w.push_back(lw.by_level[f.level(v)]);
    return w;
}

// ---- matchings --------------------------------------------------------------

inline int edge_level(const EliminationForest& f, const Edge& e) { return std::min(f.level(e.first), f.level(e.second)); }

inline WeightFunction matching_det_weights(const Graph& g, const EliminationForest& f) {
    int h = validate_elim_forest(g, f);
    WeightFunction w;
    w.domain = Domain::edge;
    w.scheme = "matching-det";
    BigNat n2 = BigNat(g.n()) * g.n();
    for (int id = 1; id <= g.m(); ++id)
        w.w.push_back(BigNat(id) * boost::multiprecision::pow(n2, static_cast<unsigned>(edge_level(f, g.edge(id)))));
    w.declared_bound = BigNat(g.m()) * boost::multiprecision::pow(n2, static_cast<unsigned>(std::max(h - 1, 0))) + 1;
    return w;
}

// omega(e) = id(e) * r_{lvl(e)}
inline WeightFunction matching_weights_from_draws(const Graph& g, const EliminationForest& f, const std::vector<BigNat>& r) {
    int h = validate_elim_forest(g, f);
    if (static_cast<int>(r.size()) < h) throw PreconditionError("matching weights: one draw per level needed");
    WeightFunction w;
    w.domain = Domain::edge;
    w.scheme = "matching-rand";
    BigNat mx = 0;
    for (auto& x : r) mx = std::max(mx, x);
    for (int id = 1; id <= g.m(); ++id) w.w.push_back(BigNat(id) * r[edge_level(f, g.edge(id))]);
    w.declared_bound = BigNat(g.m()) * mx + 1;
    return w;
}

inline WeightFunction matching_rand_weights(const Graph& g, const EliminationForest& f, std::uint64_t seed) {
    int h = validate_elim_forest(g, f);
    BigNat range = boost::multiprecision::pow(BigNat(std::max(g.n(), 2)), 10);
    RandomStream rs(seed, "matching-levels");
    std::vector<BigNat> r;
    for (int i = 0; i < h; ++i) r.push_back(rs.uniform(BigNat(1), range));
    auto w = matching_weights_from_draws(g, f, r);
    w.seed = seed;
    w.random_bits = static_cast<std::uint64_t>(h) * bit_length(range - 1);
    w.declared_bound = BigNat(g.m()) * range + 1;
    return w;
}

} // namespace iso
