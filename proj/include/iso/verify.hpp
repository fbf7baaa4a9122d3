#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/rng.hpp"
#include "iso/solutions.hpp"
#include "iso/weights.hpp"

namespace iso {

// Exactly one member of the family attains the minimum weight; an empty
// family counts as isolated.
inline bool is_isolating(const WeightFunction& w, const Family& fam) {
    if (fam.empty()) return true;
    BigNat best = 0;
    int count = 0;
    for (const auto& s : fam) {
        BigNat x = w.weight(s);
        if (count == 0 || x < best) {
            best = x;
            count = 1;
        } else if (x == best) {
            ++count;
        }
    }
    return count == 1;
}

struct TrialReport {
    std::string scheme;
    std::string instance;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t seed = 0; // trial i uses derive_seed(seed, i)
    std::size_t max_weight_bits = 0;
    std::size_t declared_bound_bits = 0;
    std::size_t family_size = 0;

    double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

inline std::ostream& operator<<(std::ostream& o, const TrialReport& r) {
    std::ostringstream rate;
    rate.setf(std::ios::fixed);
    rate.precision(6);
    rate << r.rate();
    return o << "scheme=" << r.scheme << " instance=" << r.instance << " family=" << r.family_size
             << " trials=" << r.trials << " successes=" << r.successes << " rate=" << rate.str() << " seed=" << r.seed
             << " max_weight_bits=" << r.max_weight_bits << " bound_bits=" << r.declared_bound_bits;
}

using WeightSampler = std::function<WeightFunction(std::uint64_t seed)>;

// Runs `trials` independent draws; results do not depend on `jobs`.
inline TrialReport success_rate(const Family& fam, const WeightSampler& sample, std::uint64_t trials, std::uint64_t seed,
                                unsigned jobs = 1, std::string scheme = {}, std::string instance = {}) {
    TrialReport rep;
    rep.scheme = std::move(scheme);
    rep.instance = std::move(instance);
    rep.trials = trials;
    rep.seed = seed;
    rep.family_size = fam.size();
    std::vector<char> ok(trials, 0);
    std::vector<std::size_t> bits(trials, 0), bound_bits(trials, 0);
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            WeightFunction w = sample(derive_seed(seed, i));
            ok[i] = is_isolating(w, fam);
            bits[i] = bit_length(w.max_weight());
            bound_bits[i] = bit_length(w.declared_bound);
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(trials, 1))));
    if (jobs == 1) {
        run(0, trials);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(run, trials * j / jobs, trials * (j + 1) / jobs);
        for (auto& t : pool) t.join();
    }
    for (std::uint64_t i = 0; i < trials; ++i) {
        rep.successes += ok[i];
        rep.max_weight_bits = std::max(rep.max_weight_bits, bits[i]);
        rep.declared_bound_bits = std::max(rep.declared_bound_bits, bound_bits[i]);
    }
    return rep;
}

// Smallest p such that observing >= k successes in n trials has probability
// >= 1 - confidence when the true rate is p (one-sided Clopper-Pearson).
inline double binomial_lower_bound(std::uint64_t k, std::uint64_t n, double confidence = 0.99) {
    if (n == 0 || k == 0) return 0.0;
    auto tail_ge = [&](double p) { // P[X >= k]
        double s = 0;
        for (std::uint64_t i = k; i <= n; ++i)
            s += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(p) +
                          (n - i) * std::log1p(-p));
        return s;
    };
    double lo = 0, hi = 1;
    for (int it = 0; it < 60; ++it) {
        double mid = (lo + hi) / 2;
        if (mid >= 1) break;
        (tail_ge(mid) < 1 - confidence ? lo : hi) = mid;
    }
    return lo;
}

// All members of S stay distinct modulo p.
inline bool fks_check(const std::vector<BigNat>& s, const BigNat& p) {
    if (p < 1) throw PreconditionError("fks_check: modulus must be positive");
    std::vector<BigNat> r;
    for (auto& x : s) r.push_back(x % p);
    std::sort(r.begin(), r.end());
    return std::adjacent_find(r.begin(), r.end()) == r.end();
}

// n k^2 / sqrt(M): the failure bound for k integers from [0, 2^n] and a random prime <= M
inline double fks_failure_bound(double n, double k, double M) { return n * k * k / std::sqrt(M); }

} // namespace iso
