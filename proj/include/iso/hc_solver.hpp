#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/graph.hpp"
#include "iso/number_theory.hpp"
#include "iso/schemes.hpp"
#include "iso/solutions.hpp"
#include "iso/weights.hpp"

namespace iso {

// Answers "is there a Hamiltonian cycle of weight exactly t?". The isolation
// driver only relies on this being right when at most one such cycle exists.
class UniqueWeightDetector {
public:
    virtual ~UniqueWeightDetector() = default;
    virtual bool detect(const WeightFunction& w, const BigNat& t) const = 0;

    // smallest t in [lo, hi] that the detector accepts
    virtual std::optional<BigNat> first_hit(const WeightFunction& w, const BigNat& lo, const BigNat& hi) const {
        if (hi - lo > BigNat(1) << 24) throw SizeRefused("first_hit: target range too wide to scan");
        for (BigNat t = lo; t <= hi; ++t)
            if (detect(w, t)) return t;
        return std::nullopt;
    }
};

inline constexpr int kDetectorCap = 12;

// Enumerates the Hamiltonian cycles once; exact for any number of cycles.
class BruteForceDetector final : public UniqueWeightDetector {
public:
    explicit BruteForceDetector(const Graph& g, int cap = kDetectorCap) {
        if (g.n() > cap) throw SizeRefused("brute-force detector: n = " + std::to_string(g.n()) + " exceeds cap " + std::to_string(cap));
        cycles_ = enumerate_family(Problem::hc, g, {}, cap);
    }

    bool detect(const WeightFunction& w, const BigNat& t) const override {
        for (auto& c : cycles_)
            if (w.weight(c) == t) return true;
        return false;
    }

    std::optional<BigNat> first_hit(const WeightFunction& w, const BigNat& lo, const BigNat& hi) const override {
        std::optional<BigNat> best;
        for (auto& c : cycles_) {
            BigNat x = w.weight(c);
            if (x >= lo && x <= hi && (!best || x < *best)) best = x;
        }
        return best;
    }

    std::size_t cycle_count() const { return cycles_.size(); }

private:
    Family cycles_;
};

// Answers with the parity of the number of Hamiltonian cycles of weight t, the
// way algebraic counting detectors do: exact when at most one cycle has weight
// t, and blind to weights shared by an even number of cycles.
class ParityDetector final : public UniqueWeightDetector {
public:
    explicit ParityDetector(const Graph& g, int cap = kDetectorCap) {
        if (g.n() > cap) throw SizeRefused("parity detector: n = " + std::to_string(g.n()) + " exceeds cap " + std::to_string(cap));
        cycles_ = enumerate_family(Problem::hc, g, {}, cap);
    }

    bool detect(const WeightFunction& w, const BigNat& t) const override {
        bool odd = false;
        for (auto& c : cycles_)
            if (w.weight(c) == t) odd = !odd;
        return odd;
    }

    std::optional<BigNat> first_hit(const WeightFunction& w, const BigNat& lo, const BigNat& hi) const override {
        std::map<BigNat, int> count;
        for (auto& c : cycles_) {
            BigNat x = w.weight(c);
            if (x >= lo && x <= hi) count[x]++;
        }
        for (auto& [t, k] : count)
            if (k % 2) return t;
        return std::nullopt;
    }

private:
    Family cycles_;
};

// Wraps a user-supplied decision procedure.
class ExternalDetector final : public UniqueWeightDetector {
public:
    using Fn = std::function<bool(const WeightFunction&, const BigNat&)>;
    explicit ExternalDetector(Fn f) : f_(std::move(f)) {}
    bool detect(const WeightFunction& w, const BigNat& t) const override { return f_(w, t); }

private:
    Fn f_;
};

inline bool unique_weight_detector(const Graph& g, const WeightFunction& w, const BigNat& t) {
    return BruteForceDetector(g).detect(w, t);
}

enum class Verdict { hamiltonian, not_hamiltonian, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::hamiltonian: return "hamiltonian";
    case Verdict::not_hamiltonian: return "not-hamiltonian";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

enum class SolveMode { tuples, seeds };

inline constexpr unsigned kSolverDefaultM = 11;
inline constexpr std::uint64_t kSolverDefaultBudget = 100000;
inline constexpr std::uint64_t kTupleRangeCap = std::uint64_t{1} << 24;

struct SolveOptions {
    HcKind kind = HcKind::parametric;
    SchemeParams params;                 // parametric kind defaults to M = 11
    SolveMode mode = SolveMode::tuples;
    std::uint64_t budget = kSolverDefaultBudget; // weight functions tried at most
    std::uint64_t seed = 0;
    const UniqueWeightDetector* detector = nullptr; // brute force when null
    unsigned jobs = 1;
};

struct SolveResult {
    Verdict verdict = Verdict::inconclusive;
    std::uint64_t functions_tried = 0; // up to and including the first hit
    std::uint64_t family_size = 0;     // tuple mode: number of prime tuples
    std::optional<BigNat> weight;      // weight of the detected cycle
    std::vector<BigNat> primes;        // tuple of the hitting function
};

// Walks the scheme's weight functions; for each, asks the detector for the
// smallest achievable target t in [0, n * max weight]. A hit is a real cycle.
// Tuple mode covers every prime tuple, so running out of tuples means no cycle.
inline SolveResult solve_hc_deterministic(const Graph& g, SolveOptions opt = {}) {
    if (opt.kind == HcKind::parametric && !opt.params.M) opt.params.M = BigNat(kSolverDefaultM);
    std::optional<BruteForceDetector> own;
    if (!opt.detector) {
        own.emplace(g);
        opt.detector = &*own;
    }
    SolveResult res;
    if (g.n() < 3) {
        res.verdict = Verdict::not_hamiltonian;
        return res;
    }
    const HcPlan plan = hc_plan(opt.kind, g.n(), opt.params);

    std::vector<std::vector<std::uint64_t>> choices;
    std::uint64_t total = 1;
    if (opt.mode == SolveMode::tuples) {
        for (auto& r : plan.ranges) {
            if (r > kTupleRangeCap) throw SizeRefused("tuple mode: prime range above 2^24; use seed mode or a smaller M");
            choices.push_back(primes_up_to(to_u64(r)));
            if (choices.back().empty()) throw PreconditionError("tuple mode: a prime range has no primes");
            std::uint64_t c = choices.back().size();
            total = total > std::numeric_limits<std::uint64_t>::max() / c ? std::numeric_limits<std::uint64_t>::max() : total * c;
        }
        res.family_size = total;
    }
    const std::uint64_t limit = opt.mode == SolveMode::tuples ? std::min(total, opt.budget) : opt.budget;

    auto function_at = [&](std::uint64_t idx) {
        if (opt.mode == SolveMode::seeds) return hc_scheme_sample(opt.kind, g, opt.params, derive_seed(opt.seed, idx));
        std::vector<BigNat> primes(choices.size());
        for (std::size_t j = choices.size(); j-- > 0;) { // last slot varies fastest
            primes[j] = choices[j][idx % choices[j].size()];
            idx /= choices[j].size();
        }
        return hc_scheme_from_primes(opt.kind, g, opt.params, primes);
    };

    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    auto worker = [&](unsigned j, unsigned stride) {
        for (std::uint64_t i = j; i < limit; i += stride) {
            if (i > best.load()) return;
            WeightFunction w = function_at(i);
            BigNat hi = BigNat(g.n()) * w.max_weight();
            if (opt.detector->first_hit(w, BigNat(0), hi)) {
                std::uint64_t cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
                return;
            }
        }
    };
    unsigned jobs = std::max(1u, opt.jobs);
    if (jobs == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j, jobs);
        for (auto& t : pool) t.join();
    }

    if (best.load() != std::numeric_limits<std::uint64_t>::max()) {
        std::uint64_t i = best.load();
        WeightFunction w = function_at(i);
        res.verdict = Verdict::hamiltonian;
        res.functions_tried = i + 1;
        res.weight = opt.detector->first_hit(w, BigNat(0), BigNat(g.n()) * w.max_weight());
        res.primes = w.primes;
        return res;
    }
    res.functions_tried = limit;
    res.verdict = (opt.mode == SolveMode::tuples && limit == total) ? Verdict::not_hamiltonian : Verdict::inconclusive;
    return res;
}

struct PrimeOracle {
    std::uint64_t p;
    PolyOracle eval; // the integer polynomial reduced mod p
};

// Coefficient t of an integer polynomial from evaluation oracles modulo
// several primes: one DFT extraction per prime, then CRT. By default the
// transform length is p - 1 with a generator as the root of unity.
inline BigNat coefficient_pipeline(const std::vector<PrimeOracle>& oracles, std::uint64_t t, const BigNat& bound,
                                   std::optional<std::uint64_t> length = std::nullopt) {
    std::vector<Residue> rs;
    for (auto& o : oracles) {
        std::uint64_t N = length.value_or(o.p - 1);
        std::uint64_t rho = root_of_unity(o.p, N);
        rs.push_back({BigNat(dft_coefficient(o.eval, rho, N, t, o.p)), BigNat(o.p)});
    }
    return crt_reconstruct(rs, bound);
}

} // namespace iso
