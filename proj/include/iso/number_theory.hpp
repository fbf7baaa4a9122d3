#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "iso/bignat.hpp"
#include "iso/error.hpp"
#include "iso/rng.hpp"

namespace iso {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

namespace detail {

inline constexpr std::uint32_t small_primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                                 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

inline bool mr_round_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool mr_round(const BigNat& n, const BigNat& a, const BigNat& d, unsigned s) {
    BigNat nm1 = n - 1;
    BigNat x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == nm1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

} // namespace detail

// The first twelve prime bases are a proof of primality below 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint32_t p : detail::small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!detail::mr_round_u64(n, a, d, s)) return false;
    return true;
}

inline constexpr unsigned kMillerRabinRounds = 64;

// Exact below 2^64. Above, 64 rounds with bases drawn from a stream keyed by n,
// so repeated calls on the same input agree.
inline bool is_prime(const BigNat& n) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    for (std::uint32_t p : detail::small_primes)
        if (n % p == 0) return false;
    BigNat d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    RandomStream rs(static_cast<std::uint64_t>(n & 0xffffffffffffffffULL) ^ bit_length(n), "miller-rabin");
    BigNat hi = n - 2;
    for (unsigned i = 0; i < kMillerRabinRounds; ++i) {
        BigNat a = rs.uniform(BigNat(2), hi);
        if (!detail::mr_round(n, a, d, s)) return false;
    }
    return true;
}

struct PrimeSample {
    BigNat p;
    BigNat range; // p was drawn uniformly among the primes in [1, range]
    std::uint64_t stream_seed = 0;
};

inline PrimeSample sample_prime(const BigNat& M, RandomStream& rs) {
    if (M < 2) throw PreconditionError("sample_prime: range [1, M] has no primes (M < 2)");
    for (;;) {
        BigNat x = rs.uniform(BigNat(1), M);
        if (is_prime(x)) return {x, M, rs.seed()};
    }
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t M) {
    if (M > (std::uint64_t{1} << 32)) throw SizeRefused("primes_up_to: bound too large to sieve");
    std::vector<std::uint64_t> out;
    if (M < 2) return out;
    std::vector<bool> comp(M + 1, false);
    for (std::uint64_t i = 2; i <= M; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= M; j += i) comp[j] = true;
    }
    return out;
}

// distinct prime factors by trial division
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> f;
    for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
        if (n % q) continue;
        f.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) f.push_back(n);
    return f;
}

inline std::uint64_t find_generator(std::uint64_t p) {
    if (!is_prime_u64(p)) throw PreconditionError("find_generator: " + std::to_string(p) + " is not prime");
    if (p == 2) return 1;
    auto qs = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : qs)
            if (powmod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw IntegrityError("find_generator: no generator found");
}

// primitive N-th root of unity mod p, N | p-1
inline std::uint64_t root_of_unity(std::uint64_t p, std::uint64_t N) {
    if (N == 0 || (p - 1) % N != 0) throw PreconditionError("root_of_unity: N must divide p-1");
    return powmod(find_generator(p), (p - 1) / N, p);
}

inline bool is_primitive_root_of_unity(std::uint64_t rho, std::uint64_t N, std::uint64_t p) {
    if (N == 0 || rho % p == 0) return false;
    if (powmod(rho, N, p) != 1) return false;
    for (auto q : prime_factors(N))
        if (powmod(rho, N / q, p) == 1) return false;
    return true;
}

inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw PreconditionError("inverse_mod: not invertible");
    return powmod(a, p - 2, p); // p prime
}

using PolyOracle = std::function<std::uint64_t(std::uint64_t)>;

// t-th coefficient of a polynomial of degree < N over F_p, from its values on
// the powers of a primitive N-th root rho.
inline std::uint64_t dft_coefficient(const PolyOracle& P, std::uint64_t rho, std::uint64_t N, std::uint64_t t,
                                     std::uint64_t p) {
    if (!is_prime_u64(p)) throw PreconditionError("dft_coefficient: modulus is not prime");
    if (N == 0 || N >= p) throw PreconditionError("dft_coefficient: need 0 < N < p");
    if (!is_primitive_root_of_unity(rho, N, p))
        throw PreconditionError("dft_coefficient: rho is not a primitive N-th root of unity");
    std::uint64_t rho_inv_t = powmod(inverse_mod(rho, p), t % N, p);
    std::uint64_t x = 1, step = 1, acc = 0;
    for (std::uint64_t i = 0; i < N; ++i) {
        std::uint64_t v = P(x) % p;
        acc = (acc + mulmod(step, v, p)) % p;
        x = mulmod(x, rho, p);
        step = mulmod(step, rho_inv_t, p);
    }
    return mulmod(acc, inverse_mod(N % p, p), p);
}

struct Residue {
    BigNat r;
    BigNat m;
};

inline BigNat crt_reconstruct(const std::vector<Residue>& rs, const BigNat& bound) {
    if (rs.empty()) throw InsufficientModuli("crt_reconstruct: no residues");
    BigNat x = 0, P = 1;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& [r, m] = rs[i];
        if (m < 2) throw PreconditionError("crt_reconstruct: modulus < 2");
        for (std::size_t j = 0; j < i; ++j)
            if (boost::multiprecision::gcd(m, rs[j].m) != 1)
                throw PreconditionError("crt_reconstruct: moduli are not pairwise coprime");
        // x' = x + P * ((r - x) * P^{-1} mod m)
        BigNat Pinv = 0;
        {
            // extended Euclid on (P mod m, m)
            BigNat a = P % m, b = m, s0 = 1, s1 = 0;
            while (b != 0) {
                BigNat q = a / b;
                BigNat t = a - q * b;
                a = b;
                b = t;
                t = s0 - q * s1;
                s0 = s1;
                s1 = t;
            }
            Pinv = ((s0 % m) + m) % m;
        }
        BigNat diff = ((r % m) - (x % m)) % m;
        if (diff < 0) diff += m;
        x += P * (diff * Pinv % m);
        P *= m;
    }
    if (P < bound) throw InsufficientModuli("crt_reconstruct: product of moduli is below the bound");
    if (x >= bound) throw NotFound("crt_reconstruct: no value below the bound matches the residues");
    return x;
}

} // namespace iso
