#include "qrsieve/modmath.hpp"

#include <cassert>
#include <stdexcept>

namespace qrsieve {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    assert(m >= 1);
    if (a >= m) a %= m;
    if (b >= m) b %= m;
    return static_cast<std::uint64_t>(u128(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    assert(m >= 1);
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

int legendre(std::int64_t a, std::uint64_t p) {
    std::int64_t sp = static_cast<std::int64_t>(p);
    std::int64_t r = a % sp;
    if (r < 0) r += sp;
    if (r == 0) return 0;
    std::uint64_t t = pow_mod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
    if (t == 1) return 1;
    if (t == p - 1) return -1;
    throw std::invalid_argument("legendre: modulus is not an odd prime");
}

namespace {

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    if (m < 10'000) {
        if (m % 2 == 0) return m == 2;
        for (std::uint64_t d = 3; d * d <= m; d += 2)
            if (m % d == 0) return false;
        return true;
    }
    if (m % 2 == 0) return false;
    // First twelve primes: a verified deterministic base set for all
    // inputs below 3.3e24, which covers the whole 64-bit range.
    static constexpr std::uint64_t bases[] = {2,  3,  5,  7,  11, 13,
                                              17, 19, 23, 29, 31, 37};
    for (std::uint64_t a : bases)
        if (!miller_rabin(m, a)) return false;
    return true;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    assert(m >= 1);
    a %= m;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a);
    std::int64_t t0 = 0, t1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("inv_mod: arguments are not coprime");
    if (t0 < 0) t0 += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t0);
}

std::uint64_t mult_order(std::uint64_t q, std::uint64_t p,
                         const Factorization& fact_p_minus_1) {
    q %= p;
    if (q == 0) throw std::domain_error("mult_order: argument divisible by modulus");
    assert(fact_p_minus_1.value == p - 1);
    std::uint64_t e = p - 1;
    for (const auto& [r, mult] : fact_p_minus_1.factors) {
        for (int i = 0; i < mult; ++i) {
            if (pow_mod(q, e / r, p) == 1)
                e /= r;
            else
                break;
        }
    }
    return e;
}

} // namespace qrsieve
