// Test-only oracles, deliberately independent of the library's
// implementation paths.
#ifndef QRSIEVE_TESTS_ORACLES_HPP
#define QRSIEVE_TESTS_ORACLES_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracles {

// (a * b) mod m by shift-and-add only; no 128-bit products. Valid for
// any m < 2^63.
inline std::uint64_t peasant_mul_mod(std::uint64_t a, std::uint64_t b,
                                     std::uint64_t m) {
    a %= m;
    b %= m;
    std::uint64_t r = 0;
    while (b > 0) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a += a;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

// Smallest-prime-factor table for [0, limit).
inline std::vector<std::uint32_t> spf_table(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(limit, 0);
    for (std::uint32_t i = 2; i < limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j < limit; j += i)
            if (spf[j] == 0) spf[j] = i;
    }
    return spf;
}

// Factorization of m by the SPF table, as sorted (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, int>>
spf_factorize(std::uint64_t m, const std::vector<std::uint32_t>& spf) {
    std::vector<std::pair<std::uint64_t, int>> out;
    while (m > 1) {
        std::uint64_t q = spf[m];
        int e = 0;
        while (m % q == 0) {
            m /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    return out;
}

// Factorization by pure trial division (no primality tests, no rho).
inline std::vector<std::pair<std::uint64_t, int>>
trial_factorize(std::uint64_t m) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
        if (m % q) continue;
        int e = 0;
        while (m % q == 0) {
            m /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

// Integer coefficients of the k-th cyclotomic polynomial, low degree
// first, computed by repeated exact polynomial division of x^k - 1 by
// the cyclotomic polynomials of the proper divisors of k.
inline std::vector<long long> cyclotomic_coeffs(std::uint64_t k) {
    if (k == 1) return {-1, 1};
    // x^k - 1.
    std::vector<long long> poly(k + 1, 0);
    poly[0] = -1;
    poly[k] = 1;
    for (std::uint64_t d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        std::vector<long long> div = cyclotomic_coeffs(d);
        // Exact division, highest coefficient first.
        std::vector<long long> quot(poly.size() - div.size() + 1, 0);
        std::vector<long long> rem = poly;
        for (std::size_t i = quot.size(); i-- > 0;) {
            long long c = rem[i + div.size() - 1] / div.back();
            quot[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < div.size(); ++j)
                rem[i + j] -= c * div[j];
        }
        for (long long c : rem)
            if (c != 0) throw std::logic_error("cyclotomic division not exact");
        poly = quot;
    }
    return poly;
}

// Horner evaluation mod p of an integer polynomial, low degree first.
inline std::uint64_t horner_mod(const std::vector<long long>& coeffs,
                                std::uint64_t z, std::uint64_t p) {
    std::uint64_t r = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        r = peasant_mul_mod(r, z % p, p);
        long long c = coeffs[i] % static_cast<long long>(p);
        std::uint64_t cu = c >= 0 ? static_cast<std::uint64_t>(c)
                                  : p - static_cast<std::uint64_t>(-c);
        r += cu;
        if (r >= p) r -= p;
    }
    return r;
}

} // namespace oracles

#endif
