#ifndef QRSIEVE_MODMATH_HPP
#define QRSIEVE_MODMATH_HPP

#include <cstdint>

#include "qrsieve/factor.hpp"

namespace qrsieve {

// All moduli are required to be < 2^63 so that 128-bit products never
// overflow. Inputs are reduced on entry; every result lies in [0, m).

// (a * b) mod m, exact for any m < 2^63.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

// a^e mod m by square-and-multiply; pow_mod(a, 0, m) == 1 mod m.
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Quadratic character of a modulo an odd prime p, via Euler's criterion:
// +1 for nonzero squares, -1 for non-squares, 0 iff p | a.
int legendre(std::int64_t a, std::uint64_t p);

// Deterministic for every m < 2^64: exact trial division below 10^4,
// otherwise Miller-Rabin with the first twelve primes as bases (a base
// set verified complete far beyond 2^64).
bool is_prime(std::uint64_t m);

// Multiplicative inverse of a modulo m by extended Euclid.
// Throws std::domain_error if gcd(a, m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Least e > 0 with q^e == 1 mod p, for p prime and fact_p_minus_1 the
// exact factorization of p-1. Starts from e = p-1 and divides out each
// prime of p-1 while the power still evaluates to 1.
// Throws std::domain_error if p | q.
std::uint64_t mult_order(std::uint64_t q, std::uint64_t p,
                         const Factorization& fact_p_minus_1);

} // namespace qrsieve

#endif
