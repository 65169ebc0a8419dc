#ifndef QRSIEVE_FACTOR_HPP
#define QRSIEVE_FACTOR_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qrsieve {

// Largest value the factorization routines accept.
inline constexpr std::uint64_t kFactorLimit = 1'000'000'000'000'000'000ULL;

// Complete prime decomposition of a positive integer.
// factors is sorted by prime, exponents >= 1, and
// value == product of prime^exponent (empty iff value == 1).
struct Factorization {
    std::uint64_t value = 1;
    std::vector<std::pair<std::uint64_t, int>> factors;

    bool operator==(const Factorization&) const = default;
};

// Full factorization of m, 1 <= m <= 10^18. Trial division by primes
// below 10^5, then Brent's cycle-based splitting with deterministic
// parameters, so repeated runs give identical behavior.
Factorization factorize(std::uint64_t m);

// Exponent of the prime q in fact (0 if q does not divide fact.value).
int valuation(const Factorization& fact, std::uint64_t q);

// Factorization of f1.value * f2.value.
// Throws std::overflow_error if the product exceeds 10^18.
Factorization merge(const Factorization& f1, const Factorization& f2);

// "2·5^2" style rendering; "1" for the empty factorization.
std::string format_factorization(const Factorization& fact);

// Primes below 10^5, built once on first use (read-only afterwards).
const std::vector<std::uint32_t>& small_primes();

} // namespace qrsieve

#endif
