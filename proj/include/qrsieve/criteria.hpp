#ifndef QRSIEVE_CRITERIA_HPP
#define QRSIEVE_CRITERIA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qrsieve/factor.hpp"

namespace qrsieve {

// ---------------------------------------------------------------------
// Candidates. A candidate is an n >= 2 whose p = 2n(n-1)+1 is prime;
// such p are the only moduli for which a set A with A - A covering the
// quadratic residues exactly once can exist (|A|(|A|-1) = (p-1)/2).
// ---------------------------------------------------------------------

inline constexpr std::uint64_t kMaxCandidateN = 707'106'781ULL; // 2n(n-1)+1 <= 10^18

// 2n(n-1)+1. Throws std::out_of_range beyond 10^18.
std::uint64_t candidate_p(std::uint64_t n);

struct Candidate {
    std::uint64_t n = 0;
    std::uint64_t p = 0;
    Factorization fact_n;
    Factorization fact_n_minus_1;
    Factorization fact_p_minus_1; // merge of fact(2), fact_n, fact_n_minus_1
};

// Builds the candidate with all three factorizations, or nullopt when
// 2n(n-1)+1 is composite. Throws std::out_of_range if p would exceed 10^18.
std::optional<Candidate> candidate_from_n(std::uint64_t n);

// ---------------------------------------------------------------------
// Tests. Each necessary condition is a standalone, witness-producing
// check on one candidate. A test never claims existence; "pass" only
// means "not eliminated by this condition".
// ---------------------------------------------------------------------

enum class TestId {
    Primality,
    Parity,
    DivisorMod8,
    OrderParity,
    Gcd,
    Cyclotomic,
    Hasse,
    LcmConjectural,
};

std::string_view test_name(TestId id); // "PRIMALITY", "PARITY", ...
std::optional<TestId> test_from_name(std::string_view name); // accepts aliases

enum class Outcome { Pass, Fail, Skipped };
std::string_view outcome_name(Outcome o);

// Fail witnesses. Each is re-checkable from the base operations alone.
struct NotPrimeWitness {
    std::uint64_t p;
};
struct ParityWitness {
    std::uint64_t n_mod_4; // in {0, 1}
};
struct PrimeCongruenceWitness {
    std::uint64_t q;       // offending prime divisor of n or n-1
    int q_mod_8;
    bool on_even;          // divides the even one of n, n-1
};
struct EvenOrderWitness {
    std::uint64_t q;       // prime with even multiplicative order mod p
    std::uint64_t order;
    int valuation;         // valuation of q in p-1 (used by the alpha test)
};
struct GcdImproperWitness {
    std::uint64_t g;       // gcd of orders; divides neither n nor n-1 properly
};
struct CyclotomicWitness {
    std::uint64_t base;    // w with z = w^((p-1)/g)
    std::uint64_t k;
    std::uint64_t z;
    std::uint64_t phi;     // Phi_k(z) mod p, a non-residue
};
struct LcmWitness {
    std::uint64_t lcm;     // lcm of orders; divides neither n nor n-1
};

using Witness = std::variant<std::monostate, NotPrimeWitness, ParityWitness,
                             PrimeCongruenceWitness, EvenOrderWitness,
                             GcdImproperWitness, CyclotomicWitness, LcmWitness>;

struct TestVerdict {
    TestId id;
    Outcome outcome;
    Witness witness; // present whenever outcome == Fail
};

// ---------------------------------------------------------------------
// The gcd-of-orders invariant. For p = 2n(n-1)+1, order_gcd is the gcd
// of the multiplicative orders mod p of all primes dividing (p-1)/4;
// it always divides (p-1)/2. delta records which of n, n-1 it divides.
// ---------------------------------------------------------------------

struct OrderGcdInfo {
    std::uint64_t g = 0;
    std::optional<int> delta;        // 0 if g | n, else 1 if g | n-1
    std::optional<std::uint64_t> quotient; // (n - delta) / g
};

// Primes dividing (p-1)/4 = n(n-1)/2, read off fact_p_minus_1.
std::vector<std::uint64_t> quarter_primes(const Candidate& cand);

// (q, mult_order(q, p)) for each prime q | (p-1)/4, in increasing q.
std::vector<std::pair<std::uint64_t, std::uint64_t>>
quarter_prime_orders(const Candidate& cand);

OrderGcdInfo compute_gp(const Candidate& cand);
OrderGcdInfo compute_gp(const Candidate& cand,
                        std::span<const std::pair<std::uint64_t, std::uint64_t>> orders);

// ---------------------------------------------------------------------
// The tests themselves.
// ---------------------------------------------------------------------

// n must be 2 or 3 mod 4 (equivalently p = 5 mod 8).
TestVerdict parity_test(std::uint64_t n);

// No prime divisor of n or n-1 is 7 mod 8; the odd one of n, n-1 has
// none that is 5 mod 8, the even one none that is 3 mod 8.
TestVerdict divisor_congruence_test(const Factorization& fact_n,
                                    const Factorization& fact_n_minus_1);

// Every prime q | (p-1)/4 has odd multiplicative order mod p.
TestVerdict order_parity_test(const Candidate& cand);
TestVerdict order_parity_test(const Candidate& cand,
                              std::span<const std::pair<std::uint64_t, std::uint64_t>> orders);

// order_gcd must divide n or n-1 *properly* (quotient >= 2).
// Skipped for p <= 13: the coset arguments it rests on exclude those
// moduli, and the p = 13 set would be a false elimination.
TestVerdict gcd_test(const Candidate& cand, const OrderGcdInfo& gp);

// Phi_k(z) mod p via the Moebius product over divisors of k.
// Requires ord_p(z) not dividing k for k >= 2 (every factor nonzero);
// throws std::domain_error otherwise.
std::uint64_t eval_cyclotomic(std::uint64_t k, std::uint64_t z, std::uint64_t p);

// Default probe space for the cyclotomic test: first 25 primes, k <= 12.
std::span<const std::uint64_t> default_cyclotomic_bases();
inline constexpr std::uint64_t kDefaultCyclotomicKMax = 12;

// Searches for z = w^((p-1)/g) and k >= 2 with z^k != 1 and Phi_k(z) a
// non-residue; such a pair rules the candidate out. Pass means only
// "not eliminated by this probe". Skipped when (p-1)/4 has no prime
// divisor (p = 5), where the order-gcd machinery does not apply.
TestVerdict cyclotomic_test(const Candidate& cand, const OrderGcdInfo& gp,
                            std::span<const std::uint64_t> bases,
                            std::uint64_t k_max);

// Every prime dividing p-1 to an odd power must have odd order mod p.
// (Exactly characterizes the existence of the associated cyclotomic
// integer; necessary for a set A.)
TestVerdict hasse_alpha_exists(const Candidate& cand);

// Diagnostic only; rests on an unproven conjecture. The lcm of the
// orders of all primes q | (p-1)/4 would have to divide n or n-1.
TestVerdict lcm_conjectural_test(const Candidate& cand);
TestVerdict lcm_conjectural_test(const Candidate& cand,
                                 std::span<const std::pair<std::uint64_t, std::uint64_t>> orders);

} // namespace qrsieve

#endif
