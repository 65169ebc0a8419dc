#include "qrsieve/criteria.hpp"

#include <array>
#include <cassert>
#include <numeric>
#include <stdexcept>

#include "qrsieve/modmath.hpp"

namespace qrsieve {

std::uint64_t candidate_p(std::uint64_t n) {
    if (n < 2 || n > kMaxCandidateN)
        throw std::out_of_range("candidate_p: need 2 <= n and 2n(n-1)+1 <= 10^18");
    return 2 * n * (n - 1) + 1;
}

std::optional<Candidate> candidate_from_n(std::uint64_t n) {
    std::uint64_t p = candidate_p(n);
    if (!is_prime(p)) return std::nullopt;
    Candidate cand;
    cand.n = n;
    cand.p = p;
    cand.fact_n = factorize(n);
    cand.fact_n_minus_1 = factorize(n - 1);
    cand.fact_p_minus_1 =
        merge(factorize(2), merge(cand.fact_n, cand.fact_n_minus_1));
    return cand;
}

std::string_view test_name(TestId id) {
    switch (id) {
        case TestId::Primality: return "PRIMALITY";
        case TestId::Parity: return "PARITY";
        case TestId::DivisorMod8: return "DIVISOR_MOD8";
        case TestId::OrderParity: return "ORDER_PARITY";
        case TestId::Gcd: return "GCD";
        case TestId::Cyclotomic: return "CYCLOTOMIC";
        case TestId::Hasse: return "HASSE";
        case TestId::LcmConjectural: return "LCM_CONJECTURAL";
    }
    return "?";
}

std::optional<TestId> test_from_name(std::string_view name) {
    std::string up;
    for (char c : name) up += static_cast<char>(c >= 'a' && c <= 'z' ? c - 32 : c);
    if (up == "PRIMALITY" || up == "PRIME") return TestId::Primality;
    if (up == "PARITY") return TestId::Parity;
    if (up == "DIVISOR_MOD8" || up == "DIV" || up == "DIVISOR") return TestId::DivisorMod8;
    if (up == "ORDER_PARITY" || up == "ORDER") return TestId::OrderParity;
    if (up == "GCD") return TestId::Gcd;
    if (up == "CYCLOTOMIC" || up == "CYCLO") return TestId::Cyclotomic;
    if (up == "HASSE") return TestId::Hasse;
    if (up == "LCM_CONJECTURAL" || up == "LCM") return TestId::LcmConjectural;
    return std::nullopt;
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Skipped: return "skipped";
    }
    return "?";
}

std::vector<std::uint64_t> quarter_primes(const Candidate& cand) {
    // (p-1)/4 = n(n-1)/2 has the same odd prime divisors as p-1, and is
    // even exactly when 8 | p-1.
    std::vector<std::uint64_t> qs;
    for (const auto& [q, e] : cand.fact_p_minus_1.factors) {
        if (q == 2) {
            if (e >= 3) qs.push_back(q);
        } else {
            qs.push_back(q);
        }
    }
    return qs;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
quarter_prime_orders(const Candidate& cand) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> orders;
    for (std::uint64_t q : quarter_primes(cand))
        orders.emplace_back(q, mult_order(q, cand.p, cand.fact_p_minus_1));
    return orders;
}

OrderGcdInfo compute_gp(const Candidate& cand) {
    auto orders = quarter_prime_orders(cand);
    return compute_gp(cand, orders);
}

OrderGcdInfo compute_gp(
    const Candidate& cand,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> orders) {
    OrderGcdInfo info;
    if (orders.empty()) {
        // Only p = 5: no prime divides (p-1)/4 = 1. Convention: the gcd
        // over the empty set is the group exponent p-1.
        info.g = cand.p - 1;
    } else {
        std::uint64_t g = 0;
        for (const auto& [q, ord] : orders) g = std::gcd(g, ord);
        info.g = g;
        if ((cand.p - 1) / 2 % g != 0)
            throw std::logic_error("compute_gp: gcd does not divide (p-1)/2");
    }
    if (cand.n % info.g == 0) {
        info.delta = 0;
        info.quotient = cand.n / info.g;
    } else if ((cand.n - 1) % info.g == 0) {
        info.delta = 1;
        info.quotient = (cand.n - 1) / info.g;
    }
    return info;
}

TestVerdict parity_test(std::uint64_t n) {
    std::uint64_t r = n % 4;
    if (r == 2 || r == 3) return {TestId::Parity, Outcome::Pass, {}};
    return {TestId::Parity, Outcome::Fail, ParityWitness{r}};
}

TestVerdict divisor_congruence_test(const Factorization& fact_n,
                                    const Factorization& fact_n_minus_1) {
    bool n_even = fact_n.value % 2 == 0;
    assert(n_even != (fact_n_minus_1.value % 2 == 0));
    // Walk the primes of n and n-1 jointly in increasing order so the
    // witness is the smallest offending prime.
    auto offends = [&](std::uint64_t q, bool on_even) {
        int r = static_cast<int>(q % 8);
        return r == 7 || (on_even && r == 3) || (!on_even && r == 5);
    };
    auto it1 = fact_n_minus_1.factors.begin();
    auto it2 = fact_n.factors.begin();
    while (it1 != fact_n_minus_1.factors.end() || it2 != fact_n.factors.end()) {
        bool take_n = it1 == fact_n_minus_1.factors.end() ||
                      (it2 != fact_n.factors.end() && it2->first < it1->first);
        std::uint64_t q = take_n ? (it2++)->first : (it1++)->first;
        bool on_even = take_n ? n_even : !n_even;
        if (offends(q, on_even))
            return {TestId::DivisorMod8, Outcome::Fail,
                    PrimeCongruenceWitness{q, static_cast<int>(q % 8), on_even}};
    }
    return {TestId::DivisorMod8, Outcome::Pass, {}};
}

TestVerdict order_parity_test(const Candidate& cand) {
    auto orders = quarter_prime_orders(cand);
    return order_parity_test(cand, orders);
}

TestVerdict order_parity_test(
    const Candidate& cand,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> orders) {
    for (const auto& [q, ord] : orders) {
        if (ord % 2 == 0)
            return {TestId::OrderParity, Outcome::Fail,
                    EvenOrderWitness{q, ord, valuation(cand.fact_p_minus_1, q)}};
    }
    return {TestId::OrderParity, Outcome::Pass, {}};
}

TestVerdict gcd_test(const Candidate& cand, const OrderGcdInfo& gp) {
    // The coset arguments behind this test need p > 13; taken literally
    // it would wrongly exclude p = 13, where a set exists.
    if (cand.p <= 13) return {TestId::Gcd, Outcome::Skipped, {}};
    std::uint64_t g = gp.g;
    bool proper_n = cand.n % g == 0 && cand.n / g >= 2;
    bool proper_n1 = (cand.n - 1) % g == 0 && (cand.n - 1) / g >= 2;
    if (proper_n || proper_n1) return {TestId::Gcd, Outcome::Pass, {}};
    return {TestId::Gcd, Outcome::Fail, GcdImproperWitness{g}};
}

std::uint64_t eval_cyclotomic(std::uint64_t k, std::uint64_t z, std::uint64_t p) {
    assert(k >= 1 && z < p);
    if (k == 1) return (z + p - 1) % p;
    // Phi_k(z) = prod over squarefree d | k of (z^(k/d) - 1)^mu(d).
    Factorization fk = factorize(k);
    std::size_t t = fk.factors.size();
    std::uint64_t num = 1, den = 1;
    for (std::size_t mask = 0; mask < (std::size_t(1) << t); ++mask) {
        std::uint64_t d = 1;
        int bits = 0;
        for (std::size_t i = 0; i < t; ++i)
            if (mask & (std::size_t(1) << i)) {
                d *= fk.factors[i].first;
                ++bits;
            }
        std::uint64_t w = pow_mod(z, k / d, p);
        if (w == 1)
            throw std::domain_error("eval_cyclotomic: ord(z) divides k");
        std::uint64_t term = w - 1;
        if (bits % 2 == 0)
            num = mul_mod(num, term, p);
        else
            den = mul_mod(den, term, p);
    }
    return mul_mod(num, inv_mod(den, p), p);
}

std::span<const std::uint64_t> default_cyclotomic_bases() {
    static constexpr std::array<std::uint64_t, 25> bases = {
        2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
        43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    return {bases.data(), bases.size()};
}

TestVerdict cyclotomic_test(const Candidate& cand, const OrderGcdInfo& gp,
                            std::span<const std::uint64_t> bases,
                            std::uint64_t k_max) {
    // For p = 5 the order-gcd subgroup is the whole group by convention
    // and the underlying multiplier argument does not apply; probing it
    // would wrongly eliminate a prime where a set exists.
    if (quarter_primes(cand).empty())
        return {TestId::Cyclotomic, Outcome::Skipped, {}};
    std::uint64_t p = cand.p;
    std::uint64_t exp = (p - 1) / gp.g;
    for (std::uint64_t w : bases) {
        if (w % p == 0) continue;
        std::uint64_t z = pow_mod(w, exp, p);
        if (z == 1) continue;
        for (std::uint64_t k = 2; k <= k_max; ++k) {
            if (pow_mod(z, k, p) == 1) continue;
            std::uint64_t phi = eval_cyclotomic(k, z, p);
            if (legendre(static_cast<std::int64_t>(phi), p) == -1)
                return {TestId::Cyclotomic, Outcome::Fail,
                        CyclotomicWitness{w, k, z, phi}};
        }
    }
    return {TestId::Cyclotomic, Outcome::Pass, {}};
}

TestVerdict hasse_alpha_exists(const Candidate& cand) {
    for (const auto& [q, e] : cand.fact_p_minus_1.factors) {
        if (e % 2 == 0) continue;
        std::uint64_t ord = mult_order(q, cand.p, cand.fact_p_minus_1);
        if (ord % 2 == 0)
            return {TestId::Hasse, Outcome::Fail, EvenOrderWitness{q, ord, e}};
    }
    return {TestId::Hasse, Outcome::Pass, {}};
}

TestVerdict lcm_conjectural_test(const Candidate& cand) {
    auto orders = quarter_prime_orders(cand);
    return lcm_conjectural_test(cand, orders);
}

TestVerdict lcm_conjectural_test(
    const Candidate& cand,
    std::span<const std::pair<std::uint64_t, std::uint64_t>> orders) {
    // Every order divides p-1, hence so does their lcm; no overflow.
    std::uint64_t l = 1;
    for (const auto& [q, ord] : orders) l = std::lcm(l, ord);
    if (cand.n % l == 0 || (cand.n - 1) % l == 0)
        return {TestId::LcmConjectural, Outcome::Pass, {}};
    return {TestId::LcmConjectural, Outcome::Fail, LcmWitness{l}};
}

} // namespace qrsieve
