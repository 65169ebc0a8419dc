#include "qrsieve/factor.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qrsieve/modmath.hpp"

namespace qrsieve {

namespace {

constexpr std::uint32_t kTrialLimit = 100'000;

std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i)
            composite[j] = true;
    }
    return primes;
}

// Brent's variant of the rho cycle method. n is odd, composite, and has
// no prime factor below the trial-division limit. The polynomial is
// x^2 + c with c = 1, 2, ... tried in order, so runs are reproducible.
std::uint64_t pollard_brent(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = (mul_mod(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && g == 1; k += 128) {
                ys = y;
                std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (mul_mod(y, y, n) + c) % n;
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
            r *= 2;
        }
        if (g == n) {
            // Batch overshot; replay one step at a time.
            g = 1;
            while (g == 1) {
                ys = (mul_mod(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (g != n) return g;
    }
}

void split(std::uint64_t n, std::map<std::uint64_t, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    std::uint64_t d = pollard_brent(n);
    split(d, out);
    split(n / d, out);
}

} // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = sieve_primes(kTrialLimit);
    return primes;
}

Factorization factorize(std::uint64_t m) {
    if (m < 1 || m > kFactorLimit)
        throw std::out_of_range("factorize: input outside [1, 10^18]");
    Factorization f;
    f.value = m;
    for (std::uint32_t q : small_primes()) {
        if (std::uint64_t(q) * q > m) break;
        if (m % q == 0) {
            int e = 0;
            do {
                m /= q;
                ++e;
            } while (m % q == 0);
            f.factors.emplace_back(q, e);
        }
    }
    if (m > 1) {
        if (m < std::uint64_t(kTrialLimit) * kTrialLimit || is_prime(m)) {
            f.factors.emplace_back(m, 1);
        } else {
            std::map<std::uint64_t, int> rest;
            split(m, rest);
            for (const auto& [q, e] : rest) f.factors.emplace_back(q, e);
        }
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

int valuation(const Factorization& fact, std::uint64_t q) {
    for (const auto& [prime, e] : fact.factors)
        if (prime == q) return e;
    return 0;
}

Factorization merge(const Factorization& f1, const Factorization& f2) {
    unsigned __int128 prod = static_cast<unsigned __int128>(f1.value) * f2.value;
    if (prod > kFactorLimit)
        throw std::overflow_error("merge: product exceeds 10^18");
    Factorization out;
    out.value = static_cast<std::uint64_t>(prod);
    auto it1 = f1.factors.begin(), it2 = f2.factors.begin();
    while (it1 != f1.factors.end() || it2 != f2.factors.end()) {
        if (it2 == f2.factors.end() || (it1 != f1.factors.end() && it1->first < it2->first)) {
            out.factors.push_back(*it1++);
        } else if (it1 == f1.factors.end() || it2->first < it1->first) {
            out.factors.push_back(*it2++);
        } else {
            out.factors.emplace_back(it1->first, it1->second + it2->second);
            ++it1;
            ++it2;
        }
    }
    return out;
}

std::string format_factorization(const Factorization& fact) {
    if (fact.factors.empty()) return "1";
    std::string s;
    for (const auto& [q, e] : fact.factors) {
        if (!s.empty()) s += "·";
        s += std::to_string(q);
        if (e > 1) {
            s += '^';
            s += std::to_string(e);
        }
    }
    return s;
}

} // namespace qrsieve
