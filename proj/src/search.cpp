#include "qrsieve/search.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <thread>

#include "qrsieve/factor.hpp"
#include "qrsieve/modmath.hpp"

namespace qrsieve {

namespace {

constexpr std::uint64_t kSetOpLimit = 10'000'000; // occupancy arrays are O(p)

void check_subset(const SubsetFp& a) {
    if (a.p < 2 || a.p > kSetOpLimit)
        throw std::invalid_argument("subset: modulus out of supported range");
    std::uint64_t prev = 0;
    bool first = true;
    for (std::uint64_t x : a.elements) {
        if (x >= a.p || (!first && x <= prev))
            throw std::invalid_argument(
                "subset: elements must be strictly increasing residues");
        prev = x;
        first = false;
    }
}

// Marks the nonzero squares mod p.
std::vector<std::uint8_t> residue_table(std::uint64_t p) {
    std::vector<std::uint8_t> is_res(p, 0);
    for (std::uint64_t x = 1; x < p; ++x)
        is_res[mul_mod(x, x, p)] = 1;
    return is_res;
}

} // namespace

std::optional<std::uint64_t> candidate_n_from_p(std::uint64_t p) {
    if (p < 5 || p % 4 != 1) return std::nullopt;
    // 2n(n-1)+1 = p  <=>  (2n-1)^2 = 2p-1.
    std::uint64_t d = 2 * p - 1;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(d)));
    while (r > 0 && r * r > d) --r;
    while ((r + 1) * (r + 1) <= d) ++r;
    if (r * r != d || r % 2 == 0) return std::nullopt;
    return (r + 1) / 2;
}

bool is_perfect_qr_difference(const SubsetFp& a) {
    check_subset(a);
    std::uint64_t p = a.p;
    std::uint64_t n = a.elements.size();
    if (n * (n - 1) != (p - 1) / 2) return false;
    auto is_res = residue_table(p);
    std::vector<std::uint8_t> seen(p, 0);
    for (std::uint64_t x : a.elements)
        for (std::uint64_t y : a.elements) {
            if (x == y) continue;
            std::uint64_t d = x >= y ? x - y : x + p - y;
            if (!is_res[d] || seen[d]) return false;
            seen[d] = 1;
        }
    return true;
}

// ---------------------------------------------------------------------
// Exhaustive search.
//
// Normalization: the difference 1 (always a residue) is realized by a
// unique ordered pair, so every solution has exactly one translate
// containing both 0 and 1. Only those translates are enumerated; the
// full solution list is recovered by translating.
//
// Branching covers one residue class at a time: the smallest d whose
// class {d, p-d} is unrealized must be realized by the final set,
// either through one new element at distance d from a current element,
// or through a fresh pair (x, x+d). A solution realizes each class by
// exactly one unordered pair, so it is reached along exactly one branch
// path and no deduplication is needed.
//
// The pool holds every element that can still join the set (all of its
// differences against the current set are fresh residues); a branch
// dies as soon as the pool cannot supply the missing elements.
// ---------------------------------------------------------------------

namespace {

struct Searcher {
    std::uint64_t p, n;
    std::vector<std::uint8_t> is_res;
    std::vector<std::uint8_t> used; // difference value already realized
    std::vector<std::uint8_t> in_set;
    std::vector<std::uint8_t> in_pool;
    std::vector<std::uint64_t> set;
    std::vector<std::vector<std::uint64_t>> pool_stack;
    std::vector<std::uint64_t> undo; // realized diffs, for rollback
    std::uint64_t depth = 0;
    // Root-level work splitting across threads.
    std::uint64_t stride = 1, offset = 0, root_counter = 0;
    std::vector<SubsetFp> solutions;

    explicit Searcher(std::uint64_t p_, std::uint64_t n_)
        : p(p_), n(n_), is_res(residue_table(p_)), used(p_, 0), in_set(p_, 0),
          in_pool(p_, 0), pool_stack(n_ + 2) {
        undo.reserve(2 * n_ + 2);
    }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + p - b;
    }

    // Marks the 2|S| differences of x against the set; returns false and
    // rolls back if any is a non-residue or already realized.
    bool add_element(std::uint64_t x, std::size_t undo_base) {
        for (std::uint64_t s : set) {
            std::uint64_t d = sub(x, s);
            if (!is_res[d] || used[d] || used[p - d]) {
                unwind(undo_base);
                return false;
            }
            used[d] = used[p - d] = 1;
            undo.push_back(d);
        }
        set.push_back(x);
        in_set[x] = 1;
        return true;
    }

    void unwind(std::size_t undo_base) {
        while (undo.size() > undo_base) {
            std::uint64_t d = undo.back();
            undo.pop_back();
            used[d] = used[p - d] = 0;
        }
    }

    void drop_last_element() {
        in_set[set.back()] = 0;
        set.pop_back();
    }

    void record_solution() {
        std::vector<std::uint64_t> sol = set;
        std::sort(sol.begin(), sol.end());
        solutions.push_back(SubsetFp{p, std::move(sol)});
    }

    // Tries set + {first} (and second, for a fresh pair), then recurses.
    void descend(std::uint64_t first, std::optional<std::uint64_t> second,
                 std::uint64_t next_class) {
        if (depth == 0 && (root_counter++ % stride) != offset) return;
        std::size_t undo_base = undo.size();
        std::size_t set_base = set.size();
        if (!add_element(first, undo_base)) return;
        if (second && !add_element(*second, undo_base)) {
            drop_last_element();
            unwind(undo_base);
            return;
        }
        const std::vector<std::uint64_t>& pool = pool_stack[depth];
        std::vector<std::uint64_t>& child = pool_stack[depth + 1];
        child.clear();
        for (std::uint64_t x : pool) {
            if (in_set[x]) {
                in_pool[x] = 0;
                continue;
            }
            bool ok = true;
            for (std::size_t j = set_base; j < set.size(); ++j) {
                std::uint64_t d = sub(x, set[j]);
                if (!is_res[d] || used[d] || used[p - d]) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                child.push_back(x);
            else
                in_pool[x] = 0;
        }
        if (child.size() >= n - set.size()) {
            ++depth;
            search(next_class);
            --depth;
        }
        for (std::uint64_t x : pool) in_pool[x] = 1;
        while (set.size() > set_base) drop_last_element();
        unwind(undo_base);
    }

    void search(std::uint64_t min_class) {
        if (set.size() == n) {
            record_solution();
            return;
        }
        std::uint64_t d = min_class;
        while (d <= (p - 1) / 2 && (!is_res[d] || used[d])) ++d;
        assert(d <= (p - 1) / 2); // by counting, an unrealized class exists

        // Single extensions s +/- d, each realizing the class against s.
        std::vector<std::uint64_t> singles;
        for (std::uint64_t s : set) {
            std::uint64_t up = s + d < p ? s + d : s + d - p;
            std::uint64_t dn = sub(s, d);
            if (in_pool[up]) singles.push_back(up);
            if (in_pool[dn]) singles.push_back(dn);
        }
        std::sort(singles.begin(), singles.end());
        singles.erase(std::unique(singles.begin(), singles.end()), singles.end());
        for (std::uint64_t x : singles) descend(x, std::nullopt, d + 1);

        // Fresh pairs (x, x+d), both elements new.
        for (std::uint64_t x : pool_stack[depth]) {
            std::uint64_t y = x + d < p ? x + d : x + d - p;
            if (in_pool[y]) descend(x, y, d + 1);
        }
    }

    void run() {
        assert(n >= 2);
        add_element(0, 0);
        if (!add_element(1, 0)) return; // cannot happen: 1 is a square
        if (set.size() == n) {
            // Complete before any branching; only one worker may claim it.
            if (offset == 0) record_solution();
            return;
        }
        std::vector<std::uint64_t>& root = pool_stack[0];
        for (std::uint64_t x = 2; x < p; ++x) {
            std::uint64_t dx = sub(x, 1);
            if (is_res[x] && !used[x] && is_res[dx] && !used[dx]) {
                root.push_back(x);
                in_pool[x] = 1;
            }
        }
        if (root.size() >= n - 2) search(2);
    }
};

// Solutions normalized to contain {0, 1}, sorted.
std::vector<SubsetFp> normalized_solutions(std::uint64_t p, std::uint64_t n,
                                           unsigned workers) {
    if (workers <= 1) {
        Searcher s(p, n);
        s.run();
        std::sort(s.solutions.begin(), s.solutions.end());
        return std::move(s.solutions);
    }
    std::vector<Searcher> searchers;
    searchers.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        searchers.emplace_back(p, n);
        searchers.back().stride = workers;
        searchers.back().offset = w;
    }
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back([&searchers, w] { searchers[w].run(); });
    for (auto& t : threads) t.join();
    std::vector<SubsetFp> all;
    for (auto& s : searchers)
        all.insert(all.end(), s.solutions.begin(), s.solutions.end());
    std::sort(all.begin(), all.end());
    return all;
}

// Lexicographically least image of a solution under a -> mu*a + c with
// mu a residue. The minimum always contains 0 and 1, and every image
// containing {0, 1} arises from mapping some ordered pair onto (1, 0).
SubsetFp canonical_form(const SubsetFp& a) {
    std::uint64_t p = a.p;
    SubsetFp best;
    for (std::uint64_t u : a.elements)
        for (std::uint64_t v : a.elements) {
            if (u == v) continue;
            std::uint64_t diff = u >= v ? u - v : u + p - v;
            std::uint64_t mu = inv_mod(diff, p);
            if (legendre(static_cast<std::int64_t>(mu), p) != 1) continue;
            std::uint64_t c = p - mul_mod(mu, v, p);
            SubsetFp img{p, {}};
            img.elements.reserve(a.elements.size());
            for (std::uint64_t x : a.elements)
                img.elements.push_back((mul_mod(mu, x, p) + c) % p);
            std::sort(img.elements.begin(), img.elements.end());
            if (best.elements.empty() || img < best) best = std::move(img);
        }
    return best;
}

} // namespace

std::vector<SubsetFp> exhaustive_search(std::uint64_t p, SearchMode mode,
                                        const SearchLimits& limits) {
    auto n = candidate_n_from_p(p);
    if (!n || !is_prime(p))
        throw std::invalid_argument(
            "exhaustive_search: p must be a prime of the form 2n(n-1)+1");
    if (p > limits.bound)
        throw BoundExceededError("exhaustive_search: p exceeds the configured bound");
    unsigned workers = limits.workers == 0
                           ? std::max(1u, std::thread::hardware_concurrency())
                           : limits.workers;
    std::vector<SubsetFp> normalized = normalized_solutions(p, *n, workers);

    if (mode == SearchMode::Canonical) {
        std::vector<SubsetFp> canon;
        for (const SubsetFp& s : normalized) canon.push_back(canonical_form(s));
        std::sort(canon.begin(), canon.end());
        canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
        return canon;
    }
    // Every solution is a translate of exactly one normalized solution.
    std::vector<SubsetFp> all;
    all.reserve(normalized.size() * p);
    for (const SubsetFp& s : normalized)
        for (std::uint64_t c = 0; c < p; ++c) {
            SubsetFp t{p, {}};
            t.elements.reserve(s.elements.size());
            for (std::uint64_t x : s.elements) {
                std::uint64_t y = x + c;
                t.elements.push_back(y >= p ? y - p : y);
            }
            std::sort(t.elements.begin(), t.elements.end());
            all.push_back(std::move(t));
        }
    std::sort(all.begin(), all.end());
    return all;
}

SubsetFp translate_to_zero_sum(const SubsetFp& a) {
    check_subset(a);
    std::uint64_t p = a.p;
    std::uint64_t n = a.elements.size();
    if (n == 0 || n % p == 0)
        throw std::invalid_argument("translate_to_zero_sum: |A| not invertible mod p");
    std::uint64_t sum = 0;
    for (std::uint64_t x : a.elements) sum = (sum + x) % p;
    std::uint64_t t = mul_mod(sum, inv_mod(n % p, p), p);
    SubsetFp out{p, {}};
    out.elements.reserve(n);
    for (std::uint64_t x : a.elements)
        out.elements.push_back(x >= t ? x - t : x + p - t);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

MultiplierSubgroup multiplier_subgroup(const SubsetFp& a) {
    check_subset(a);
    if (a.elements.empty())
        throw std::invalid_argument("multiplier_subgroup: empty set");
    std::uint64_t p = a.p;
    // mu*A = A + g forces g = 0 on the zero-sum translate, so membership
    // reduces to mu*A0 == A0.
    SubsetFp a0 = translate_to_zero_sum(a);
    std::vector<std::uint8_t> member(p, 0);
    for (std::uint64_t x : a0.elements) member[x] = 1;
    MultiplierSubgroup m;
    m.p = p;
    for (std::uint64_t mu = 1; mu < p; ++mu) {
        bool ok = true;
        for (std::uint64_t x : a0.elements)
            if (!member[mul_mod(mu, x, p)]) {
                ok = false;
                break;
            }
        if (ok) m.members.push_back(mu);
    }
    return m;
}

CollisionError::CollisionError(std::uint64_t v,
                               std::pair<std::uint64_t, std::uint64_t> a,
                               std::pair<std::uint64_t, std::uint64_t> b)
    : std::runtime_error("build_claim_diff_set: colliding sums"),
      value(v), first_pair(a), second_pair(b) {}

SubsetFp build_claim_diff_set(const SubsetFp& a, std::uint64_t nu) {
    check_subset(a);
    std::uint64_t p = a.p;
    nu %= p;
    if (legendre(static_cast<std::int64_t>(nu), p) != -1)
        throw std::invalid_argument("build_claim_diff_set: nu must be a non-residue");
    std::vector<std::uint64_t> owner(p, p); // p = unused; else index a'*n+a''
    std::uint64_t n = a.elements.size();
    SubsetFp d{p, {}};
    d.elements.reserve(n * n);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
            std::uint64_t s =
                (a.elements[i] + mul_mod(nu, a.elements[j], p)) % p;
            if (owner[s] != p) {
                std::uint64_t oi = owner[s] / n, oj = owner[s] % n;
                throw CollisionError(s, {a.elements[oi], a.elements[oj]},
                                     {a.elements[i], a.elements[j]});
            }
            owner[s] = i * n + j;
            d.elements.push_back(s);
        }
    std::sort(d.elements.begin(), d.elements.end());
    return d;
}

DiffSetCertificate verify_difference_set(const SubsetFp& d, std::uint64_t k,
                                         std::uint64_t lambda) {
    check_subset(d);
    if (d.elements.size() != k)
        throw std::invalid_argument("verify_difference_set: |D| != k");
    DiffSetCertificate cert;
    cert.p = d.p;
    cert.v = d.p;
    cert.k = k;
    cert.lambda = lambda;
    cert.set = d;
    std::vector<std::uint64_t> hist(d.p, 0);
    for (std::uint64_t x : d.elements)
        for (std::uint64_t y : d.elements) {
            if (x == y) continue;
            std::uint64_t diff = x >= y ? x - y : x + d.p - y;
            ++hist[diff];
        }
    cert.verified = true;
    for (std::uint64_t r = 1; r < d.p; ++r)
        if (hist[r] != lambda) {
            cert.verified = false;
            cert.offending_residue = r;
            cert.offending_count = hist[r];
            break;
        }
    return cert;
}

std::uint64_t primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    Factorization f = factorize(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (const auto& [q, e] : f.factors)
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                primitive = false;
                break;
            }
        if (primitive) return g;
    }
    throw std::invalid_argument("primitive_root: modulus not prime");
}

CosetScanReport coset_scan(std::uint64_t p, std::uint64_t bound) {
    auto n = candidate_n_from_p(p);
    if (!n || !is_prime(p))
        throw std::invalid_argument("coset_scan: p must be a prime of the form 2n(n-1)+1");
    if (p > bound)
        throw BoundExceededError("coset_scan: p exceeds the configured bound");
    CosetScanReport report;
    report.p = p;
    report.n = *n;
    std::uint64_t g = primitive_root(p);

    // Cosets of the order-m subgroup, tested bare (|A| = n must equal m)
    // or with 0 adjoined (m = n-1). Both m divide p-1 = 2n(n-1).
    for (std::uint64_t m : {*n, *n - 1}) {
        bool with_zero = (m == *n - 1);
        if (m == 0 || (p - 1) % m != 0) continue;
        std::uint64_t h = pow_mod(g, (p - 1) / m, p);
        std::vector<std::uint64_t> subgroup;
        std::uint64_t x = 1;
        do {
            subgroup.push_back(x);
            x = mul_mod(x, h, p);
        } while (x != 1);
        assert(subgroup.size() == m);
        std::vector<std::uint8_t> visited(p, 0);
        for (std::uint64_t rep = 1; rep < p; ++rep) {
            if (visited[rep]) continue;
            SubsetFp set{p, {}};
            for (std::uint64_t s : subgroup) {
                std::uint64_t y = mul_mod(rep, s, p);
                visited[y] = 1;
                set.elements.push_back(y);
            }
            if (with_zero) set.elements.push_back(0);
            std::sort(set.elements.begin(), set.elements.end());
            if (is_perfect_qr_difference(set))
                report.hits.push_back(CosetHit{m, rep, with_zero, std::move(set)});
        }
    }
    return report;
}

} // namespace qrsieve
