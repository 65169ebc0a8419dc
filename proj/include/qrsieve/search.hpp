#ifndef QRSIEVE_SEARCH_HPP
#define QRSIEVE_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qrsieve {

// Ground-truth machinery at small scale: exhaustive search for sets A
// with A - A hitting every quadratic residue exactly once, multiplier
// subgroups, the derived difference-set construction, and coset scans.

// A subset of F_p: strictly increasing residues in [0, p).
struct SubsetFp {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> elements;

    bool operator==(const SubsetFp&) const = default;
    bool operator<(const SubsetFp& o) const { return elements < o.elements; }
};

// True iff the |A|(|A|-1) ordered differences of A are pairwise
// distinct, all quadratic residues, and cover every residue.
bool is_perfect_qr_difference(const SubsetFp& a);

enum class SearchMode { All, Canonical };

struct SearchLimits {
    std::uint64_t bound = 10'000; // largest admitted p
    unsigned workers = 1;         // top-level branches split across threads
};

struct BoundExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every A subset of F_p with A - A covering the residues exactly once.
// Mode All lists every solution set; mode Canonical lists one
// lexicographically least representative per orbit of a -> mu*a + c
// (mu a residue). Requires p = 2n(n-1)+1 prime (std::invalid_argument)
// and p <= limits.bound (BoundExceededError).
std::vector<SubsetFp> exhaustive_search(std::uint64_t p, SearchMode mode,
                                        const SearchLimits& limits = {});

// The multiplicative subgroup of all mu with mu*A = A + g for some g.
struct MultiplierSubgroup {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> members; // sorted; contains 1; closed under *
};

MultiplierSubgroup multiplier_subgroup(const SubsetFp& a);

// The translate of A whose elements sum to 0 mod p; it is fixed setwise
// by every multiplier. Requires gcd(|A|, p) = 1.
SubsetFp translate_to_zero_sum(const SubsetFp& a);

// Thrown when the n^2 sums a' + nu*a'' collide (impossible when A has
// the perfect difference property and nu is a non-residue).
struct CollisionError : std::runtime_error {
    std::uint64_t value;                  // repeated sum
    std::pair<std::uint64_t, std::uint64_t> first_pair, second_pair;
    CollisionError(std::uint64_t v, std::pair<std::uint64_t, std::uint64_t> a,
                   std::pair<std::uint64_t, std::uint64_t> b);
};

// D = { a' + nu*a'' : a', a'' in A } for a non-residue nu. On valid
// input |D| = |A|^2; a collision throws CollisionError.
SubsetFp build_claim_diff_set(const SubsetFp& a, std::uint64_t nu);

// Certificate that every nonzero residue has exactly lambda ordered
// representations d' - d'' with d', d'' in the set.
struct DiffSetCertificate {
    std::uint64_t p = 0;
    std::uint64_t v = 0; // group order (= p)
    std::uint64_t k = 0;
    std::uint64_t lambda = 0;
    SubsetFp set;
    bool verified = false;
    std::uint64_t offending_residue = 0; // set when verified == false
    std::uint64_t offending_count = 0;
};

DiffSetCertificate verify_difference_set(const SubsetFp& d, std::uint64_t k,
                                         std::uint64_t lambda);

// Scans all cosets gH of the subgroups H of order n and n-1 (plus the
// variants gH u {0} for |H| = n-1) for the perfect difference property.
struct CosetHit {
    std::uint64_t subgroup_order = 0;
    std::uint64_t rep = 0;   // coset representative g
    bool with_zero = false;  // set is gH u {0}
    SubsetFp set;
};

struct CosetScanReport {
    std::uint64_t p = 0;
    std::uint64_t n = 0;
    std::vector<CosetHit> hits;
};

CosetScanReport coset_scan(std::uint64_t p, std::uint64_t bound = 10'000);

// Smallest primitive root mod p (least g >= 2 of order p-1).
std::uint64_t primitive_root(std::uint64_t p);

// n with p = 2n(n-1)+1, if any.
std::optional<std::uint64_t> candidate_n_from_p(std::uint64_t p);

} // namespace qrsieve

#endif
