#pragma once

// Concept classes, labeled samples and saturating matchings over a finite
// indexed instance domain, plus the predicates every solver builds on.
//
// Instances are indexed 0..n-1 and a concept is stored as a bit-row: bit j of
// the row is the concept's label on instance j. Rows and samples are packed
// into 64-bit words, so exact solvers are limited to n <= 63.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tmatch {

inline constexpr int kMaxInstances = 63;

/// Malformed arguments or violated preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A problem instance exceeds the size guard of an exact solver.
class SizeGuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Mask with the low n bits set.
constexpr std::uint64_t low_bits(int n) noexcept
{
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

/// A set of (instance, label) pairs with pairwise distinct instances.
///
/// `mask` holds the instances of the sample, `labels` the 1-labels; labels is
/// always a subset of mask. Two samples compare equal iff they hold the same
/// pairs.
class LabeledSample {
public:
    LabeledSample() = default;
    LabeledSample(std::uint64_t mask, std::uint64_t labels);
    /// Throws InputError if an instance repeats, is negative or exceeds 63, or
    /// a label is not 0/1.
    static LabeledSample from_pairs(std::span<const std::pair<int, int>> pairs);
    /// The restriction of `row` to the instances in `mask`.
    static LabeledSample of_row(std::uint64_t row, std::uint64_t mask) noexcept
    {
        LabeledSample s;
        s.mask_ = mask;
        s.labels_ = row & mask;
        return s;
    }

    std::uint64_t mask() const noexcept { return mask_; }
    std::uint64_t labels() const noexcept { return labels_; }
    int size() const noexcept { return std::popcount(mask_); }
    bool empty() const noexcept { return mask_ == 0; }
    /// Highest instance index used plus one (0 for the empty sample).
    int span_width() const noexcept { return 64 - std::countl_zero(mask_); }

    /// Pairs sorted by instance index.
    std::vector<std::pair<int, int>> pairs() const;

    /// Set containment on pairs.
    bool subset_of(const LabeledSample& other) const noexcept
    {
        return (mask_ & ~other.mask_) == 0 && ((labels_ ^ other.labels_) & mask_) == 0;
    }

    friend bool operator==(const LabeledSample&, const LabeledSample&) = default;

    /// "(j,b) (j,b) ..." with pairs in instance order; empty string for ∅.
    std::string to_string() const;

private:
    std::uint64_t mask_ = 0;
    std::uint64_t labels_ = 0;
};

/// Canonical sample order: ascending size, then lexicographic on the sorted
/// (instance, label) pair sequence with label 0 before label 1.
bool canonical_less(const LabeledSample& a, const LabeledSample& b) noexcept;

struct CanonicalLess {
    bool operator()(const LabeledSample& a, const LabeledSample& b) const noexcept
    {
        return canonical_less(a, b);
    }
};

struct SampleHash {
    std::size_t operator()(const LabeledSample& s) const noexcept
    {
        std::uint64_t h = s.mask() * 0x9E3779B97F4A7C15ULL;
        h ^= (s.labels() + 0x632BE59BD9B4E019ULL) + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// A finite set of distinct concepts (bit-rows) over instances 0..n-1.
///
/// Row order is significant: concept indices and every tie-breaking rule in the
/// solvers refer to it.
class ConceptClass {
public:
    /// Throws InputError unless 1 <= n <= 63, rows is nonempty, every row fits
    /// in n bits and rows are pairwise distinct.
    ConceptClass(int n, std::vector<std::uint64_t> rows);

    int n() const noexcept { return n_; }
    std::size_t k() const noexcept { return rows_.size(); }
    std::uint64_t row(std::size_t i) const { return rows_.at(i); }
    std::span<const std::uint64_t> rows() const noexcept { return rows_; }
    std::uint64_t domain_mask() const noexcept { return low_bits(n_); }

    /// The full sample {(x, c_i(x)) : x in X}.
    LabeledSample full_sample(std::size_t i) const
    {
        return LabeledSample::of_row(row(i), domain_mask());
    }

    std::optional<std::size_t> index_of(std::uint64_t row) const noexcept;
    bool contains(std::uint64_t row) const noexcept { return index_of(row).has_value(); }

    /// Same instance count and same set of rows, ignoring order.
    bool same_rows(const ConceptClass& other) const;

    friend bool operator==(const ConceptClass&, const ConceptClass&) = default;

private:
    int n_;
    std::vector<std::uint64_t> rows_;
};

/// Assignment concept index -> sample, total on the class.
struct SaturatingMatching {
    std::vector<LabeledSample> assignment;

    int cost() const noexcept;
    friend bool operator==(const SaturatingMatching&, const SaturatingMatching&) = default;
};

/// Steps M_0, M_1, ... of a subset teaching sequence.
struct SubsetTeachingSequence {
    std::vector<SaturatingMatching> steps;
};

using Witness = std::variant<std::monostate,
                             SaturatingMatching,
                             std::vector<LabeledSample>,  // antichain or teaching set
                             std::vector<int>,            // shattered instance set
                             SubsetTeachingSequence>;

/// A parameter value or, when a search ran out of budget, an interval.
///
/// `value` is the witnessed end of the interval (the best object found);
/// lower == upper iff exact.
struct ParamResult {
    int value = 0;
    bool exact = true;
    int lower = 0;
    int upper = 0;
    std::string method;
    Witness witness;

    static ParamResult exact_value(int v, std::string method, Witness w = {})
    {
        return ParamResult{v, true, v, v, std::move(method), std::move(w)};
    }
    static ParamResult interval(int value, int lower, int upper, std::string method,
                                Witness w = {});
};

// --- predicates ------------------------------------------------------------

/// Instance index out of range for an n-instance domain -> InputError.
void check_sample_domain(const LabeledSample& s, int n);

/// c agrees with every pair of s. Throws InputError if s leaves the domain.
bool consistent(std::uint64_t row, int n, const LabeledSample& s);
bool consistent(const ConceptClass& c, std::size_t i, const LabeledSample& s);

/// Some concept of the class is consistent with s.
bool realizable(const ConceptClass& c, const LabeledSample& s);

/// Number of labeled samples of size <= d over n instances:
/// sum_{i<=d} 2^i * binom(n, i). Saturates at UINT64_MAX.
std::uint64_t sample_count(int n, int d);

/// Calls fn on every labeled sample of size <= d in canonical order. Stops
/// early if fn returns false. Throws InputError unless 0 <= d <= n <= 63.
void for_each_sample(int n, int d, const std::function<bool(const LabeledSample&)>& fn);
std::vector<LabeledSample> enumerate_samples(int n, int d);

/// Calls fn(mask) for every subset of `universe` with popcount in [lo, hi],
/// ascending size, then lexicographic on the sorted element sequence.
void for_each_subset(std::uint64_t universe, int lo, int hi,
                     const std::function<bool(std::uint64_t)>& fn);

/// No member (taken as a set) is contained in a distinct other member.
bool is_antichain(std::span<const LabeledSample> samples);

struct MatchingViolation {
    enum class Kind { wrong_size, out_of_domain, inconsistent, not_injective };
    Kind kind;
    std::vector<std::size_t> concepts;
};

struct MatchingCheck {
    bool valid = false;
    int cost = 0;
    std::vector<MatchingViolation> violations;
};

std::string to_string(MatchingViolation::Kind kind);

/// Checks consistency and injectivity; reports every violation.
MatchingCheck validate_matching(const ConceptClass& c, const SaturatingMatching& m);

struct DirectImprovement {
    std::size_t concept_index;
    LabeledSample sample;
    friend bool operator==(const DirectImprovement&, const DirectImprovement&) = default;
};

/// First (concept, strictly smaller unused consistent sample) pair in
/// canonical concept/sample order, or nullopt if m is greedy.
/// Throws InputError if m is not a valid saturating matching.
std::optional<DirectImprovement> find_direct_improvement(const ConceptClass& c,
                                                         const SaturatingMatching& m);

/// {c1 ∪ c2}: c2's instance j becomes n1 + j; rows ordered by (i1, i2).
ConceptClass free_combination(const ConceptClass& c1, const ConceptClass& c2);

/// The projection of the rows onto `instances` yields all 2^|T| patterns.
bool shattered(const ConceptClass& c, std::uint64_t instances);
bool shattered(const ConceptClass& c, std::span<const int> instances);

struct Restriction {
    ConceptClass cls;
    /// No two rows collapsed, i.e. the original is a domain extension of cls.
    bool distinguishing;
};

/// Projects the rows onto `instances` (re-indexed in ascending order) and
/// drops duplicate rows, keeping first occurrences.
Restriction restrict_to(const ConceptClass& c, std::span<const int> instances);

/// Mask of the given instance indices; InputError if out of [0, n).
std::uint64_t instance_mask(std::span<const int> instances, int n);

}  // namespace tmatch
