#pragma once

// VC dimension, teaching dimension, recursive teaching dimension, subset
// teaching sequences and STD_min.

#include "tmatch/core.hpp"
#include "tmatch/matching.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tmatch {

/// Largest shattered instance set, witness as std::vector<int>.
/// Requires n <= 20, k <= 4096.
ParamResult vcd(const ConceptClass& c);

struct TeachingSet {
    int size = 0;
    LabeledSample sample;
};

/// Smallest sample consistent with `row` and with no other row of the class.
/// InputError if `row` is not in the class.
TeachingSet teaching_dim(std::uint64_t row, const ConceptClass& c);

/// Peeling: repeatedly remove every concept of minimum teaching dimension
/// within the remaining class; the value is the largest such minimum.
/// The witness (std::vector<int>) lists the per-round minima.
ParamResult rtd(const ConceptClass& c);

struct SequenceViolation {
    enum class Kind {
        empty_sequence,
        wrong_size,         // step does not assign exactly k samples
        out_of_domain,
        not_full_start,     // condition 1
        grows,              // condition 2
        contained,          // condition 3 against the previous step
        not_saturating,
        not_fixed_point,    // last step is not an antichain
    };
    Kind kind;
    std::size_t step = 0;
    std::vector<std::size_t> concepts;
};

std::string to_string(SequenceViolation::Kind kind);

struct SequenceCheck {
    bool valid = false;
    int cost = -1;  // cost of the last step when valid
    std::vector<SequenceViolation> violations;
};

SequenceCheck validate_sequence(const ConceptClass& c, const SubsetTeachingSequence& seq);

/// Blank-line separated stanzas, one per step; one line `i: (j,b) (j,b) ...`
/// per concept. Lines starting with '#' are ignored. InputError on malformed
/// text.
SubsetTeachingSequence parse_sequence(const std::string& text, const ConceptClass& c);
std::string write_sequence(const SubsetTeachingSequence& seq);

/// STD_min. Lower end from AN, upper end from a best-first search over
/// reachable matching states (single-element shrinks of one concept). The
/// witness is the sequence reaching the best fixed point found.
ParamResult std_min(const ConceptClass& c, const SearchLimits& limits = {});

/// Same, seeded with a known sequence as the initial upper bound; returns
/// without searching when the certificate meets the lower bound.
/// InputError if `certificate` is not a valid sequence.
ParamResult std_min_with_certificate(const ConceptClass& c, const SubsetTeachingSequence& certificate,
                                     const SearchLimits& limits = {});

/// Matching states (per-concept instance masks) reachable from M_0, either by
/// single-element shrinks or by arbitrary simultaneous shrinks. Sorted.
/// Requires k <= 4 and n <= 3.
std::vector<std::vector<std::uint64_t>> reachable_states(const ConceptClass& c, bool general_moves);

}  // namespace tmatch
