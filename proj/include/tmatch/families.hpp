#pragma once

// Constructors for the named concept classes: powersets, binary-counter
// classes C_{k,n}, Warmuth's class and its six-instance domain extension, and
// the pair used to show STD_min is not additive.

#include "tmatch/core.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tmatch {

enum class FamilyKind {
    powerset,
    binary_counter,
    warmuth,
    warmuth_extended,
    std_pair_left,
    std_pair_right,
};

struct FamilySpec {
    FamilyKind kind = FamilyKind::powerset;
    std::uint64_t k = 0;
    int n = 0;
};

/// All 2^n rows in increasing integer order. Requires 1 <= n <= 20.
ConceptClass powerset(int n);

/// Row i is the binary representation of i (bit j labels instance j), for
/// i = 0..k-1. Requires 2 <= k <= 2^n and n <= 63.
ConceptClass binary_counter_class(std::uint64_t k, int n);

/// floor(log2 k) computed on the bit length. k >= 1.
int floor_log2(std::uint64_t k);

/// Membership test for C_{k,n} without materializing it: S is realizable iff
/// the 1-labeled instances encode an integer <= k-1.
bool realizable_binary_counter(const LabeledSample& s, std::uint64_t k);

/// Warmuth's class: 10 concepts over 5 instances.
ConceptClass warmuth();

/// The 10 x 6 domain extension of Warmuth's class.
ConceptClass warmuth_extended();

/// left = powerset over {u, v}; right = the single all-ones concept over
/// {a, b, c, d}.
std::pair<ConceptClass, ConceptClass> std_example_pair();

/// Appends the all-ones row. InputError if it is already present.
ConceptClass add_all_ones(const ConceptClass& c);

/// Maps an unlabeled instance set U (|U| <= d) injectively to a
/// C_{k,n}-realizable labeled sample of size exactly d, where l = floor(log2 k)
/// and 1 <= d <= l:
///   instances j >= l in U become (j, 0), instances j < l in U become (j, 1),
///   then (j, 0) pairs for the smallest unused j < l pad up to size d.
LabeledSample theorem4_map(std::span<const int> unlabeled, std::uint64_t k, int n, int d);

ConceptClass make_family(const FamilySpec& spec);

/// Family names as used on the command line.
FamilyKind parse_family_kind(const std::string& name);
std::string family_name(FamilyKind kind);

}  // namespace tmatch
