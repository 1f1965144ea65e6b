#pragma once

// Exact solvers for the matching-defined parameters:
//   SMN  cheapest saturating matching,
//   AN   cheapest saturating matching whose samples form an antichain,
//   GMN  costliest greedy saturating matching (no direct improvement),
// the greedy procedure itself, and brute-force oracles for small classes.

#include "tmatch/core.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tmatch {

struct SearchLimits {
    std::uint64_t node_budget = 10'000'000;
    /// Largest sample size considered; -1 means n.
    int d_cap = -1;

    int cap_for(const ConceptClass& c) const { return d_cap < 0 ? c.n() : d_cap; }
};

/// Order of inspection for the greedy procedure.
///
/// concept_order must be a permutation of the concept indices. sample_order,
/// when nonempty, is an explicit linear extension of the size order (never a
/// larger sample before a smaller one); when empty the canonical order is
/// used.
struct GreedyOrdering {
    std::vector<std::size_t> concept_order;
    std::vector<LabeledSample> sample_order;

    static GreedyOrdering canonical(const ConceptClass& c);
};

/// Sorts all samples of size <= n by (size, position in `preferred`, canonical
/// order): the canonical linear extension that lists `preferred` first within
/// each size class. Requires n <= 8.
std::vector<LabeledSample> linear_extension(int n, const std::vector<LabeledSample>& preferred);

/// Runs the greedy procedure: each concept in turn takes the first consistent
/// sample in sample order not yet taken. InputError on an invalid ordering.
SaturatingMatching greedy_run(const ConceptClass& c, const GreedyOrdering& ordering);

/// SMN with a witness matching. Requires k <= 4096, n <= 20.
ParamResult smn(const ConceptClass& c);

/// GMN. Exhaustive search for the largest cost of a matching without direct
/// improvement; on budget exhaustion returns [best found, bound not excluded].
ParamResult gmn(const ConceptClass& c, const SearchLimits& limits = {});

/// AN. Sandwich max(AN', SMN) <= AN <= least uniform-size perfect matching
/// size, closed by branch and bound over mixed-size antichain assignments.
ParamResult amn(const ConceptClass& c, const SearchLimits& limits = {});

enum class OracleParam { smn, amn, gmn };

/// Brute-force value over explicitly enumerated injective consistent
/// assignments. Requires k <= 8 and n <= 4.
int oracle_param(const ConceptClass& c, OracleParam which);

/// Every greedy matching (no direct improvement) of a small class, found by
/// enumerating all injective consistent assignments. Requires k <= 8, n <= 4.
std::vector<SaturatingMatching> enumerate_greedy_matchings(const ConceptClass& c);

struct GreedyOutcome {
    SaturatingMatching matching;
    /// Ordering under which greedy_run reproduces `matching`.
    GreedyOrdering ordering;
};

/// Every possible output of the greedy procedure over all concept orders and
/// all linear extensions of the size order (distinct matchings only, sorted).
/// Explores the procedure's free choices directly. Requires k <= 8, n <= 4.
std::vector<GreedyOutcome> enumerate_greedy_outputs(const ConceptClass& c);

}  // namespace tmatch
