#pragma once

// Counting-defined parameters (SMN', AN', AN'', GMN'), maximum antichains of
// realizable samples, and the closed forms for powersets. Every threshold is
// compared in exact integer arithmetic.

#include "tmatch/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace tmatch {

using BigCount = boost::multiprecision::cpp_int;

/// counts[i] = number of realizable samples of size exactly i, i = 0..d_cap.
struct RealizableProfile {
    int n = 0;
    std::vector<std::uint64_t> counts;
};

/// Exact counts by projecting the rows onto every instance subset.
/// Requires n <= 20 and 0 <= d_cap <= n.
RealizableProfile realizable_profile(const ConceptClass& c, int d_cap);

/// The same profile for C_{k,n}, using only the binary-counter realizability
/// criterion (the class is never materialized).
RealizableProfile realizable_profile_binary_counter(std::uint64_t k, int n, int d_cap);

/// All realizable samples of size <= d in canonical order. n <= 20.
std::vector<LabeledSample> realizable_samples(const ConceptClass& c, int d);

/// Least d such that at least k samples of size <= d are realizable.
int smn_prime(const ConceptClass& c);

struct AntichainResult {
    std::uint64_t size = 0;
    std::vector<LabeledSample> antichain;
};

/// Maximum antichain among the realizable samples of size <= d, via
/// N - (maximum matching of the strict-containment bipartite graph).
/// SizeGuardError if more than `max_elements` samples are involved.
AntichainResult max_antichain(const ConceptClass& c, int d, std::size_t max_elements = 100000);

/// Least d whose realizable samples of size <= d contain an antichain of size k.
int an_prime(const ConceptClass& c);
/// Same, also returning the witness antichain (exactly k members).
std::pair<int, std::vector<LabeledSample>> an_prime_with_witness(const ConceptClass& c);

/// Least d with at least k realizable samples of size exactly d.
int an_double_prime(const ConceptClass& c);

BigCount binomial(int n, int i);

/// Phi_d(n) = sum_{i<=d} binom(n, i); d may exceed n.
BigCount phi(int n, int d);

/// Least d with Phi_d(n) >= k. InputError if k > 2^n or k < 1.
int gmn_prime(const BigCount& k, int n);
int gmn_prime(const ConceptClass& c);

struct PowersetClosedForms {
    int an = 0;          // min{d : 2^d binom(n,d) >= 2^n}
    int smn_prime = 0;   // min{d : sum_{i<=d} 2^i binom(n,i) >= 2^n}
    int gmn_prime = 0;   // n
};

PowersetClosedForms powerset_closed_forms(int n);

/// AN - 1 <= SMN' <= AN for the powerset closed forms at n.
bool theorem7_check(int n);

/// ceil(n/3) for n <= 12, floor(n/3) + 1 above.
int ks_threshold(int n);

struct GmnPowersetBound {
    int r_star = 0;  // max{r : sum_{j<=r} 2^j binom(n,j) <= 2^(n-r)}
    int q_max = 0;   // max q satisfying the type-A/type-B counting condition at r_star
    int bound = 0;   // min(n, n - q_max)
};

/// Upper bound on GMN of the n-instance powerset from the stage-counting
/// argument: with r = r_star, the largest q such that
///   sum_{i<q} binom(n,i) + sum_{j<=r} binom(n,j) <= sum_{j<=r} 2^j binom(n,j).
GmnPowersetBound gmn_powerset_upper(int n);

/// Binary entropy -p log2 p - (1-p) log2 (1-p), 0 < p < 1.
double entropy(double p);

/// Bisection bracket [lo, hi] of width <= tol around the root of
/// entropy(p) = 1 - 2p on (0, 1/2).
std::pair<double, double> p_star(double tol);

}  // namespace tmatch
