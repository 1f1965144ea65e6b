#pragma once

// Serialization, seeded random classes, parameter dispatch and the
// verification campaigns behind the command-line tool.

#include "tmatch/core.hpp"
#include "tmatch/matching.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tmatch {

// --- CCM text format -------------------------------------------------------

/// Header "k n", then k rows of n characters in {0,1}; column j is instance j.
/// Lines starting with '#' and blank lines are ignored.
ConceptClass parse_ccm(const std::string& text);
/// Inverse of parse_ccm, rows joined by '\n' without a trailing newline.
std::string write_ccm(const ConceptClass& c);

// --- random classes --------------------------------------------------------

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() noexcept;
    /// Uniform-ish integer in [lo, hi] by modulo reduction.
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) noexcept;

private:
    std::uint64_t state_;
};

/// k distinct rows drawn by rejection (low n bits per draw), sorted ascending.
/// Requires 1 <= k <= 2^n and 1 <= n <= 20.
ConceptClass random_class(std::uint64_t k, int n, std::uint64_t seed);

// --- parameters ------------------------------------------------------------

enum class Param {
    smn,
    smn_prime,
    an,
    an_prime,
    an_double_prime,
    gmn,
    gmn_prime,
    vcd,
    rtd,
    std_min,
    min_vcd_rtd,
};

Param parse_param(const std::string& name);
std::string param_name(Param p);

ParamResult compute_param(const ConceptClass& c, Param p, const SearchLimits& limits = {});

/// "param<TAB>value<TAB>lower<TAB>upper<TAB>exact<TAB>method"
std::string tsv_row(Param p, const ParamResult& r);

enum class Verdict { pass, violated, inconclusive };
std::string to_string(Verdict v);

/// a <= b: pass when a.upper <= b.lower, violated when a.lower > b.upper.
Verdict check_le(const ParamResult& a, const ParamResult& b);

// --- campaigns -------------------------------------------------------------

/// A relation instance that failed (or, for certified "no" cells, the known
/// witness). Everything needed to replay it is stored as text.
struct Counterexample {
    /// One of: le (values[0] <= values[1] on classes[0]), class-monotone,
    /// domain-monotone (classes[0] -> classes[1]), sub-additive,
    /// super-additive (classes[0], classes[1] and their free combination),
    /// sauer, doubling.
    std::string relation;
    /// Parameter name; for "le" two names separated by "<=".
    std::string param;
    std::vector<std::string> classes;  // CCM payloads
    std::vector<int> values;           // values observed when recorded
};

std::string to_string(const Counterexample& cx);

/// Recomputes from the payload alone; true if the relation is still violated.
bool reverify(const Counterexample& cx, const SearchLimits& limits = {});

struct CampaignReport {
    std::string title;
    std::uint64_t seed = 0;
    std::uint64_t node_budget = 0;
    std::vector<std::string> lines;
    std::size_t checks = 0;
    std::size_t passes = 0;
    std::size_t inconclusive = 0;
    std::vector<Counterexample> violations;
    /// Known witnesses for "no" cells, each confirmed to violate its relation.
    std::vector<Counterexample> certified;

    void record(Verdict v, Counterexample cx);
    void merge(const CampaignReport& other);
    std::string to_text() const;
    /// 1 on any violation, else 3 on any inconclusive check, else 0.
    int exit_code() const;
};

/// All parameters of one class and every hierarchy arc, plus the Sauer and
/// doubling checks.
CampaignReport verify_hierarchy(const ConceptClass& c, const SearchLimits& limits = {});

struct ProbeOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::uint64_t k_max = 6;
    int n_max = 4;
    SearchLimits limits;
};

/// Random classes k <= k_max, n <= n_max for the hierarchy campaign.
CampaignReport verify_hierarchy_random(const ProbeOptions& opt);

/// Parameters covered by the monotonicity and additivity tables.
std::vector<Param> table_params();

CampaignReport probe_monotonicity(Param p, const ProbeOptions& opt);
CampaignReport probe_additivity(Param p, const ProbeOptions& opt);

/// Evidence-only search for GMN(C1 + C2) > GMN(C1) + GMN(C2) over random
/// pairs with k_i <= 3, n_i <= 3.
CampaignReport search_gmn_subadditivity(const ProbeOptions& opt);

/// Closed-form table for 1 <= n <= n_max (n_max <= 2000).
CampaignReport report_powerset(int n_max);

}  // namespace tmatch
