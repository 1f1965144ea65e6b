#include "doctest.h"

#include "oracles.hpp"
#include "tmatch/counting.hpp"
#include "tmatch/families.hpp"
#include "tmatch/harness.hpp"
#include "tmatch/matching.hpp"

#include <algorithm>
#include <climits>

using namespace tmatch;

namespace {

LabeledSample sample(std::vector<std::pair<int, int>> pairs)
{
    return LabeledSample::from_pairs(pairs);
}

struct Brute {
    int smn = INT_MAX;
    int amn = INT_MAX;
    int gmn = -1;
};

// Walks every injective assignment of consistent samples.
Brute brute(const ConceptClass& c)
{
    const int n = c.n();
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::vector<oracle::Sample>> options(c.k());
    for (std::size_t i = 0; i < c.k(); ++i) {
        for (std::uint64_t m = 0; m <= full; ++m) options[i].emplace_back(m, c.row(i) & m);
    }
    Brute out;
    std::vector<oracle::Sample> cur;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == c.k()) {
            int cost = 0;
            for (const auto& s : cur) cost = std::max(cost, oracle::popcount(s.first));
            out.smn = std::min(out.smn, cost);
            bool anti = true;
            for (std::size_t a = 0; a < cur.size(); ++a) {
                for (std::size_t b = 0; b < cur.size(); ++b) {
                    if (a != b && oracle::subset(cur[a], cur[b])) anti = false;
                }
            }
            if (anti) out.amn = std::min(out.amn, cost);
            bool greedy = true;
            for (std::size_t a = 0; a < cur.size() && greedy; ++a) {
                for (const auto& s : options[a]) {
                    if (oracle::popcount(s.first) >= oracle::popcount(cur[a].first)) continue;
                    if (std::find(cur.begin(), cur.end(), s) == cur.end()) greedy = false;
                }
            }
            if (greedy) out.gmn = std::max(out.gmn, cost);
            return;
        }
        for (const auto& s : options[i]) {
            if (std::find(cur.begin(), cur.end(), s) != cur.end()) continue;
            cur.push_back(s);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<ConceptClass> tiny_classes()
{
    std::vector<ConceptClass> out;
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(5, std::uint64_t{1} << n); ++k) {
            for (std::uint64_t s = 0; s < 3; ++s) out.push_back(random_class(k, n, 1000 + 100 * n + 10 * k + s));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("solvers agree with exhaustive assignment search")
{
    for (const auto& c : tiny_classes()) {
        CAPTURE(write_ccm(c));
        const auto b = brute(c);
        const auto s = smn(c);
        const auto a = amn(c);
        const auto g = gmn(c);
        REQUIRE(s.exact);
        REQUIRE(a.exact);
        REQUIRE(g.exact);
        CHECK(s.value == b.smn);
        CHECK(a.value == b.amn);
        CHECK(g.value == b.gmn);
        CHECK(oracle_param(c, OracleParam::smn) == b.smn);
        CHECK(oracle_param(c, OracleParam::amn) == b.amn);
        CHECK(oracle_param(c, OracleParam::gmn) == b.gmn);
    }
}

TEST_CASE("witnesses are valid matchings of the stated cost")
{
    for (const auto& c : tiny_classes()) {
        const auto s = smn(c);
        const auto& ms = std::get<SaturatingMatching>(s.witness);
        CHECK(validate_matching(c, ms).valid);
        CHECK(ms.cost() == s.value);

        const auto a = amn(c);
        const auto& ma = std::get<SaturatingMatching>(a.witness);
        CHECK(validate_matching(c, ma).valid);
        CHECK(is_antichain(ma.assignment));
        CHECK(ma.cost() == a.value);

        const auto g = gmn(c);
        const auto& mg = std::get<SaturatingMatching>(g.witness);
        CHECK(validate_matching(c, mg).valid);
        CHECK_FALSE(find_direct_improvement(c, mg));
        CHECK(mg.cost() == g.value);
    }
}

TEST_CASE("powerset values")
{
    CHECK(smn(powerset(2)).value == 1);
    CHECK(gmn(powerset(2)).value == 2);
    CHECK(amn(powerset(2)).value == 1);
    CHECK(amn(powerset(3)).value == 2);
    CHECK(amn(powerset(4)).value == 2);
    const std::vector<int> gmn_expected = {1, 2, 2, 3};
    for (int n = 1; n <= 4; ++n) {
        const auto g = gmn(powerset(n));
        CHECK(g.exact);
        CHECK(g.value == gmn_expected[n - 1]);
    }
    const auto p6 = powerset(6);
    CHECK(smn(p6).value == 2);
    CHECK(amn(p6).value == 3);
    CHECK(an_prime(p6) == 3);
}

TEST_CASE("parameter chain on the binary counter C_{16,9}")
{
    const auto c = binary_counter_class(16, 9);
    CHECK(smn_prime(c) == 2);
    CHECK(an_prime(c) == 2);
    const auto d = add_all_ones(c);
    CHECK(smn_prime(d) == 1);
    CHECK(an_prime(d) == 1);
}

TEST_CASE("greedy run under the canonical ordering")
{
    const auto p1 = powerset(1);
    const auto m = greedy_run(p1, GreedyOrdering::canonical(p1));
    REQUIRE(m.assignment.size() == 2);
    CHECK(m.assignment[0].empty());
    CHECK(m.assignment[1] == sample({{0, 1}}));

    GreedyOrdering bad = GreedyOrdering::canonical(p1);
    bad.concept_order = {0, 0};
    CHECK_THROWS_AS(greedy_run(p1, bad), InputError);

    GreedyOrdering unsorted = GreedyOrdering::canonical(p1);
    unsorted.sample_order = {sample({{0, 0}}), LabeledSample{}, sample({{0, 1}})};
    CHECK_THROWS_AS(greedy_run(p1, unsorted), InputError);
}

TEST_CASE("linear extension lists preferred samples first within each size")
{
    const std::vector<LabeledSample> pref = {sample({{1, 1}}),
                                             sample({{0, 0}, {1, 0}})};
    const auto ext = linear_extension(2, pref);
    REQUIRE(ext.size() == 9);
    CHECK(ext[0].empty());
    CHECK(ext[1] == pref[0]);
    CHECK(ext[2] == sample({{0, 0}}));
    CHECK(ext[5] == pref[1]);
    for (std::size_t i = 0; i + 1 < ext.size(); ++i) CHECK(ext[i].size() <= ext[i + 1].size());
}

TEST_CASE("greedy outputs are exactly the greedy matchings")
{
    for (const auto& c : tiny_classes()) {
        const auto outputs = enumerate_greedy_outputs(c);
        auto greedy = enumerate_greedy_matchings(c);
        std::vector<SaturatingMatching> produced;
        for (const auto& o : outputs) {
            CHECK(greedy_run(c, o.ordering) == o.matching);
            produced.push_back(o.matching);
        }
        auto key = [](const SaturatingMatching& m) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> v;
            for (const auto& s : m.assignment) v.emplace_back(s.mask(), s.labels());
            return v;
        };
        std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> a, b;
        for (const auto& m : produced) a.push_back(key(m));
        for (const auto& m : greedy) b.push_back(key(m));
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }
}

TEST_CASE("size guards")
{
    CHECK_THROWS_AS(oracle_param(powerset(5), OracleParam::smn), SizeGuardError);
    CHECK_THROWS_AS(enumerate_greedy_outputs(powerset(4)), SizeGuardError);
}

TEST_CASE("budget exhaustion yields an interval")
{
    SearchLimits tight;
    tight.node_budget = 1;
    const auto g = gmn(powerset(4), tight);
    CHECK(g.lower <= 3);
    CHECK(g.upper >= 3);
    CHECK(g.lower <= g.value);
    CHECK(g.value <= g.upper);
    if (!g.exact) CHECK(g.method == "exhaustive-budget");
}
