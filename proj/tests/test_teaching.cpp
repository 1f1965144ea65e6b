#include "doctest.h"

#include "oracles.hpp"
#include "tmatch/families.hpp"
#include "tmatch/harness.hpp"
#include "tmatch/teaching.hpp"

#include <algorithm>

using namespace tmatch;

namespace {

LabeledSample sample(std::vector<std::pair<int, int>> pairs)
{
    return LabeledSample::from_pairs(pairs);
}

std::vector<ConceptClass> classes()
{
    std::vector<ConceptClass> out;
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(7, std::uint64_t{1} << n); ++k) {
            for (std::uint64_t s = 0; s < 3; ++s) out.push_back(random_class(k, n, 5000 + 100 * n + 10 * k + s));
        }
    }
    out.push_back(warmuth());
    out.push_back(warmuth_extended());
    return out;
}

// Peeling straight from the definition, with the brute-force teaching dimension.
int oracle_rtd(const ConceptClass& c)
{
    std::vector<std::uint64_t> rows(c.rows().begin(), c.rows().end());
    int best = 0;
    while (!rows.empty()) {
        std::vector<int> td;
        for (auto r : rows) td.push_back(oracle::teaching_dim(r, rows, c.n()));
        const int m = *std::min_element(td.begin(), td.end());
        best = std::max(best, m);
        std::vector<std::uint64_t> rest;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (td[i] != m) rest.push_back(rows[i]);
        }
        rows = rest;
    }
    return best;
}

int count_kind(const SequenceCheck& s, SequenceViolation::Kind k)
{
    return static_cast<int>(std::count_if(s.violations.begin(), s.violations.end(),
                                          [&](const SequenceViolation& v) { return v.kind == k; }));
}

const char* kCombinedSequence = R"(# M_0
0: (0,0) (1,0) (2,1) (3,1) (4,1) (5,1)
1: (0,1) (1,0) (2,1) (3,1) (4,1) (5,1)
2: (0,0) (1,1) (2,1) (3,1) (4,1) (5,1)
3: (0,1) (1,1) (2,1) (3,1) (4,1) (5,1)

0: (0,0) (1,0) (2,1)
1: (0,1) (1,0) (3,1)
2: (0,0) (1,1) (4,1)
3: (0,1) (1,1) (5,1)

0: (2,1)
1: (3,1)
2: (4,1)
3: (5,1)
)";

ConceptClass combined()
{
    auto [l, r] = std_example_pair();
    return free_combination(l, r);
}

}  // namespace

TEST_CASE("VC dimension and teaching dimension agree with brute force")
{
    for (const auto& c : classes()) {
        const auto v = vcd(c);
        CHECK(v.value == oracle::vcd(c));
        const auto& w = std::get<std::vector<int>>(v.witness);
        CHECK(static_cast<int>(w.size()) == v.value);
        CHECK(shattered(c, std::span<const int>(w)));
        for (auto r : c.rows()) {
            const auto t = teaching_dim(r, c);
            CHECK(t.size == oracle::teaching_dim(r, {c.rows().begin(), c.rows().end()}, c.n()));
            CHECK(t.sample.size() == t.size);
            for (auto other : c.rows()) CHECK(consistent(other, c.n(), t.sample) == (other == r));
        }
    }
    CHECK_THROWS_AS(teaching_dim(0b11, ConceptClass(2, {0b00})), InputError);
}

TEST_CASE("recursive teaching dimension")
{
    for (const auto& c : classes()) CHECK(rtd(c).value == oracle_rtd(c));
    CHECK(rtd(powerset(3)).value == 3);
    CHECK(vcd(warmuth()).value == 2);
    CHECK(rtd(warmuth()).value == 3);
    CHECK(vcd(warmuth_extended()).value == 3);
    CHECK(rtd(warmuth_extended()).value == 3);
}

TEST_CASE("the combined sequence is valid with cost 1")
{
    const auto c = combined();
    const auto seq = parse_sequence(kCombinedSequence, c);
    REQUIRE(seq.steps.size() == 3);
    const auto check = validate_sequence(c, seq);
    CHECK(check.valid);
    CHECK(check.cost == 1);
    CHECK(parse_sequence(write_sequence(seq), c).steps == seq.steps);

    const auto r = std_min_with_certificate(c, seq);
    CHECK(r.exact);
    CHECK(r.value == 1);
    CHECK(r.method == "certificate");
    CHECK(std_min(c).value == 1);
}

TEST_CASE("the constant sequence is valid")
{
    const auto p2 = powerset(2);
    SubsetTeachingSequence seq;
    SaturatingMatching m0;
    for (std::size_t i = 0; i < p2.k(); ++i) m0.assignment.push_back(p2.full_sample(i));
    seq.steps = {m0};
    CHECK(validate_sequence(p2, seq).valid);
    seq.steps = {m0, m0, m0};
    const auto check = validate_sequence(p2, seq);
    CHECK(check.valid);
    CHECK(check.cost == 2);
}

TEST_CASE("sequence violations")
{
    const auto p1 = powerset(1);
    const auto a = sample({{0, 0}});
    const auto b = sample({{0, 1}});

    CHECK(count_kind(validate_sequence(p1, {}), SequenceViolation::Kind::empty_sequence) == 1);

    SubsetTeachingSequence wrong_start{{SaturatingMatching{{LabeledSample{}, b}}}};
    CHECK(count_kind(validate_sequence(p1, wrong_start), SequenceViolation::Kind::not_full_start) == 1);

    // Concept 0 moves from (0,0) to (0,1): it grows and lands inside concept 1's previous sample.
    SubsetTeachingSequence grows{{SaturatingMatching{{a, b}}, SaturatingMatching{{b, b}}}};
    const auto g = validate_sequence(p1, grows);
    CHECK_FALSE(g.valid);
    CHECK(count_kind(g, SequenceViolation::Kind::grows) == 1);
    CHECK(count_kind(g, SequenceViolation::Kind::contained) == 1);
    CHECK(count_kind(g, SequenceViolation::Kind::not_saturating) == 1);

    // Both shrink to the empty sample: each is contained in the other's previous sample.
    SubsetTeachingSequence empty{{SaturatingMatching{{a, b}}, SaturatingMatching{{LabeledSample{}, LabeledSample{}}}}};
    const auto e = validate_sequence(p1, empty);
    CHECK(count_kind(e, SequenceViolation::Kind::contained) == 2);
    CHECK(count_kind(e, SequenceViolation::Kind::not_fixed_point) == 2);

    SubsetTeachingSequence short_step{{SaturatingMatching{{a}}}};
    CHECK(count_kind(validate_sequence(p1, short_step), SequenceViolation::Kind::wrong_size) == 1);

    CHECK(to_string(SequenceViolation::Kind::grows) == "condition-2");
}

TEST_CASE("sequence parsing errors")
{
    const auto p1 = powerset(1);
    CHECK_THROWS_AS(parse_sequence("0: (0,0)\n", p1), InputError);
    CHECK_THROWS_AS(parse_sequence("0: (0,0)\n0: (0,1)\n", p1), InputError);
    CHECK_THROWS_AS(parse_sequence("0: (0,0)\n1: (0,2)\n", p1), InputError);
    CHECK_THROWS_AS(parse_sequence("0: (0,0)\n1: (1,1)\n", p1), InputError);
    CHECK_THROWS_AS(parse_sequence("0: (0,0) junk\n1: (0,1)\n", p1), InputError);
    CHECK_THROWS_AS(parse_sequence("2: (0,0)\n", p1), InputError);
    const auto ok = parse_sequence("# comment\n1: (0,1)\n0: (0,0)\n\n\n", p1);
    REQUIRE(ok.steps.size() == 1);
    CHECK(ok.steps[0].assignment[1] == sample({{0, 1}}));
}

TEST_CASE("STD_min on powersets and small classes")
{
    for (int n = 1; n <= 3; ++n) {
        const auto r = std_min(powerset(n));
        CHECK(r.exact);
        CHECK(r.value == n);
    }
    for (const auto& c : classes()) {
        if (c.n() > 3) continue;
        const auto r = std_min(c);
        REQUIRE(r.exact);
        const auto& seq = std::get<SubsetTeachingSequence>(r.witness);
        const auto check = validate_sequence(c, seq);
        CHECK(check.valid);
        CHECK(check.cost == r.value);
        CHECK(r.value >= amn(c).value);
    }
    const auto bad = SubsetTeachingSequence{};
    CHECK_THROWS_AS(std_min_with_certificate(powerset(1), bad), InputError);
}

TEST_CASE("single shrinks reach every state simultaneous shrinks reach")
{
    for (int n = 1; n <= 3; ++n) {
        for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(4, std::uint64_t{1} << n); ++k) {
            for (std::uint64_t s = 0; s < 4; ++s) {
                const auto c = random_class(k, n, 9000 + 100 * n + 10 * k + s);
                CHECK(reachable_states(c, false) == reachable_states(c, true));
            }
        }
    }
    CHECK_THROWS_AS(reachable_states(powerset(3), false), SizeGuardError);
}
