#include "doctest.h"

#include "tmatch/cli.hpp"
#include "tmatch/families.hpp"
#include "tmatch/harness.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace tmatch;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "")
{
    args.insert(args.begin(), "tmatch");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    Run r;
    r.code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), in, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("CCM round trip")
{
    const auto c = parse_ccm("2 1\n0\n1");
    CHECK(c.same_rows(powerset(1)));
    CHECK(write_ccm(binary_counter_class(3, 2)) == "3 2\n00\n10\n01");
    CHECK(parse_ccm("# note\n3 2\n\n00\n10\n# again\n01\n").same_rows(binary_counter_class(3, 2)));
    const auto w = warmuth_extended();
    CHECK(parse_ccm(write_ccm(w)) == w);
}

TEST_CASE("CCM errors")
{
    CHECK_THROWS_AS(parse_ccm(""), InputError);
    CHECK_THROWS_AS(parse_ccm("2\n0\n1"), InputError);
    CHECK_THROWS_AS(parse_ccm("2 1\n0\n0"), InputError);
    CHECK_THROWS_AS(parse_ccm("2 1\n0\n2"), InputError);
    CHECK_THROWS_AS(parse_ccm("2 2\n00\n1"), InputError);
    CHECK_THROWS_AS(parse_ccm("3 1\n0\n1"), InputError);
    CHECK_THROWS_AS(parse_ccm("1 1\n0\n1"), InputError);
}

TEST_CASE("seeded random classes")
{
    CHECK(write_ccm(random_class(5, 3, 1)) == "5 3\n000\n100\n110\n011\n111");
    CHECK(random_class(6, 4, 42) == random_class(6, 4, 42));
    CHECK(random_class(8, 3, 7).same_rows(powerset(3)));
    SplitMix64 a(3), b(3);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    SplitMix64 r(9);
    for (int i = 0; i < 100; ++i) {
        const auto v = r.between(2, 5);
        CHECK(v >= 2);
        CHECK(v <= 5);
    }
}

TEST_CASE("parameter names")
{
    for (Param p : {Param::smn, Param::smn_prime, Param::an, Param::an_prime, Param::an_double_prime, Param::gmn,
                    Param::gmn_prime, Param::vcd, Param::rtd, Param::std_min, Param::min_vcd_rtd}) {
        CHECK(parse_param(param_name(p)) == p);
    }
    CHECK(parse_param("amn") == Param::an);
    CHECK_THROWS_AS(parse_param("xyz"), InputError);
}

TEST_CASE("three-valued comparisons")
{
    const auto one = ParamResult::exact_value(1, "x");
    const auto two = ParamResult::exact_value(2, "x");
    const auto wide = ParamResult::interval(2, 1, 3, "x");
    CHECK(check_le(one, two) == Verdict::pass);
    CHECK(check_le(two, one) == Verdict::violated);
    CHECK(check_le(wide, two) == Verdict::inconclusive);
    CHECK(check_le(one, wide) == Verdict::pass);
}

TEST_CASE("compute on the 6-instance powerset")
{
    const auto r = run({"compute", "--params", "smn,an_prime"}, write_ccm(powerset(6)));
    CHECK(r.code == 0);
    CHECK(r.out == "smn\t2\t2\t2\ttrue\tbottleneck-matching\nan_prime\t3\t3\t3\ttrue\tdilworth\n");
}

TEST_CASE("family piped into compute")
{
    const auto f = run({"family", "powerset", "2"});
    CHECK(f.code == 0);
    const auto r = run({"compute", "--params", "gmn"}, f.out);
    CHECK(r.code == 0);
    CHECK(r.out == "gmn\t2\t2\t2\ttrue\texhaustive\n");
}

TEST_CASE("CLI exit codes")
{
    const auto h = run({"verify", "hierarchy", "--trials", "0", "--seed", "1"});
    CHECK(h.code == 0);
    CHECK(run({"compute", "--bogus"}).code == 2);
    CHECK(run({"compute"}, "2 1\n0\n0").code == 2);
    CHECK(run({"family", "nope"}).code == 2);
    CHECK(run({"family", "powerset"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("validate-sequence through the CLI")
{
    const auto c = write_ccm(powerset(1));
    const std::string dir = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
    const std::string cls = dir + "/tmatch_test_p1.ccm";
    const std::string seq = dir + "/tmatch_test_p1.seq";
    {
        std::ofstream(cls) << c << '\n';
        std::ofstream(seq) << "0: (0,0)\n1: (0,1)\n";
    }
    const auto ok = run({"validate-sequence", "--class", cls, "--seq", seq});
    CHECK(ok.code == 0);
    CHECK(ok.out == "valid\tcost\t1\n");
    std::ofstream(seq) << "0: (0,0)\n1: (0,1)\n\n0:\n1:\n";
    const auto bad = run({"validate-sequence", "--class", cls, "--seq", seq});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("violation\tcondition-3") != std::string::npos);
}

TEST_CASE("hierarchy on single classes")
{
    for (const auto& c : {powerset(3), random_class(6, 4, 3), binary_counter_class(5, 3)}) {
        const auto rep = verify_hierarchy(c);
        CHECK(rep.violations.empty());
        CHECK(rep.checks > 10);
        CHECK(rep.exit_code() == 0);
    }
}

TEST_CASE("separating examples replay")
{
    // Adding the all-ones concept lowers SMN' and AN'.
    const auto c = binary_counter_class(16, 9);
    const auto d = add_all_ones(c);
    for (const char* p : {"smn_prime", "an_prime"}) {
        Counterexample cx{"class-monotone", p, {write_ccm(c), write_ccm(d)}, {}};
        CHECK(reverify(cx));
    }
    // Extending Warmuth's domain raises VCD and min{VCD, RTD}.
    for (const char* p : {"vcd", "min_vcd_rtd"}) {
        Counterexample cx{"domain-monotone", p, {write_ccm(warmuth()), write_ccm(warmuth_extended())}, {}};
        CHECK(reverify(cx));
    }
    auto [l, r] = std_example_pair();
    CHECK(reverify(Counterexample{"super-additive", "std_min", {write_ccm(l), write_ccm(r)}, {}}));
    const auto c53 = write_ccm(binary_counter_class(5, 3));
    CHECK(reverify(Counterexample{"super-additive", "gmn_prime", {c53, c53}, {}}));
    const auto p1 = write_ccm(powerset(1));
    CHECK(reverify(Counterexample{"super-additive", "gmn", {p1, p1, p1}, {}}));
    const ConceptClass small(3, {0b111, 0b001, 0b010, 0b000});
    CHECK(reverify(Counterexample{"sub-additive", "min_vcd_rtd", {write_ccm(warmuth()), write_ccm(small)}, {}}));

    // Relations that hold do not replay as violations.
    CHECK_FALSE(reverify(Counterexample{"le", "smn<=an", {write_ccm(powerset(3))}, {}}));
    CHECK_FALSE(reverify(Counterexample{"closed-form", "theorem7", {}, {20}}));
    CHECK_FALSE(reverify(Counterexample{"closed-form", "p_star", {}, {}}));
    CHECK(reverify(Counterexample{"closed-form", "band", {}, {100}}));
    CHECK_THROWS_AS(reverify(Counterexample{"le", "smn", {p1}, {}}), InputError);
}

TEST_CASE("powerset report")
{
    const auto rep = report_powerset(60);
    CHECK(rep.violations.empty());
    CHECK(rep.checks > 0);
    CHECK_THROWS_AS(report_powerset(2001), InputError);
}

TEST_CASE("strict separations in the hierarchy")
{
    // Each "a<=b" below is a relation that fails, so the replay reports a violation.
    auto strict = [](const ConceptClass& c, const std::string& larger_le_smaller) {
        return reverify(Counterexample{"le", larger_le_smaller, {write_ccm(c)}, {}});
    };
    const auto c16 = add_all_ones(binary_counter_class(16, 9));
    CHECK(strict(c16, "smn<=smn_prime"));
    CHECK(strict(c16, "an<=an_prime"));
    CHECK(strict(powerset(2), "gmn<=smn"));
    CHECK(strict(powerset(3), "gmn_prime<=gmn"));
    CHECK(strict(binary_counter_class(4, 3), "min_vcd_rtd<=gmn_prime"));
    CHECK(strict(powerset(6), "an_prime<=smn_prime"));
    CHECK(strict(powerset(6), "an<=smn"));
    CHECK(strict(powerset(4), "std_min<=an"));
    CHECK(strict(powerset(6), "gmn_prime<=an_prime"));
    auto [l, r] = std_example_pair();
    CHECK(strict(free_combination(l, r), "min_vcd_rtd<=std_min"));
}
