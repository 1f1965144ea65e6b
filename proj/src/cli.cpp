#include "tmatch/cli.hpp"

#include "tmatch/families.hpp"
#include "tmatch/harness.hpp"
#include "tmatch/teaching.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace tmatch {

namespace {

std::string slurp(std::istream& in)
{
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_source(const std::string& path, std::istream& in)
{
    if (path.empty() || path == "-") return slurp(in);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open '" + path + "'");
    return slurp(f);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

void emit_report(const CampaignReport& rep, const std::string& path, std::ostream& out, std::ostream& err)
{
    const std::string text = rep.to_text();
    if (path.empty()) {
        err << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw InputError("cannot write '" + path + "'");
        f << text;
    }
    out << "checks=" << rep.checks << " pass=" << rep.passes << " violated=" << rep.violations.size()
        << " inconclusive=" << rep.inconclusive << " certified=" << rep.certified.size() << '\n';
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Teaching-parameter toolkit for finite concept classes", "tmatch"};
    app.require_subcommand(1);

    // family
    auto* fam = app.add_subcommand("family", "Write a named concept class in CCM format");
    std::string fam_name;
    std::vector<std::uint64_t> fam_args;
    std::string fam_out;
    fam->add_option("name", fam_name, "powerset | binary_counter | warmuth | warmuth_extended | std_pair_left | "
                                      "std_pair_right | std_pair_combined")
        ->required();
    fam->add_option("params", fam_args, "n for powerset; k n for binary_counter");
    fam->add_option("-o,--output", fam_out, "Output file");

    // compute
    auto* comp = app.add_subcommand("compute", "Compute parameters of a class");
    std::string comp_class = "-";
    std::string comp_params = "smn,smn_prime,an,an_prime,an_double_prime,gmn,gmn_prime,vcd,rtd,std_min,min_vcd_rtd";
    std::uint64_t node_budget = SearchLimits{}.node_budget;
    comp->add_option("--class", comp_class, "CCM file, '-' for standard input");
    comp->add_option("--params", comp_params, "Comma-separated parameter list");
    comp->add_option("--node-budget", node_budget, "Search node budget");

    // verify
    auto* ver = app.add_subcommand("verify", "Run a verification campaign");
    std::string ver_kind;
    std::string ver_param;
    ProbeOptions probe;
    std::vector<std::string> ver_classes;
    std::string ver_out;
    int ver_nmax_powerset = 1000;
    std::uint64_t ver_budget = 1'000'000;
    ver->add_option("kind", ver_kind, "hierarchy | monotonicity | additivity | powerset")
        ->required()
        ->check(CLI::IsMember({"hierarchy", "monotonicity", "additivity", "powerset"}));
    ver->add_option("--param", ver_param, "Table parameter (default: all)");
    ver->add_option("--trials", probe.trials, "Random trials");
    ver->add_option("--seed", probe.seed, "Seed; trial t uses seed + t");
    auto* kmax_opt = ver->add_option("--kmax", probe.k_max, "Largest class size drawn");
    auto* nmax_opt = ver->add_option("--nmax", probe.n_max, "Largest domain drawn (powerset: largest n)");
    ver->add_option("--class", ver_classes, "CCM files checked in addition to random classes (hierarchy)");
    ver->add_option("--node-budget", ver_budget, "Search node budget");
    ver->add_option("-o,--output", ver_out, "Report file (default: standard error)");

    // search
    auto* srch = app.add_subcommand("search", "Open-problem prospector");
    std::string srch_kind;
    ProbeOptions sprobe;
    sprobe.trials = 1000;
    std::string srch_out;
    srch->add_option("kind", srch_kind, "gmn-subadd")->required()->check(CLI::IsMember({"gmn-subadd"}));
    srch->add_option("--trials", sprobe.trials, "Random pairs");
    srch->add_option("--seed", sprobe.seed, "Seed; pair t uses seed + t");
    srch->add_option("--node-budget", sprobe.limits.node_budget, "Search node budget");
    srch->add_option("-o,--output", srch_out, "Report file (default: standard error)");

    // validate-sequence
    auto* vs = app.add_subcommand("validate-sequence", "Check a subset teaching sequence");
    std::string vs_class;
    std::string vs_seq;
    vs->add_option("--class", vs_class, "CCM file")->required();
    vs->add_option("--seq", vs_seq, "Sequence file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (*fam) {
            ConceptClass c = [&] {
                if (fam_name == "std_pair_combined") {
                    auto [l, r] = std_example_pair();
                    return free_combination(l, r);
                }
                FamilySpec spec;
                spec.kind = parse_family_kind(fam_name);
                if (spec.kind == FamilyKind::powerset) {
                    if (fam_args.size() != 1) throw InputError("powerset takes n");
                    spec.n = static_cast<int>(fam_args[0]);
                } else if (spec.kind == FamilyKind::binary_counter) {
                    if (fam_args.size() != 2) throw InputError("binary_counter takes k n");
                    spec.k = fam_args[0];
                    spec.n = static_cast<int>(fam_args[1]);
                } else if (!fam_args.empty()) {
                    throw InputError(fam_name + " takes no parameters");
                }
                return make_family(spec);
            }();
            const std::string text = write_ccm(c) + "\n";
            if (fam_out.empty()) {
                out << text;
            } else {
                std::ofstream f(fam_out, std::ios::binary);
                if (!f) throw InputError("cannot write '" + fam_out + "'");
                f << text;
            }
            return 0;
        }
        if (*comp) {
            const ConceptClass c = parse_ccm(read_source(comp_class, in));
            SearchLimits limits;
            limits.node_budget = node_budget;
            std::vector<Param> params;
            for (const auto& name : split_list(comp_params)) params.push_back(parse_param(name));
            if (params.empty()) throw InputError("no parameters requested");
            int code = 0;
            for (Param p : params) {
                const auto r = compute_param(c, p, limits);
                out << tsv_row(p, r) << '\n';
                if (!r.exact) code = 3;
            }
            return code;
        }
        if (*ver) {
            probe.limits.node_budget = ver_budget;
            // Free combinations square the class size; keep the factors small.
            if (ver_kind == "additivity") {
                if (!kmax_opt->count()) probe.k_max = 3;
                if (!nmax_opt->count()) probe.n_max = 3;
            }
            std::vector<Param> params;
            if (!ver_param.empty()) {
                params.push_back(parse_param(ver_param));
            } else {
                params = table_params();
            }
            CampaignReport rep;
            if (ver_kind == "powerset") {
                rep = report_powerset(nmax_opt->count() ? probe.n_max : ver_nmax_powerset);
            } else if (ver_kind == "hierarchy") {
                rep = verify_hierarchy_random(probe);
                for (const auto& path : ver_classes) {
                    auto one = verify_hierarchy(parse_ccm(read_source(path, in)), probe.limits);
                    one.lines.front() = path + " " + one.lines.front();
                    rep.merge(one);
                }
            } else {
                rep.title = ver_kind;
                rep.seed = probe.seed;
                rep.node_budget = probe.limits.node_budget;
                for (Param p : params) {
                    const auto one = ver_kind == "monotonicity" ? probe_monotonicity(p, probe)
                                                                : probe_additivity(p, probe);
                    rep.lines.push_back("## " + one.title);
                    rep.merge(one);
                }
            }
            emit_report(rep, ver_out, out, err);
            return rep.exit_code();
        }
        if (*srch) {
            const auto rep = search_gmn_subadditivity(sprobe);
            emit_report(rep, srch_out, out, err);
            // Evidence only: a found violation is reported, never an error.
            return rep.violations.empty() ? 0 : 1;
        }
        if (*vs) {
            const ConceptClass c = parse_ccm(read_source(vs_class, in));
            const auto seq = parse_sequence(read_source(vs_seq, in), c);
            const auto check = validate_sequence(c, seq);
            if (check.valid) {
                out << "valid\tcost\t" << check.cost << '\n';
                return 0;
            }
            for (const auto& v : check.violations) {
                out << "violation\t" << to_string(v.kind) << "\tstep " << v.step << "\tconcepts";
                for (auto i : v.concepts) out << ' ' << i;
                out << '\n';
            }
            return 1;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SizeGuardError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace tmatch
