// Command-line front end: reads a model file describing a submanifold of
// solutions, runs the analysis pipeline, and emits human-readable or JSON
// reports. Exit codes: 0 all checks passed, 1 some identity failed, 2 parse
// or precondition error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "paracr/fuzz.hpp"
#include "paracr/report.hpp"

using namespace paracr;

namespace {

int cmd_analyze(const std::string& path, const AnalyzeOptions& opts, bool json_out) {
    ModelFile mf = load_model_file(path);
    InvariantReport rep = analyze(mf, opts);
    if (json_out)
        std::cout << report_to_json(rep).dump(2) << "\n";
    else
        std::cout << report_to_text(rep);
    return rep.exit_code();
}

int cmd_normalize(const std::string& path, int degree, bool json_out) {
    ModelFile mf = load_model_file(path);
    Submanifold M = build_model(mf, degree);
    auto [Mn, rec] = normalize_coordinates(M);
    if (json_out) {
        nlohmann::json j{{"Q", series_to_json(Mn.Q)},
                         {"P", series_to_json(Mn.P)},
                         {"identity", rec.identity},
                         {"y_of_xy", series_to_json(rec.y_of_xy)},
                         {"b_of_ab", series_to_json(rec.b_of_ab)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "normalized Q = " << Mn.Q.str() << "\n";
        std::cout << "normalized P = " << Mn.P.str() << "\n";
        std::cout << (rec.identity ? "change of coordinates: identity\n"
                                   : "variables-side substitution: " + rec.y_of_xy.str() +
                                         "\nparameters-side substitution: " +
                                         rec.b_of_ab.str() + "\n");
    }
    return 0;
}

int cmd_derive_pde(const std::string& path, int degree, bool dual, bool json_out) {
    ModelFile mf = load_model_file(path);
    Submanifold M = build_model(mf, degree);
    PdeSystem S = dual ? derive_dual_pde(M) : derive_pde(M);
    if (json_out) {
        std::cout << pde_to_json(S).dump(2) << "\n";
    } else {
        std::cout << (dual ? "c_b   = " : "z_y   = ") << S.F.str() << "\n";
        std::cout << (dual ? "c_aaa = " : "z_xxx = ") << S.H.str() << "\n";
    }
    return 0;
}

int cmd_classify(const std::string& path, int degree, bool json_out) {
    ModelFile mf = load_model_file(path);
    Submanifold M = build_model(mf, degree);
    NondegReport r = nondeg_report(M, 6);
    if (json_out)
        std::cout << nondeg_to_json(r).dump(2) << "\n";
    else {
        if (r.case_label) std::cout << "case " << case_label_str(*r.case_label) << "\n";
        std::cout << "k_par = " << (r.k_par ? std::to_string(*r.k_par) : "none") << ", l_var = "
                  << (r.l_var ? std::to_string(*r.l_var) : "none") << " (searched to "
                  << r.k_max_searched << ")\n";
        if (r.delta0)
            std::cout << "Delta(Q)(0) = " << r.delta0->str() << ", Box(P)(0) = "
                      << r.box0->str() << "\n";
    }
    return 0;
}

int cmd_fuzz(std::uint64_t seed, int cases, int degree, bool json_out) {
    FuzzOutcome out = run_property_suite(seed, cases, degree);
    if (json_out) {
        nlohmann::json j{{"cases", out.cases}, {"failures", out.failures},
                         {"messages", out.messages}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << out.cases << " checks, " << out.failures << " failures\n";
        for (const auto& msg : out.messages) std::cout << "  FAIL " << msg << "\n";
    }
    return out.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of para-CR submanifolds of solutions and their PDE systems"};
    app.require_subcommand(1);

    std::string path;
    AnalyzeOptions opts;
    bool json_out = false, dual = false, scale = false, normalize = false;
    int degree = 8, cases = 50;
    std::uint64_t seed = 1;
    long bn = 0, bm = 0, bk = 0, bl = 0;

    std::string point_spec;
    auto* analyze_cmd = app.add_subcommand("analyze", "full invariant report for a model file");
    analyze_cmd->add_option("file", path, "model file")->required();
    analyze_cmd->add_option("--degree", degree, "truncation degree (default 8)");
    analyze_cmd->add_option("--kmax", opts.k_max, "nondegeneracy search bound (default 6)");
    analyze_cmd->add_option("--point", point_spec,
                            "rank probe coordinates, e.g. \"x=1/2,a=-1/3\" (default origin)");
    analyze_cmd->add_flag("--json", json_out, "machine-readable output");
    analyze_cmd->add_flag("--normalize", normalize, "move to normal coordinates first");
    analyze_cmd->add_flag("--scale", scale, "rescale beta, beta_under to 1 when nonzero");

    auto* norm_cmd = app.add_subcommand("normalize", "print the normal-coordinates model");
    norm_cmd->add_option("file", path, "model file")->required();
    norm_cmd->add_option("--degree", degree, "truncation degree");
    norm_cmd->add_flag("--json", json_out, "machine-readable output");

    auto* pde_cmd = app.add_subcommand("derive-pde", "eliminate parameters, print z_y = F, z_xxx = H");
    pde_cmd->add_option("file", path, "model file")->required();
    pde_cmd->add_option("--degree", degree, "truncation degree");
    pde_cmd->add_flag("--dual", dual, "derive the dual system c_b = E, c_aaa = G");
    pde_cmd->add_flag("--json", json_out, "machine-readable output");

    auto* cls_cmd = app.add_subcommand("classify", "nondegeneracy orders and case label");
    cls_cmd->add_option("file", path, "model file")->required();
    cls_cmd->add_option("--degree", degree, "truncation degree");
    cls_cmd->add_flag("--json", json_out, "machine-readable output");

    auto* bound_cmd = app.add_subcommand("bound", "automorphism dimension bound N(n,m,k,l)");
    bound_cmd->add_option("n", bn)->required();
    bound_cmd->add_option("m", bm)->required();
    bound_cmd->add_option("k", bk)->required();
    bound_cmd->add_option("l", bl)->required();

    auto* fuzz_cmd = app.add_subcommand("fuzz", "seeded property suite over random models");
    fuzz_cmd->add_option("--seed", seed, "random seed (default 1)");
    fuzz_cmd->add_option("--cases", cases, "cases per class (default 50)");
    fuzz_cmd->add_option("--degree", degree, "base truncation degree (default 5)");
    fuzz_cmd->add_flag("--json", json_out, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    opts.normalize = normalize;
    opts.scale = scale;
    opts.degree = degree;

    try {
        if (!point_spec.empty()) opts.point = parse_point_spec(point_spec);
        if (app.got_subcommand(analyze_cmd)) return cmd_analyze(path, opts, json_out);
        if (app.got_subcommand(norm_cmd)) return cmd_normalize(path, degree, json_out);
        if (app.got_subcommand(pde_cmd)) return cmd_derive_pde(path, degree, dual, json_out);
        if (app.got_subcommand(cls_cmd)) return cmd_classify(path, degree, json_out);
        if (app.got_subcommand(bound_cmd)) {
            std::cout << aut_dim_bound(bn, bm, bk, bl).get_str() << "\n";
            return 0;
        }
        if (app.got_subcommand(fuzz_cmd)) {
            if (!fuzz_cmd->count("--degree")) degree = 5;
            return cmd_fuzz(seed, cases, degree, json_out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
