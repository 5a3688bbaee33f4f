#include "sectcat/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    sectcat::RunOptions o;
    CLI::App app{"Rational homotopy bounds for sectional category"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto common = [&](CLI::App* sub) {
        sub->add_option("model", o.model, "model file or built-in name (M1, M2, M3e, M3o)")->required();
        sub->add_flag("--json", o.json, "machine-readable report");
        sub->add_flag("--quiet", o.quiet, "only the summary lines");
    };

    auto* validate = app.add_subcommand("validate", "check the DGA axioms");
    common(validate);
    auto* coh = app.add_subcommand("cohomology", "cohomology ring and products");
    common(coh);
    auto* massey = app.add_subcommand("massey", "triple Massey product");
    common(massey);
    massey->add_option("classes", o.classes, "three classes: alias, generator or H^k_i")->expected(3)->required();
    auto* zcl = app.add_subcommand("zcl", "zero-divisor cup length");
    common(zcl);
    auto* bounds = app.add_subcommand("bounds", "certified bounds on cat and TC");
    common(bounds);
    bounds->add_option("--max-massey-degree", o.max_massey_degree, "degree cap for the Massey scan");
    bounds->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sectcat::kExitInput;
    }
    for (auto* sub : app.get_subcommands()) o.command = sub->get_name();

    sectcat::RunResult r = sectcat::run(o);
    std::cout << r.out << std::flush;
    std::cerr << r.err << std::flush;
    return r.exit_code;
}
