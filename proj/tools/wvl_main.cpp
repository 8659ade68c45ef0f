// wvl: spectral laboratory for the semiclassical Wigner / Vlasov-Benney
// system. Subcommands run config-driven experiments and write CSV/JSON
// artifacts; `check` runs the built-in invariant battery.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "wvl/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"wvl - Wigner / Vlasov-Benney spectral laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    int workers = 1;
    std::string tol_profile = "strict";

    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* copt = sub->add_option("--config", config_path, "experiment config file");
        if (needs_config) copt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "max concurrent sweep members");
        sub->add_option("--tol-profile", tol_profile, "fast|strict")
            ->check(CLI::IsMember({"fast", "strict"}));
    };

    CLI::App* evolve_w = app.add_subcommand("evolve-wigner", "evolve the Wigner equation");
    CLI::App* evolve_v = app.add_subcommand("evolve-vlasov", "evolve the Vlasov-Benney equation");
    CLI::App* converge = app.add_subcommand("converge", "eps-sweep against the classical limit");
    CLI::App* penrose = app.add_subcommand("penrose", "Penrose stability scan");
    CLI::App* eikonal = app.add_subcommand("eikonal", "Hamilton-Jacobi phase diagnostics");
    CLI::App* check = app.add_subcommand("check", "run the invariant suite");
    for (CLI::App* sub : {evolve_w, evolve_v, converge, penrose, eikonal}) add_common(sub, true);
    unsigned long seed = 1234;
    check->add_option("--seed", seed, "rng seed for the random test fields");
    check->add_option("--tol-profile", tol_profile, "fast|strict")
        ->check(CLI::IsMember({"fast", "strict"}));

    CLI11_PARSE(app, argc, argv);

    if (check->parsed())
        return wvl::run_invariant_checks(seed, tol_profile) ? 0 : 1;

    wvl::ExperimentSpec spec;
    try {
        spec.config = wvl::Config::load(config_path);
        const std::string name = app.get_subcommands().front()->get_name();
        spec.kind = wvl::ExperimentSpec::kind_from_name(name);
        const std::string cfg_kind = spec.config.str_or("kind", name);
        if (cfg_kind != name) {
            std::fprintf(stderr, "config kind '%s' does not match subcommand '%s'\n",
                         cfg_kind.c_str(), name.c_str());
            return 2;
        }
        spec.out_dir = out_dir;
        spec.workers = workers;
        spec.tol_profile = tol_profile;
        spec.seed = static_cast<unsigned long>(spec.config.integer_or("seed", 1234));
    } catch (const wvl::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return wvl::run(spec);
}
