#ifndef WVL_EXPERIMENT_HPP
#define WVL_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "wvl/config.hpp"
#include "wvl/evolution.hpp"
#include "wvl/norms.hpp"
#include "wvl/penrose.hpp"

namespace wvl {

// A fully-resolved experiment: parsed config plus invocation options.
struct ExperimentSpec {
    enum class Kind { evolve_wigner, evolve_vlasov, converge, penrose, eikonal };
    Kind kind = Kind::evolve_wigner;
    Config config;
    std::string out_dir;
    int workers = 1;
    std::string tol_profile = "strict"; // "fast" relaxes scan resolutions
    unsigned long seed = 0;

    static Kind kind_from_name(const std::string& name);
};

struct ConvergenceEntry {
    double eps = 0.0;
    double dist_f_sup = 0.0;   // sup over snapshot times of the field distance
    double dist_rho_l2t = 0.0; // L2-in-time density distance
};

struct ConvergenceRecord {
    std::vector<ConvergenceEntry> entries; // eps strictly decreasing
    std::vector<double> rates_f;           // observed rates between neighbours
    std::vector<double> rates_rho;
};

// Snapshot-wise distances between two trajectories sharing grid and times:
// sup over times for fields, L2 in time (trapezoid) for densities.
struct CompareResult {
    double dist_f_sup = 0.0;
    double dist_rho_l2t = 0.0;
};
CompareResult compare(const Trajectory& a, const Trajectory& b, const NormSpec& field_norm_spec,
                      double eps_for_norms);
CompareResult compare(const Trajectory& a, const Trajectory& b);

// Executes the experiment, writing CSV/JSON/checkpoint artifacts under
// spec.out_dir. Returns 0 on success; on failure writes error.json and
// returns nonzero. Deterministic for a fixed spec and seed.
int run(const ExperimentSpec& spec);

// Built-in invariant battery (the `check` subcommand); prints one line per
// invariant, returns true when all hold.
bool run_invariant_checks(unsigned long seed, const std::string& tol_profile);

// config -> domain object builders shared by run() and the tests
PhaseGrid grid_from_config(const Config& cfg);
PairPotential potential_from_config(const Config& cfg);
PhaseProfile phase_profile_from_config(const Config& cfg, const PhaseGrid& grid);
VelocityProfile velocity_profile_from_config(const Config& cfg);
ScanBox scanbox_from_config(const Config& cfg, const std::string& tol_profile);

} // namespace wvl

#endif
