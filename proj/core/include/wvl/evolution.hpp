#ifndef WVL_EVOLUTION_HPP
#define WVL_EVOLUTION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wvl/b_operator.hpp"
#include "wvl/field.hpp"
#include "wvl/potential.hpp"

namespace wvl {

// Time-integration parameters. eps empty means the classical branch
// (Vlasov-Benney kick); otherwise the Wigner kick at that eps.
struct SimConfig {
    std::optional<double> eps;
    double dt = 0.0;
    double t_end = 0.0;
    PairPotential potential = PairPotential::delta(1.0);
    int snapshot_stride = 0;    // full-field snapshots every k steps (0: endpoints only)
    int diagnostics_stride = 1; // diagnostics every k steps
    double tail_tol = 1e-8;

    void validate() const {
        if (!(dt > 0.0)) throw ParameterError("SimConfig: dt must be positive");
        if (t_end < 0.0) throw ParameterError("SimConfig: t_end must be nonnegative");
        if (eps && (!(*eps > 0.0) || *eps > 1.0))
            throw ParameterError("SimConfig: eps must lie in (0, 1]");
    }
};

struct DiagnosticsRow {
    double t = 0.0;
    double mass = 0.0;
    double l2 = 0.0;
    double rho_l2 = 0.0;
    double reality = 0.0;
    double v_tail = 0.0;
};

struct Trajectory {
    std::vector<std::pair<double, PhaseField>> snapshots;
    std::vector<std::pair<double, DensityField>> densities;
    std::vector<DiagnosticsRow> diagnostics;
    std::vector<std::string> warnings;
    // max over the run of dt*|a_rho|/eps (phase resolution indicator; the
    // kick is exact regardless, this only gauges accuracy of the splitting).
    double kick_phase_max = 0.0;

    const PhaseField& final_field() const { return snapshots.back().second; }
};

// Exact free transport: multiplies F_x f by e^{-i dt v xi_x}.
PhaseField step_transport(const PhaseField& f, double dt);

// Exact kick for the frozen-density Wigner nonlinearity: multiplies
// F_v f(x, xi_v) by exp(-i (dt/eps) a_rho(x, eps xi_v)). Unit modulus, so
// mass, L2 and rho(x) are preserved pointwise.
PhaseField step_kick_wigner(const PhaseField& f, const DensityField& rho_frozen, double dt,
                            double eps, const PairPotential& V);

// Exact kick for the classical force: the v-shift
// f(x, v + dt c_V d_x rho(x)), applied as the phase e^{i xi_v dt c_V d_x rho}.
PhaseField step_kick_vlasov(const PhaseField& f, const DensityField& rho_frozen, double dt,
                            const PairPotential& V);

// Strang step: half kick (rho from f), full transport, half kick (rho
// recomputed). Second order in dt; each sub-step is exact.
PhaseField strang_step(const PhaseField& f, double dt, const SimConfig& cfg);

Trajectory evolve(const PhaseField& f0, const SimConfig& cfg);

// Checkpoint: 44-byte little-endian header ("WVL1", u32 nx, u32 nv, f64 Lx,
// f64 Lv, f64 eps, f64 t) followed by nx*nv row-major f64 physical samples.
// eps is written as 0 for the classical branch. x-origin 0 and centered
// v-domain are the file conventions.
void write_checkpoint(const std::string& path, const PhaseField& f, double eps, double t);
struct Checkpoint {
    PhaseField field;
    double eps = 0.0;
    double t = 0.0;
};
Checkpoint read_checkpoint(const std::string& path);

} // namespace wvl

#endif
