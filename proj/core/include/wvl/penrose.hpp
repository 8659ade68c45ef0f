#ifndef WVL_PENROSE_HPP
#define WVL_PENROSE_HPP

#include <array>
#include <optional>
#include <vector>

#include "wvl/potential.hpp"
#include "wvl/profiles.hpp"

namespace wvl {

// Scan point. gamma > 0; the boundary gamma -> 0+ is admitted only through
// the explicit limit flag (the integral stays absolutely convergent for
// decaying profiles).
struct PenrosePoint {
    double gamma = 0.0;
    double tau = 0.0;
    double eta = 0.0;

    static PenrosePoint make(double gamma, double tau, double eta, bool gamma_limit = false) {
        if (!gamma_limit && !(gamma > 0.0))
            throw ParameterError("PenrosePoint: gamma must be positive (use gamma_limit for 0+)");
        if (gamma_limit && gamma != 0.0)
            throw ParameterError("PenrosePoint: gamma_limit requires gamma == 0");
        return PenrosePoint{gamma, tau, eta};
    }
};

enum class PenroseKind { quant, vb, vp };

struct QuadratureSettings {
    double rel_tol = 1e-10;  // per-point integration target
    double tail_tol = 1e-14; // truncation: bound(s*eta) e^{-gamma s} below this
    double s_max_cap = 1e8;  // beyond this the transform is not decaying
};

// P_quant = -2 vhat(eta) int_0^inf e^{-(gamma+i tau) s} sin(s eta^2/2) Fv f(s eta) ds
std::complex<double> penrose_quant(const PenrosePoint& p, const VelocityProfile& prof,
                                   const PairPotential& V, const QuadratureSettings& qs = {});

// P_VB = -int_0^inf e^{-(gamma+i tau) s} s eta^2 Fv f(s eta) ds;  P_VP = P_VB/(1+eta^2)
std::complex<double> penrose_vb(const PenrosePoint& p, const VelocityProfile& prof,
                                const QuadratureSettings& qs = {});
std::complex<double> penrose_vp(const PenrosePoint& p, const VelocityProfile& prof,
                                const QuadratureSettings& qs = {});

// Generalized nonlinearity: the -2 vhat(eta) prefactor becomes -2 Psi'(rho_f).
std::complex<double> penrose_quant_general(const PenrosePoint& p, const VelocityProfile& prof,
                                           double psi_prime_at_rho,
                                           const QuadratureSettings& qs = {});

std::complex<double> penrose_value(PenroseKind kind, const PenrosePoint& p,
                                   const VelocityProfile& prof, const PairPotential& V,
                                   const QuadratureSettings& qs = {});

struct ScanBox {
    double gamma_min = 1e-4; // geometric gamma grid approaches the inf over gamma > 0
    double gamma_max = 1.0;
    int n_gamma = 12;
    double tau_max = 12.0;
    int n_tau = 193; // uniform on [-tau_max, tau_max]
    double eta_min = 0.05;
    double eta_max = 6.0;
    int n_eta = 48; // geometric
    int refine_levels = 4;
    bool keep_surface = false;
};

// "certified" means: positive margin on the sampled set AND informative tail
// envelope (min(margin, 1 - envelope) > 0). This is a grid-plus-envelope
// statement, not an interval-arithmetic certificate; the gamma->0 and eta->0
// faces are approached on geometric grids only.
struct PenroseReport {
    PenroseKind kind = PenroseKind::quant;
    double margin = 0.0;
    PenrosePoint argmin;
    std::optional<double> argmin_x; // set for x-indexed scans
    double envelope = 0.0;          // sup bound of |P| outside the box faces
    bool certified = false;
    long points_scanned = 0;
    std::vector<std::array<double, 6>> surface; // gamma, tau, eta, Re P, Im P, |1-P|
};

PenroseReport margin_search(const VelocityProfile& prof, PenroseKind kind,
                            const PairPotential& V, const ScanBox& box);

// Infimum over x as well; separable profiles reuse one slice scan through
// the linearity of P in the profile.
PenroseReport margin_search(const PhaseProfile& prof, const Grid1& gx, PenroseKind kind,
                            const PairPotential& V, const ScanBox& box);

// sup over the sample set of |P(., f) - P(., g)|.
double perturbation_gap(const VelocityProfile& f, const VelocityProfile& g, PenroseKind kind,
                        const PairPotential& V, const std::vector<PenrosePoint>& samples);

// Rescaled quantum Penrose function along the ray r*(gdir, tdir, edir)
// against its r -> 0 limit vhat(0) * P_VB(direction).
struct HomogeneityRow {
    double r = 0.0;
    std::complex<double> p_tilde;
    double diff = 0.0;
};
std::vector<HomogeneityRow> homogeneity_limit_check(const VelocityProfile& prof,
                                                    const PairPotential& V, double gdir,
                                                    double tdir, double edir,
                                                    const std::vector<double>& r_sequence);

// Explicit global bound sup |P_quant| <= vhat_sup * int_0^inf u |Fv f(u)| du
// (the eta-sup of the integrable bound is attained as eta -> 0+).
struct SmallDataReport {
    double envelope = 0.0;
    bool certified = false;
    double margin_lower_bound = 0.0; // 1 - envelope when certified
};
SmallDataReport small_data_check(const VelocityProfile& prof, const PairPotential& V);

} // namespace wvl

#endif
