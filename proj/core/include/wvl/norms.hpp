#ifndef WVL_NORMS_HPP
#define WVL_NORMS_HPP

#include "wvl/field.hpp"

namespace wvl {

// V+- = eps d_x +- 2 i v,  X+- = eps d_v +- 2 i x  (spectral derivative,
// pointwise multiplier). The +-2i weights make them eps-uniform surrogates
// for derivatives and moments.
enum class VectorFieldKind { v_plus, v_minus, x_plus, x_minus };

PhaseField vector_field_apply(const PhaseField& f, VectorFieldKind which, double eps);

// Families:
//  hmr_eps:        sum_{|alpha|<=m} of the weighted-block norm of d^alpha f,
//                  blocks Z+^beta Z-^gamma with Z+^b = X-^{b_x} V+^{b_v},
//                  Z-^g = X+^{g_x} V-^{g_v}, |beta|,|gamma| <= r, applied
//                  right to left exactly as written.
//  h0r0_eps:       sum_{b,g <= r} ||V+^b V-^g f||  (no X fields, m ignored).
//  hmr_standard:   || <v>^r (I - Lap)^{m/2} f ||, eps-free.
//  density_hmr:    for rho(x): sum_{|a|<=m} sum_{b<=r} ||d^a (eps d_x)^b rho||.
struct NormSpec {
    enum class Family { hmr_eps, h0r0_eps, hmr_standard, density_hmr };
    int m = 0;
    int r = 0;
    Family family = Family::hmr_eps;
};

// Fraction of spectral energy in the top-eighth frequency shell; spectral
// differentiation is meaningless when this is large.
double spectral_tail_energy(const PhaseField& f);

// Throws ParameterError when the field is spectrally under-resolved
// (tail energy fraction > 1e-2).
double field_norm(const PhaseField& f, const NormSpec& spec, double eps);

double density_norm(const DensityField& rho, const NormSpec& spec, double eps);

} // namespace wvl

#endif
