#ifndef WVL_WIGNER_HPP
#define WVL_WIGNER_HPP

#include "wvl/field.hpp"

namespace wvl {

// Wavefunction sample on an x-grid with a nonnegative occupation weight.
struct PureState {
    Grid1 grid;
    std::vector<cplx> psi;
    double weight = 1.0;
};

// Finite-rank state: a weighted sum of pure states.
struct MixedState {
    std::vector<PureState> components;
};

// W(x,v) = (2 pi)^{-1} int e^{-i v y} u(x + eps y/2) conj(u(x - eps y/2)) dy,
// weighted by u.weight. The staggered evaluations are Fourier shifts of u and
// the y-integral is a DFT on the dual of the target v-grid, so the discrete
// marginal identity dv * sum_v W = weight * |u|^2 holds to rounding.
// Negative values are genuine and never clipped.
PhaseField wigner_of_pure(const PureState& u, double eps, const PhaseGrid& target);

PhaseField wigner_of_mixed(const MixedState& state, double eps, const PhaseGrid& target);

} // namespace wvl

#endif
