#ifndef WVL_B_OPERATOR_HPP
#define WVL_B_OPERATOR_HPP

#include "wvl/field.hpp"
#include "wvl/potential.hpp"

namespace wvl {

enum class BranchSign { plus, minus };

// B[rho, f]: in the mixed (x, xi_v) representation, multiplies F_v f(x, xi_v)
// by (i/eps) [Vrho(x - eps xi_v/2) - Vrho(x + eps xi_v/2)], where
// F_x(Vrho)(k) = vhat(eps k) rho^(k). Output representation matches the
// input's (physical in, physical out). Real in, real out.
PhaseField apply_B(const DensityField& rho, const PhaseField& f, Epsilon eps,
                   const PairPotential& V);

// Single exponential branch; apply_B == branch(+) - branch(-).
PhaseField apply_B_split(const DensityField& rho, const PhaseField& f, Epsilon eps,
                         const PairPotential& V, BranchSign sign);

// -c_V d_x rho * d_v f, the eps -> 0 limit of apply_B; spectral derivatives.
PhaseField classical_force(const DensityField& rho, const PhaseField& f,
                           const PairPotential& V);

// b_f(x, v, xi_x) = int_{-1/2}^{1/2} xi_x d_v f(x, v + lambda xi_x) dlambda
//                 = f(x, v + xi_x/2) - f(x, v - xi_x/2),
// evaluated by the exact sine multiplier 2 i sin(xi_x xi_v / 2) on F_v f.
// xi_x may be any real number, not only a grid frequency.
PhaseField symbol_b_f(const PhaseField& f, double xi_x);

// Multiplier a_rho(x, eps*xi_v) = Vrho(x - eps xi_v/2) - Vrho(x + eps xi_v/2)
// on the mixed-representation lattice, row-major like PhaseField. The kick
// phase and apply_B are both built from it; it is odd in xi_v, which is what
// preserves Hermitian symmetry (hence reality) of F_v f. The unpaired
// Nyquist rows carry no conjugate partner and are zeroed.
std::vector<double> kick_symbol(const DensityField& rho, const PhaseGrid& grid, double eps,
                              const PairPotential& V);

} // namespace wvl

#endif
