#ifndef WVL_QUADRATURE_HPP
#define WVL_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace wvl {

using cfun = std::function<std::complex<double>(double)>;

// Recursive adaptive Simpson; abs_tol is the absolute error target for the
// whole interval.
std::complex<double> adaptive_simpson(const cfun& f, double a, double b, double abs_tol);

// Composite 10-point Gauss-Legendre nodes/weights on [0, s_max] with panel
// width <= max_panel (good to ~1e-10 relative when the integrand oscillates
// slower than ~5 radians per panel).
struct PanelNodes {
    std::vector<double> s;
    std::vector<double> w;
};
PanelNodes gauss_panels(double s_max, double max_panel);

// int_0^{s_max} e^{-(gamma + i tau) s} w(s) ds, panels seeded against an
// oscillation rate `osc` (|tau| plus the intrinsic rate of w), each panel
// integrated adaptively.
std::complex<double> oscillatory_laplace(const cfun& w, double gamma, double tau, double s_max,
                                         double osc, double rel_tol);

} // namespace wvl

#endif
