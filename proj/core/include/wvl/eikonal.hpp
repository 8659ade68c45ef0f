#ifndef WVL_EIKONAL_HPP
#define WVL_EIKONAL_HPP

#include <functional>
#include <memory>

#include "wvl/field.hpp"

namespace wvl {

// Time-indexed convolved density Vrho(t, x); the Hamiltonian only needs its
// value and x-derivative at off-grid points.
class PotentialHistory {
public:
    virtual ~PotentialHistory() = default;
    virtual double value(double t, double x) const = 0;
    virtual double ddx(double t, double x) const = 0;
    virtual double t_min() const = 0;
    virtual double t_max() const = 0;
};

// Closed-form Vrho (free flow, manufactured cases).
class AnalyticPotential final : public PotentialHistory {
public:
    AnalyticPotential(std::function<double(double, double)> value,
                      std::function<double(double, double)> ddx, double t0, double t1)
        : value_(std::move(value)), ddx_(std::move(ddx)), t0_(t0), t1_(t1) {}
    double value(double t, double x) const override { return value_(t, x); }
    double ddx(double t, double x) const override { return ddx_(t, x); }
    double t_min() const override { return t0_; }
    double t_max() const override { return t1_; }

    static std::unique_ptr<AnalyticPotential> zero(double t0, double t1) {
        return std::make_unique<AnalyticPotential>([](double, double) { return 0.0; },
                                                   [](double, double) { return 0.0; }, t0, t1);
    }

private:
    std::function<double(double, double)> value_, ddx_;
    double t0_, t1_;
};

// Density frames from a solver run; spectral evaluation at off-grid x with
// linear interpolation between frames.
class GridPotential final : public PotentialHistory {
public:
    GridPotential(std::vector<double> times, std::vector<DensityField> vrho_frames);
    double value(double t, double x) const override;
    double ddx(double t, double x) const override;
    double t_min() const override { return times_.front(); }
    double t_max() const override { return times_.back(); }

private:
    struct Frame {
        std::vector<cplx> hat; // Fourier coefficients of Vrho
        Grid1 grid;
    };
    double eval(double t, double x, bool deriv) const;
    std::vector<double> times_;
    std::vector<Frame> frames_;
};

// Hamiltonian a(t, z, xi) = v xi_x + a_rho(t, x, xi_v),
// a_rho(t, x, xi_v) = Vrho(t, x - xi_v/2) - Vrho(t, x + xi_v/2)
// (unscaled xi_v; the semiclassical rescaling xi -> eps xi is a call-site
// reparametrization).
struct Hamiltonian {
    const PotentialHistory* vrho = nullptr;

    double a_rho(double t, double x, double xi_v) const {
        return vrho->value(t, x - 0.5 * xi_v) - vrho->value(t, x + 0.5 * xi_v);
    }
    double da_dx(double t, double x, double xi_v) const {
        return vrho->ddx(t, x - 0.5 * xi_v) - vrho->ddx(t, x + 0.5 * xi_v);
    }
    double da_dxiv(double t, double x, double xi_v) const {
        return -0.5 * (vrho->ddx(t, x - 0.5 * xi_v) + vrho->ddx(t, x + 0.5 * xi_v));
    }
};

// Phase-space/frequency point carried along the Hamiltonian flow, plus the
// accumulated action integrand of the eikonal construction.
struct BicharState {
    double X = 0.0, V = 0.0;   // Z = (X, V)
    double Xi_x = 0.0, Xi_v = 0.0;
    double action = 0.0;       // int (-a_rho + Xi_v * da/dxi_v) dtau
    double s = 0.0, t = 0.0;
};

// RK4 integration of dZ/dt = grad_xi a, dXi/dt = -grad_z a from time s to t
// (either direction); the action quadrature rides the same tableau.
BicharState integrate_bichar(const Hamiltonian& ham, double x, double v, double xi_x,
                             double xi_v, double s, double t, double dt_ode);

// psi_{t,s}(z, xi) = z.xi + action along the flow started at (z, xi).
double phase_psi(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                 double s, double t, double dt_ode);

// Newton inversion z0 = Y_{t,s}(z, xi) of the spatial flow map
// z0 -> Z_{t,s}(z0, xi); Jacobian by forward differences. Throws WindowError
// (with the measured |grad_z Z - I|) when the window is too large.
struct InverseResult {
    double x0 = 0.0, v0 = 0.0;
    double residual = 0.0;
    double jac_deviation = 0.0; // measured max-norm of grad_z Z - I
};
InverseResult invert_Z(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                       double s, double t, double dt_ode);

// phi_{t,s}(z, xi) = psi_{t,s}(Y_{t,s}(z, xi), xi).
double phase(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v, double s,
             double t, double dt_ode);

// Centered finite-difference gradient of phi in (z, xi).
std::array<double, 4> phase_gradient(const Hamiltonian& ham, double x, double v, double xi_x,
                                     double xi_v, double s, double t, double dt_ode, double h);

// max-norm of d_z d_xi phi - I at one point, centered differences.
double hessian_mixed_deviation(const Hamiltonian& ham, double x, double v, double xi_x,
                               double xi_v, double s, double t, double dt_ode, double h);

// |d_t phi + v d_x phi + a_rho(t, x, d_v phi)| at one point.
double hj_residual(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                   double s, double t, double dt_ode, double h);

// det of the (z,xi) flow Jacobian (finite differences); 1 for the exact flow.
double flow_jacobian_det(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                         double s, double t, double dt_ode, double h);

} // namespace wvl

#endif
