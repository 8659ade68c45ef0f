#include "wvl/eikonal.hpp"

#include <array>
#include <cmath>

namespace wvl {

GridPotential::GridPotential(std::vector<double> times, std::vector<DensityField> vrho_frames)
    : times_(std::move(times)) {
    if (times_.size() != vrho_frames.size() || times_.size() < 2)
        throw ParameterError("GridPotential: need matching times and at least two frames");
    for (size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k] > times_[k - 1]))
            throw ParameterError("GridPotential: times must be strictly increasing");
    frames_.reserve(vrho_frames.size());
    for (const DensityField& f : vrho_frames) {
        Frame fr;
        fr.grid = f.grid;
        fr.hat = forward_line(f.grid, f.data);
        fr.hat[static_cast<size_t>(f.grid.nyquist_bin())] = 0.0;
        frames_.push_back(std::move(fr));
    }
}

double GridPotential::eval(double t, double x, bool deriv) const {
    if (t < times_.front() - 1e-12 || t > times_.back() + 1e-12)
        throw ParameterError("GridPotential: time outside the stored history");
    size_t k = 1;
    while (k < times_.size() - 1 && times_[k] < t) ++k;
    const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);

    auto frame_eval = [&](const Frame& fr) {
        // direct Fourier synthesis at off-grid x
        const Grid1& g = fr.grid;
        cplx acc{0.0, 0.0};
        for (int m = 0; m < g.n; ++m) {
            const double kx = g.freq(m);
            const cplx e{std::cos(kx * x), std::sin(kx * x)};
            acc += deriv ? fr.hat[static_cast<size_t>(m)] * e * cplx{0.0, kx}
                         : fr.hat[static_cast<size_t>(m)] * e;
        }
        return acc.real() / g.length;
    };
    const double a = frame_eval(frames_[k - 1]);
    const double b = frame_eval(frames_[k]);
    return (1.0 - w) * a + w * b;
}

double GridPotential::value(double t, double x) const { return eval(t, x, false); }
double GridPotential::ddx(double t, double x) const { return eval(t, x, true); }

namespace {

struct State5 {
    // (X, V, Xi_x, Xi_v, action)
    std::array<double, 5> y{};
};

State5 rhs(const Hamiltonian& ham, double t, const State5& u) {
    const double X = u.y[0], V = u.y[1], Xx = u.y[2], Xv = u.y[3];
    const double dav = ham.da_dxiv(t, X, Xv);
    State5 d;
    d.y[0] = V;                       // dX/dt = d a/d xi_x
    d.y[1] = dav;                     // dV/dt = d a/d xi_v
    d.y[2] = -ham.da_dx(t, X, Xv);    // dXi_x/dt = -d a/d x
    d.y[3] = -Xx;                     // dXi_v/dt = -d a/d v
    d.y[4] = -ham.a_rho(t, X, Xv) + Xv * dav;
    return d;
}

State5 rk4_step(const Hamiltonian& ham, double t, double h, const State5& u) {
    auto add = [](const State5& a, const State5& b, double c) {
        State5 r;
        for (int i = 0; i < 5; ++i) r.y[static_cast<size_t>(i)] = a.y[static_cast<size_t>(i)] + c * b.y[static_cast<size_t>(i)];
        return r;
    };
    const State5 k1 = rhs(ham, t, u);
    const State5 k2 = rhs(ham, t + 0.5 * h, add(u, k1, 0.5 * h));
    const State5 k3 = rhs(ham, t + 0.5 * h, add(u, k2, 0.5 * h));
    const State5 k4 = rhs(ham, t + h, add(u, k3, h));
    State5 r = u;
    for (int i = 0; i < 5; ++i)
        r.y[static_cast<size_t>(i)] += h / 6.0 *
            (k1.y[static_cast<size_t>(i)] + 2.0 * k2.y[static_cast<size_t>(i)] +
             2.0 * k3.y[static_cast<size_t>(i)] + k4.y[static_cast<size_t>(i)]);
    return r;
}

State5 integrate(const Hamiltonian& ham, const State5& u0, double s, double t, double dt_ode) {
    if (!(dt_ode > 0.0)) throw ParameterError("integrate_bichar: dt_ode must be positive");
    if (s < ham.vrho->t_min() - 1e-12 || s > ham.vrho->t_max() + 1e-12 ||
        t < ham.vrho->t_min() - 1e-12 || t > ham.vrho->t_max() + 1e-12)
        throw ParameterError("integrate_bichar: window outside the potential history");
    const double span = t - s;
    if (span == 0.0) return u0;
    const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / dt_ode)));
    const double h = span / nsteps;
    State5 u = u0;
    for (int k = 0; k < nsteps; ++k) u = rk4_step(ham, s + k * h, h, u);
    return u;
}

} // namespace

BicharState integrate_bichar(const Hamiltonian& ham, double x, double v, double xi_x,
                             double xi_v, double s, double t, double dt_ode) {
    State5 u0;
    u0.y = {x, v, xi_x, xi_v, 0.0};
    const State5 u = integrate(ham, u0, s, t, dt_ode);
    BicharState out;
    out.X = u.y[0];
    out.V = u.y[1];
    out.Xi_x = u.y[2];
    out.Xi_v = u.y[3];
    out.action = u.y[4];
    out.s = s;
    out.t = t;
    return out;
}

double phase_psi(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                 double s, double t, double dt_ode) {
    const BicharState b = integrate_bichar(ham, x, v, xi_x, xi_v, s, t, dt_ode);
    return x * xi_x + v * xi_v + b.action;
}

InverseResult invert_Z(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                       double s, double t, double dt_ode) {
    auto flow_z = [&](double x0, double v0) {
        const BicharState b = integrate_bichar(ham, x0, v0, xi_x, xi_v, s, t, dt_ode);
        return std::array<double, 2>{b.X, b.V};
    };
    double x0 = x - (t - s) * v, v0 = v; // free-flow initial guess
    const double fd = 1e-6;
    double jac_dev = 0.0;
    for (int it = 0; it < 60; ++it) {
        const auto z = flow_z(x0, v0);
        const double rx = z[0] - x, rv = z[1] - v;
        const double res = std::max(std::abs(rx), std::abs(rv));
        if (res <= 1e-11) {
            InverseResult r;
            r.x0 = x0;
            r.v0 = v0;
            r.residual = res;
            r.jac_deviation = jac_dev;
            return r;
        }
        // forward-difference Jacobian of the flow in z0
        const auto zx = flow_z(x0 + fd, v0);
        const auto zv = flow_z(x0, v0 + fd);
        const double a11 = (zx[0] - z[0]) / fd, a12 = (zv[0] - z[0]) / fd;
        const double a21 = (zx[1] - z[1]) / fd, a22 = (zv[1] - z[1]) / fd;
        // max row-sum of grad_z Z - I; the free flow alone contributes the
        // shear |t - s|, so the validity monitor is < 1, not 1/2
        jac_dev = std::max({std::abs(a11 - 1.0) + std::abs(a12), std::abs(a21) + std::abs(a22 - 1.0)});
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-12 || jac_dev >= 1.0)
            throw WindowError("invert_Z: flow map too far from identity (window too large)", jac_dev);
        x0 -= (a22 * rx - a12 * rv) / det;
        v0 -= (-a21 * rx + a11 * rv) / det;
    }
    throw WindowError("invert_Z: Newton iteration did not converge", jac_dev);
}

double phase(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v, double s,
             double t, double dt_ode) {
    const InverseResult y = invert_Z(ham, x, v, xi_x, xi_v, s, t, dt_ode);
    return phase_psi(ham, y.x0, y.v0, xi_x, xi_v, s, t, dt_ode);
}

std::array<double, 4> phase_gradient(const Hamiltonian& ham, double x, double v, double xi_x,
                                     double xi_v, double s, double t, double dt_ode, double h) {
    auto ph = [&](double a, double b, double c, double d) {
        return phase(ham, a, b, c, d, s, t, dt_ode);
    };
    return {(ph(x + h, v, xi_x, xi_v) - ph(x - h, v, xi_x, xi_v)) / (2 * h),
            (ph(x, v + h, xi_x, xi_v) - ph(x, v - h, xi_x, xi_v)) / (2 * h),
            (ph(x, v, xi_x + h, xi_v) - ph(x, v, xi_x - h, xi_v)) / (2 * h),
            (ph(x, v, xi_x, xi_v + h) - ph(x, v, xi_x, xi_v - h)) / (2 * h)};
}

double hessian_mixed_deviation(const Hamiltonian& ham, double x, double v, double xi_x,
                               double xi_v, double s, double t, double dt_ode, double h) {
    auto ph = [&](double a, double b, double c, double d) {
        return phase(ham, a, b, c, d, s, t, dt_ode);
    };
    // d2/dz dxi by nested centered differences
    const double pxx = (ph(x + h, v, xi_x + h, xi_v) - ph(x + h, v, xi_x - h, xi_v) -
                        ph(x - h, v, xi_x + h, xi_v) + ph(x - h, v, xi_x - h, xi_v)) /
                       (4 * h * h);
    const double pxv = (ph(x + h, v, xi_x, xi_v + h) - ph(x + h, v, xi_x, xi_v - h) -
                        ph(x - h, v, xi_x, xi_v + h) + ph(x - h, v, xi_x, xi_v - h)) /
                       (4 * h * h);
    const double pvx = (ph(x, v + h, xi_x + h, xi_v) - ph(x, v + h, xi_x - h, xi_v) -
                        ph(x, v - h, xi_x + h, xi_v) + ph(x, v - h, xi_x - h, xi_v)) /
                       (4 * h * h);
    const double pvv = (ph(x, v + h, xi_x, xi_v + h) - ph(x, v + h, xi_x, xi_v - h) -
                        ph(x, v - h, xi_x, xi_v + h) + ph(x, v - h, xi_x, xi_v - h)) /
                       (4 * h * h);
    // max row-sum norm of ([pxx pxv; pvx pvv] - I)
    return std::max(std::abs(pxx - 1.0) + std::abs(pxv), std::abs(pvx) + std::abs(pvv - 1.0));
}

double hj_residual(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                   double s, double t, double dt_ode, double h) {
    auto ph = [&](double tt, double a, double b) { return phase(ham, a, b, xi_x, xi_v, s, tt, dt_ode); };
    const double dpt = (ph(t + h, x, v) - ph(t - h, x, v)) / (2 * h);
    const double dpx = (ph(t, x + h, v) - ph(t, x - h, v)) / (2 * h);
    const double dpv = (ph(t, x, v + h) - ph(t, x, v - h)) / (2 * h);
    return std::abs(dpt + v * dpx + ham.a_rho(t, x, dpv));
}

double flow_jacobian_det(const Hamiltonian& ham, double x, double v, double xi_x, double xi_v,
                         double s, double t, double dt_ode, double h) {
    auto flow = [&](double a, double b, double c, double d) {
        const BicharState r = integrate_bichar(ham, a, b, c, d, s, t, dt_ode);
        return std::array<double, 4>{r.X, r.V, r.Xi_x, r.Xi_v};
    };
    double J[4][4];
    const std::array<std::array<double, 4>, 4> probes = {{{h, 0, 0, 0}, {0, h, 0, 0}, {0, 0, h, 0}, {0, 0, 0, h}}};
    for (int c = 0; c < 4; ++c) {
        const auto& e = probes[static_cast<size_t>(c)];
        const auto up = flow(x + e[0], v + e[1], xi_x + e[2], xi_v + e[3]);
        const auto dn = flow(x - e[0], v - e[1], xi_x - e[2], xi_v - e[3]);
        for (int r = 0; r < 4; ++r) J[r][c] = (up[static_cast<size_t>(r)] - dn[static_cast<size_t>(r)]) / (2 * h);
    }
    // 4x4 determinant by cofactor expansion on the first row
    auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return J[r0][c0] * (J[r1][c1] * J[r2][c2] - J[r1][c2] * J[r2][c1]) -
               J[r0][c1] * (J[r1][c0] * J[r2][c2] - J[r1][c2] * J[r2][c0]) +
               J[r0][c2] * (J[r1][c0] * J[r2][c1] - J[r1][c1] * J[r2][c0]);
    };
    return J[0][0] * det3(1, 2, 3, 1, 2, 3) - J[0][1] * det3(1, 2, 3, 0, 2, 3) +
           J[0][2] * det3(1, 2, 3, 0, 1, 3) - J[0][3] * det3(1, 2, 3, 0, 1, 2);
}

} // namespace wvl
