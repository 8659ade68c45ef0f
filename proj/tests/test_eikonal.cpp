#include <doctest.h>

#include <cmath>
#include <memory>

#include "wvl/eikonal.hpp"

using namespace wvl;

namespace {

// Vrho(t,x) = A cos(kx) cos(wt): smooth, bounded, explicit derivative.
std::unique_ptr<AnalyticPotential> cosine_potential(double A, double k, double w, double t1) {
    return std::make_unique<AnalyticPotential>(
        [A, k, w](double t, double x) { return A * std::cos(k * x) * std::cos(w * t); },
        [A, k, w](double t, double x) { return -A * k * std::sin(k * x) * std::cos(w * t); }, 0.0,
        t1);
}

} // namespace

TEST_CASE("free flow is exact: straight characteristics, shearing frequencies") {
    const auto zero = AnalyticPotential::zero(0.0, 2.0);
    const Hamiltonian ham{zero.get()};
    for (double t : {0.3, 1.0, 1.7}) {
        const BicharState b = integrate_bichar(ham, 0.7, -1.2, 0.5, 0.9, 0.1, t, 1e-2);
        CHECK(b.X == doctest::Approx(0.7 + (t - 0.1) * -1.2).epsilon(1e-13));
        CHECK(b.V == doctest::Approx(-1.2).epsilon(1e-13));
        CHECK(b.Xi_x == doctest::Approx(0.5).epsilon(1e-13));
        // dXi_v/dt = -Xi_x: the frequency shears by -(t-s) xi_x
        CHECK(b.Xi_v == doctest::Approx(0.9 - (t - 0.1) * 0.5).epsilon(1e-13));
        CHECK(b.action == doctest::Approx(0.0));
    }
}

TEST_CASE("time symmetry: integrating there and back returns the state") {
    const auto pot = cosine_potential(0.4, 1.0, 1.3, 1.0);
    const Hamiltonian ham{pot.get()};
    const BicharState fwd = integrate_bichar(ham, 0.3, 0.8, -0.6, 1.1, 0.0, 0.8, 2e-3);
    const BicharState back =
        integrate_bichar(ham, fwd.X, fwd.V, fwd.Xi_x, fwd.Xi_v, 0.8, 0.0, 2e-3);
    CHECK(std::abs(back.X - 0.3) < 1e-8);
    CHECK(std::abs(back.V - 0.8) < 1e-8);
    CHECK(std::abs(back.Xi_x + 0.6) < 1e-8);
    CHECK(std::abs(back.Xi_v - 1.1) < 1e-8);
}

TEST_CASE("RK4 self-convergence at fourth order") {
    const auto pot = cosine_potential(0.5, 1.2, 0.9, 1.0);
    const Hamiltonian ham{pot.get()};
    const auto at_step = [&](double h) {
        return integrate_bichar(ham, 0.2, 0.5, 0.4, -0.7, 0.0, 0.9, h);
    };
    const BicharState ref = at_step(1.0 / 2048.0);
    const auto err = [&](double h) {
        const BicharState b = at_step(h);
        return std::max({std::abs(b.X - ref.X), std::abs(b.V - ref.V),
                         std::abs(b.Xi_x - ref.Xi_x), std::abs(b.Xi_v - ref.Xi_v)});
    };
    const double ratio = err(1.0 / 32.0) / err(1.0 / 64.0);
    CHECK(ratio > 12.8); // 16 +- 20%
    CHECK(ratio < 19.2);
}

TEST_CASE("phase action psi") {
    SUBCASE("free flow: psi = z . xi exactly") {
        const auto zero = AnalyticPotential::zero(0.0, 1.0);
        const Hamiltonian ham{zero.get()};
        const double psi = phase_psi(ham, 0.4, -0.9, 1.2, 0.3, 0.0, 0.7, 1e-2);
        CHECK(psi == doctest::Approx(0.4 * 1.2 + (-0.9) * 0.3).epsilon(1e-13));
    }
    SUBCASE("t = s is the initial condition") {
        const auto pot = cosine_potential(0.5, 1.0, 1.0, 1.0);
        const Hamiltonian ham{pot.get()};
        const double psi = phase_psi(ham, 0.4, -0.9, 1.2, 0.3, 0.5, 0.5, 1e-2);
        CHECK(psi == doctest::Approx(0.4 * 1.2 - 0.9 * 0.3));
    }
    SUBCASE("action quadrature is fourth order") {
        const auto pot = cosine_potential(0.5, 1.2, 0.9, 1.0);
        const Hamiltonian ham{pot.get()};
        const auto psi_at = [&](double h) {
            return phase_psi(ham, 0.2, 0.5, 0.4, -0.7, 0.0, 0.9, h);
        };
        const double ref = psi_at(1.0 / 2048.0);
        const double ratio =
            std::abs(psi_at(1.0 / 32.0) - ref) / std::abs(psi_at(1.0 / 64.0) - ref);
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }
}

TEST_CASE("inverting the spatial flow map") {
    SUBCASE("free flow: Y = (x - (t-s) v, v) exactly") {
        const auto zero = AnalyticPotential::zero(0.0, 1.0);
        const Hamiltonian ham{zero.get()};
        const InverseResult y = invert_Z(ham, 0.8, -0.5, 0.3, 0.6, 0.0, 0.75, 1e-2);
        CHECK(std::abs(y.x0 - (0.8 + 0.75 * 0.5)) < 1e-10);
        CHECK(std::abs(y.v0 + 0.5) < 1e-10);
    }
    SUBCASE("residual on a lattice, and the jacobian deviation grows with the window") {
        const auto pot = cosine_potential(0.4, 1.0, 1.0, 1.0);
        const Hamiltonian ham{pot.get()};
        double dev_short = 0.0, dev_long = 0.0;
        for (double x : {-1.0, 0.0, 1.4})
            for (double v : {-0.8, 0.6}) {
                const InverseResult y1 = invert_Z(ham, x, v, 0.4, -0.3, 0.0, 0.2, 2e-3);
                const BicharState z = integrate_bichar(ham, y1.x0, y1.v0, 0.4, -0.3, 0.0, 0.2, 2e-3);
                CHECK(std::abs(z.X - x) < 1e-10);
                CHECK(std::abs(z.V - v) < 1e-10);
                dev_short = std::max(dev_short, y1.jac_deviation);
                const InverseResult y2 = invert_Z(ham, x, v, 0.4, -0.3, 0.0, 0.4, 2e-3);
                dev_long = std::max(dev_long, y2.jac_deviation);
            }
        // the deviation is dominated by the free shear |t-s|, so it roughly
        // doubles when the window does
        CHECK(dev_short < dev_long);
        CHECK(dev_long / dev_short > 1.6);
        CHECK(dev_long / dev_short < 2.6);
        CHECK(dev_long < 0.5); // inside the guaranteed-diffeomorphism window
    }
    SUBCASE("a window beyond the flow-map validity is rejected") {
        const auto pot = cosine_potential(40.0, 2.0, 0.3, 8.0);
        const Hamiltonian ham{pot.get()};
        CHECK_THROWS_AS(invert_Z(ham, 0.3, 0.1, 1.0, 1.0, 0.0, 6.0, 1e-2), WindowError);
    }
}

TEST_CASE("phase phi solves the eikonal problem") {
    const double T = 0.4;
    const auto pot = cosine_potential(0.3, 1.0, 1.0, 1.0);
    const Hamiltonian ham{pot.get()};
    const double dt_ode = 2e-3;

    SUBCASE("free potential reproduces the free phase to 1e-12") {
        const auto zero = AnalyticPotential::zero(0.0, 1.0);
        const Hamiltonian free{zero.get()};
        for (double x : {-0.7, 0.9})
            for (double v : {-1.1, 0.4})
                for (double xx : {0.5, -0.8})
                    for (double xv : {0.3, 1.2}) {
                        const double phi = phase(free, x, v, xx, xv, 0.0, T, 1e-2);
                        const double exact = (x - T * v) * xx + v * xv;
                        CHECK(std::abs(phi - exact) < 1e-12 * (1.0 + std::abs(exact)));
                    }
    }
    SUBCASE("Hamilton-Jacobi residual below 1e-5 on the lattice") {
        for (double x : {-1.2, 0.4, 1.6})
            for (double v : {-0.9, 0.7})
                for (double xx : {-0.6, 0.8})
                    for (double xv : {-1.0, 0.5}) {
                        const double r = hj_residual(ham, x, v, xx, xv, 0.0, 0.25, dt_ode, 1e-3);
                        CHECK(r < 1e-5);
                    }
    }
    SUBCASE("gradient identity grad_z phi(Z, xi) = Xi") {
        for (double x : {-0.8, 0.6})
            for (double v : {-0.5, 1.0}) {
                const BicharState b = integrate_bichar(ham, x, v, 0.7, -0.4, 0.0, T, dt_ode);
                const auto grad = phase_gradient(ham, b.X, b.V, 0.7, -0.4, 0.0, T, dt_ode, 1e-4);
                CHECK(std::abs(grad[0] - b.Xi_x) < 1e-6);
                CHECK(std::abs(grad[1] - b.Xi_v) < 1e-6);
            }
    }
    SUBCASE("phase estimates on the small-time window") {
        // |phi - free phase| bounded by 1, gradient deviation inside the
        // |xi_v| + |t-s|/2 |xi_x| envelope, mixed hessian within 1/2 of I
        for (double x : {-1.0, 0.8})
            for (double v : {-0.7, 0.9})
                for (double xx : {-1.2, 0.9})
                    for (double xv : {-0.8, 1.1}) {
                        const double free_phase = (x - T * v) * xx + v * xv;
                        const double phi = phase(ham, x, v, xx, xv, 0.0, T, dt_ode);
                        CHECK(std::abs(phi - free_phase) <= 1.0);
                        const auto grad = phase_gradient(ham, x, v, xx, xv, 0.0, T, dt_ode, 1e-4);
                        const double dev = std::hypot(grad[0] - xx, grad[1] - (xv - T * xx));
                        CHECK(dev <= std::abs(xv) + 0.5 * T * std::abs(xx) + 1e-6);
                        CHECK(hessian_mixed_deviation(ham, x, v, xx, xv, 0.0, T, dt_ode, 2e-3) <=
                              0.5);
                    }
    }
    SUBCASE("flow jacobian determinant stays within 1e-6 of 1 per unit time") {
        for (double x : {-0.9, 1.1}) {
            const double d = flow_jacobian_det(ham, x, 0.4, -0.5, 0.7, 0.0, 1.0, 1e-3, 1e-4);
            CHECK(std::abs(d - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("grid-backed potential history agrees with its analytic source") {
    const Grid1 gx = Grid1::make(64, two_pi, 0.0);
    std::vector<double> times;
    std::vector<DensityField> frames;
    for (int k = 0; k <= 40; ++k) {
        const double t = 0.5 * k / 40.0;
        DensityField rho(gx);
        for (int i = 0; i < gx.n; ++i)
            rho.data[static_cast<size_t>(i)] = 0.3 * std::cos(gx.node(i)) * std::cos(t);
        times.push_back(t);
        frames.push_back(rho);
    }
    const GridPotential grid_pot(times, frames);
    const auto ana = cosine_potential(0.3, 1.0, 1.0, 0.5);
    // linear-in-time interpolation: O(dt^2) agreement; spectral in x
    for (double t : {0.1234, 0.333})
        for (double x : {0.4, 2.7, 5.9}) {
            CHECK(std::abs(grid_pot.value(t, x) - ana->value(t, x)) < 5e-5);
            CHECK(std::abs(grid_pot.ddx(t, x) - ana->ddx(t, x)) < 5e-5);
        }
    CHECK_THROWS_AS(grid_pot.value(0.7, 0.0), ParameterError);
    // bicharacteristics driven by the grid history stay close to analytic ones
    const Hamiltonian hg{&grid_pot};
    const Hamiltonian ha{ana.get()};
    const BicharState bg = integrate_bichar(hg, 0.5, 0.2, 0.3, -0.4, 0.0, 0.4, 2e-3);
    const BicharState ba = integrate_bichar(ha, 0.5, 0.2, 0.3, -0.4, 0.0, 0.4, 2e-3);
    CHECK(std::abs(bg.X - ba.X) < 1e-4);
    CHECK(std::abs(bg.V - ba.V) < 1e-4);
}
