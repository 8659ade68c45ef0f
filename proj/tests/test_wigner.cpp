#include <doctest.h>

#include <cmath>

#include "support/test_helpers.hpp"
#include "wvl/wigner.hpp"

using namespace wvl;

namespace {

PureState gaussian_state(const Grid1& g, double sigma, double center, double weight) {
    PureState u;
    u.grid = g;
    u.weight = weight;
    u.psi.resize(static_cast<size_t>(g.n));
    const double amp = std::pow(3.14159265358979323846 * sigma * sigma, -0.25);
    for (int i = 0; i < g.n; ++i) {
        const double w = (g.node(i) - center) / sigma;
        u.psi[static_cast<size_t>(i)] = amp * std::exp(-0.5 * w * w);
    }
    return u;
}

} // namespace

TEST_CASE("zero state gives the zero transform") {
    const PhaseGrid grid = PhaseGrid::make(32, 12.0, -6.0, 32, 6.0);
    PureState u;
    u.grid = grid.x;
    u.psi.assign(static_cast<size_t>(grid.x.n), cplx{0.0, 0.0});
    const PhaseField W = wigner_of_pure(u, 0.5, grid);
    CHECK(max_abs(W) == 0.0);
    CHECK(W.real_valued);
}

TEST_CASE("parameter and grid validation") {
    const PhaseGrid grid = PhaseGrid::make(32, 12.0, -6.0, 32, 6.0);
    PureState u = gaussian_state(grid.x, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(wigner_of_pure(u, 0.0, grid), ParameterError);
    CHECK_THROWS_AS(wigner_of_pure(u, 1.5, grid), ParameterError);
    u.grid = Grid1::make(32, 10.0, -5.0);
    CHECK_THROWS_AS(wigner_of_pure(u, 0.5, grid), GridMismatch);
}

TEST_CASE("ground-state Gaussian: W = (pi eps)^{-1} e^{-x^2 - v^2/eps^2}") {
    // The staggered evaluations reach eps*pi/(2 dv) away in x, so the x-domain
    // must hold the state's support plus that stagger.
    const double eps = 0.25;
    const PhaseGrid grid = PhaseGrid::make(128, 40.0, -20.0, 64, 4.0);
    const PureState u = gaussian_state(grid.x, 1.0, 0.0, 1.0);
    const PhaseField W = wigner_of_pure(u, eps, grid);
    const double wmax = 1.0 / (3.14159265358979323846 * eps);
    double worst = 0.0;
    for (int i = 0; i < grid.x.n; ++i)
        for (int j = 0; j < grid.v.n; ++j) {
            const double x = grid.x.node(i), v = grid.v.node(j);
            const double exact = wmax * std::exp(-x * x - v * v / (eps * eps));
            worst = std::max(worst, std::abs(W.at(i, j).real() - exact));
        }
    CHECK(worst < 1e-8 * wmax);
    CHECK(reality_violation(W) < 1e-12);
}

TEST_CASE("marginal identity: dv * sum_v W(x,.) = |u(x)|^2") {
    const double eps = 0.4;
    const PhaseGrid grid = PhaseGrid::make(64, 14.0, -7.0, 64, 6.0);
    const PureState u = gaussian_state(grid.x, 1.3, 0.7, 1.0);
    const PhaseField W = wigner_of_pure(u, eps, grid);
    const double dv = grid.v.spacing();
    for (int i = 0; i < grid.x.n; ++i) {
        cplx s{0.0, 0.0};
        for (int j = 0; j < grid.v.n; ++j) s += W.at(i, j);
        const double expect = std::norm(u.psi[static_cast<size_t>(i)]);
        CHECK(std::abs(dv * s.real() - expect) < 1e-10);
    }
}

TEST_CASE("mixed states: reduction, mass additivity, reality") {
    const double eps = 0.5;
    const PhaseGrid grid = PhaseGrid::make(64, 16.0, -8.0, 64, 6.0);
    SUBCASE("single component reduces to the pure transform") {
        MixedState state;
        state.components.push_back(gaussian_state(grid.x, 1.0, -0.5, 0.7));
        const PhaseField Wm = wigner_of_mixed(state, eps, grid);
        const PhaseField Wp = wigner_of_pure(state.components[0], eps, grid);
        CHECK(test::linf_distance(Wm, Wp) == 0.0);
    }
    SUBCASE("two weight-1/2 orthogonal-ish components carry unit mass") {
        MixedState state;
        for (double c : {-3.0, 3.0}) {
            PureState u = gaussian_state(grid.x, 1.0, c, 0.5);
            // normalize the discrete L2 norm exactly so the marginal mass is 1
            double n2 = 0.0;
            for (const cplx& z : u.psi) n2 += std::norm(z);
            n2 *= grid.x.spacing();
            for (cplx& z : u.psi) z /= std::sqrt(n2);
            state.components.push_back(u);
        }
        const PhaseField W = wigner_of_mixed(state, eps, grid);
        CHECK(std::abs(total_mass(W) - 1.0) < 1e-10);
        CHECK(reality_violation(W) < 1e-12);
    }
}

TEST_CASE("thermal-like 8-component state matches the kernel quadrature oracle") {
    // smallest grid on which the continuum comparison can reach 1e-8: the
    // x-domain must hold support + maximum stagger eps*pi/(2 dv), while nx
    // still resolves the sigma = 2 components
    const double eps = 1.0;
    const PhaseGrid grid = PhaseGrid::make(64, 42.0, -21.0, 32, 5.0);
    MixedState state;
    double wsum = 0.0;
    for (int m = 0; m < 8; ++m) {
        const double w = std::exp(-0.5 * m);
        wsum += w;
        state.components.push_back(gaussian_state(grid.x, 2.0, -1.2 + 2.4 * m / 7.0, w));
    }
    for (PureState& u : state.components) u.weight /= wsum;

    const PhaseField W = wigner_of_mixed(state, eps, grid);

    // oracle: direct trapezoid of the continuum kernel integral with the
    // analytic wavefunctions, independent of the FFT machinery
    const double amp = std::pow(3.14159265358979323846 * 4.0, -0.25);
    const auto psi = [&](int m, double x) {
        const double c = -1.2 + 2.4 * m / 7.0;
        return amp * std::exp(-(x - c) * (x - c) / 8.0); // sigma = 2
    };
    const double Y = 60.0; // integrand below 1e-16 beyond
    const int ny = 6000;
    double worst = 0.0;
    for (int i = 0; i < grid.x.n; i += 3)
        for (int j = 0; j < grid.v.n; j += 3) {
            const double x = grid.x.node(i), v = grid.v.node(j);
            double acc = 0.0; // integrand is Hermitian in y; real Gaussians
            for (int k = 0; k <= ny; ++k) {
                const double y = -Y + 2.0 * Y * k / ny;
                double kern = 0.0;
                for (int m = 0; m < 8; ++m)
                    kern += state.components[static_cast<size_t>(m)].weight *
                            psi(m, x + 0.5 * eps * y) * psi(m, x - 0.5 * eps * y);
                const double wq = (k == 0 || k == ny) ? 0.5 : 1.0;
                acc += wq * std::cos(v * y) * kern;
            }
            acc *= (2.0 * Y / ny) / two_pi;
            worst = std::max(worst, std::abs(W.at(i, j).real() - acc));
        }
    CHECK(worst < 1e-8 * max_abs(W));
}

TEST_CASE("32x32 grid: transform machinery matches the direct discrete sums") {
    // same quadrature evaluated without FFTs: slow Fourier interpolation of u
    // at the staggered points and a direct DFT in y
    const double eps = 0.6;
    const PhaseGrid grid = PhaseGrid::make(32, 20.0, -10.0, 32, 6.0);
    const PureState u = gaussian_state(grid.x, 1.4, 0.4, 0.9);
    const PhaseField W = wigner_of_pure(u, eps, grid);

    const auto psi_hat = forward_line(grid.x, u.psi);
    const auto u_at = [&](double x) {
        cplx acc{0.0, 0.0};
        for (int m = 0; m < grid.x.n; ++m) {
            const double k = grid.x.freq(m);
            acc += psi_hat[static_cast<size_t>(m)] * cplx{std::cos(k * x), std::sin(k * x)};
        }
        return acc / grid.x.length;
    };
    const int nv = grid.v.n;
    const double dy = two_pi / grid.v.length;
    double worst = 0.0;
    for (int i = 0; i < grid.x.n; i += 5)
        for (int j = 0; j < nv; j += 5) {
            const double x = grid.x.node(i), v = grid.v.node(j);
            cplx acc{0.0, 0.0};
            for (int k = 0; k < nv; ++k) {
                const double y = (k - nv / 2) * dy;
                cplx kern = u_at(x + 0.5 * eps * y) * std::conj(u_at(x - 0.5 * eps * y));
                if (k == 0) kern = cplx{kern.real(), 0.0}; // unpaired Nyquist sample
                acc += cplx{std::cos(v * y), -std::sin(v * y)} * kern;
            }
            acc *= u.weight * dy / two_pi;
            worst = std::max(worst, std::abs(W.at(i, j) - acc));
        }
    CHECK(worst < 1e-12 * max_abs(W));
}
