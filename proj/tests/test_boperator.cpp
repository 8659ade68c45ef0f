#include <doctest.h>

#include <random>

#include "support/test_helpers.hpp"
#include "wvl/b_operator.hpp"

using namespace wvl;
using test::random_smooth_density;
using test::random_smooth_field;

namespace {

// Direct convolution over the discrete frequency lattice; O(N^2) per mode
// row, kept deliberately independent of the mixed-representation route.
PhaseField convolution_oracle(const DensityField& rho, const PhaseField& f, double eps,
                              const PairPotential& V) {
    const Grid1& gx = f.grid().x;
    const Grid1& gv = f.grid().v;
    const auto rho_hat = forward_line(gx, rho.data);
    const PhaseField fhat = to_representation(f, true, true);
    PhaseField bhat(f.grid());
    bhat.fourier_x = bhat.fourier_v = true;
    for (int a = 0; a < gx.n; ++a)
        for (int b = 0; b < gv.n; ++b) {
            const double zeta = gv.freq(b);
            cplx acc{0.0, 0.0};
            for (int m = 0; m < gx.n; ++m) {
                const int d = ((a - m) % gx.n + gx.n) % gx.n;
                const double kd = gx.freq(d);
                acc += (2.0 / eps) * std::sin(0.5 * eps * kd * zeta) * V(eps * kd) *
                       rho_hat[static_cast<size_t>(d)] * fhat.at(m, b);
            }
            bhat.at(a, b) = acc / gx.length;
        }
    return to_representation(bhat, false, false);
}

} // namespace

TEST_CASE("constant density gives B = 0 exactly") {
    std::mt19937_64 rng(11);
    const PhaseGrid grid = PhaseGrid::make(32, 8.0, 0.0, 32, 10.0);
    const PhaseField f = random_smooth_field(grid, rng);
    DensityField rho(grid.x);
    for (double& r : rho.data) r = 3.7;
    const PhaseField B = apply_B(rho, f, Epsilon(0.3), PairPotential::delta(1.0));
    CHECK(max_abs(B) < 1e-14 * max_abs(f));
}

TEST_CASE("skew-symmetry: <B[rho,f], f> = 0 for real rho, f") {
    std::mt19937_64 rng(5);
    const PhaseGrid grid = PhaseGrid::make(32, 8.0, 0.0, 32, 10.0);
    for (int rep = 0; rep < 5; ++rep) {
        const PhaseField f = random_smooth_field(grid, rng);
        const DensityField rho = random_smooth_density(grid.x, rng);
        const PhaseField B = apply_B(rho, f, Epsilon(0.2), PairPotential::screened_coulomb());
        const double ip = test::l2_inner_real(B, f);
        CHECK(std::abs(ip) < 1e-11 * l2_norm(f) * l2_norm(f));
    }
}

TEST_CASE("16x16 grid: apply_B matches the direct convolution formula") {
    std::mt19937_64 rng(23);
    const PhaseGrid grid = PhaseGrid::make(16, 7.0, -1.0, 16, 9.0);
    for (const PairPotential& V :
         {PairPotential::delta(1.0), PairPotential::delta(-1.0), PairPotential::screened_coulomb()}) {
        const PhaseField f = random_smooth_field(grid, rng);
        const DensityField rho = random_smooth_density(grid.x, rng);
        const double eps = 0.35;
        const PhaseField B = apply_B(rho, f, Epsilon(eps), V);
        const PhaseField O = convolution_oracle(rho, f, eps, V);
        CHECK(test::linf_distance(B, O) < 1e-10 * max_abs(O));
    }
}

TEST_CASE("split branches: B = B+ - B-, equal branches for constant rho") {
    std::mt19937_64 rng(31);
    const PhaseGrid grid = PhaseGrid::make(32, 6.0, 0.0, 32, 8.0);
    const PhaseField f = random_smooth_field(grid, rng);
    const Epsilon eps(0.5);
    const PairPotential V = PairPotential::delta(1.0);
    SUBCASE("difference identity on random data") {
        const DensityField rho = random_smooth_density(grid.x, rng);
        const PhaseField B = apply_B(rho, f, eps, V);
        const PhaseField Bp = apply_B_split(rho, f, eps, V, BranchSign::plus);
        const PhaseField Bm = apply_B_split(rho, f, eps, V, BranchSign::minus);
        const PhaseField diff = test::subtract(test::subtract(Bp, Bm), B);
        CHECK(l2_norm(diff) < 1e-12 * std::max(1.0, l2_norm(B)));
    }
    SUBCASE("constant rho collapses both branches to the same zero-mode term") {
        DensityField rho(grid.x);
        for (double& r : rho.data) r = 1.5;
        const PhaseField Bp = apply_B_split(rho, f, eps, V, BranchSign::plus);
        const PhaseField Bm = apply_B_split(rho, f, eps, V, BranchSign::minus);
        CHECK(test::linf_distance(Bp, Bm) < 1e-13 * max_abs(Bp));
        CHECK(max_abs(Bp) > 0.1); // the branches themselves are not zero
    }
    SUBCASE("16x16 split branches against the oracle difference") {
        const PhaseGrid g16 = PhaseGrid::make(16, 6.0, 0.0, 16, 8.0);
        const PhaseField ff = random_smooth_field(g16, rng);
        const DensityField rho = random_smooth_density(g16.x, rng);
        const PhaseField O = convolution_oracle(rho, ff, eps.value, V);
        const PhaseField Bp = apply_B_split(rho, ff, eps, V, BranchSign::plus);
        const PhaseField Bm = apply_B_split(rho, ff, eps, V, BranchSign::minus);
        CHECK(test::linf_distance(test::subtract(Bp, Bm), O) < 1e-10 * max_abs(O));
    }
}

TEST_CASE("classical limit: ||B_eps - classical_force|| shrinks by ~4 per eps halving") {
    // Gaussian data, vhat = 1: the odd sine symbol leaves an eps^2 remainder
    const PhaseGrid grid = PhaseGrid::make(64, 12.0, -6.0, 64, 12.0);
    const PairPotential V = PairPotential::delta(1.0);
    const PhaseField f = test::gaussian_field(grid, 1.1, 1.0, 0.4, 0.0);
    DensityField rho(grid.x);
    for (int i = 0; i < grid.x.n; ++i) {
        const double x = grid.x.node(i);
        rho.data[static_cast<size_t>(i)] = std::exp(-0.5 * x * x / 1.21);
    }
    const PhaseField limit = classical_force(rho, f, V);
    const auto err = [&](double eps) {
        const PhaseField B = apply_B(rho, f, Epsilon(eps), V);
        return l2_norm(test::subtract(B, limit));
    };
    const double ratio = err(0.2) / err(0.1);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("classical_force trivial cases") {
    const PhaseGrid grid = PhaseGrid::make(32, 8.0, 0.0, 64, 20.0);
    const PairPotential V = PairPotential::delta(1.0);
    SUBCASE("constant rho") {
        DensityField rho(grid.x);
        for (double& r : rho.data) r = 2.0;
        const PhaseField F = classical_force(rho, test::gaussian_field(grid, 1.0, 1.0), V);
        CHECK(max_abs(F) < 1e-13);
    }
    SUBCASE("v-flat field on the interior") {
        std::mt19937_64 rng(2);
        const DensityField rho = random_smooth_density(grid.x, rng);
        const PhaseField f = test::gaussian_field(grid, 1.0, 60.0); // huge v-variance
        const PhaseField F = classical_force(rho, f, V);
        double interior = 0.0;
        for (int i = 0; i < grid.x.n; ++i)
            for (int j = grid.v.n / 4; j < 3 * grid.v.n / 4; ++j)
                interior = std::max(interior, std::abs(F.at(i, j)));
        CHECK(interior < 1e-2 * max_abs(f));
    }
}

TEST_CASE("symbol b_f: xi_x = 0, Gaussian closed form, B reconstruction") {
    const PhaseGrid grid = PhaseGrid::make(32, 9.0, -4.5, 64, 14.0);
    const PhaseField f = test::gaussian_field(grid, 1.2, 1.0, 0.5, -0.3);
    SUBCASE("zero frequency annihilates") {
        CHECK(max_abs(symbol_b_f(f, 0.0)) < 1e-14);
    }
    SUBCASE("Gaussian: the lambda-integral telescopes to a shift difference") {
        const double xi = 1.3;
        const PhaseField b = symbol_b_f(f, xi);
        double worst = 0.0;
        for (int i = 0; i < grid.x.n; ++i)
            for (int j = 0; j < grid.v.n; ++j) {
                const double x = (grid.x.node(i) - 0.5) / 1.2;
                const double vp = grid.v.node(j) + 0.5 * xi + 0.3;
                const double vm = grid.v.node(j) - 0.5 * xi + 0.3;
                const double exact = std::exp(-0.5 * (x * x + vp * vp)) -
                                     std::exp(-0.5 * (x * x + vm * vm));
                worst = std::max(worst, std::abs(b.at(i, j).real() - exact));
            }
        CHECK(worst < 1e-8);
        CHECK(reality_violation(b) < 1e-12);
    }
    SUBCASE("two-route agreement: (1/(i eps)) b_f^eps applied to Vrho equals apply_B") {
        std::mt19937_64 rng(17);
        const PhaseGrid g32 = PhaseGrid::make(32, 9.0, -4.5, 32, 14.0);
        const PhaseField ff = random_smooth_field(g32, rng);
        const DensityField rho = random_smooth_density(g32.x, rng);
        const double eps = 0.4;
        const PairPotential V = PairPotential::screened_coulomb();
        const PhaseField B = apply_B(rho, ff, Epsilon(eps), V);

        auto vh = forward_line(g32.x, rho.data);
        for (int m = 0; m < g32.x.n; ++m) vh[static_cast<size_t>(m)] *= V(eps * g32.x.freq(m));
        PhaseField route(g32);
        for (int m = 0; m < g32.x.n; ++m) {
            if (m == g32.x.nyquist_bin()) continue;
            const double k = g32.x.freq(m);
            const PhaseField bk = symbol_b_f(ff, eps * k); // f(v + eps k/2) - f(v - eps k/2)
            for (int i = 0; i < g32.x.n; ++i) {
                const double kx = k * g32.x.node(i);
                // (1/(i eps)) e^{i k x} Vrho^(k) / Lx
                const cplx c = cplx{std::cos(kx), std::sin(kx)} * vh[static_cast<size_t>(m)] /
                               (cplx{0.0, eps} * g32.x.length);
                for (int j = 0; j < g32.v.n; ++j) route.at(i, j) += c * bk.at(i, j);
            }
        }
        CHECK(test::linf_distance(B, route) < 1e-9 * max_abs(B));
    }
}

TEST_CASE("mass and density neutrality, reality") {
    std::mt19937_64 rng(77);
    const PhaseGrid grid = PhaseGrid::make(32, 5.0, 0.0, 32, 12.0);
    for (int rep = 0; rep < 3; ++rep) {
        const PhaseField f = random_smooth_field(grid, rng);
        const DensityField rho = random_smooth_density(grid.x, rng);
        const PhaseField B = apply_B(rho, f, Epsilon(0.25), PairPotential::delta(-1.0));
        CHECK(reality_violation(B) < 1e-12);
        CHECK(std::abs(total_mass(B)) < 1e-11 * l2_norm(f));
        const DensityField rb = density(B);
        double worst = 0.0;
        for (double r : rb.data) worst = std::max(worst, std::abs(r));
        CHECK(worst < 1e-11 * l2_norm(f));
    }
}

TEST_CASE("grid and parameter errors") {
    const PhaseGrid grid = PhaseGrid::make(16, 4.0, 0.0, 16, 6.0);
    const PhaseField f(grid);
    const DensityField rho(Grid1::make(32, 4.0, 0.0));
    CHECK_THROWS_AS(apply_B(rho, f, Epsilon(0.5), PairPotential::delta(1.0)), GridMismatch);
    CHECK_THROWS_AS(Epsilon(0.0), ParameterError);
    CHECK_THROWS_AS(Epsilon(1.5), ParameterError);
}
