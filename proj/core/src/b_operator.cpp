#include "wvl/b_operator.hpp"

#include <cmath>

namespace wvl {

namespace {

// F_x(Vrho)(k) = vhat(eps*k) * rho^(k), x-Nyquist bin zeroed (it has no
// conjugate partner under the shifted evaluations below).
std::vector<cplx> vrho_hat(const DensityField& rho, double eps, const PairPotential& V) {
    std::vector<cplx> rh = forward_line(rho.grid, rho.data);
    for (int m = 0; m < rho.grid.n; ++m) rh[static_cast<size_t>(m)] *= V(eps * rho.grid.freq(m));
    rh[static_cast<size_t>(rho.grid.nyquist_bin())] = 0.0;
    return rh;
}

// Vrho evaluated at x - s (sign=-1) or x + s (sign=+1) via the Fourier shift
// theorem; returns real samples on the x-grid.
std::vector<double> shifted_vrho(const Grid1& gx, const std::vector<cplx>& vh, double s, int sign) {
    std::vector<cplx> line(static_cast<size_t>(gx.n));
    for (int m = 0; m < gx.n; ++m) {
        const double a = sign * gx.freq(m) * s;
        line[static_cast<size_t>(m)] = vh[static_cast<size_t>(m)] * cplx{std::cos(a), std::sin(a)};
    }
    const auto phys = inverse_line(gx, line);
    std::vector<double> out(static_cast<size_t>(gx.n));
    for (int i = 0; i < gx.n; ++i) out[static_cast<size_t>(i)] = phys[static_cast<size_t>(i)].real();
    return out;
}

void check_grids(const DensityField& rho, const PhaseField& f) {
    if (rho.grid != f.grid().x)
        throw GridMismatch("b_operator: density grid does not match the field's x-grid");
}

} // namespace

std::vector<double> kick_symbol(const DensityField& rho, const PhaseGrid& grid, double eps,
                                const PairPotential& V) {
    if (!(eps > 0.0) || eps > 1.0) throw ParameterError("kick_symbol: eps out of (0,1]");
    const Grid1& gx = grid.x;
    const Grid1& gv = grid.v;
    const auto vh = vrho_hat(rho, eps, V);

    std::vector<double> symbol(static_cast<size_t>(gx.n) * gv.n, 0.0);
    const int jnyq = gv.nyquist_bin();
    // a(x, -zeta) = -a(x, zeta), so only half the rows are computed.
    for (int j = 0; j < gv.n; ++j) {
        if (j == jnyq) continue;
        const int jneg = (gv.n - j) % gv.n;
        if (j > jnyq) continue; // filled by mirroring below
        const double zeta = gv.freq(j);
        const double s = 0.5 * eps * zeta;
        const auto vm = shifted_vrho(gx, vh, s, -1); // Vrho(x - s)
        const auto vp = shifted_vrho(gx, vh, s, +1); // Vrho(x + s)
        for (int i = 0; i < gx.n; ++i) {
            const double a = vm[static_cast<size_t>(i)] - vp[static_cast<size_t>(i)];
            symbol[static_cast<size_t>(i) * gv.n + j] = a;
            if (jneg != j) symbol[static_cast<size_t>(i) * gv.n + jneg] = -a;
        }
    }
    return symbol;
}

PhaseField apply_B(const DensityField& rho, const PhaseField& f, Epsilon eps,
                   const PairPotential& V) {
    check_grids(rho, f);
    if (f.fourier_x)
        throw RepresentationError("apply_B: field must be physical or fourier-v in x-physical form");
    const bool was_physical = f.physical();
    PhaseField g = was_physical ? transform(f, Axis::v, Direction::forward) : f;

    const auto symbol = kick_symbol(rho, f.grid(), eps.value, V);
    const double inv_eps = 1.0 / eps.value;
    for (size_t idx = 0; idx < g.data().size(); ++idx)
        g.data()[idx] *= cplx{0.0, inv_eps * symbol[idx]};

    PhaseField out = was_physical ? transform(g, Axis::v, Direction::inverse) : g;
    out.real_valued = f.real_valued;
    return out;
}

PhaseField apply_B_split(const DensityField& rho, const PhaseField& f, Epsilon eps,
                         const PairPotential& V, BranchSign sign) {
    check_grids(rho, f);
    if (f.fourier_x)
        throw RepresentationError("apply_B_split: field must be x-physical");
    const bool was_physical = f.physical();
    PhaseField g = was_physical ? transform(f, Axis::v, Direction::forward) : f;

    const Grid1& gx = f.grid().x;
    const Grid1& gv = f.grid().v;
    const auto vh = vrho_hat(rho, eps.value, V);
    const int jnyq = gv.nyquist_bin();
    const int shift_sign = (sign == BranchSign::plus) ? +1 : -1;
    // Branch multiplier -(i/eps) Vrho(x +/- eps zeta/2); the difference of the
    // two branches reproduces the full multiplier of apply_B.
    for (int j = 0; j < gv.n; ++j) {
        cplx* row = &g.at(0, 0) + j; // strided access below
        if (j == jnyq) {
            for (int i = 0; i < gx.n; ++i) row[static_cast<size_t>(i) * gv.n] = 0.0;
            continue;
        }
        const double s = 0.5 * eps.value * gv.freq(j);
        const auto vs = shifted_vrho(gx, vh, s, shift_sign);
        for (int i = 0; i < gx.n; ++i)
            row[static_cast<size_t>(i) * gv.n] *= cplx{0.0, -vs[static_cast<size_t>(i)] / eps.value};
    }
    PhaseField out = was_physical ? transform(g, Axis::v, Direction::inverse) : g;
    out.real_valued = false; // a single branch is not reality-preserving
    return out;
}

PhaseField classical_force(const DensityField& rho, const PhaseField& f,
                           const PairPotential& V) {
    check_grids(rho, f);
    PhaseField g = to_representation(f, false, false);

    // d_x rho, spectral.
    auto rh = forward_line(rho.grid, rho.data);
    for (int m = 0; m < rho.grid.n; ++m) rh[static_cast<size_t>(m)] *= cplx{0.0, rho.grid.freq(m)};
    rh[static_cast<size_t>(rho.grid.nyquist_bin())] = 0.0;
    const auto drho_c = inverse_line(rho.grid, rh);

    // d_v f, spectral.
    PhaseField dvf = transform(g, Axis::v, Direction::forward);
    const Grid1& gv = f.grid().v;
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < gv.n; ++j)
            dvf.at(i, j) *= (j == gv.nyquist_bin()) ? cplx{0.0, 0.0} : cplx{0.0, gv.freq(j)};
    dvf = transform(dvf, Axis::v, Direction::inverse);

    PhaseField out(f.grid());
    for (int i = 0; i < f.nx(); ++i) {
        const double dr = drho_c[static_cast<size_t>(i)].real();
        for (int j = 0; j < f.nv(); ++j) out.at(i, j) = -V.c_v * dr * dvf.at(i, j);
    }
    out.real_valued = f.real_valued;
    return out;
}

PhaseField symbol_b_f(const PhaseField& f, double xi_x) {
    PhaseField g = to_representation(f, false, true);
    const Grid1& gv = f.grid().v;
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < gv.n; ++j) {
            if (j == gv.nyquist_bin()) {
                g.at(i, j) = 0.0;
                continue;
            }
            g.at(i, j) *= cplx{0.0, 2.0 * std::sin(0.5 * xi_x * gv.freq(j))};
        }
    PhaseField out = transform(g, Axis::v, Direction::inverse);
    out.real_valued = f.real_valued;
    return out;
}

} // namespace wvl
