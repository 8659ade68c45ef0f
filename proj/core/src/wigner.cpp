#include "wvl/wigner.hpp"

#include <cmath>

namespace wvl {

PhaseField wigner_of_pure(const PureState& u, double eps, const PhaseGrid& target) {
    if (!(eps > 0.0) || eps > 1.0)
        throw ParameterError("wigner_of_pure: eps must lie in (0, 1]");
    if (u.grid != target.x)
        throw GridMismatch("wigner_of_pure: state grid must equal the target x-grid");
    if (u.weight < 0.0)
        throw ParameterError("wigner_of_pure: weight must be nonnegative");

    const Grid1& gx = target.x;
    const Grid1& gv = target.v;
    const int nx = gx.n, nv = gv.n;

    // y-grid dual to the v-grid: dy = 2 pi / Lv, so the forward y-transform
    // lands exactly on the v-grid values.
    const double dy = two_pi / gv.length;
    const Grid1 gy = Grid1::make(nv, nv * dy, -0.5 * nv * dy);

    const auto psi_hat = forward_line(gx, u.psi);

    // G[i][k] = u(x_i + eps y_k/2) conj(u(x_i - eps y_k/2)).
    std::vector<cplx> G(static_cast<size_t>(nx) * nv);
    std::vector<cplx> line(static_cast<size_t>(nx));
    for (int k = 0; k < nv; ++k) {
        const double s = 0.5 * eps * gy.node(k);
        for (int m = 0; m < nx; ++m) {
            const double a = gx.freq(m) * s;
            line[static_cast<size_t>(m)] = psi_hat[static_cast<size_t>(m)] * cplx{std::cos(a), std::sin(a)};
        }
        const auto up = inverse_line(gx, line); // u(x + s)
        for (int m = 0; m < nx; ++m) {
            const double a = -gx.freq(m) * s;
            line[static_cast<size_t>(m)] = psi_hat[static_cast<size_t>(m)] * cplx{std::cos(a), std::sin(a)};
        }
        const auto um = inverse_line(gx, line); // u(x - s)
        for (int i = 0; i < nx; ++i)
            G[static_cast<size_t>(i) * nv + k] =
                up[static_cast<size_t>(i)] * std::conj(um[static_cast<size_t>(i)]);
    }

    // Hermitian symmetry in y makes W real; the unpaired Nyquist sample must
    // be real for that to hold on the periodic lattice.
    for (int i = 0; i < nx; ++i) {
        cplx& znyq = G[static_cast<size_t>(i) * nv + 0]; // y-grid node 0 is -Ly/2
        znyq = cplx{znyq.real(), 0.0};
    }

    PhaseField W(target);
    std::vector<cplx> row(static_cast<size_t>(nv));
    const double scale = u.weight / two_pi;
    for (int i = 0; i < nx; ++i) {
        for (int k = 0; k < nv; ++k) row[static_cast<size_t>(k)] = G[static_cast<size_t>(i) * nv + k];
        const auto what = forward_line(gy, row);
        // Bin m of the y-transform sits at frequency gy.freq(m) = v-grid value
        // with index gy-freq-order; map FFT order to the v-grid index.
        for (int m = 0; m < nv; ++m) {
            const int k_signed = (m < nv / 2) ? m : m - nv;
            const int j = k_signed + nv / 2;
            W.at(i, j) = scale * what[static_cast<size_t>(m)];
        }
    }
    W.real_valued = true;
    return W;
}

PhaseField wigner_of_mixed(const MixedState& state, double eps, const PhaseGrid& target) {
    PhaseField W(target);
    W.real_valued = true;
    for (const PureState& u : state.components) {
        const PhaseField Wu = wigner_of_pure(u, eps, target);
        for (size_t idx = 0; idx < W.data().size(); ++idx) W.data()[idx] += Wu.data()[idx];
    }
    return W;
}

} // namespace wvl
