#include "wvl/norms.hpp"

#include <cmath>

namespace wvl {

namespace {

// Spectral derivative along one axis (Nyquist bin zeroed), physical in/out.
PhaseField spectral_derivative(const PhaseField& f, Axis axis) {
    PhaseField g = transform(f, axis, Direction::forward);
    const Grid1& ga = (axis == Axis::x) ? f.grid().x : f.grid().v;
    const int nx = f.nx(), nv = f.nv();
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nv; ++j) {
            const int m = (axis == Axis::x) ? i : j;
            g.at(i, j) *= (m == ga.nyquist_bin()) ? cplx{0.0, 0.0} : cplx{0.0, ga.freq(m)};
        }
    return transform(g, axis, Direction::inverse);
}

PhaseField coordinate_multiply(const PhaseField& f, Axis axis, cplx factor) {
    PhaseField g = f;
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < f.nv(); ++j) {
            const double c = (axis == Axis::x) ? f.grid().x.node(i) : f.grid().v.node(j);
            g.at(i, j) *= factor * c;
        }
    return g;
}

void axpy(PhaseField& y, const PhaseField& x) {
    for (size_t i = 0; i < y.data().size(); ++i) y.data()[i] += x.data()[i];
}

} // namespace

PhaseField vector_field_apply(const PhaseField& f, VectorFieldKind which, double eps) {
    PhaseField g = to_representation(f, false, false);
    switch (which) {
        case VectorFieldKind::v_plus: {
            PhaseField d = spectral_derivative(g, Axis::x);
            for (auto& z : d.data()) z *= eps;
            PhaseField w = coordinate_multiply(g, Axis::v, cplx{0.0, 2.0});
            axpy(d, w);
            d.real_valued = false;
            return d;
        }
        case VectorFieldKind::v_minus: {
            PhaseField d = spectral_derivative(g, Axis::x);
            for (auto& z : d.data()) z *= eps;
            PhaseField w = coordinate_multiply(g, Axis::v, cplx{0.0, -2.0});
            axpy(d, w);
            d.real_valued = false;
            return d;
        }
        case VectorFieldKind::x_plus: {
            PhaseField d = spectral_derivative(g, Axis::v);
            for (auto& z : d.data()) z *= eps;
            PhaseField w = coordinate_multiply(g, Axis::x, cplx{0.0, 2.0});
            axpy(d, w);
            d.real_valued = false;
            return d;
        }
        case VectorFieldKind::x_minus: {
            PhaseField d = spectral_derivative(g, Axis::v);
            for (auto& z : d.data()) z *= eps;
            PhaseField w = coordinate_multiply(g, Axis::x, cplx{0.0, -2.0});
            axpy(d, w);
            d.real_valued = false;
            return d;
        }
    }
    throw Error("vector_field_apply: unreachable");
}

double spectral_tail_energy(const PhaseField& f) {
    PhaseField g = to_representation(f, true, true);
    const int nx = f.nx(), nv = f.nv();
    double tail = 0.0, total = 0.0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nv; ++j) {
            const int ki = std::abs((i < nx / 2) ? i : i - nx);
            const int kj = std::abs((j < nv / 2) ? j : j - nv);
            const double e = std::norm(g.at(i, j));
            total += e;
            if (ki >= (7 * nx) / 16 || kj >= (7 * nv) / 16) tail += e;
        }
    return total == 0.0 ? 0.0 : tail / total;
}

namespace {

void check_resolved(const PhaseField& f) {
    const double tail = spectral_tail_energy(f);
    if (tail > 1e-2)
        throw ParameterError("field_norm: field spectrally under-resolved (tail fraction " +
                             std::to_string(tail) + ")");
}

// Z+^beta Z-^gamma f with beta=(bx,bv), gamma=(gx,gv), applied right to left:
// first V-^{gv}, then X+^{gx}, then V+^{bv}, then X-^{bx}.
PhaseField z_block(const PhaseField& f, int bx, int bv, int gx, int gv, double eps) {
    PhaseField g = f;
    for (int k = 0; k < gv; ++k) g = vector_field_apply(g, VectorFieldKind::v_minus, eps);
    for (int k = 0; k < gx; ++k) g = vector_field_apply(g, VectorFieldKind::x_plus, eps);
    for (int k = 0; k < bv; ++k) g = vector_field_apply(g, VectorFieldKind::v_plus, eps);
    for (int k = 0; k < bx; ++k) g = vector_field_apply(g, VectorFieldKind::x_minus, eps);
    return g;
}

double weighted_block_norm(const PhaseField& f, int r, double eps) {
    double s = 0.0;
    for (int bx = 0; bx <= r; ++bx)
        for (int bv = 0; bv + bx <= r; ++bv)
            for (int gx = 0; gx <= r; ++gx)
                for (int gv = 0; gv + gx <= r; ++gv)
                    s += l2_norm(z_block(f, bx, bv, gx, gv, eps));
    return s;
}

double v_only_block_norm(const PhaseField& f, int r, double eps) {
    double s = 0.0;
    for (int b = 0; b <= r; ++b)
        for (int g = 0; g <= r; ++g) {
            PhaseField h = f;
            for (int k = 0; k < g; ++k) h = vector_field_apply(h, VectorFieldKind::v_minus, eps);
            for (int k = 0; k < b; ++k) h = vector_field_apply(h, VectorFieldKind::v_plus, eps);
            s += l2_norm(h);
        }
    return s;
}

double standard_weighted_norm(const PhaseField& f, int m, int r) {
    // (I - Lap_{x,v})^{m/2} as a full spectral multiplier, then <v>^r.
    PhaseField g = to_representation(f, true, true);
    const Grid1& gx = f.grid().x;
    const Grid1& gv = f.grid().v;
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < f.nv(); ++j) {
            const double kx = gx.freq(i), kv = gv.freq(j);
            g.at(i, j) *= std::pow(1.0 + kx * kx + kv * kv, 0.5 * m);
        }
    g = to_representation(g, false, false);
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < f.nv(); ++j) {
            const double v = gv.node(j);
            g.at(i, j) *= std::pow(1.0 + v * v, 0.5 * r);
        }
    return l2_norm(g);
}

} // namespace

double field_norm(const PhaseField& f, const NormSpec& spec, double eps) {
    if (spec.m < 0 || spec.r < 0) throw ParameterError("field_norm: orders must be nonnegative");
    PhaseField g = to_representation(f, false, false);
    check_resolved(g);
    switch (spec.family) {
        case NormSpec::Family::h0r0_eps:
            return v_only_block_norm(g, spec.r, eps);
        case NormSpec::Family::hmr_standard:
            return standard_weighted_norm(g, spec.m, spec.r);
        case NormSpec::Family::density_hmr:
            throw ParameterError("field_norm: density_hmr applies to DensityField");
        case NormSpec::Family::hmr_eps: {
            // sum over |alpha| <= m of mixed x/v derivatives.
            double s = 0.0;
            std::vector<PhaseField> xrow{g};
            for (int ax = 0; ax <= spec.m; ++ax) {
                if (ax > 0) xrow.push_back(spectral_derivative(xrow.back(), Axis::x));
                PhaseField cur = xrow.back();
                for (int av = 0; ax + av <= spec.m; ++av) {
                    if (av > 0) cur = spectral_derivative(cur, Axis::v);
                    s += weighted_block_norm(cur, spec.r, eps);
                }
            }
            return s;
        }
    }
    throw Error("field_norm: unreachable");
}

double density_norm(const DensityField& rho, const NormSpec& spec, double eps) {
    if (spec.family != NormSpec::Family::density_hmr)
        throw ParameterError("density_norm: spec family must be density_hmr");
    const Grid1& g = rho.grid;
    auto deriv = [&g](std::vector<cplx> hat) {
        for (int m = 0; m < g.n; ++m) hat[static_cast<size_t>(m)] *= cplx{0.0, g.freq(m)};
        hat[static_cast<size_t>(g.nyquist_bin())] = 0.0;
        return hat;
    };
    auto l2_of_hat = [&g](const std::vector<cplx>& hat) {
        double s = 0.0;
        for (const cplx& z : hat) s += std::norm(z);
        return std::sqrt(s / g.length);
    };
    std::vector<cplx> base = forward_line(g, rho.data);
    double total = 0.0;
    std::vector<cplx> da = base;
    for (int a = 0; a <= spec.m; ++a) {
        if (a > 0) da = deriv(da);
        std::vector<cplx> db = da;
        for (int b = 0; b <= spec.r; ++b) {
            if (b > 0) {
                db = deriv(db);
                for (auto& z : db) z *= eps;
            }
            total += l2_of_hat(db);
        }
    }
    return total;
}

} // namespace wvl
