#include "wvl/field.hpp"

#include <algorithm>
#include <cmath>

#include "wvl/fft.hpp"

namespace wvl {

namespace {

// Phase factors e^{-i k_m origin} for the forward transform (conjugate for
// the inverse). The grid origin enters only here.
std::vector<cplx> origin_phases(const Grid1& g) {
    std::vector<cplx> ph(static_cast<size_t>(g.n));
    for (int m = 0; m < g.n; ++m) {
        const double a = -g.freq(m) * g.origin;
        ph[static_cast<size_t>(m)] = cplx{std::cos(a), std::sin(a)};
    }
    return ph;
}

void transform_line(const Grid1& g, const std::vector<cplx>& phases, cplx* line,
                    std::vector<cplx>& scratch, Direction dir) {
    const int n = g.n;
    if (dir == Direction::forward) {
        dft_line(line, scratch.data(), n, true);
        const double dx = g.spacing();
        for (int m = 0; m < n; ++m)
            line[m] = dx * phases[static_cast<size_t>(m)] * scratch[static_cast<size_t>(m)];
    } else {
        for (int m = 0; m < n; ++m)
            scratch[static_cast<size_t>(m)] = std::conj(phases[static_cast<size_t>(m)]) * line[m];
        dft_line(scratch.data(), line, n, false);
        const double inv_l = 1.0 / g.length;
        for (int j = 0; j < n; ++j) line[j] *= inv_l;
    }
}

} // namespace

PhaseField transform(const PhaseField& f, Axis axis, Direction dir) {
    const bool tagged = (axis == Axis::x) ? f.fourier_x : f.fourier_v;
    if (dir == Direction::forward && tagged)
        throw RepresentationError("transform: axis already in Fourier representation");
    if (dir == Direction::inverse && !tagged)
        throw RepresentationError("transform: axis already physical");

    PhaseField out = f;
    const Grid1& g = (axis == Axis::x) ? f.grid().x : f.grid().v;
    const auto phases = origin_phases(g);
    std::vector<cplx> scratch(static_cast<size_t>(g.n));

    const int nx = f.nx(), nv = f.nv();
    if (axis == Axis::v) {
        for (int i = 0; i < nx; ++i)
            transform_line(g, phases, &out.at(i, 0), scratch, dir);
        out.fourier_v = (dir == Direction::forward);
    } else {
        std::vector<cplx> line(static_cast<size_t>(nx));
        for (int j = 0; j < nv; ++j) {
            for (int i = 0; i < nx; ++i) line[static_cast<size_t>(i)] = out.at(i, j);
            transform_line(g, phases, line.data(), scratch, dir);
            for (int i = 0; i < nx; ++i) out.at(i, j) = line[static_cast<size_t>(i)];
        }
        out.fourier_x = (dir == Direction::forward);
    }
    return out;
}

PhaseField transform(const PhaseField& f, Axis axis, Direction dir, Axis axis2, Direction dir2) {
    return transform(transform(f, axis, dir), axis2, dir2);
}

PhaseField to_representation(const PhaseField& f, bool fourier_x, bool fourier_v) {
    PhaseField cur = f;
    if (cur.fourier_x != fourier_x)
        cur = transform(cur, Axis::x, fourier_x ? Direction::forward : Direction::inverse);
    if (cur.fourier_v != fourier_v)
        cur = transform(cur, Axis::v, fourier_v ? Direction::forward : Direction::inverse);
    return cur;
}

DensityField density(const PhaseField& f) {
    if (!f.physical())
        throw RepresentationError("density: field must be in physical representation");
    DensityField rho(f.grid().x);
    const double dv = f.grid().v.spacing();
    for (int i = 0; i < f.nx(); ++i) {
        double s = 0.0;
        for (int j = 0; j < f.nv(); ++j) s += f.at(i, j).real();
        rho.data[static_cast<size_t>(i)] = dv * s;
    }
    return rho;
}

std::vector<cplx> forward_line(const Grid1& g, const std::vector<cplx>& u) {
    std::vector<cplx> out = u, scratch(static_cast<size_t>(g.n));
    const auto phases = origin_phases(g);
    transform_line(g, phases, out.data(), scratch, Direction::forward);
    return out;
}

std::vector<cplx> inverse_line(const Grid1& g, const std::vector<cplx>& u) {
    std::vector<cplx> out = u, scratch(static_cast<size_t>(g.n));
    const auto phases = origin_phases(g);
    transform_line(g, phases, out.data(), scratch, Direction::inverse);
    return out;
}

std::vector<cplx> forward_line(const Grid1& g, const std::vector<double>& u) {
    std::vector<cplx> c(u.begin(), u.end());
    return forward_line(g, c);
}

double l2_norm(const PhaseField& f) {
    const double mx = axis_measure(f.grid().x, f.fourier_x);
    const double mv = axis_measure(f.grid().v, f.fourier_v);
    double s = 0.0;
    for (const cplx& z : f.data()) s += std::norm(z);
    return std::sqrt(mx * mv * s);
}

double l2_norm(const DensityField& rho) {
    double s = 0.0;
    for (double r : rho.data) s += r * r;
    return std::sqrt(rho.grid.spacing() * s);
}

double l2_distance(const PhaseField& a, const PhaseField& b) {
    if (a.grid() != b.grid() || a.fourier_x != b.fourier_x || a.fourier_v != b.fourier_v)
        throw GridMismatch("l2_distance: fields must share grid and representation");
    const double mx = axis_measure(a.grid().x, a.fourier_x);
    const double mv = axis_measure(a.grid().v, a.fourier_v);
    double s = 0.0;
    for (size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(mx * mv * s);
}

double l2_distance(const DensityField& a, const DensityField& b) {
    if (a.grid != b.grid) throw GridMismatch("l2_distance: density grids differ");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        s += d * d;
    }
    return std::sqrt(a.grid.spacing() * s);
}

double max_abs(const PhaseField& f) {
    double m = 0.0;
    for (const cplx& z : f.data()) m = std::max(m, std::abs(z));
    return m;
}

double total_mass(const PhaseField& f) {
    if (!f.physical())
        throw RepresentationError("total_mass: field must be physical");
    double s = 0.0;
    for (const cplx& z : f.data()) s += z.real();
    return f.grid().x.spacing() * f.grid().v.spacing() * s;
}

double total_mass(const DensityField& rho) {
    double s = 0.0;
    for (double r : rho.data) s += r;
    return rho.grid.spacing() * s;
}

double reality_violation(const PhaseField& f) {
    if (!f.physical())
        throw RepresentationError("reality_violation: field must be physical");
    double mi = 0.0, ma = 0.0;
    for (const cplx& z : f.data()) {
        mi = std::max(mi, std::abs(z.imag()));
        ma = std::max(ma, std::abs(z));
    }
    return ma == 0.0 ? 0.0 : mi / ma;
}

double v_tail_fraction(const PhaseField& f) {
    if (!f.physical())
        throw RepresentationError("v_tail_fraction: field must be physical");
    const int nv = f.nv();
    double tail = 0.0, all = 0.0;
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < nv; ++j) {
            const double a = std::abs(f.at(i, j));
            all = std::max(all, a);
            if (j <= 1 || j >= nv - 2) tail = std::max(tail, a);
        }
    return all == 0.0 ? 0.0 : tail / all;
}

} // namespace wvl
