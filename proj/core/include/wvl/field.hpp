#ifndef WVL_FIELD_HPP
#define WVL_FIELD_HPP

#include <complex>
#include <vector>

#include "wvl/grid.hpp"

namespace wvl {

using cplx = std::complex<double>;

enum class Axis { x, v };
enum class Direction { forward, inverse };

// Real samples of rho(x) on an x-grid.
struct DensityField {
    Grid1 grid;
    std::vector<double> data;

    DensityField() = default;
    explicit DensityField(Grid1 g) : grid(g), data(static_cast<size_t>(g.n), 0.0) {}
};

// Complex samples of f(x,v) on a phase-space grid, row-major with x as the
// slow index. Each axis is tagged as physical or Fourier; the Fourier
// convention per axis follows
//   forward:  u^(k) = dx * sum_j u(x_j) e^{-i k x_j}      (approximates eq. integral)
//   inverse:  u(x_j) = (1/L) * sum_k u^(k) e^{+i k x_j}   (carries the 1/(2 pi))
// `real_valued` is a claim about the physical samples; it is preserved by the
// transforms and checked where operations rely on it.
class PhaseField {
public:
    PhaseField() = default;
    explicit PhaseField(PhaseGrid g)
        : grid_(g), data_(static_cast<size_t>(g.x.n) * g.v.n, cplx{0.0, 0.0}) {}

    const PhaseGrid& grid() const { return grid_; }
    int nx() const { return grid_.x.n; }
    int nv() const { return grid_.v.n; }

    cplx& at(int ix, int iv) { return data_[static_cast<size_t>(ix) * grid_.v.n + iv]; }
    const cplx& at(int ix, int iv) const { return data_[static_cast<size_t>(ix) * grid_.v.n + iv]; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    bool fourier_x = false;
    bool fourier_v = false;
    bool real_valued = false;

    bool physical() const { return !fourier_x && !fourier_v; }

private:
    PhaseGrid grid_;
    std::vector<cplx> data_;
};

// Dual grid of `g` along a transformed axis: nodes are the FFT-order
// frequencies; used when an axis is in Fourier representation.
inline double axis_coord(const Grid1& g, bool fourier, int i) {
    return fourier ? g.freq(i) : g.node(i);
}
// Quadrature measure per sample for L2 sums: dx physically, dk/(2 pi) = 1/L
// in Fourier (Parseval-consistent).
inline double axis_measure(const Grid1& g, bool fourier) {
    return fourier ? 1.0 / g.length : g.spacing();
}

PhaseField transform(const PhaseField& f, Axis axis, Direction dir);
PhaseField transform(const PhaseField& f, Axis axis, Direction dir, Axis axis2, Direction dir2);
// Convert to the requested representation (no-op when already there).
PhaseField to_representation(const PhaseField& f, bool fourier_x, bool fourier_v);

// rho(x_i) = dv * sum_j f(x_i, v_j); requires the physical representation.
DensityField density(const PhaseField& f);

// 1-D transforms matching the field convention, for DensityField-sized data.
std::vector<cplx> forward_line(const Grid1& g, const std::vector<cplx>& u);
std::vector<cplx> inverse_line(const Grid1& g, const std::vector<cplx>& u);
std::vector<cplx> forward_line(const Grid1& g, const std::vector<double>& u);

// L2 norm with the representation-consistent measure.
double l2_norm(const PhaseField& f);
double l2_norm(const DensityField& rho);
double l2_distance(const PhaseField& a, const PhaseField& b);
double l2_distance(const DensityField& a, const DensityField& b);

double max_abs(const PhaseField& f);
// dx*dv*sum f (real part).
double total_mass(const PhaseField& f);
double total_mass(const DensityField& rho);

// max |Im| / max |f| over physical samples (0 for an identically-zero field).
double reality_violation(const PhaseField& f);
// max |f| on the outermost two v-rows, relative to max |f|.
double v_tail_fraction(const PhaseField& f);

} // namespace wvl

#endif
