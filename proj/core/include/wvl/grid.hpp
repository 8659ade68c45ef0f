#ifndef WVL_GRID_HPP
#define WVL_GRID_HPP

#include <cmath>
#include <vector>

#include "wvl/error.hpp"

namespace wvl {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Uniform periodic grid on [origin, origin + length).
// The dual frequency set is {2*pi*k/length : k = -n/2 .. n/2-1}, stored in
// FFT order (k = m for m < n/2, k = m - n otherwise).
struct Grid1 {
    int n = 0;
    double length = 0.0;
    double origin = 0.0;

    static Grid1 make(int n, double length, double origin) {
        if (n < 4 || (n & (n - 1)) != 0)
            throw ParameterError("Grid1: n must be a power of two, n >= 4");
        if (!(length > 0.0))
            throw ParameterError("Grid1: length must be positive");
        return Grid1{n, length, origin};
    }

    double spacing() const { return length / n; }
    double node(int i) const { return origin + i * spacing(); }

    // Frequency of FFT-order bin m.
    double freq(int m) const {
        const int k = (m < n / 2) ? m : m - n;
        return two_pi * k / length;
    }
    int nyquist_bin() const { return n / 2; }

    std::vector<double> nodes() const {
        std::vector<double> xs(n);
        for (int i = 0; i < n; ++i) xs[i] = node(i);
        return xs;
    }
    std::vector<double> freqs() const {
        std::vector<double> ks(n);
        for (int m = 0; m < n; ++m) ks[m] = freq(m);
        return ks;
    }

    friend bool operator==(const Grid1&, const Grid1&) = default;
};

// Phase-space grid; the v-domain is symmetric about 0.
struct PhaseGrid {
    Grid1 x;
    Grid1 v;

    static PhaseGrid make(Grid1 x, Grid1 v) {
        if (std::abs(v.origin + v.length / 2) > 1e-12 * v.length)
            throw ParameterError("PhaseGrid: v-domain must be centered at 0");
        return PhaseGrid{x, v};
    }
    static PhaseGrid make(int nx, double lx, double x0, int nv, double lv) {
        return make(Grid1::make(nx, lx, x0), Grid1::make(nv, lv, -lv / 2));
    }

    friend bool operator==(const PhaseGrid&, const PhaseGrid&) = default;
};

} // namespace wvl

#endif
