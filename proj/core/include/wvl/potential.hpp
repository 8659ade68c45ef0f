#ifndef WVL_POTENTIAL_HPP
#define WVL_POTENTIAL_HPP

#include <cmath>
#include <functional>
#include <string>

#include "wvl/error.hpp"

namespace wvl {

// Scaled Planck constant, in (0, 1].
struct Epsilon {
    double value;
    explicit Epsilon(double v) : value(v) {
        if (!(v > 0.0) || v > 1.0)
            throw ParameterError("Epsilon: value must lie in (0, 1]");
    }
};

// Pair potential described by its Fourier transform. vhat must be real,
// even and bounded; c_v = vhat(0) = <V, 1>; vhat_sup = sup |vhat|.
struct PairPotential {
    std::function<double(double)> vhat;
    double c_v = 0.0;
    double vhat_sup = 0.0;
    std::string name;

    double operator()(double xi) const { return vhat(xi); }

    // Cubic NLS: V = coupling * delta_0, vhat constant. +1 defocusing,
    // -1 focusing.
    static PairPotential delta(double coupling) {
        return {[coupling](double) { return coupling; }, coupling, std::abs(coupling),
                coupling >= 0 ? "delta+" : "delta-"};
    }
    // vhat(xi) = 1/(1+xi^2).
    static PairPotential screened_coulomb() {
        return {[](double xi) { return 1.0 / (1.0 + xi * xi); }, 1.0, 1.0, "screened_coulomb"};
    }
    // vhat(xi) = e^{-|xi|}; Lipschitz at 0 but not smooth there.
    static PairPotential exponential() {
        return {[](double xi) { return std::exp(-std::abs(xi)); }, 1.0, 1.0, "exponential"};
    }
    // Interaction switched off.
    static PairPotential none() {
        return {[](double) { return 0.0; }, 0.0, 0.0, "none"};
    }

    static PairPotential by_name(const std::string& name, double coupling);
};

} // namespace wvl

#endif
