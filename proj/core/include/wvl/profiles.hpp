#ifndef WVL_PROFILES_HPP
#define WVL_PROFILES_HPP

#include <functional>
#include <memory>
#include <string>

#include "wvl/field.hpp"

namespace wvl {

// Velocity-only profile f(v) with its Fourier transform in v (closed form
// where available, table-backed otherwise) and a decreasing envelope bound
// for |F_v f| used to truncate semi-infinite quadratures.
struct VelocityProfile {
    std::function<double(double)> eval;
    std::function<cplx(double)> fourier;
    std::function<double(double)> fourier_bound;
    std::string name;

    bool has_fourier() const { return static_cast<bool>(fourier); }
};

// f0(x, v). profile_at(x) exposes the per-x velocity slice for Penrose
// scans; separable profiles keep the x-factor explicit so scans can reuse a
// single slice (the Penrose functions are linear in the profile).
struct PhaseProfile {
    std::function<double(double, double)> eval;
    std::function<VelocityProfile(double)> profile_at;
    bool separable = false;
    std::function<double(double)> x_factor; // only when separable
    VelocityProfile base;                   // only when separable
    std::string name;
};

PhaseField materialize(const PhaseProfile& p, const PhaseGrid& grid);

// mass * G_sigma(v - u0) with G the unit-mass Gaussian of width sigma;
// F_v f(z) = mass e^{-i u0 z} e^{-sigma^2 z^2 / 2}.
VelocityProfile maxwellian(double sigma = 1.0, double u0 = 0.0, double mass = 1.0);

// 0.5 M_sigma(v - u) + 0.5 M_sigma(v + u), unit total mass.
VelocityProfile two_stream(double u, double sigma);

// Gaussian bump amplitude*e^{-(v-center)^2/(2 width^2)} (perturbation tests).
VelocityProfile bump(double center, double width, double amplitude);

// Table-backed profile from samples on a v-grid (fourier via padded FFT +
// cubic interpolation; bound from the table magnitude envelope).
VelocityProfile profile_from_samples(const Grid1& gv, const std::vector<double>& samples,
                                     const std::string& name);

using SpaceFn = std::function<double(double)>;

// rho(x) exp((-(v-u(x))^2 - mu(x)) / T(x)); per-x slices are Gaussians with
// closed-form transforms.
PhaseProfile boltzmann(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T);

// rho(x) / (exp(((v-u(x))^2 - mu(x))/T(x)) + 1); numeric transforms.
PhaseProfile fermi(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T);

// rho(x) / (exp(((v-u(x))^2 - mu(x))/T(x)) - 1); requires sup mu < 0,
// checked at sampled x (singular occupancy otherwise).
PhaseProfile bose(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T);

// (1 + alpha cos(k x)) M(v), alpha in [0, 1); M the unit-mass Maxwellian of
// width sigma.
PhaseProfile modulated_maxwellian(double alpha, double k, double sigma = 1.0);

// Velocity grid used when slicing numeric (fermi/bose) profiles.
struct SliceGrid {
    int n = 512;
    double length = 24.0;
};

// max |fourier(z) - FFT_of_eval(z)| over the grid frequency range, relative
// to |F(0)|; validates a declared closed form.
double fourier_consistency(const VelocityProfile& p, const Grid1& gv);

} // namespace wvl

#endif
