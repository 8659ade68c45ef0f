#include "wvl/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace wvl {

namespace {

constexpr double sqrt_two_pi = 2.5066282746310005024;

VelocityProfile scale_profile(const VelocityProfile& p, double c) {
    VelocityProfile out;
    out.name = p.name;
    const auto ev = p.eval;
    out.eval = [ev, c](double v) { return c * ev(v); };
    if (p.fourier) {
        const auto fo = p.fourier;
        out.fourier = [fo, c](double z) { return c * fo(z); };
    }
    const auto fb = p.fourier_bound;
    const double ac = std::abs(c);
    out.fourier_bound = [fb, ac](double z) { return ac * fb(z); };
    return out;
}

} // namespace

VelocityProfile maxwellian(double sigma, double u0, double mass) {
    if (!(sigma > 0.0)) throw ParameterError("maxwellian: sigma must be positive");
    VelocityProfile p;
    p.name = "maxwellian";
    const double amp = mass / (sigma * sqrt_two_pi);
    p.eval = [amp, sigma, u0](double v) {
        const double w = (v - u0) / sigma;
        return amp * std::exp(-0.5 * w * w);
    };
    p.fourier = [mass, sigma, u0](double z) {
        const double mag = mass * std::exp(-0.5 * sigma * sigma * z * z);
        return cplx{mag * std::cos(u0 * z), -mag * std::sin(u0 * z)};
    };
    p.fourier_bound = [mass, sigma](double z) {
        return std::abs(mass) * std::exp(-0.5 * sigma * sigma * z * z);
    };
    return p;
}

VelocityProfile two_stream(double u, double sigma) {
    if (!(sigma > 0.0)) throw ParameterError("two_stream: sigma must be positive");
    VelocityProfile p;
    p.name = "two_stream";
    const double amp = 0.5 / (sigma * sqrt_two_pi);
    p.eval = [amp, sigma, u](double v) {
        const double a = (v - u) / sigma, b = (v + u) / sigma;
        return amp * (std::exp(-0.5 * a * a) + std::exp(-0.5 * b * b));
    };
    p.fourier = [sigma, u](double z) {
        return cplx{std::cos(u * z) * std::exp(-0.5 * sigma * sigma * z * z), 0.0};
    };
    p.fourier_bound = [sigma](double z) { return std::exp(-0.5 * sigma * sigma * z * z); };
    return p;
}

VelocityProfile bump(double center, double width, double amplitude) {
    VelocityProfile p = maxwellian(width, center, amplitude * width * sqrt_two_pi);
    p.name = "bump";
    return p;
}

VelocityProfile profile_from_samples(const Grid1& gv, const std::vector<double>& samples,
                                     const std::string& name) {
    if (static_cast<int>(samples.size()) != gv.n)
        throw ParameterError("profile_from_samples: sample count does not match grid");

    // Zero-pad for a fine transform table: 32x keeps the cubic interpolation
    // error below 1e-9 for Gaussian-decay transforms. The profile must decay
    // inside the grid for the padding to be benign.
    const int pad = 32;
    const Grid1 gfine = Grid1::make(gv.n * pad, gv.length * pad,
                                    gv.origin - gv.length * (pad - 1) / 2.0);
    std::vector<cplx> padded(static_cast<size_t>(gfine.n), cplx{0.0, 0.0});
    const int off = gv.n * (pad - 1) / 2;
    for (int j = 0; j < gv.n; ++j) padded[static_cast<size_t>(off + j)] = samples[static_cast<size_t>(j)];
    const auto table_fft = forward_line(gfine, padded);

    // Reorder to monotone zeta and build a shared table object.
    struct Table {
        double dz = 0.0, zmax = 0.0;
        std::vector<cplx> val;      // zeta = -zmax .. zmax - dz
        std::vector<double> envelope; // suffix max of |val| over |zeta| >= z
    };
    auto tab = std::make_shared<Table>();
    const int nf = gfine.n;
    tab->dz = two_pi / gfine.length;
    tab->zmax = tab->dz * (nf / 2);
    tab->val.resize(static_cast<size_t>(nf));
    for (int m = 0; m < nf; ++m) {
        const int k = (m < nf / 2) ? m : m - nf;
        tab->val[static_cast<size_t>(k + nf / 2)] = table_fft[static_cast<size_t>(m)];
    }
    tab->envelope.assign(static_cast<size_t>(nf / 2 + 1), 0.0);
    double run = 0.0;
    for (int k = nf / 2; k >= 0; --k) {
        const double lo = std::abs(tab->val[static_cast<size_t>(nf / 2 - k)]);
        const double hi = (k + nf / 2 < nf) ? std::abs(tab->val[static_cast<size_t>(k + nf / 2)]) : 0.0;
        run = std::max({run, lo, hi});
        tab->envelope[static_cast<size_t>(k)] = run;
    }

    VelocityProfile p;
    p.name = name;
    // Linear interpolation of the physical samples, zero outside.
    auto grid = gv;
    auto samp = std::make_shared<std::vector<double>>(samples);
    p.eval = [grid, samp](double v) {
        const double s = (v - grid.origin) / grid.spacing();
        const int i = static_cast<int>(std::floor(s));
        if (i < 0 || i >= grid.n - 1) return 0.0;
        const double w = s - i;
        return (1.0 - w) * (*samp)[static_cast<size_t>(i)] + w * (*samp)[static_cast<size_t>(i + 1)];
    };
    // Cubic (Catmull-Rom) interpolation of the transform table.
    p.fourier = [tab](double z) -> cplx {
        const int nf2 = static_cast<int>(tab->val.size());
        const double s = (z + tab->zmax) / tab->dz;
        const int i = static_cast<int>(std::floor(s));
        if (i < 1 || i >= nf2 - 2) return cplx{0.0, 0.0};
        const double t = s - i;
        const cplx pm1 = tab->val[static_cast<size_t>(i - 1)], p0 = tab->val[static_cast<size_t>(i)],
                   p1 = tab->val[static_cast<size_t>(i + 1)], p2 = tab->val[static_cast<size_t>(i + 2)];
        const cplx a = 2.0 * p0, b = p1 - pm1, c = 2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2,
                   d = -pm1 + 3.0 * p0 - 3.0 * p1 + p2;
        return 0.5 * (a + b * t + c * t * t + d * t * t * t);
    };
    p.fourier_bound = [tab](double z) {
        const double az = std::abs(z);
        if (az >= tab->zmax) return 0.0;
        const int k = static_cast<int>(std::floor(az / tab->dz));
        return tab->envelope[static_cast<size_t>(std::min<int>(k, static_cast<int>(tab->envelope.size()) - 1))];
    };
    return p;
}

PhaseField materialize(const PhaseProfile& p, const PhaseGrid& grid) {
    PhaseField f(grid);
    for (int i = 0; i < grid.x.n; ++i) {
        const double x = grid.x.node(i);
        for (int j = 0; j < grid.v.n; ++j) f.at(i, j) = p.eval(x, grid.v.node(j));
    }
    f.real_valued = true;
    return f;
}

PhaseProfile boltzmann(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T) {
    PhaseProfile p;
    p.name = "boltzmann";
    p.eval = [rho, u, mu, T](double x, double v) {
        const double t = T(x);
        if (!(t > 0.0)) throw ParameterError("boltzmann: T(x) must be positive");
        const double r = rho(x);
        if (!(r > 0.0)) throw ParameterError("boltzmann: rho(x) must be positive");
        const double dv = v - u(x);
        return r * std::exp((-dv * dv - mu(x)) / t);
    };
    p.profile_at = [rho, u, mu, T](double x) {
        const double t = T(x);
        if (!(t > 0.0)) throw ParameterError("boltzmann: T(x) must be positive");
        const double mass = rho(x) * std::exp(-mu(x) / t) * std::sqrt(3.14159265358979323846 * t);
        VelocityProfile vp = maxwellian(std::sqrt(0.5 * t), u(x), mass);
        vp.name = "boltzmann_slice";
        return vp;
    };
    return p;
}

namespace {

PhaseProfile quantum_gas(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T, double pm,
                         const std::string& name) {
    PhaseProfile p;
    p.name = name;
    const bool is_bose = pm < 0.0;
    auto occupancy = [rho, u, mu, T, pm, is_bose, name](double x, double v) {
        const double t = T(x);
        if (!(t > 0.0)) throw ParameterError(name + ": T(x) must be positive");
        if (is_bose && !(mu(x) < 0.0))
            throw ParameterError("bose: mu must be negative (singular occupancy)");
        const double dv = v - u(x);
        return rho(x) / (std::exp((dv * dv - mu(x)) / t) + pm);
    };
    p.eval = occupancy;
    p.profile_at = [occupancy, u, T](double x) {
        const double width = std::sqrt(std::max(T(x), 1e-12));
        const SliceGrid sg;
        const double span = std::max(sg.length, 10.0 * width + 4.0 * std::abs(u(x)));
        const Grid1 gv = Grid1::make(sg.n, span, -span / 2);
        std::vector<double> samples(static_cast<size_t>(gv.n));
        for (int j = 0; j < gv.n; ++j) samples[static_cast<size_t>(j)] = occupancy(x, gv.node(j));
        return profile_from_samples(gv, samples, "gas_slice");
    };
    return p;
}

} // namespace

PhaseProfile fermi(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T) {
    return quantum_gas(rho, u, mu, T, +1.0, "fermi");
}

PhaseProfile bose(SpaceFn rho, SpaceFn u, SpaceFn mu, SpaceFn T) {
    return quantum_gas(rho, u, mu, T, -1.0, "bose");
}

PhaseProfile modulated_maxwellian(double alpha, double k, double sigma) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw ParameterError("modulated_maxwellian: alpha must lie in [0, 1)");
    PhaseProfile p;
    p.name = "modulated_maxwellian";
    p.separable = true;
    p.base = maxwellian(sigma);
    p.x_factor = [alpha, k](double x) { return 1.0 + alpha * std::cos(k * x); };
    const auto base_eval = p.base.eval;
    const auto xf = p.x_factor;
    p.eval = [base_eval, xf](double x, double v) { return xf(x) * base_eval(v); };
    auto base = p.base;
    p.profile_at = [base, xf](double x) { return scale_profile(base, xf(x)); };
    return p;
}

double fourier_consistency(const VelocityProfile& p, const Grid1& gv) {
    if (!p.has_fourier()) return 0.0;
    std::vector<double> samples(static_cast<size_t>(gv.n));
    for (int j = 0; j < gv.n; ++j) samples[static_cast<size_t>(j)] = p.eval(gv.node(j));
    const auto hat = forward_line(gv, samples);
    const double ref = std::max(std::abs(p.fourier(0.0)), 1e-300);
    double worst = 0.0;
    for (int m = 0; m < gv.n; ++m)
        worst = std::max(worst, std::abs(hat[static_cast<size_t>(m)] - p.fourier(gv.freq(m))));
    return worst / ref;
}

} // namespace wvl
