#include "wvl/penrose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wvl/quadrature.hpp"

namespace wvl {

namespace {

using std::abs;

// Velocity scale assumed when seeding oscillation panels; F_v f(s eta)
// oscillates no faster than ~vel_scale * |eta| for the profile families here.
constexpr double vel_scale = 10.0;

double truncation_horizon(const VelocityProfile& prof, double gamma, double eta,
                          const QuadratureSettings& qs) {
    if (!prof.has_fourier())
        throw ParameterError("penrose: profile must supply a Fourier transform");
    if (!prof.fourier_bound)
        throw ParameterError("penrose: profile must supply a transform envelope");
    const double ref = std::max(prof.fourier_bound(0.0), 1e-300);
    const double ae = abs(eta);
    double s = 1.0;
    while (prof.fourier_bound(s * ae) * std::exp(-gamma * s) > qs.tail_tol * ref) {
        s *= 2.0;
        if (s > qs.s_max_cap)
            throw TruncationError("penrose: transform does not decay within the horizon cap");
    }
    return s;
}

std::complex<double> laplace_of(const cfun& w, const PenrosePoint& p, double s_max, double osc,
                                const QuadratureSettings& qs) {
    return oscillatory_laplace(w, p.gamma, p.tau, s_max, osc, qs.rel_tol);
}

std::complex<double> quant_integral(const PenrosePoint& p, const VelocityProfile& prof,
                                    const QuadratureSettings& qs) {
    if (p.eta == 0.0) return {0.0, 0.0};
    const double eta = p.eta;
    const double s_max = truncation_horizon(prof, p.gamma, eta, qs);
    const cfun w = [&prof, eta](double s) {
        return std::sin(0.5 * s * eta * eta) * prof.fourier(s * eta);
    };
    return laplace_of(w, p, s_max, 0.5 * eta * eta + vel_scale * abs(eta), qs);
}

} // namespace

std::complex<double> penrose_quant(const PenrosePoint& p, const VelocityProfile& prof,
                                   const PairPotential& V, const QuadratureSettings& qs) {
    return -2.0 * V(p.eta) * quant_integral(p, prof, qs);
}

std::complex<double> penrose_quant_general(const PenrosePoint& p, const VelocityProfile& prof,
                                           double psi_prime_at_rho, const QuadratureSettings& qs) {
    return -2.0 * psi_prime_at_rho * quant_integral(p, prof, qs);
}

std::complex<double> penrose_vb(const PenrosePoint& p, const VelocityProfile& prof,
                                const QuadratureSettings& qs) {
    if (p.eta == 0.0) return {0.0, 0.0};
    const double eta = p.eta;
    const double s_max = truncation_horizon(prof, p.gamma, eta, qs);
    const cfun w = [&prof, eta](double s) { return s * eta * eta * prof.fourier(s * eta); };
    return -laplace_of(w, p, s_max, vel_scale * abs(eta), qs);
}

std::complex<double> penrose_vp(const PenrosePoint& p, const VelocityProfile& prof,
                                const QuadratureSettings& qs) {
    return penrose_vb(p, prof, qs) / (1.0 + p.eta * p.eta);
}

std::complex<double> penrose_value(PenroseKind kind, const PenrosePoint& p,
                                   const VelocityProfile& prof, const PairPotential& V,
                                   const QuadratureSettings& qs) {
    switch (kind) {
        case PenroseKind::quant: return penrose_quant(p, prof, V, qs);
        case PenroseKind::vb: return penrose_vb(p, prof, qs);
        case PenroseKind::vp: return penrose_vp(p, prof, qs);
    }
    throw Error("penrose_value: unreachable");
}

namespace {

// ---- coarse scan ----------------------------------------------------------

std::vector<double> geometric_grid(double lo, double hi, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<size_t>(i)] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1));
    return g;
}

struct KindWeights {
    // in-integral factor w(s) and outer prefactor
    cfun w;
    std::complex<double> prefactor;
};

KindWeights kind_weights(PenroseKind kind, double eta, const VelocityProfile& prof,
                         const PairPotential& V) {
    KindWeights kw;
    switch (kind) {
        case PenroseKind::quant:
            kw.w = [&prof, eta](double s) {
                return std::sin(0.5 * s * eta * eta) * prof.fourier(s * eta);
            };
            kw.prefactor = -2.0 * V(eta);
            break;
        case PenroseKind::vb:
            kw.w = [&prof, eta](double s) { return s * eta * eta * prof.fourier(s * eta); };
            kw.prefactor = -1.0;
            break;
        case PenroseKind::vp:
            kw.w = [&prof, eta](double s) { return s * eta * eta * prof.fourier(s * eta); };
            kw.prefactor = -1.0 / (1.0 + eta * eta);
            break;
    }
    return kw;
}

// All P values on the uniform tau grid for one (gamma, eta), by a phasor
// recurrence over shared Gauss nodes. Coarse-scan accuracy ~1e-8; minima are
// re-evaluated pointwise during refinement.
void scan_tau_row(PenroseKind kind, const VelocityProfile& prof, const PairPotential& V,
                  double gamma, double eta, const std::vector<double>& taus,
                  const QuadratureSettings& qs, std::vector<std::complex<double>>& out) {
    const double s_max = truncation_horizon(prof, gamma, eta, qs);
    const double tau_hi = std::max(abs(taus.front()), abs(taus.back()));
    const double rate = tau_hi + 0.5 * eta * eta + vel_scale * abs(eta) + 1.0;
    const PanelNodes pn = gauss_panels(s_max, std::min(0.5 / rate, s_max / 64.0));
    const KindWeights kw = kind_weights(kind, eta, prof, V);

    const size_t ns = pn.s.size();
    std::vector<std::complex<double>> base(ns), ph(ns), step(ns);
    for (size_t j = 0; j < ns; ++j) {
        const double s = pn.s[j];
        base[j] = pn.w[j] * std::exp(-gamma * s) * kw.w(s);
        const double a0 = -taus.front() * s;
        ph[j] = {std::cos(a0), std::sin(a0)};
        const double da = -(taus.size() > 1 ? taus[1] - taus[0] : 0.0) * s;
        step[j] = {std::cos(da), std::sin(da)};
    }
    out.resize(taus.size());
    for (size_t k = 0; k < taus.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (size_t j = 0; j < ns; ++j) acc += base[j] * ph[j];
        out[k] = kw.prefactor * acc;
        if (k + 1 < taus.size())
            for (size_t j = 0; j < ns; ++j) ph[j] *= step[j];
    }
}

// ---- tail envelope --------------------------------------------------------

double bound_integral(const std::function<double(double)>& g, double u_max) {
    // plain composite Simpson on |.|-type integrands; inflated by the caller
    const int n = 4096;
    const double h = u_max / n;
    double s = g(0.0) + g(u_max);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i * h);
    return s * h / 3.0;
}

double bound_horizon(const VelocityProfile& prof, const QuadratureSettings& qs) {
    const double ref = std::max(prof.fourier_bound(0.0), 1e-300);
    double u = 1.0;
    while (prof.fourier_bound(u) > qs.tail_tol * ref) {
        u *= 2.0;
        if (u > qs.s_max_cap)
            throw TruncationError("penrose: transform envelope does not decay");
    }
    return u;
}

double numeric_fourier_deriv_mag(const VelocityProfile& prof, double z) {
    const double h = 1e-3;
    return std::abs(prof.fourier(z + h) - prof.fourier(z - h)) / (2.0 * h);
}

// sup bound of |P| over the three unscanned faces (|eta| > eta_max,
// gamma > gamma_max, |tau| > tau_max). Inflated 5% to absorb quadrature of
// the non-smooth |.| integrands.
double tail_envelope(PenroseKind kind, const VelocityProfile& prof, const PairPotential& V,
                     const ScanBox& box, const QuadratureSettings& qs) {
    const double U = bound_horizon(prof, qs);
    const double vsup = (kind == PenroseKind::quant) ? V.vhat_sup : 1.0;

    // |eta| > eta_max face. For quant the u-substituted bound
    // (2/eta) int min(1, u eta/2) bound(u) du decreases pointwise in eta, so
    // the face sup sits at eta_max. For vb/vp the bound int u bound(u) du is
    // eta-free (vp gains the 1/(1+eta^2)).
    double face_eta;
    if (kind == PenroseKind::quant) {
        const double eta = box.eta_max;
        face_eta = 2.0 * vsup / eta *
                   bound_integral([&](double u) { return std::min(1.0, 0.5 * u * eta) * prof.fourier_bound(u); }, U);
    } else {
        face_eta = bound_integral([&](double u) { return u * prof.fourier_bound(u); }, U);
        if (kind == PenroseKind::vp) face_eta /= (1.0 + box.eta_max * box.eta_max);
    }

    // gamma > gamma_max face (eta inside the box), sampled over eta.
    double face_gamma = 0.0;
    const auto etas = geometric_grid(box.eta_min, box.eta_max, 17);
    for (double eta : etas) {
        const double smax = truncation_horizon(prof, box.gamma_max, eta, qs);
        double val;
        if (kind == PenroseKind::quant) {
            val = 2.0 * vsup *
                  bound_integral([&](double s) {
                      return std::exp(-box.gamma_max * s) *
                             std::min(1.0, 0.5 * s * eta * eta) * prof.fourier_bound(s * eta);
                  }, smax);
        } else {
            val = bound_integral([&](double s) {
                return std::exp(-box.gamma_max * s) * s * eta * eta * prof.fourier_bound(s * eta);
            }, smax);
            if (kind == PenroseKind::vp) val /= (1.0 + eta * eta);
        }
        face_gamma = std::max(face_gamma, val);
    }

    // |tau| > tau_max face via integration by parts: |P| <= pref/|tau| *
    // int (|w'| + gamma |w|) e^{-gamma s} ds, worst at gamma -> 0.
    double face_tau = 0.0;
    for (double eta : etas) {
        const double smax = truncation_horizon(prof, 0.0, eta, qs);
        double val;
        if (kind == PenroseKind::quant) {
            val = 2.0 * vsup / box.tau_max *
                  bound_integral([&](double s) {
                      return 0.5 * eta * eta * prof.fourier_bound(s * eta) +
                             abs(eta) * numeric_fourier_deriv_mag(prof, s * eta);
                  }, smax);
        } else {
            val = 1.0 / box.tau_max *
                  bound_integral([&](double s) {
                      return eta * eta * prof.fourier_bound(s * eta) +
                             s * eta * eta * abs(eta) * numeric_fourier_deriv_mag(prof, s * eta);
                  }, smax);
            if (kind == PenroseKind::vp) val /= (1.0 + eta * eta);
        }
        face_tau = std::max(face_tau, val);
    }

    return 1.05 * std::max({face_eta, face_gamma, face_tau});
}

// ---- local refinement -----------------------------------------------------

struct Objective {
    // |1 - P| at a point, optionally minimized over a separable x-factor
    // range [c_lo, c_hi] (linearity of P in the profile).
    const VelocityProfile& prof;
    PenroseKind kind;
    const PairPotential& V;
    const QuadratureSettings& qs;
    bool separable = false;
    double c_lo = 1.0, c_hi = 1.0;

    double dist(std::complex<double> P, double* c_at = nullptr) const {
        if (!separable) {
            if (c_at) *c_at = 1.0;
            return abs(1.0 - P);
        }
        const double p2 = std::norm(P);
        double c = (p2 == 0.0) ? c_lo : std::clamp(P.real() / p2, c_lo, c_hi);
        if (c_at) *c_at = c;
        return abs(1.0 - c * P);
    }
    double operator()(const PenrosePoint& p, double* c_at = nullptr) const {
        return dist(penrose_value(kind, p, prof, V, qs), c_at);
    }
};

void refine_minimum(const Objective& obj, const ScanBox& box, PenroseReport& rep,
                    double dlg, double dtau, double dle) {
    // repeated grid bisection around the current argmin, in log space for
    // gamma and eta
    for (int level = 0; level < box.refine_levels; ++level) {
        const double f = std::pow(0.5, level + 1);
        const double hg = dlg * f, ht = dtau * f, he = dle * f;
        PenrosePoint best = rep.argmin;
        double best_d = rep.margin;
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                for (int c = -2; c <= 2; ++c) {
                    const double g = std::clamp(rep.argmin.gamma * std::exp(a * hg),
                                                box.gamma_min, box.gamma_max);
                    const double t = std::clamp(rep.argmin.tau + b * ht, -box.tau_max, box.tau_max);
                    const double e = std::clamp(rep.argmin.eta * std::exp(c * he),
                                                box.eta_min, box.eta_max);
                    const PenrosePoint p = PenrosePoint::make(g, t, e);
                    const double d = obj(p);
                    ++rep.points_scanned;
                    if (d < best_d) {
                        best_d = d;
                        best = p;
                    }
                }
        rep.margin = best_d;
        rep.argmin = best;
    }
}

PenroseReport margin_search_impl(const VelocityProfile& prof, PenroseKind kind,
                                 const PairPotential& V, const ScanBox& box,
                                 bool separable, double c_lo, double c_hi) {
    if (!(box.gamma_min > 0.0) || box.gamma_max < box.gamma_min || box.eta_min <= 0.0 ||
        box.eta_max < box.eta_min || box.tau_max <= 0.0)
        throw ParameterError("margin_search: malformed scan box");
    const QuadratureSettings qs;
    PenroseReport rep;
    rep.kind = kind;
    rep.margin = std::numeric_limits<double>::infinity();
    rep.argmin = PenrosePoint::make(box.gamma_max, 0.0, box.eta_max);

    Objective obj{prof, kind, V, qs, separable, c_lo, c_hi};

    const auto gammas = geometric_grid(box.gamma_min, box.gamma_max, box.n_gamma);
    const auto etas = geometric_grid(box.eta_min, box.eta_max, box.n_eta);
    std::vector<double> taus(static_cast<size_t>(box.n_tau));
    for (int k = 0; k < box.n_tau; ++k)
        taus[static_cast<size_t>(k)] =
            -box.tau_max + 2.0 * box.tau_max * k / std::max(1, box.n_tau - 1);

    std::vector<std::complex<double>> row;
    for (double g : gammas)
        for (double e : etas) {
            scan_tau_row(kind, prof, V, g, e, taus, qs, row);
            for (size_t k = 0; k < taus.size(); ++k) {
                const double d = obj.dist(row[k]);
                ++rep.points_scanned;
                if (box.keep_surface)
                    rep.surface.push_back({g, taus[k], e, row[k].real(), row[k].imag(), d});
                if (d < rep.margin) {
                    rep.margin = d;
                    rep.argmin = PenrosePoint::make(g, taus[k], e);
                }
            }
        }

    const double dlg = (box.n_gamma > 1)
                           ? std::log(box.gamma_max / box.gamma_min) / (box.n_gamma - 1)
                           : 1.0;
    const double dle = (box.n_eta > 1) ? std::log(box.eta_max / box.eta_min) / (box.n_eta - 1) : 1.0;
    const double dtau = (box.n_tau > 1) ? taus[1] - taus[0] : 1.0;
    refine_minimum(obj, box, rep, dlg, dtau, dle);

    rep.envelope = tail_envelope(kind, prof, V, box, qs);
    if (separable) rep.envelope *= std::max(abs(c_lo), abs(c_hi));
    rep.certified = rep.margin > 0.0 && rep.envelope < 1.0 &&
                    std::min(rep.margin, 1.0 - rep.envelope) > 0.0;
    return rep;
}

} // namespace

PenroseReport margin_search(const VelocityProfile& prof, PenroseKind kind,
                            const PairPotential& V, const ScanBox& box) {
    return margin_search_impl(prof, kind, V, box, false, 1.0, 1.0);
}

PenroseReport margin_search(const PhaseProfile& prof, const Grid1& gx, PenroseKind kind,
                            const PairPotential& V, const ScanBox& box) {
    if (prof.separable) {
        double c_lo = std::numeric_limits<double>::infinity(), c_hi = -c_lo;
        double x_lo = 0.0, x_hi = 0.0;
        for (int i = 0; i < gx.n; ++i) {
            const double c = prof.x_factor(gx.node(i));
            if (c < c_lo) { c_lo = c; x_lo = gx.node(i); }
            if (c > c_hi) { c_hi = c; x_hi = gx.node(i); }
        }
        PenroseReport rep = margin_search_impl(prof.base, kind, V, box, true, c_lo, c_hi);
        // report the x attaining the minimizing factor at the argmin
        const QuadratureSettings qs;
        const auto P = penrose_value(kind, rep.argmin, prof.base, V, qs);
        const double p2 = std::norm(P);
        const double c_star = (p2 == 0.0) ? c_lo : std::clamp(P.real() / p2, c_lo, c_hi);
        rep.argmin_x = (abs(c_star - c_lo) < abs(c_star - c_hi)) ? x_lo : x_hi;
        return rep;
    }
    // infimum over the x-grid, one slice scan per point
    PenroseReport best;
    best.margin = std::numeric_limits<double>::infinity();
    long points = 0;
    double env = 0.0;
    for (int i = 0; i < gx.n; ++i) {
        const double x = gx.node(i);
        PenroseReport r = margin_search_impl(prof.profile_at(x), kind, V, box, false, 1.0, 1.0);
        points += r.points_scanned;
        env = std::max(env, r.envelope);
        if (r.margin < best.margin) {
            best = r;
            best.argmin_x = x;
        }
    }
    best.points_scanned = points;
    best.envelope = env;
    best.certified =
        best.margin > 0.0 && env < 1.0 && std::min(best.margin, 1.0 - env) > 0.0;
    return best;
}

double perturbation_gap(const VelocityProfile& f, const VelocityProfile& g, PenroseKind kind,
                        const PairPotential& V, const std::vector<PenrosePoint>& samples) {
    const QuadratureSettings qs;
    double worst = 0.0;
    for (const PenrosePoint& p : samples)
        worst = std::max(worst,
                         abs(penrose_value(kind, p, f, V, qs) - penrose_value(kind, p, g, V, qs)));
    return worst;
}

std::vector<HomogeneityRow> homogeneity_limit_check(const VelocityProfile& prof,
                                                    const PairPotential& V, double gdir,
                                                    double tdir, double edir,
                                                    const std::vector<double>& r_sequence) {
    if (!(gdir > 0.0)) throw ParameterError("homogeneity_limit_check: gamma direction must be > 0");
    const QuadratureSettings qs;
    // limit object: vhat(0) * P_VB(direction)
    const auto limit = V(0.0) * penrose_vb(PenrosePoint::make(gdir, tdir, edir), prof, qs);

    std::vector<HomogeneityRow> rows;
    for (double r : r_sequence) {
        // P~(r, dir) = P_quant(r*dir) with the (1/r) sin(r s eta^2/2) form;
        // computed directly from the rescaled representation.
        const double s_max = truncation_horizon(prof, gdir, edir, qs);
        const cfun w = [&prof, r, edir](double s) {
            return (1.0 / r) * std::sin(0.5 * r * s * edir * edir) * prof.fourier(s * edir);
        };
        const auto integral = oscillatory_laplace(w, gdir, tdir, s_max,
                                                  0.5 * r * edir * edir + vel_scale * abs(edir),
                                                  qs.rel_tol);
        HomogeneityRow row;
        row.r = r;
        row.p_tilde = -2.0 * V(r * edir) * integral;
        row.diff = abs(row.p_tilde - limit);
        rows.push_back(row);
    }
    return rows;
}

SmallDataReport small_data_check(const VelocityProfile& prof, const PairPotential& V) {
    const QuadratureSettings qs;
    const double U = bound_horizon(prof, qs);
    // sup_eta of the integrable bound is its eta -> 0+ limit.
    const double env =
        1.02 * V.vhat_sup * bound_integral([&](double u) { return u * abs(prof.fourier(u)); }, U);
    SmallDataReport rep;
    rep.envelope = env;
    rep.certified = env < 1.0;
    rep.margin_lower_bound = rep.certified ? 1.0 - env : 0.0;
    return rep;
}

} // namespace wvl
