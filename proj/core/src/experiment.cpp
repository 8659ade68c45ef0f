#include "wvl/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

#include <json.hpp>

#include "wvl/b_operator.hpp"
#include "wvl/eikonal.hpp"
#include "wvl/io.hpp"
#include "wvl/profiles.hpp"
#include "wvl/wigner.hpp"

namespace wvl {

namespace fs = std::filesystem;
using nlohmann::json;

ExperimentSpec::Kind ExperimentSpec::kind_from_name(const std::string& name) {
    if (name == "evolve-wigner") return Kind::evolve_wigner;
    if (name == "evolve-vlasov") return Kind::evolve_vlasov;
    if (name == "converge") return Kind::converge;
    if (name == "penrose") return Kind::penrose;
    if (name == "eikonal") return Kind::eikonal;
    throw ConfigError("unknown experiment kind: " + name);
}

PhaseGrid grid_from_config(const Config& cfg) {
    return PhaseGrid::make(static_cast<int>(cfg.integer("grid.nx")), cfg.number("grid.Lx"),
                           cfg.number_or("grid.x0", 0.0),
                           static_cast<int>(cfg.integer("grid.nv")), cfg.number("grid.Lv"));
}

PairPotential potential_from_config(const Config& cfg) {
    return PairPotential::by_name(cfg.str("potential.type"),
                                  cfg.number_or("potential.coupling", 1.0));
}

PairPotential PairPotential::by_name(const std::string& name, double coupling) {
    if (name == "delta") return delta(coupling);
    if (name == "screened_coulomb") return screened_coulomb();
    if (name == "exponential") return exponential();
    if (name == "none") return none();
    throw ConfigError("unknown potential type: " + name);
}

PhaseProfile phase_profile_from_config(const Config& cfg, const PhaseGrid& grid) {
    const std::string type = cfg.str("profile.type");
    if (type == "modulated_maxwellian") {
        const double alpha = cfg.number("profile.alpha");
        const double k = cfg.has("profile.k")
                             ? cfg.number("profile.k")
                             : two_pi * cfg.number_or("profile.mode", 1.0) / grid.x.length;
        return modulated_maxwellian(alpha, k, cfg.number_or("profile.sigma", 1.0));
    }
    if (type == "boltzmann") {
        const double r0 = cfg.number_or("profile.rho0", 1.0);
        const double u0 = cfg.number_or("profile.u0", 0.0);
        const double m0 = cfg.number_or("profile.mu0", 0.0);
        const double t0 = cfg.number_or("profile.T0", 1.0);
        return boltzmann([r0](double) { return r0; }, [u0](double) { return u0; },
                         [m0](double) { return m0; }, [t0](double) { return t0; });
    }
    if (type == "two_stream") {
        VelocityProfile vp = two_stream(cfg.number("profile.u"), cfg.number_or("profile.sigma", 1.0));
        PhaseProfile p;
        p.name = "two_stream_uniform";
        p.separable = true;
        p.base = vp;
        p.x_factor = [](double) { return 1.0; };
        const auto ev = vp.eval;
        p.eval = [ev](double, double v) { return ev(v); };
        p.profile_at = [vp](double) { return vp; };
        return p;
    }
    throw ConfigError("unknown phase profile type: " + type);
}

VelocityProfile velocity_profile_from_config(const Config& cfg) {
    const std::string type = cfg.str("profile.type");
    const double scale = cfg.number_or("profile.scale", 1.0);
    VelocityProfile p;
    if (type == "maxwellian") {
        p = maxwellian(cfg.number_or("profile.sigma", 1.0), cfg.number_or("profile.u0", 0.0),
                       cfg.number_or("profile.mass", 1.0));
    } else if (type == "two_stream") {
        p = two_stream(cfg.number("profile.u"), cfg.number_or("profile.sigma", 1.0));
    } else {
        throw ConfigError("unknown velocity profile type: " + type);
    }
    if (scale != 1.0) {
        const auto ev = p.eval;
        const auto fo = p.fourier;
        const auto fb = p.fourier_bound;
        p.eval = [ev, scale](double v) { return scale * ev(v); };
        p.fourier = [fo, scale](double z) { return scale * fo(z); };
        p.fourier_bound = [fb, scale](double z) { return std::abs(scale) * fb(z); };
    }
    return p;
}

ScanBox scanbox_from_config(const Config& cfg, const std::string& tol_profile) {
    ScanBox box;
    box.gamma_min = cfg.number_or("penrose.gamma_min", box.gamma_min);
    box.gamma_max = cfg.number_or("penrose.gamma_max", box.gamma_max);
    box.n_gamma = static_cast<int>(cfg.integer_or("penrose.gamma_points", box.n_gamma));
    box.tau_max = cfg.number_or("penrose.tau_max", box.tau_max);
    box.n_tau = static_cast<int>(cfg.integer_or("penrose.tau_points", box.n_tau));
    box.eta_min = cfg.number_or("penrose.eta_min", box.eta_min);
    box.eta_max = cfg.number_or("penrose.eta_max", box.eta_max);
    box.n_eta = static_cast<int>(cfg.integer_or("penrose.eta_points", box.n_eta));
    box.refine_levels = static_cast<int>(cfg.integer_or("penrose.refine_levels", box.refine_levels));
    box.keep_surface = cfg.boolean_or("penrose.keep_surface", true);
    if (tol_profile == "fast") {
        box.n_gamma = std::max(6, box.n_gamma / 2);
        box.n_tau = std::max(33, box.n_tau / 2);
        box.n_eta = std::max(12, box.n_eta / 2);
        box.refine_levels = std::min(box.refine_levels, 2);
    }
    return box;
}

namespace {

SimConfig simconfig_from(const Config& cfg, bool classical, double eps_override = -1.0) {
    SimConfig sc;
    if (!classical)
        sc.eps = (eps_override > 0.0) ? eps_override : cfg.number("evolve.eps");
    sc.dt = cfg.number("evolve.dt");
    sc.t_end = cfg.number("evolve.t_end");
    sc.potential = potential_from_config(cfg);
    sc.snapshot_stride = static_cast<int>(cfg.integer_or("evolve.snapshot_stride", 0));
    sc.diagnostics_stride = static_cast<int>(cfg.integer_or("evolve.diagnostics_stride", 1));
    sc.tail_tol = cfg.number_or("evolve.tail_tol", 1e-8);
    return sc;
}

json config_echo(const Config& cfg) {
    json j;
    for (const auto& [k, v] : cfg.scalars()) j[k] = v;
    for (const auto& [k, v] : cfg.arrays()) j[k] = v;
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw Error("cannot open " + path);
    os << j.dump(2) << "\n";
}

void write_diagnostics_csv(const std::string& path, const Trajectory& traj) {
    CsvWriter csv(path);
    csv.header({"time", "quantity", "value"});
    for (const DiagnosticsRow& row : traj.diagnostics) {
        csv.row(row.t, "mass", row.mass);
        csv.row(row.t, "l2", row.l2);
        csv.row(row.t, "rho_l2", row.rho_l2);
        csv.row(row.t, "reality", row.reality);
        csv.row(row.t, "v_tail", row.v_tail);
    }
}

json trajectory_summary(const Trajectory& traj) {
    json j;
    const DiagnosticsRow& first = traj.diagnostics.front();
    const DiagnosticsRow& last = traj.diagnostics.back();
    j["t_final"] = last.t;
    j["mass_drift"] = std::abs(last.mass - first.mass) / std::max(std::abs(first.mass), 1e-300);
    j["l2_drift"] = std::abs(last.l2 - first.l2) / std::max(first.l2, 1e-300);
    j["kick_phase_max"] = traj.kick_phase_max;
    j["warnings"] = traj.warnings;
    return j;
}

int run_evolve(const ExperimentSpec& spec, bool classical) {
    const PhaseGrid grid = grid_from_config(spec.config);
    const PhaseProfile prof = phase_profile_from_config(spec.config, grid);
    const PhaseField f0 = materialize(prof, grid);
    const SimConfig sc = simconfig_from(spec.config, classical);
    const Trajectory traj = evolve(f0, sc);

    write_diagnostics_csv(spec.out_dir + "/diagnostics.csv", traj);
    write_checkpoint(spec.out_dir + "/final.wvl", traj.final_field(),
                     sc.eps ? *sc.eps : 0.0, traj.snapshots.back().first);
    if (spec.config.boolean_or("evolve.write_snapshots", false)) {
        for (size_t k = 0; k < traj.snapshots.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof name, "/snap_%05zu.wvl", k);
            write_checkpoint(spec.out_dir + name, traj.snapshots[k].second,
                             sc.eps ? *sc.eps : 0.0, traj.snapshots[k].first);
        }
    }
    json j;
    j["kind"] = classical ? "evolve-vlasov" : "evolve-wigner";
    j["config"] = config_echo(spec.config);
    j["result"] = trajectory_summary(traj);
    write_json(spec.out_dir + "/summary.json", j);
    return 0;
}

int run_converge(const ExperimentSpec& spec) {
    const std::vector<double> eps_list = spec.config.numbers("converge.eps");
    if (eps_list.empty()) throw ConfigError("converge: eps list is empty");
    for (size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0) || eps_list[i] > 1.0)
            throw ConfigError("converge: eps values must lie in (0,1]");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw ConfigError("converge: eps list must be strictly decreasing");
    }
    const PhaseGrid grid = grid_from_config(spec.config);
    const PhaseProfile prof = phase_profile_from_config(spec.config, grid);
    const PhaseField f0 = materialize(prof, grid);

    SimConfig base = simconfig_from(spec.config, true);
    if (base.snapshot_stride <= 0) base.snapshot_stride = 4;

    const auto run_one = [&](std::optional<double> eps) {
        SimConfig sc = base;
        sc.eps = eps;
        return evolve(f0, sc);
    };

    // classical reference plus one trajectory per eps, sweep members in
    // parallel up to the worker budget
    const Trajectory reference = run_one(std::nullopt);
    std::vector<Trajectory> members(eps_list.size());
    const int workers = std::max(1, spec.workers);
    size_t next = 0;
    while (next < eps_list.size()) {
        const size_t batch = std::min<size_t>(static_cast<size_t>(workers), eps_list.size() - next);
        std::vector<std::future<Trajectory>> futs;
        for (size_t b = 0; b < batch; ++b)
            futs.push_back(std::async(std::launch::async, run_one,
                                      std::optional<double>(eps_list[next + b])));
        for (size_t b = 0; b < batch; ++b) members[next + b] = futs[b].get();
        next += batch;
    }

    ConvergenceRecord rec;
    for (size_t i = 0; i < eps_list.size(); ++i) {
        const CompareResult c = compare(members[i], reference);
        rec.entries.push_back({eps_list[i], c.dist_f_sup, c.dist_rho_l2t});
    }
    for (size_t i = 0; i + 1 < rec.entries.size(); ++i) {
        const double le = std::log(rec.entries[i].eps / rec.entries[i + 1].eps);
        rec.rates_f.push_back(std::log(rec.entries[i].dist_f_sup / rec.entries[i + 1].dist_f_sup) / le);
        rec.rates_rho.push_back(
            std::log(rec.entries[i].dist_rho_l2t / rec.entries[i + 1].dist_rho_l2t) / le);
    }

    {
        CsvWriter csv(spec.out_dir + "/convergence.csv");
        csv.header({"eps", "dist_f_sup", "dist_rho_l2t"});
        for (const ConvergenceEntry& e : rec.entries)
            csv.row({e.eps, e.dist_f_sup, e.dist_rho_l2t});
    }
    for (size_t i = 0; i < eps_list.size(); ++i) {
        char name[48];
        std::snprintf(name, sizeof name, "/member_eps_%g", eps_list[i]);
        const std::string dir = spec.out_dir + name;
        fs::create_directories(dir);
        write_diagnostics_csv(dir + "/diagnostics.csv", members[i]);
        write_checkpoint(dir + "/final.wvl", members[i].final_field(), eps_list[i],
                         members[i].snapshots.back().first);
    }
    {
        const std::string dir = spec.out_dir + "/member_classical";
        fs::create_directories(dir);
        write_diagnostics_csv(dir + "/diagnostics.csv", reference);
        write_checkpoint(dir + "/final.wvl", reference.final_field(), 0.0,
                         reference.snapshots.back().first);
    }

    json j;
    j["kind"] = "converge";
    j["config"] = config_echo(spec.config);
    json entries = json::array();
    for (const ConvergenceEntry& e : rec.entries)
        entries.push_back({{"eps", e.eps},
                           {"dist_f_sup", e.dist_f_sup},
                           {"dist_rho_l2t", e.dist_rho_l2t}});
    j["entries"] = entries;
    j["rates_f"] = rec.rates_f;
    j["rates_rho"] = rec.rates_rho;
    write_json(spec.out_dir + "/summary.json", j);
    return 0;
}

json report_to_json(const PenroseReport& rep) {
    json j;
    j["kind"] = rep.kind == PenroseKind::quant ? "quant" : (rep.kind == PenroseKind::vb ? "vb" : "vp");
    j["margin"] = rep.margin;
    j["argmin"] = {{"gamma", rep.argmin.gamma}, {"tau", rep.argmin.tau}, {"eta", rep.argmin.eta}};
    if (rep.argmin_x) j["argmin_x"] = *rep.argmin_x;
    j["envelope"] = rep.envelope;
    j["certified"] = rep.certified;
    j["points_scanned"] = rep.points_scanned;
    return j;
}

int run_penrose(const ExperimentSpec& spec) {
    const PairPotential V = potential_from_config(spec.config);
    const VelocityProfile prof = velocity_profile_from_config(spec.config);
    const std::string kind_name = spec.config.str_or("penrose.kind", "quant");
    const PenroseKind kind = kind_name == "quant" ? PenroseKind::quant
                             : kind_name == "vb"  ? PenroseKind::vb
                                                  : PenroseKind::vp;
    const ScanBox box = scanbox_from_config(spec.config, spec.tol_profile);

    const SmallDataReport small = small_data_check(prof, V);
    const PenroseReport rep = margin_search(prof, kind, V, box);

    if (box.keep_surface) {
        CsvWriter csv(spec.out_dir + "/surface.csv");
        csv.header({"gamma", "tau", "eta", "re_P", "im_P", "dist"});
        for (const auto& row : rep.surface)
            csv.row({row[0], row[1], row[2], row[3], row[4], row[5]});
    }
    json j;
    j["kind"] = "penrose";
    j["config"] = config_echo(spec.config);
    j["small_data"] = {{"envelope", small.envelope},
                       {"certified", small.certified},
                       {"margin_lower_bound", small.margin_lower_bound}};
    j["report"] = report_to_json(rep);
    j["box"] = {{"gamma_min", box.gamma_min}, {"gamma_max", box.gamma_max},
                {"tau_max", box.tau_max},     {"eta_min", box.eta_min},
                {"eta_max", box.eta_max},     {"refine_levels", box.refine_levels}};
    write_json(spec.out_dir + "/penrose.json", j);
    return 0;
}

int run_eikonal(const ExperimentSpec& spec) {
    const Config& cfg = spec.config;
    const std::string type = cfg.str_or("eikonal.potential", "cosine");
    const double t0 = 0.0, t1 = cfg.number_or("eikonal.t_end", 0.3);
    std::unique_ptr<AnalyticPotential> pot;
    if (type == "zero") {
        pot = AnalyticPotential::zero(t0, t1);
    } else if (type == "cosine") {
        const double A = cfg.number_or("eikonal.amplitude", 0.3);
        const double k = cfg.number_or("eikonal.wavenumber", 1.0);
        const double om = cfg.number_or("eikonal.omega", 1.0);
        pot = std::make_unique<AnalyticPotential>(
            [A, k, om](double t, double x) { return A * std::cos(k * x) * std::cos(om * t); },
            [A, k, om](double t, double x) { return -A * k * std::sin(k * x) * std::cos(om * t); },
            t0, t1);
    } else {
        throw ConfigError("eikonal: unknown potential type " + type);
    }
    const Hamiltonian ham{pot.get()};
    const double s = cfg.number_or("eikonal.s", 0.0);
    const double t = cfg.number_or("eikonal.t", t1);
    const double dt_ode = cfg.number_or("eikonal.dt_ode", 5e-3);
    const double h = cfg.number_or("eikonal.fd_step", 1e-3);
    const int n = static_cast<int>(cfg.integer_or("eikonal.lattice_points", 4));
    const double zr = cfg.number_or("eikonal.z_range", 2.0);
    const double xr = cfg.number_or("eikonal.xi_range", 1.5);

    CsvWriter csv(spec.out_dir + "/eikonal.csv");
    csv.header({"x", "v", "xi_x", "xi_v", "phi", "hj_residual", "grad_vs_xi", "hessian_dev",
                "jac_det_err"});
    double max_resid = 0.0, max_grad = 0.0, max_hess = 0.0, max_det = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const double x = -zr + 2 * zr * a / std::max(1, n - 1);
                    const double v = -zr + 2 * zr * b / std::max(1, n - 1);
                    const double xx = -xr + 2 * xr * c / std::max(1, n - 1);
                    const double xv = -xr + 2 * xr * d / std::max(1, n - 1);
                    const double tt = 0.5 * (s + t); // interior time for FD in t
                    const double phi = phase(ham, x, v, xx, xv, s, t, dt_ode);
                    const double resid = hj_residual(ham, x, v, xx, xv, s, tt, dt_ode, h);
                    const BicharState bs = integrate_bichar(ham, x, v, xx, xv, s, t, dt_ode);
                    const auto grad = phase_gradient(ham, bs.X, bs.V, xx, xv, s, t, dt_ode, h);
                    const double gdev = std::max(std::abs(grad[0] - bs.Xi_x), std::abs(grad[1] - bs.Xi_v));
                    const double hdev = hessian_mixed_deviation(ham, x, v, xx, xv, s, t, dt_ode, 2e-3);
                    const double derr = std::abs(flow_jacobian_det(ham, x, v, xx, xv, s, t, dt_ode, 1e-4) - 1.0);
                    csv.row({x, v, xx, xv, phi, resid, gdev, hdev, derr});
                    max_resid = std::max(max_resid, resid);
                    max_grad = std::max(max_grad, gdev);
                    max_hess = std::max(max_hess, hdev);
                    max_det = std::max(max_det, derr);
                }
    json j;
    j["kind"] = "eikonal";
    j["config"] = config_echo(spec.config);
    j["result"] = {{"max_hj_residual", max_resid},
                   {"max_grad_vs_xi", max_grad},
                   {"max_hessian_deviation", max_hess},
                   {"max_jacobian_det_error", max_det},
                   {"window", t - s}};
    write_json(spec.out_dir + "/eikonal.json", j);
    return 0;
}

} // namespace

CompareResult compare(const Trajectory& a, const Trajectory& b, const NormSpec& spec,
                      double eps_for_norms) {
    if (a.snapshots.size() != b.snapshots.size() || a.snapshots.empty())
        throw GridMismatch("compare: trajectories must share snapshot times");
    CompareResult r;
    std::vector<double> rho_d2, times;
    for (size_t k = 0; k < a.snapshots.size(); ++k) {
        if (std::abs(a.snapshots[k].first - b.snapshots[k].first) > 1e-12)
            throw GridMismatch("compare: snapshot times differ");
        double df;
        if (spec.family == NormSpec::Family::hmr_standard && spec.m == 0 && spec.r == 0) {
            df = l2_distance(a.snapshots[k].second, b.snapshots[k].second);
        } else {
            PhaseField diff = a.snapshots[k].second;
            for (size_t i = 0; i < diff.data().size(); ++i)
                diff.data()[i] -= b.snapshots[k].second.data()[i];
            df = field_norm(diff, spec, eps_for_norms);
        }
        r.dist_f_sup = std::max(r.dist_f_sup, df);
        const double dr = l2_distance(a.densities[k].second, b.densities[k].second);
        rho_d2.push_back(dr * dr);
        times.push_back(a.snapshots[k].first);
    }
    double acc = 0.0;
    for (size_t k = 0; k + 1 < times.size(); ++k)
        acc += 0.5 * (rho_d2[k] + rho_d2[k + 1]) * (times[k + 1] - times[k]);
    r.dist_rho_l2t = std::sqrt(acc);
    return r;
}

CompareResult compare(const Trajectory& a, const Trajectory& b) {
    return compare(a, b, NormSpec{0, 0, NormSpec::Family::hmr_standard}, 1.0);
}

namespace {

// Band-limited random real field: modes |k| <= n/6 with symmetric spectrum.
PhaseField random_smooth_field(const PhaseGrid& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    PhaseField hat(grid);
    hat.fourier_x = hat.fourier_v = true;
    const int nx = grid.x.n, nv = grid.v.n;
    for (int i = 0; i <= nx / 6; ++i)
        for (int j = 0; j <= nv / 6; ++j) {
            const cplx z{unif(rng), unif(rng)};
            const int in = (nx - i) % nx, jn = (nv - j) % nv;
            hat.at(i, j) += z;
            hat.at(in, jn) += std::conj(z);
            const cplx w{unif(rng), unif(rng)};
            hat.at(in, j) += w;
            hat.at(i, jn) += std::conj(w);
        }
    PhaseField f = to_representation(hat, false, false);
    f.real_valued = true;
    return f;
}

DensityField random_smooth_density(const Grid1& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    DensityField rho(g);
    for (int m = 1; m <= g.n / 6; ++m) {
        const double a = unif(rng), b = unif(rng);
        for (int i = 0; i < g.n; ++i)
            rho.data[static_cast<size_t>(i)] +=
                a * std::cos(two_pi * m * i / g.n) + b * std::sin(two_pi * m * i / g.n);
    }
    for (int i = 0; i < g.n; ++i) rho.data[static_cast<size_t>(i)] += 2.0;
    return rho;
}

} // namespace

bool run_invariant_checks(unsigned long seed, const std::string& tol_profile) {
    std::mt19937_64 rng(seed);
    const int n = (tol_profile == "fast") ? 32 : 64;
    const PhaseGrid grid = PhaseGrid::make(n, 12.0, 0.0, n, 14.0);
    const PhaseField f = random_smooth_field(grid, rng);
    const DensityField rho = random_smooth_density(grid.x, rng);
    const PairPotential V = PairPotential::delta(1.0);
    const Epsilon eps(0.25);

    bool all_ok = true;
    const auto check = [&all_ok](const std::string& name, double value, double tol) {
        const bool ok = value <= tol;
        std::printf("%-44s %10.3e  (tol %.1e)  %s\n", name.c_str(), value, tol, ok ? "PASS" : "FAIL");
        all_ok = all_ok && ok;
    };

    // Parseval along both axes
    {
        const PhaseField g = to_representation(f, true, true);
        check("parseval |L2(phys) - L2(fourier)|/L2", std::abs(l2_norm(f) - l2_norm(g)) / l2_norm(f),
              1e-12);
    }
    // density equals the xi_v = 0 Fourier slice
    {
        const DensityField r1 = density(f);
        const PhaseField g = transform(f, Axis::v, Direction::forward);
        double worst = 0.0;
        for (int i = 0; i < f.nx(); ++i)
            worst = std::max(worst, std::abs(g.at(i, 0).real() - r1.data[static_cast<size_t>(i)]));
        check("density vs fourier slice", worst / std::max(1e-300, l2_norm(r1)), 1e-12);
    }
    // skew-symmetry <B[rho,f], f> = 0
    {
        const PhaseField Bf = apply_B(rho, f, eps, V);
        double ip = 0.0;
        const double meas = grid.x.spacing() * grid.v.spacing();
        for (size_t i = 0; i < f.data().size(); ++i)
            ip += (Bf.data()[i] * std::conj(f.data()[i])).real();
        ip *= meas;
        check("B skew-symmetry |<Bf,f>|/|f|^2", std::abs(ip) / (l2_norm(f) * l2_norm(f)), 1e-11);
        check("B reality", reality_violation(Bf), 1e-12);
        check("B mass neutrality", std::abs(total_mass(Bf)), 1e-11);
        const DensityField rb = density(Bf);
        double rmax = 0.0;
        for (double r : rb.data) rmax = std::max(rmax, std::abs(r));
        check("B density neutrality (pointwise)", rmax, 1e-11);
    }
    // split identity
    {
        const PhaseField Bf = apply_B(rho, f, eps, V);
        const PhaseField Bp = apply_B_split(rho, f, eps, V, BranchSign::plus);
        const PhaseField Bm = apply_B_split(rho, f, eps, V, BranchSign::minus);
        PhaseField diff = Bp;
        for (size_t i = 0; i < diff.data().size(); ++i)
            diff.data()[i] -= Bm.data()[i] + Bf.data()[i];
        check("B = B+ - B-", l2_norm(diff) / std::max(l2_norm(Bf), 1e-300), 1e-12);
    }
    // kick conserves mass/L2/density
    {
        const PhaseField g = step_kick_wigner(f, density(f), 0.05, eps.value, V);
        check("kick L2 drift", std::abs(l2_norm(g) - l2_norm(f)) / l2_norm(f), 1e-13);
        const DensityField r0 = density(f), r1 = density(g);
        double worst = 0.0;
        for (size_t i = 0; i < r0.data.size(); ++i)
            worst = std::max(worst, std::abs(r0.data[i] - r1.data[i]));
        check("kick density invariance", worst / std::max(1e-300, l2_norm(r0)), 1e-12);
    }
    // transport reversibility
    {
        PhaseField g = step_transport(f, 0.1);
        g = step_transport(g, -0.1);
        check("transport reversibility", l2_distance(f, g) / l2_norm(f), 1e-13);
    }
    // Penrose symmetries on the Maxwellian
    {
        const VelocityProfile prof = maxwellian();
        const PenrosePoint p = PenrosePoint::make(0.3, 0.7, 1.1);
        const PenrosePoint pc = PenrosePoint::make(0.3, -0.7, 1.1);
        const PenrosePoint pe = PenrosePoint::make(0.3, 0.7, -1.1);
        const auto a = penrose_quant(p, prof, V);
        check("penrose conjugation symmetry",
              std::abs(std::conj(a) - penrose_quant(pc, prof, V)), 1e-12);
        check("penrose even-eta symmetry", std::abs(a - penrose_quant(pe, prof, V)), 1e-12);
    }
    return all_ok;
}

int run(const ExperimentSpec& spec) {
    fs::create_directories(spec.out_dir);
    try {
        switch (spec.kind) {
            case ExperimentSpec::Kind::evolve_wigner: return run_evolve(spec, false);
            case ExperimentSpec::Kind::evolve_vlasov: return run_evolve(spec, true);
            case ExperimentSpec::Kind::converge: return run_converge(spec);
            case ExperimentSpec::Kind::penrose: return run_penrose(spec);
            case ExperimentSpec::Kind::eikonal: return run_eikonal(spec);
        }
        throw Error("run: unreachable");
    } catch (const ConfigError& e) {
        write_json(spec.out_dir + "/error.json", {{"error", e.what()}, {"kind", "config"}});
        return 2;
    } catch (const NumericalBlowup& e) {
        write_json(spec.out_dir + "/error.json",
                   {{"error", e.what()}, {"kind", "numerical"}, {"t", e.t}});
        return 3;
    } catch (const Error& e) {
        write_json(spec.out_dir + "/error.json", {{"error", e.what()}, {"kind", "runtime"}});
        return 1;
    }
}

} // namespace wvl
