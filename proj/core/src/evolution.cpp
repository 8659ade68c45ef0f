#include "wvl/evolution.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace wvl {

PhaseField step_transport(const PhaseField& f, double dt) {
    const bool fx_in = f.fourier_x, fv_in = f.fourier_v;
    PhaseField g = to_representation(f, true, false);
    const Grid1& gx = g.grid().x;
    const Grid1& gv = g.grid().v;
    for (int m = 0; m < gx.n; ++m) {
        const double k = gx.freq(m);
        for (int j = 0; j < gv.n; ++j) {
            const double a = -dt * gv.node(j) * k;
            g.at(m, j) *= cplx{std::cos(a), std::sin(a)};
        }
    }
    PhaseField out = to_representation(g, fx_in, fv_in);
    out.real_valued = f.real_valued;
    return out;
}

namespace {

PhaseField apply_kick_phase(const PhaseField& f, const std::vector<double>& phase) {
    const bool fx_in = f.fourier_x, fv_in = f.fourier_v;
    PhaseField g = to_representation(f, false, true);
    for (size_t idx = 0; idx < g.data().size(); ++idx) {
        const double a = phase[idx];
        g.data()[idx] *= cplx{std::cos(a), std::sin(a)};
    }
    PhaseField out = to_representation(g, fx_in, fv_in);
    out.real_valued = f.real_valued;
    return out;
}

} // namespace

PhaseField step_kick_wigner(const PhaseField& f, const DensityField& rho_frozen, double dt,
                            double eps, const PairPotential& V) {
    const auto symbol = kick_symbol(rho_frozen, f.grid(), eps, V);
    std::vector<double> phase(symbol.size());
    const double c = -dt / eps;
    for (size_t i = 0; i < symbol.size(); ++i) phase[i] = c * symbol[i];
    return apply_kick_phase(f, phase);
}

PhaseField step_kick_vlasov(const PhaseField& f, const DensityField& rho_frozen, double dt,
                            const PairPotential& V) {
    if (rho_frozen.grid != f.grid().x)
        throw GridMismatch("step_kick_vlasov: density grid mismatch");
    // d_x rho, spectral.
    auto rh = forward_line(rho_frozen.grid, rho_frozen.data);
    for (int m = 0; m < rho_frozen.grid.n; ++m)
        rh[static_cast<size_t>(m)] *= cplx{0.0, rho_frozen.grid.freq(m)};
    rh[static_cast<size_t>(rho_frozen.grid.nyquist_bin())] = 0.0;
    const auto drho = inverse_line(rho_frozen.grid, rh);

    const Grid1& gv = f.grid().v;
    std::vector<double> phase(static_cast<size_t>(f.nx()) * f.nv(), 0.0);
    for (int i = 0; i < f.nx(); ++i) {
        const double shift = dt * V.c_v * drho[static_cast<size_t>(i)].real();
        for (int j = 0; j < gv.n; ++j) {
            if (j == gv.nyquist_bin()) continue;
            phase[static_cast<size_t>(i) * gv.n + j] = gv.freq(j) * shift;
        }
    }
    return apply_kick_phase(f, phase);
}

PhaseField strang_step(const PhaseField& f, double dt, const SimConfig& cfg) {
    const auto kick = [&](const PhaseField& g, double h) {
        const DensityField rho = density(to_representation(g, false, false));
        return cfg.eps ? step_kick_wigner(g, rho, h, *cfg.eps, cfg.potential)
                       : step_kick_vlasov(g, rho, h, cfg.potential);
    };
    PhaseField g = kick(f, 0.5 * dt);
    g = step_transport(g, dt);
    return kick(g, 0.5 * dt);
}

Trajectory evolve(const PhaseField& f0, const SimConfig& cfg) {
    cfg.validate();
    if (!f0.physical())
        throw RepresentationError("evolve: initial field must be physical");
    if (f0.real_valued && reality_violation(f0) > 1e-10)
        throw ParameterError("evolve: field flagged real has a non-real part");

    Trajectory traj;
    const int nsteps = (cfg.t_end <= 0.0) ? 0 : static_cast<int>(std::llround(cfg.t_end / cfg.dt));

    const auto record_diag = [&](double t, const PhaseField& f, const DensityField& rho) {
        DiagnosticsRow row;
        row.t = t;
        row.mass = total_mass(f);
        row.l2 = l2_norm(f);
        row.rho_l2 = l2_norm(rho);
        row.reality = f.real_valued ? reality_violation(f) : 0.0;
        row.v_tail = v_tail_fraction(f);
        traj.diagnostics.push_back(row);
        if (row.v_tail > cfg.tail_tol && traj.warnings.empty())
            traj.warnings.push_back("v-tail mass exceeds tail_tol at t=" + std::to_string(t));
    };

    PhaseField f = f0;
    {
        const DensityField rho0 = density(f);
        traj.snapshots.emplace_back(0.0, f);
        traj.densities.emplace_back(0.0, rho0);
        record_diag(0.0, f, rho0);
        // Phase-resolution indicator dt*max|a_rho|/eps for the first kick.
        if (cfg.eps) {
            const auto symbol = kick_symbol(rho0, f.grid(), *cfg.eps, cfg.potential);
            double amax = 0.0;
            for (double z : symbol) amax = std::max(amax, std::abs(z));
            traj.kick_phase_max = cfg.dt * amax / *cfg.eps;
            if (traj.kick_phase_max > 3.141592653589793)
                traj.warnings.push_back("kick phase dt*max|a_rho|/eps exceeds pi; dt under-resolves the splitting");
        }
    }

    for (int step = 1; step <= nsteps; ++step) {
        f = strang_step(f, cfg.dt, cfg);
        const double t = step * cfg.dt;

        bool finite = true;
        for (const cplx& z : f.data())
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) { finite = false; break; }
        if (!finite)
            throw NumericalBlowup("evolve: non-finite field values", t);

        const bool last = (step == nsteps);
        const bool want_snap = last || (cfg.snapshot_stride > 0 && step % cfg.snapshot_stride == 0);
        const bool want_diag = last || (cfg.diagnostics_stride > 0 && step % cfg.diagnostics_stride == 0);
        if (want_snap || want_diag) {
            const DensityField rho = density(f);
            if (want_snap) {
                traj.snapshots.emplace_back(t, f);
                traj.densities.emplace_back(t, rho);
            }
            if (want_diag) record_diag(t, f, rho);
        }
    }
    return traj;
}

namespace {

void put_u32(std::string& buf, uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& buf, double d) {
    const uint64_t v = std::bit_cast<uint64_t>(d);
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
uint32_t get_u32(const char* p) {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}
double get_f64(const char* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return std::bit_cast<double>(v);
}

} // namespace

void write_checkpoint(const std::string& path, const PhaseField& f, double eps, double t) {
    if (!f.physical())
        throw RepresentationError("write_checkpoint: field must be physical");
    std::string buf;
    buf.reserve(44 + f.data().size() * 8);
    buf += "WVL1";
    put_u32(buf, static_cast<uint32_t>(f.nx()));
    put_u32(buf, static_cast<uint32_t>(f.nv()));
    put_f64(buf, f.grid().x.length);
    put_f64(buf, f.grid().v.length);
    put_f64(buf, eps);
    put_f64(buf, t);
    for (const cplx& z : f.data()) put_f64(buf, z.real());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("write_checkpoint: cannot open " + path);
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("read_checkpoint: cannot open " + path);
    std::string buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (buf.size() < 44 || buf.compare(0, 4, "WVL1") != 0)
        throw Error("read_checkpoint: bad header in " + path);
    const uint32_t nx = get_u32(buf.data() + 4);
    const uint32_t nv = get_u32(buf.data() + 8);
    const double lx = get_f64(buf.data() + 12);
    const double lv = get_f64(buf.data() + 20);
    Checkpoint cp;
    cp.eps = get_f64(buf.data() + 28);
    cp.t = get_f64(buf.data() + 36);
    if (buf.size() != 44 + static_cast<size_t>(nx) * nv * 8)
        throw Error("read_checkpoint: truncated payload in " + path);
    cp.field = PhaseField(PhaseGrid::make(static_cast<int>(nx), lx, 0.0, static_cast<int>(nv), lv));
    for (size_t idx = 0; idx < static_cast<size_t>(nx) * nv; ++idx)
        cp.field.data()[idx] = get_f64(buf.data() + 44 + 8 * idx);
    cp.field.real_valued = true;
    return cp;
}

} // namespace wvl
