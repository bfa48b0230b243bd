#include "psram/workloads/sod.hpp"

#include <algorithm>
#include <cmath>

#include "psram/error.hpp"

namespace psram {

namespace {

// Constant slots of the SST programs.
constexpr std::uint32_t kSlotJ = 0;
constexpr std::uint32_t kSlotTwoJ = 1;
constexpr std::uint32_t kSlotKappa = 2;
constexpr std::uint32_t kSlotOne = 3;

// Registers.
constexpr std::uint32_t kRegW = 0;
constexpr std::uint32_t kRegF = 1;
constexpr std::uint32_t kRegBase = 2;
constexpr std::uint32_t kRegFR = 3;   // f - j*w, contribution to the left interface
constexpr std::uint32_t kRegFL = 4;   // f + j*w, contribution to the right interface
constexpr std::uint32_t kRegFRNext = 5;
constexpr std::uint32_t kRegFLPrev = 6;
constexpr std::uint32_t kRegT = 7;
constexpr std::uint32_t kRegDiff = 8;
constexpr std::uint32_t kRegOut = 9;

Program build_pass(const SodConfig& cfg, bool corrector) {
    Program p;
    p.name = corrector ? "sst-corrector" : "sst-predictor";
    p.points = cfg.n;
    p.registers = 10;
    p.const_slots = 4;
    p.input_streams = corrector ? 9 : 6;
    p.output_streams = 3;
    p.boundary = cfg.boundary;

    auto& ins = p.instructions;
    for (std::uint32_t c = 0; c < 3; ++c) {
        ins.push_back(LoadInput{c, kRegW});
        ins.push_back(LoadInput{3 + c, kRegF});
        if (corrector) ins.push_back(LoadInput{6 + c, kRegBase});
        const std::uint32_t base = corrector ? kRegBase : kRegW;

        ins.push_back(LocalMAC{MacOp::Sub, kSlotJ, kRegW, kRegF, kRegFR});
        ins.push_back(LocalMAC{MacOp::Add, kSlotJ, kRegW, kRegF, kRegFL});
        ins.push_back(Send{Direction::Left, kRegFR});
        ins.push_back(Recv{Direction::Right, kRegFRNext});
        ins.push_back(Send{Direction::Right, kRegFL});
        ins.push_back(Recv{Direction::Left, kRegFLPrev});
        // F_{i+1/2} - F_{i-1/2} = (fR_{i+1} - fL_{i-1}) + 2j*w_i; f_i cancels.
        ins.push_back(LocalMAC{MacOp::Sub, kSlotOne, kRegFLPrev, kRegFRNext, kRegT});
        ins.push_back(LocalMAC{MacOp::Add, kSlotTwoJ, kRegW, kRegT, kRegDiff});
        ins.push_back(LocalMAC{MacOp::Sub, kSlotKappa, kRegDiff, base, kRegOut});
        ins.push_back(StoreOutput{kRegOut, c});
    }
    return p;
}

StreamSet pass_streams(const EulerState& w, const EulerState* base, double j, double kappa, double gamma) {
    const std::size_t n = w.size();
    StreamSet s;
    s.inputs.assign(base ? 9 : 6, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Conserved f = euler_flux(w.cells[i], gamma);
        for (std::size_t c = 0; c < 3; ++c) {
            s.inputs[c][i] = w.cells[i][c];
            s.inputs[3 + c][i] = f[c];
            if (base) s.inputs[6 + c][i] = base->cells[i][c];
        }
    }
    s.preload = {std::vector<double>(n, j), std::vector<double>(n, 2.0 * j),
                 std::vector<double>(n, kappa), std::vector<double>(n, 1.0)};
    return s;
}

EulerState gather(const SimResult& r, std::size_t n) {
    EulerState out;
    out.cells.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) out.cells[i][c] = r.outputs[c][i];
    }
    return out;
}

}  // namespace

SodConfig sod_canonical(std::size_t n, std::size_t steps, double cfl) {
    SodConfig cfg;
    cfg.n = n;
    cfg.steps = steps;
    cfg.k = cfl_k(cfg, cfl);
    return cfg;
}

void validate(const SodConfig& cfg) {
    if (cfg.n < 1) throw ValidationError("sod n must be >= 1");
    if (!(cfg.k > 0 && std::isfinite(cfg.k))) throw ValidationError("sod k must be > 0");
    if (!(cfg.gamma > 1)) throw ValidationError("sod gamma must be > 1");
    for (const auto* s : {&cfg.left, &cfg.right}) {
        if (!(s->density > 0)) throw ValidationError("sod initial density must be > 0");
        if (!(s->pressure > 0)) throw ValidationError("sod initial pressure must be > 0");
        if (!std::isfinite(s->velocity)) throw ValidationError("sod initial velocity must be finite");
    }
}

Conserved to_conserved(const PrimitiveState& s, double gamma) {
    const double mom = s.density * s.velocity;
    const double energy = s.pressure / (gamma - 1.0) + 0.5 * s.density * s.velocity * s.velocity;
    return {s.density, mom, energy};
}

double pressure(const Conserved& w, double gamma) {
    return (gamma - 1.0) * (w[2] - 0.5 * w[1] * w[1] / w[0]);
}

Conserved euler_flux(const Conserved& w, double gamma) {
    const double u = w[1] / w[0];
    const double p = pressure(w, gamma);
    return {w[1], w[1] * u + p, (w[2] + p) * u};
}

double max_wave_speed(const EulerState& s, double gamma) {
    double j = 0;
    for (const auto& w : s.cells) {
        const double u = w[1] / w[0];
        const double c = std::sqrt(gamma * pressure(w, gamma) / w[0]);
        j = std::max(j, std::abs(u) + c);
    }
    return j;
}

double cfl_k(const SodConfig& cfg, double cfl) {
    SodConfig probe = cfg;
    probe.n = std::max<std::size_t>(cfg.n, 2);
    const double j = max_wave_speed(sod_initial_state(probe), cfg.gamma);
    return cfl / (4.0 * j);
}

EulerState sod_initial_state(const SodConfig& cfg) {
    EulerState s;
    s.cells.resize(cfg.n);
    const Conserved l = to_conserved(cfg.left, cfg.gamma);
    const Conserved r = to_conserved(cfg.right, cfg.gamma);
    for (std::size_t i = 0; i < cfg.n; ++i) s.cells[i] = i < cfg.n / 2 ? l : r;
    return s;
}

void check_positivity(const EulerState& s, double gamma, std::size_t step) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& w = s.cells[i];
        if (!(w[0] > 0) || !(pressure(w, gamma) > 0)) throw PositivityError(i, step);
    }
}

std::vector<Conserved> interface_fluxes(const EulerState& s, const SodConfig& cfg, double j) {
    const std::size_t n = s.size();
    std::vector<Conserved> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = euler_flux(s.cells[i], cfg.gamma);

    std::vector<Conserved> out(n + 1);
    auto between = [&](const Conserved& fl, const Conserved& wl, const Conserved& fr, const Conserved& wr) {
        Conserved r;
        for (std::size_t c = 0; c < 3; ++c) r[c] = fl[c] + fr[c] + j * wl[c] - j * wr[c];
        return r;
    };
    for (std::size_t i = 1; i < n; ++i) out[i] = between(f[i - 1], s.cells[i - 1], f[i], s.cells[i]);

    if (cfg.boundary.policy == BoundaryPolicy::ZeroGradient) {
        out[0] = between(f[0], s.cells[0], f[0], s.cells[0]);
        out[n] = between(f[n - 1], s.cells[n - 1], f[n - 1], s.cells[n - 1]);
    } else {
        // The missing neighbor contributes a fixed value in place of f -/+ j*w.
        const double v = cfg.boundary.policy == BoundaryPolicy::Fixed ? cfg.boundary.value : 0.0;
        for (std::size_t c = 0; c < 3; ++c) {
            out[0][c] = v + (f[0][c] - j * s.cells[0][c]);
            out[n][c] = (f[n - 1][c] + j * s.cells[n - 1][c]) + v;
        }
    }
    return out;
}

EulerState sst_oracle_step(const EulerState& state, const SodConfig& cfg, std::size_t step) {
    validate(cfg);
    check_positivity(state, cfg.gamma, step);
    const std::size_t n = state.size();

    const auto flux = interface_fluxes(state, cfg, max_wave_speed(state, cfg.gamma));
    EulerState half = state;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            half.cells[i][c] = state.cells[i][c] - cfg.k * (flux[i + 1][c] - flux[i][c]);
        }
    }
    check_positivity(half, cfg.gamma, step);

    const auto flux_half = interface_fluxes(half, cfg, max_wave_speed(half, cfg.gamma));
    EulerState next = state;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            next.cells[i][c] = state.cells[i][c] - 2.0 * cfg.k * (flux_half[i + 1][c] - flux_half[i][c]);
        }
    }
    check_positivity(next, cfg.gamma, step);
    return next;
}

EulerState sst_oracle_run(const EulerState& state, const SodConfig& cfg) {
    EulerState s = state;
    for (std::size_t t = 0; t < cfg.steps; ++t) s = sst_oracle_step(s, cfg, t);
    return s;
}

SstPrograms sst_build_program(const SodConfig& cfg) {
    validate(cfg);
    return {build_pass(cfg, false), build_pass(cfg, true)};
}

SstRun sst_stream_step(const EulerState& state, const SodConfig& cfg, const SstPrograms& programs,
                       const MeshConfig& mesh, std::size_t step) {
    const std::size_t n = state.size();
    if (n != programs.predictor.points) throw ValidationError("state size does not match program points");
    check_positivity(state, cfg.gamma, step);

    SstRun out;
    const double j = max_wave_speed(state, cfg.gamma);
    const SimResult pred = execute(programs.predictor, mesh, pass_streams(state, nullptr, j, cfg.k, cfg.gamma));
    out.stats += pred.stats;
    const EulerState half = gather(pred, n);
    check_positivity(half, cfg.gamma, step);

    const double j_half = max_wave_speed(half, cfg.gamma);
    const SimResult corr =
        execute(programs.corrector, mesh, pass_streams(half, &state, j_half, 2.0 * cfg.k, cfg.gamma));
    out.stats += corr.stats;
    out.state = gather(corr, n);
    check_positivity(out.state, cfg.gamma, step);
    return out;
}

SstRun sst_stream_run(const EulerState& state, const SodConfig& cfg, const MeshConfig& mesh) {
    const SstPrograms programs = sst_build_program(cfg);
    SstRun run{state, {}};
    for (std::size_t t = 0; t < cfg.steps; ++t) {
        SstRun next = sst_stream_step(run.state, cfg, programs, mesh, t);
        run.state = std::move(next.state);
        run.stats += next.stats;
    }
    return run;
}

WorkloadProfile sst_profile(std::size_t n, std::size_t steps, const ArchConfig& arch) {
    const double points = static_cast<double>(n) * static_cast<double>(steps);
    WorkloadProfile wl;
    wl.name = "sst";
    wl.n_total = 2.0 * static_cast<double>(kSstMacsPerPointStep) * points;
    wl.s = static_cast<double>(kSstValuesPerPointStep) * static_cast<double>(arch.w) * points;
    return wl;
}

WorkloadProfile sst_profile(const SodConfig& cfg, const ArchConfig& arch) {
    return sst_profile(cfg.n, cfg.steps, arch);
}

}  // namespace psram
