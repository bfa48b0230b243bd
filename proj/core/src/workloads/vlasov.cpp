#include "psram/workloads/vlasov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psram/error.hpp"
#include "psram/random.hpp"

namespace psram {

namespace {

constexpr std::uint32_t kSlotKR = 0;
constexpr std::uint32_t kSlotKI = 1;
constexpr std::uint32_t kSlotOne = 2;

constexpr std::uint32_t kRegZero = 0;
constexpr std::uint32_t kRegZR = 1;
constexpr std::uint32_t kRegZI = 2;
constexpr std::uint32_t kRegFR = 3;
constexpr std::uint32_t kRegFI = 4;
constexpr std::uint32_t kRegTemp = 5;

std::vector<Complex> transform(const std::vector<Complex>& x, double sign) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    // Twiddle table indexed by (j * k) mod n keeps the phase argument small.
    std::vector<Complex> tw(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        tw[m] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0, 0};
        for (std::size_t j = 0; j < n; ++j) acc += x[j] * tw[(j * k) % n];
        out[k] = acc;
    }
    return out;
}

}  // namespace

void validate(const SpectralConfig& cfg) {
    if (cfg.f.size() != cfg.n_modes || cfg.k.size() != cfg.n_modes || cfg.z.size() != cfg.n_modes) {
        throw ValidationError("spectral arrays f, k, z must each have n_modes entries");
    }
    if (cfg.n_modes == 0) throw ValidationError("n_modes must be >= 1");
}

SpectralConfig random_spectral(std::size_t n_modes, std::uint64_t seed) {
    Rng rng(seed);
    SpectralConfig cfg;
    cfg.n_modes = n_modes;
    for (auto* v : {&cfg.f, &cfg.k, &cfg.z}) {
        v->resize(n_modes);
        for (auto& x : *v) {
            const double re = rng.uniform(-1.0, 1.0);
            const double im = rng.uniform(-1.0, 1.0);
            x = {re, im};
        }
    }
    return cfg;
}

Complex vlasov_oracle(Complex k, Complex z, Complex f) {
    const double re = f.real() + (k.real() * z.real() - k.imag() * z.imag());
    const double im = f.imag() + (k.imag() * z.real() + k.real() * z.imag());
    return {re, im};
}

Program vlasov_build_program(const SpectralConfig& cfg) {
    validate(cfg);
    Program p;
    p.name = "vlasov-spectral";
    p.points = cfg.n_modes;
    p.registers = 6;
    p.const_slots = 3;
    p.input_streams = 4;   // z_R, z_I, f_R, f_I
    p.output_streams = 2;  // f_R, f_I
    p.boundary.policy = BoundaryPolicy::Zero;
    p.instructions = {
        LoadInput{0, kRegZR},
        LoadInput{1, kRegZI},
        LoadInput{2, kRegFR},
        LoadInput{3, kRegFI},
        LocalMAC{MacOp::Add, kSlotKR, kRegZR, kRegZero, kRegTemp},
        LocalMAC{MacOp::Sub, kSlotKI, kRegZI, kRegTemp, kRegTemp},
        LocalMAC{MacOp::Add, kSlotOne, kRegTemp, kRegFR, kRegFR},
        LocalMAC{MacOp::Add, kSlotKI, kRegZR, kRegZero, kRegTemp},
        LocalMAC{MacOp::Add, kSlotKR, kRegZI, kRegTemp, kRegTemp},
        LocalMAC{MacOp::Add, kSlotOne, kRegTemp, kRegFI, kRegFI},
        StoreOutput{kRegFR, 0},
        StoreOutput{kRegFI, 1},
    };
    return p;
}

StreamSet vlasov_streams(const SpectralConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.n_modes;
    StreamSet s;
    s.inputs.assign(4, std::vector<double>(n));
    s.preload.assign(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        s.inputs[0][i] = cfg.z[i].real();
        s.inputs[1][i] = cfg.z[i].imag();
        s.inputs[2][i] = cfg.f[i].real();
        s.inputs[3][i] = cfg.f[i].imag();
        s.preload[0][i] = cfg.k[i].real();
        s.preload[1][i] = cfg.k[i].imag();
        s.preload[2][i] = 1.0;
    }
    return s;
}

std::vector<Complex> vlasov_collect(const SimResult& result) {
    const auto& re = result.outputs.at(0);
    const auto& im = result.outputs.at(1);
    std::vector<Complex> f(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) f[i] = {re[i], im[i]};
    return f;
}

VlasovRun vlasov_stream_run(const SpectralConfig& cfg, const MeshConfig& mesh) {
    const SimResult r = execute(vlasov_build_program(cfg), mesh, vlasov_streams(cfg));
    return {vlasov_collect(r), r.stats};
}

std::vector<Complex> dft(const std::vector<Complex>& x) { return transform(x, -1.0); }

std::vector<Complex> idft(const std::vector<Complex>& x) {
    auto out = transform(x, 1.0);
    const double inv = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= inv;
    return out;
}

ConvolutionResult spectral_convolution(const std::vector<double>& h, const std::vector<double>& c,
                                       const MeshConfig& mesh) {
    if (h.size() != c.size()) throw ValidationError("convolution inputs must have equal length");
    if (h.empty()) throw ValidationError("convolution inputs must be non-empty");
    const std::size_t n = h.size();

    SpectralConfig cfg;
    cfg.n_modes = n;
    cfg.k = dft(std::vector<Complex>(h.begin(), h.end()));
    cfg.z = dft(std::vector<Complex>(c.begin(), c.end()));
    cfg.f.assign(n, Complex{0, 0});

    VlasovRun run = vlasov_stream_run(cfg, mesh);
    const auto time = idft(run.f);

    ConvolutionResult out;
    out.stats = run.stats;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = time[i].real();
        out.max_imag_residue = std::max(out.max_imag_residue, std::abs(time[i].imag()));
    }
    return out;
}

WorkloadProfile vlasov_profile(std::size_t n_modes, const ArchConfig& arch) {
    WorkloadProfile wl;
    wl.name = "vlasov";
    wl.n_total = 12.0 * static_cast<double>(n_modes);
    wl.s = 6.0 * static_cast<double>(arch.w) * static_cast<double>(n_modes);
    return wl;
}

}  // namespace psram
