// vlasov.hpp: spectral convolution kernel, f <- f + k * z per Fourier mode
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "psram/mesh.hpp"
#include "psram/perf_model.hpp"

namespace psram {

using Complex = std::complex<double>;

struct SpectralConfig {
    std::size_t n_modes = 0;
    std::vector<Complex> f;   // Fourier modes, updated in place
    std::vector<Complex> k;   // constants, preloaded
    std::vector<Complex> z;   // streamed inputs
};

void validate(const SpectralConfig& cfg);
SpectralConfig random_spectral(std::size_t n_modes, std::uint64_t seed);

// Complex multiply-accumulate in the mesh program's operation order:
//   re = f_R + (k_R z_R - k_I z_I),  im = f_I + (k_I z_R + k_R z_I)
Complex vlasov_oracle(Complex k, Complex z, Complex f);

Program vlasov_build_program(const SpectralConfig& cfg);
StreamSet vlasov_streams(const SpectralConfig& cfg);
std::vector<Complex> vlasov_collect(const SimResult& result);

struct VlasovRun {
    std::vector<Complex> f;
    SimStats stats;
};
VlasovRun vlasov_stream_run(const SpectralConfig& cfg, const MeshConfig& mesh);

// Direct O(n^2) transforms.  The inverse includes the 1/n factor.
std::vector<Complex> dft(const std::vector<Complex>& x);
std::vector<Complex> idft(const std::vector<Complex>& x);

struct ConvolutionResult {
    std::vector<double> values;
    double max_imag_residue = 0;
    SimStats stats;
};

// Circular convolution: transform on the host, pointwise product on the mesh,
// inverse transform on the host.
ConvolutionResult spectral_convolution(const std::vector<double>& h, const std::vector<double>& c,
                                       const MeshConfig& mesh);

// n_total = 12 n_modes; s = 6 w n_modes (k preloaded).
WorkloadProfile vlasov_profile(std::size_t n_modes, const ArchConfig& arch);

}  // namespace psram
