// sod.hpp: 1D Sod shock tube: flux predictor-corrector on the mesh
//
// The grid holds conserved states W = (rho, rho*u, E).  One time step is
//
//   F_{i+1/2} = f_i + f_{i+1} + j*W_i - j*W_{i+1}          (interface flux)
//   W*        = W   -  k * (F_{i+1/2}  - F_{i-1/2})          (predictor)
//   W'        = W   - 2k * (F*_{i+1/2} - F*_{i-1/2})         (corrector)
//
// with f = f(W) the physical Euler flux, j the largest |u| + c on the grid
// for that stage, and k = dt / (4 dx).
//
// On the mesh each stage is one pass.  The nonlinear pieces (f(W), j, the
// positivity check) run on the host between passes.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "psram/mesh.hpp"
#include "psram/perf_model.hpp"

namespace psram {

struct PrimitiveState {
    double density = 1;
    double velocity = 0;
    double pressure = 1;
};

using Conserved = std::array<double, 3>;  // rho, rho*u, E

struct EulerState {
    std::vector<Conserved> cells;
    std::size_t size() const { return cells.size(); }
};

struct SodConfig {
    std::size_t n = 100;
    std::size_t steps = 50;
    double k = 0;                  // dt / (4 dx); see sod_canonical / cfl_k
    double gamma = 1.4;
    PrimitiveState left{1.0, 0.0, 1.0};
    PrimitiveState right{0.125, 0.0, 0.1};
    Boundary boundary;             // ZeroGradient = transmissive
};

// Canonical Sod data with k chosen for the given CFL number.
SodConfig sod_canonical(std::size_t n, std::size_t steps, double cfl = 0.4);

void validate(const SodConfig& cfg);

Conserved to_conserved(const PrimitiveState& s, double gamma);
double pressure(const Conserved& w, double gamma);
Conserved euler_flux(const Conserved& w, double gamma);
double max_wave_speed(const EulerState& s, double gamma);

// k = cfl / (4 * max(|u| + c)) over the initial state.
double cfl_k(const SodConfig& cfg, double cfl);

// Diaphragm at the midpoint: cells [0, n/2) get `left`.
EulerState sod_initial_state(const SodConfig& cfg);

// Throws PositivityError naming the first bad cell.
void check_positivity(const EulerState& s, double gamma, std::size_t step);

// Interface fluxes F_{i-1/2} for i = 0..n (n + 1 interfaces) with boundary
// handling.  Exposed for conservation accounting.
std::vector<Conserved> interface_fluxes(const EulerState& s, const SodConfig& cfg, double j);

// One predictor-corrector step evaluated directly from the update equations.
EulerState sst_oracle_step(const EulerState& state, const SodConfig& cfg, std::size_t step = 0);
EulerState sst_oracle_run(const EulerState& state, const SodConfig& cfg);

struct SstPrograms {
    Program predictor;  // streams W, f in; W* out
    Program corrector;  // streams W*, f*, W in; W' out
};

SstPrograms sst_build_program(const SodConfig& cfg);

struct SstRun {
    EulerState state;
    SimStats stats;
};

SstRun sst_stream_step(const EulerState& state, const SodConfig& cfg, const SstPrograms& programs,
                       const MeshConfig& mesh, std::size_t step = 0);
SstRun sst_stream_run(const EulerState& state, const SodConfig& cfg, const MeshConfig& mesh);

// 60 ops and 21 w-bit transfers per grid point per time step.
inline constexpr std::uint64_t kSstMacsPerPointStep = 30;
inline constexpr std::uint64_t kSstValuesPerPointStep = 21;

WorkloadProfile sst_profile(std::size_t n, std::size_t steps, const ArchConfig& arch);
WorkloadProfile sst_profile(const SodConfig& cfg, const ArchConfig& arch);

}  // namespace psram
