// json_io.hpp: JSON and CSV schemas for configs, reports, programs and stats
#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "psram/mesh.hpp"
#include "psram/perf_model.hpp"
#include "psram/roofline.hpp"
#include "psram/workloads/sod.hpp"
#include "psram/workloads/vlasov.hpp"

namespace psram {

using nlohmann::json;

// Flat object with exactly: c_total_bits, w_bits, f_hz, ops_per_cycle,
// e_bit_ref_j, f_ref_hz, a_bitcell_mm2, b_bits_per_s, t_access_s, t_eo_s,
// t_oe_s.  Missing, unknown or mistyped keys throw ValidationError.
SystemConfig config_from_json(const json& j);
json config_to_json(const SystemConfig& cfg);

json to_json(const WorkloadProfile& wl);
json to_json(const LatencyBreakdown& b);
json to_json(const PerformanceReport& r);
json to_json(const SimStats& s);
json to_json(const RooflinePoint& p);
json to_json(const RooflineReport& r);
json to_json(const SweepResult& r);

// Instruction kinds are spelled LocalMAC, Send, Recv, LoadInput, StoreOutput,
// LoadConst.
json program_to_json(const Program& p);
Program program_from_json(const json& j);

// Fields: n, steps, k (optional; derived from cfl when absent), cfl, gamma,
// left/right {density, velocity, pressure}, boundary {policy, value}.
SodConfig sod_config_from_json(const json& j);
json to_json(const SodConfig& cfg);

// Fields: n_modes, and optionally f_R, f_I, k_R, k_I, z_R, z_I arrays.
// Missing arrays are filled from `seed`.
SpectralConfig spectral_config_from_json(const json& j, std::uint64_t seed);

// 9 significant digits, '.' decimal point, no grouping.
std::string format_number(double v);

// Header: value,t_mem,t_conv,t_comp,t_total,sustained,peak, then
// energy_per_bit_j,efficiency_tops_per_w,p.  LF line endings.
std::string sweep_csv(const SweepResult& r);

// Machine line (peak, bandwidth, ridge), then workload,ai,attainable,bound,
// then the sampled roof.  Sections are separated by a blank line.
std::string roofline_csv(const RooflineReport& r);

std::string report_csv(const PerformanceReport& r);

}  // namespace psram
