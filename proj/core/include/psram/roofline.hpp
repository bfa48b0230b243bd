// roofline.hpp: roofline classification and parameter sweeps
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "psram/perf_model.hpp"

namespace psram {

struct MachineModel {
    double peak = 0;        // ops/s
    double bandwidth = 0;   // bytes/s
};

enum class Bound { ComputeBound, MemoryBound, Balanced };

struct RooflinePoint {
    std::string workload;
    double ai = 0;          // ops/byte; +inf when the workload moves no data
    double attainable = 0;  // ops/s
    Bound bound = Bound::Balanced;
};

// Relative distance from the ridge inside which a point is Balanced.
inline constexpr double kBalancedTolerance = 1e-9;

std::string_view to_string(Bound b);

MachineModel machine_model(const ArchConfig& arch, const MemoryConfig& mem);

// n_total / (s / 8).  Throws ValidationError when s == 0.
double arithmetic_intensity(const WorkloadProfile& wl);
double ridge_point(const MachineModel& m);
double attainable(const MachineModel& m, double ai);
RooflinePoint classify(const MachineModel& m, const WorkloadProfile& wl);

struct RoofSample {
    double ai = 0;
    double attainable = 0;
};

struct RooflineReport {
    MachineModel machine;
    double ridge = 0;
    // Memory roof runs from (ai_min, ai_min * bw) to the ridge; compute roof
    // from the ridge to (ai_max, peak).
    RoofSample memory_roof_start, ridge_knee, compute_roof_end;
    std::vector<RoofSample> samples;  // log-spaced attainable curve
    std::vector<RooflinePoint> points;
};

RooflineReport roofline_report(const MachineModel& m, const std::vector<WorkloadProfile>& wls,
                               double ai_min = 1e-2, double ai_max = 1e3,
                               std::size_t n_samples = 61);

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

enum class SweepParameter { Bandwidth, Frequency, ConversionLatency, GridPoints, ArrayBits };

std::string_view to_string(SweepParameter p);
// Accepts the CLI spellings: bandwidth, frequency, conversion, gridpoints, arraybits.
SweepParameter parse_sweep_parameter(std::string_view name);

// Produces the workload for a given configuration.  `problem_size` is the
// grid-point count during GridPoints sweeps and `default_size` otherwise.
struct WorkloadSource {
    std::string name;
    std::function<WorkloadProfile(const SystemConfig&, std::uint64_t problem_size)> make;
    std::uint64_t default_size = 0;
    bool sizable = false;   // false: GridPoints sweeps are rejected

    WorkloadProfile operator()(const SystemConfig& cfg) const { return make(cfg, default_size); }
};

// A workload that does not depend on configuration.
WorkloadSource fixed_workload(WorkloadProfile wl);

struct SweepResult {
    SweepParameter parameter = SweepParameter::Bandwidth;
    std::vector<double> axis;
    std::vector<SystemConfig> configs;
    std::vector<WorkloadProfile> workloads;
    std::vector<PerformanceReport> reports;
    std::vector<double> peaks;
};

// Returns `base` with the named parameter overridden.  ConversionLatency sets
// the total and splits it evenly between T_EO and T_OE.  GridPoints leaves
// the configuration unchanged.
SystemConfig apply_parameter(const SystemConfig& base, SweepParameter p, double value);

// Evaluates every axis point.  Points may run concurrently (`threads` > 1);
// results are always assembled in axis order.  0 or 1 means sequential.
SweepResult sweep(SweepParameter parameter, const std::vector<double>& axis,
                  const SystemConfig& base, const WorkloadSource& source,
                  unsigned threads = 0);

}  // namespace psram
