// perf_model.hpp: analytical latency, throughput, energy and area model
// =============================================================================
//
// Data moves from electrical external memory through an opto-electronic
// converter into the pSRAM compute array.  End-to-end latency of a workload is
//
//     T_total = (T_access + S/B) + (T_EO + T_OE) + N_total / (P * Ops * F)
//                 \_ T_mem _/       \_ T_conv _/    \_____ T_comp _____/
//
// with P = floor(C_total / w) compute cells.  Sustained throughput is
// N_total / T_total and peak throughput is P * F * Ops.
//
// Energy is modeled per bitcell switching event, scaled linearly with
// frequency from a reference point.  All quantities are SI base units
// (seconds, Hz, bits, joules) except area, which is mm^2.
//
// =============================================================================
#pragma once

#include <cstdint>
#include <string>

namespace psram {

struct ArchConfig {
    std::uint64_t c_total = 256;   // capacity, bits
    std::uint64_t w = 8;           // operand width, bits
    double f = 32e9;               // operating frequency, Hz
    double ops = 2;                // operations per cycle per compute cell
    double e_bit_ref = 0.5e-12;    // J per switching event at f_ref
    double f_ref = 20e9;           // Hz
    double a_bitcell = 0.1;        // mm^2 per bitcell
};

struct MemoryConfig {
    double b = 9.8e12;             // peak external bandwidth, bits/s
    double t_access = 0;           // fixed access latency, s
};

struct ConversionConfig {
    double t_eo = 0;               // electrical -> optical, s
    double t_oe = 0;               // optical -> electrical, s
};

// Everything the model needs apart from the workload.
struct SystemConfig {
    ArchConfig arch;
    MemoryConfig mem;
    ConversionConfig conv;
};

struct WorkloadProfile {
    std::string name;
    double n_total = 0;            // scalar operations (one MAC = 2)
    double s = 0;                  // external traffic, bits
};

struct LatencyBreakdown {
    double t_mem = 0;
    double t_conv = 0;
    double t_comp = 0;
    double t_total = 0;
};

// Which operation convention the energy-efficiency figure uses.
//   BitLevel:  2 ops per bitcell switching event (the default).
//   WordLevel: 2 ops per w-bit MAC costing w switching events; smaller by a
//              factor of w.
enum class EfficiencyConvention { BitLevel, WordLevel };

struct PerformanceReport {
    std::string workload;
    LatencyBreakdown breakdown;
    double sustained = 0;          // ops/s
    double peak = 0;               // ops/s
    std::uint64_t p = 0;           // compute cells
    double energy_per_bit = 0;     // J
    double efficiency = 0;         // ops/J under `convention`
    double efficiency_word = 0;    // ops/J, word-level, always reported
    EfficiencyConvention convention = EfficiencyConvention::BitLevel;
    double switching_events = 0;   // w per MAC
    double psram_energy = 0;       // J for the whole workload
    double area = 0;               // mm^2

    double efficiency_tops_per_w() const { return efficiency * 1e-12; }
};

// Shipped defaults: 1x256-bit array, w = 8, 32 GHz, Ops = 2, HBM3E.
SystemConfig default_system();

// Throw ValidationError naming the first offending field.
void validate(const ArchConfig& arch);
void validate(const MemoryConfig& mem);
void validate(const ConversionConfig& conv);
void validate(const WorkloadProfile& wl);
void validate(const SystemConfig& cfg);

std::uint64_t compute_cells(const ArchConfig& arch);
double peak_performance(const ArchConfig& arch);

double t_mem(const MemoryConfig& mem, const WorkloadProfile& wl);
double t_conv(const ConversionConfig& conv);
double t_comp(const ArchConfig& arch, const WorkloadProfile& wl);
LatencyBreakdown t_total(const ArchConfig& arch, const MemoryConfig& mem,
                         const ConversionConfig& conv, const WorkloadProfile& wl);

// N_total / T_total.  Zero work with nonzero overhead gives 0; zero work with
// zero overhead is undefined and throws.
double sustained_performance(const ArchConfig& arch, const MemoryConfig& mem,
                             const ConversionConfig& conv, const WorkloadProfile& wl);

double energy_per_bit(const ArchConfig& arch);
double energy_efficiency(const ArchConfig& arch,
                         EfficiencyConvention convention = EfficiencyConvention::BitLevel);
double workload_energy(const ArchConfig& arch, double switching_events);
double array_area(const ArchConfig& arch);

// Switching events implied by a profile: (n_total / 2) MACs, w events each.
double switching_events(const ArchConfig& arch, const WorkloadProfile& wl);

PerformanceReport evaluate(const ArchConfig& arch, const MemoryConfig& mem,
                           const ConversionConfig& conv, const WorkloadProfile& wl,
                           EfficiencyConvention convention = EfficiencyConvention::BitLevel);
PerformanceReport evaluate(const SystemConfig& cfg, const WorkloadProfile& wl,
                           EfficiencyConvention convention = EfficiencyConvention::BitLevel);

}  // namespace psram
