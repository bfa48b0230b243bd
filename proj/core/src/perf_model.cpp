#include "psram/perf_model.hpp"

#include <algorithm>
#include <cmath>

#include "psram/error.hpp"

namespace psram {

namespace {

void require_positive(double v, const char* field) {
    if (!(std::isfinite(v) && v > 0)) {
        throw ValidationError(std::string(field) + " must be finite and > 0");
    }
}

void require_non_negative(double v, const char* field) {
    if (!(std::isfinite(v) && v >= 0)) {
        throw ValidationError(std::string(field) + " must be finite and >= 0");
    }
}

}  // namespace

SystemConfig default_system() {
    SystemConfig cfg;
    cfg.arch = ArchConfig{};
    cfg.mem.b = 9.8e12;
    cfg.mem.t_access = 100e-9;
    cfg.conv.t_eo = 5e-9;
    cfg.conv.t_oe = 5e-9;
    return cfg;
}

void validate(const ArchConfig& arch) {
    if (arch.c_total == 0) throw ValidationError("c_total_bits must be > 0");
    if (arch.w == 0) throw ValidationError("w_bits must be > 0");
    if (arch.w > arch.c_total) throw ValidationError("w_bits must not exceed c_total_bits");
    require_positive(arch.f, "f_hz");
    require_positive(arch.ops, "ops_per_cycle");
    require_positive(arch.e_bit_ref, "e_bit_ref_j");
    require_positive(arch.f_ref, "f_ref_hz");
    require_positive(arch.a_bitcell, "a_bitcell_mm2");
}

void validate(const MemoryConfig& mem) {
    require_positive(mem.b, "b_bits_per_s");
    require_non_negative(mem.t_access, "t_access_s");
}

void validate(const ConversionConfig& conv) {
    require_non_negative(conv.t_eo, "t_eo_s");
    require_non_negative(conv.t_oe, "t_oe_s");
}

void validate(const WorkloadProfile& wl) {
    require_non_negative(wl.n_total, "n_total");
    require_non_negative(wl.s, "s_bits");
}

void validate(const SystemConfig& cfg) {
    validate(cfg.arch);
    validate(cfg.mem);
    validate(cfg.conv);
}

std::uint64_t compute_cells(const ArchConfig& arch) {
    if (arch.w == 0) throw ValidationError("w_bits must be > 0");
    return arch.c_total / arch.w;
}

double peak_performance(const ArchConfig& arch) {
    return static_cast<double>(compute_cells(arch)) * arch.f * arch.ops;
}

double t_mem(const MemoryConfig& mem, const WorkloadProfile& wl) {
    return mem.t_access + wl.s / mem.b;
}

double t_conv(const ConversionConfig& conv) {
    return conv.t_eo + conv.t_oe;
}

double t_comp(const ArchConfig& arch, const WorkloadProfile& wl) {
    const double peak = peak_performance(arch);
    if (peak <= 0) throw ValidationError("array has no compute cells (w_bits > c_total_bits)");
    return wl.n_total / peak;
}

LatencyBreakdown t_total(const ArchConfig& arch, const MemoryConfig& mem,
                         const ConversionConfig& conv, const WorkloadProfile& wl) {
    LatencyBreakdown out;
    out.t_mem = t_mem(mem, wl);
    out.t_conv = t_conv(conv);
    out.t_comp = t_comp(arch, wl);
    out.t_total = out.t_mem + out.t_conv + out.t_comp;
    return out;
}

double sustained_performance(const ArchConfig& arch, const MemoryConfig& mem,
                             const ConversionConfig& conv, const WorkloadProfile& wl) {
    const LatencyBreakdown lat = t_total(arch, mem, conv, wl);
    if (lat.t_total <= 0) {
        throw ValidationError("sustained performance undefined: zero work and zero latency");
    }
    // n / (n / peak) can round one ulp above peak.
    return std::min(wl.n_total / lat.t_total, peak_performance(arch));
}

double energy_per_bit(const ArchConfig& arch) {
    return arch.e_bit_ref * (arch.f / arch.f_ref);
}

double energy_efficiency(const ArchConfig& arch, EfficiencyConvention convention) {
    const double e = energy_per_bit(arch);
    if (convention == EfficiencyConvention::WordLevel) {
        return 2.0 / (static_cast<double>(arch.w) * e);
    }
    return 2.0 / e;
}

double workload_energy(const ArchConfig& arch, double switching_events) {
    if (!(switching_events >= 0)) throw ValidationError("switching_events must be >= 0");
    return switching_events * energy_per_bit(arch);
}

double array_area(const ArchConfig& arch) {
    return static_cast<double>(arch.c_total) * arch.a_bitcell;
}

double switching_events(const ArchConfig& arch, const WorkloadProfile& wl) {
    return wl.n_total / 2.0 * static_cast<double>(arch.w);
}

PerformanceReport evaluate(const ArchConfig& arch, const MemoryConfig& mem,
                           const ConversionConfig& conv, const WorkloadProfile& wl,
                           EfficiencyConvention convention) {
    validate(arch);
    validate(mem);
    validate(conv);
    validate(wl);

    PerformanceReport r;
    r.workload = wl.name;
    r.breakdown = t_total(arch, mem, conv, wl);
    r.peak = peak_performance(arch);
    r.sustained = r.breakdown.t_total > 0 ? sustained_performance(arch, mem, conv, wl) : 0.0;
    r.p = compute_cells(arch);
    r.energy_per_bit = energy_per_bit(arch);
    r.convention = convention;
    r.efficiency = energy_efficiency(arch, convention);
    r.efficiency_word = energy_efficiency(arch, EfficiencyConvention::WordLevel);
    r.switching_events = switching_events(arch, wl);
    r.psram_energy = workload_energy(arch, r.switching_events);
    r.area = array_area(arch);
    return r;
}

PerformanceReport evaluate(const SystemConfig& cfg, const WorkloadProfile& wl,
                           EfficiencyConvention convention) {
    return evaluate(cfg.arch, cfg.mem, cfg.conv, wl, convention);
}

}  // namespace psram
