#include <gtest/gtest.h>

#include <cmath>

#include "psram/error.hpp"
#include "psram/perf_model.hpp"

using namespace psram;

namespace {

ArchConfig arch(std::uint64_t c, std::uint64_t w, double f = 32e9, double ops = 2) {
    ArchConfig a;
    a.c_total = c;
    a.w = w;
    a.f = f;
    a.ops = ops;
    return a;
}

WorkloadProfile wl(double n, double s) { return {"t", n, s}; }

}  // namespace

TEST(ComputeCells, FloorDivision) {
    EXPECT_EQ(compute_cells(arch(256, 8)), 32u);
    EXPECT_EQ(compute_cells(arch(256, 256)), 1u);
    EXPECT_EQ(compute_cells(arch(1000, 8)), 125u);
    EXPECT_EQ(compute_cells(arch(1001, 8)), 125u);
}

TEST(ComputeCells, WidthAboveCapacityLeavesNoCells) {
    EXPECT_EQ(compute_cells(arch(4, 8)), 0u);
    EXPECT_THROW(t_comp(arch(4, 8), wl(1, 0)), ValidationError);
    EXPECT_THROW(validate(arch(4, 8)), ValidationError);
    EXPECT_THROW(compute_cells(arch(256, 0)), ValidationError);
}

TEST(PeakPerformance, Examples) {
    EXPECT_DOUBLE_EQ(peak_performance(arch(256, 8)), 2.048e12);
    EXPECT_DOUBLE_EQ(peak_performance(arch(1, 1, 1, 1)), 1.0);
    EXPECT_DOUBLE_EQ(peak_performance(arch(256, 8, 16e9)), 1.024e12);
}

TEST(TMem, Examples) {
    MemoryConfig m;
    m.b = 9.8e12;
    EXPECT_DOUBLE_EQ(t_mem(m, wl(0, 9.8e12)), 1.0);
    m.t_access = 100e-9;
    EXPECT_DOUBLE_EQ(t_mem(m, wl(0, 0)), 100e-9);
    m.t_access = 50e-9;
    EXPECT_NEAR(t_mem(m, wl(0, 1e9)), 1.0209081632653062e-4, 1e-18);
}

TEST(TConv, IsSum) {
    EXPECT_EQ(t_conv({0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(t_conv({1e-9, 2e-9}), 3e-9);
    EXPECT_DOUBLE_EQ(t_conv({5e-9, 5e-9}), 1e-8);
}

TEST(TComp, Examples) {
    EXPECT_DOUBLE_EQ(t_comp(arch(256, 8), wl(2.048e9, 0)), 1e-3);
    EXPECT_EQ(t_comp(arch(256, 8), wl(0, 0)), 0.0);
    EXPECT_DOUBLE_EQ(t_comp(arch(256, 8, 1), wl(64, 0)), 1.0);
}

TEST(TTotal, ComputeOnlyLimit) {
    const auto b = t_total(arch(256, 8), {1e300, 0}, {0, 0}, wl(1e6, 8));
    EXPECT_EQ(b.t_total, b.t_comp + b.t_mem);
    EXPECT_NEAR(b.t_total, b.t_comp, 1e-20);
}

TEST(TTotal, OverheadOnly) {
    const auto b = t_total(arch(256, 8), {9.8e12, 1e-6}, {0, 0}, wl(0, 0));
    EXPECT_DOUBLE_EQ(b.t_total, 1e-6);
}

TEST(TTotal, WorkedExample) {
    const auto b = t_total(arch(256, 8), {9.8e12, 100e-9}, {5e-9, 5e-9}, wl(1e9, 1e9));
    EXPECT_NEAR(b.t_comp, 4.8828125e-4, 1e-18);
    EXPECT_NEAR(b.t_total, 5.9043206632653064e-4, 1e-17);
    EXPECT_EQ(b.t_total, b.t_mem + b.t_conv + b.t_comp);
    const double s = sustained_performance(arch(256, 8), {9.8e12, 100e-9}, {5e-9, 5e-9}, wl(1e9, 1e9));
    EXPECT_NEAR(s / 1693674949298.8467, 1.0, 1e-14);
}

TEST(Sustained, Limits) {
    EXPECT_DOUBLE_EQ(sustained_performance(arch(256, 8), {1e300, 0}, {0, 0}, wl(1e9, 1)), 2.048e12);
    EXPECT_LT(sustained_performance(arch(256, 8), {9.8e12, 0}, {0, 0}, wl(1e9, 1e30)), 1e-3);
    EXPECT_EQ(sustained_performance(arch(256, 8), {9.8e12, 1e-9}, {0, 0}, wl(0, 0)), 0.0);
    EXPECT_THROW(sustained_performance(arch(256, 8), {9.8e12, 0}, {0, 0}, wl(0, 0)), ValidationError);
}

TEST(Energy, TableRows) {
    const double f[] = {16e9, 20e9, 32e9, 48e9};
    const double pj[] = {0.40, 0.50, 0.80, 1.20};
    const double tops[] = {5.00, 4.00, 2.50, 1.67};
    for (int i = 0; i < 4; ++i) {
        const auto a = arch(256, 8, f[i]);
        EXPECT_NEAR(energy_per_bit(a) * 1e12, pj[i], 1e-12);
        EXPECT_EQ(std::round(energy_efficiency(a) * 1e-12 * 100) / 100, tops[i]);
    }
}

TEST(Energy, ReferencePointAndProduct) {
    const auto a = arch(256, 8, 20e9);
    EXPECT_EQ(energy_per_bit(a), a.e_bit_ref);
    for (double f : {1e9, 16e9, 20e9, 32e9, 48e9, 7.3e10}) {
        const auto b = arch(256, 8, f);
        EXPECT_EQ(energy_efficiency(b) * energy_per_bit(b), 2.0) << f;
    }
}

TEST(Energy, WordLevelConvention) {
    const auto a = arch(256, 8);
    EXPECT_DOUBLE_EQ(energy_efficiency(a, EfficiencyConvention::WordLevel) * 8, energy_efficiency(a));
}

TEST(Energy, WorkloadEnergy) {
    EXPECT_EQ(workload_energy(arch(256, 8), 0), 0.0);
    EXPECT_DOUBLE_EQ(workload_energy(arch(256, 8, 20e9), 1), 0.5e-12);
    EXPECT_DOUBLE_EQ(workload_energy(arch(256, 8, 32e9), 1e6), 0.8e-6);
}

TEST(Area, Linear) {
    EXPECT_DOUBLE_EQ(array_area(arch(256, 8)), 25.6);
    EXPECT_DOUBLE_EQ(array_area(arch(1, 1)), 0.1);
    EXPECT_DOUBLE_EQ(array_area(arch(1024, 8)), 102.4);
}

TEST(Evaluate, Defaults) {
    const auto r = evaluate(default_system(), wl(1e9, 1e9));
    EXPECT_EQ(r.p, 32u);
    EXPECT_DOUBLE_EQ(r.peak, 2.048e12);
    EXPECT_DOUBLE_EQ(r.area, 25.6);
    EXPECT_DOUBLE_EQ(r.efficiency_tops_per_w(), 2.5);
    EXPECT_EQ(r.breakdown.t_total, r.breakdown.t_mem + r.breakdown.t_conv + r.breakdown.t_comp);
    EXPECT_DOUBLE_EQ(r.switching_events, 0.5e9 * 8);
    EXPECT_DOUBLE_EQ(r.psram_energy, 4e9 * 0.8e-12);
}

TEST(Evaluate, ZeroOverheadReachesPeak) {
    SystemConfig cfg;
    cfg.mem = {1e300, 0};
    const auto r = evaluate(cfg, wl(1e12, 8));
    EXPECT_DOUBLE_EQ(r.sustained, r.peak);
}

TEST(Evaluate, EmptyWorkloadKeepsFixedOverheads) {
    const auto r = evaluate(default_system(), wl(0, 0));
    EXPECT_EQ(r.breakdown.t_comp, 0.0);
    EXPECT_DOUBLE_EQ(r.breakdown.t_total, 100e-9 + 10e-9);
    EXPECT_EQ(r.sustained, 0.0);
}

TEST(Validation, NamesField) {
    auto cfg = default_system();
    cfg.arch.f = -1;
    try {
        validate(cfg);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("f_hz"), std::string::npos) << e.what();
    }
    cfg = default_system();
    cfg.mem.b = 0;
    EXPECT_THROW(validate(cfg), ValidationError);
    EXPECT_THROW(validate(wl(-1, 0)), ValidationError);
    EXPECT_THROW(validate(wl(std::nan(""), 0)), ValidationError);
}
