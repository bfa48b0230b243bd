#include "psram/roofline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "psram/error.hpp"

namespace psram {

std::string_view to_string(Bound b) {
    switch (b) {
        case Bound::ComputeBound: return "ComputeBound";
        case Bound::MemoryBound: return "MemoryBound";
        case Bound::Balanced: return "Balanced";
    }
    return "?";
}

MachineModel machine_model(const ArchConfig& arch, const MemoryConfig& mem) {
    validate(arch);
    validate(mem);
    return MachineModel{peak_performance(arch), mem.b / 8.0};
}

double arithmetic_intensity(const WorkloadProfile& wl) {
    if (!(wl.s > 0)) throw ValidationError("arithmetic intensity undefined for s_bits = 0");
    return wl.n_total / (wl.s / 8.0);
}

double ridge_point(const MachineModel& m) {
    return m.peak / m.bandwidth;
}

double attainable(const MachineModel& m, double ai) {
    return std::min(m.peak, ai * m.bandwidth);
}

RooflinePoint classify(const MachineModel& m, const WorkloadProfile& wl) {
    RooflinePoint pt;
    pt.workload = wl.name;
    if (wl.s == 0) {
        pt.ai = std::numeric_limits<double>::infinity();
        pt.attainable = m.peak;
        pt.bound = Bound::ComputeBound;
        return pt;
    }
    pt.ai = arithmetic_intensity(wl);
    pt.attainable = attainable(m, pt.ai);
    const double ridge = ridge_point(m);
    if (std::abs(pt.ai - ridge) / ridge < kBalancedTolerance) {
        pt.bound = Bound::Balanced;
    } else {
        pt.bound = pt.ai > ridge ? Bound::ComputeBound : Bound::MemoryBound;
    }
    return pt;
}

RooflineReport roofline_report(const MachineModel& m, const std::vector<WorkloadProfile>& wls,
                               double ai_min, double ai_max, std::size_t n_samples) {
    if (!(ai_min > 0 && ai_max > ai_min)) throw ValidationError("roof range must satisfy 0 < ai_min < ai_max");
    RooflineReport rep;
    rep.machine = m;
    rep.ridge = ridge_point(m);
    rep.memory_roof_start = {ai_min, attainable(m, ai_min)};
    rep.ridge_knee = {rep.ridge, m.peak};
    rep.compute_roof_end = {ai_max, attainable(m, ai_max)};

    const double lo = std::log10(ai_min);
    const double hi = std::log10(ai_max);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = n_samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n_samples - 1);
        const double ai = std::pow(10.0, lo + t * (hi - lo));
        rep.samples.push_back({ai, attainable(m, ai)});
    }
    for (const auto& wl : wls) rep.points.push_back(classify(m, wl));
    return rep;
}

std::string_view to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::Bandwidth: return "bandwidth";
        case SweepParameter::Frequency: return "frequency";
        case SweepParameter::ConversionLatency: return "conversion";
        case SweepParameter::GridPoints: return "gridpoints";
        case SweepParameter::ArrayBits: return "arraybits";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
    for (auto p : {SweepParameter::Bandwidth, SweepParameter::Frequency,
                   SweepParameter::ConversionLatency, SweepParameter::GridPoints,
                   SweepParameter::ArrayBits}) {
        if (name == to_string(p)) return p;
    }
    throw ValidationError("unknown sweep parameter '" + std::string(name) +
                          "' (expected bandwidth|frequency|conversion|gridpoints|arraybits)");
}

WorkloadSource fixed_workload(WorkloadProfile wl) {
    WorkloadSource src;
    src.name = wl.name;
    src.make = [wl](const SystemConfig&, std::uint64_t) { return wl; };
    return src;
}

SystemConfig apply_parameter(const SystemConfig& base, SweepParameter p, double value) {
    SystemConfig cfg = base;
    switch (p) {
        case SweepParameter::Bandwidth: cfg.mem.b = value; break;
        case SweepParameter::Frequency: cfg.arch.f = value; break;
        case SweepParameter::ConversionLatency:
            cfg.conv.t_eo = value / 2.0;
            cfg.conv.t_oe = value / 2.0;
            break;
        case SweepParameter::GridPoints: break;
        case SweepParameter::ArrayBits:
            if (!(value >= 1) || value != std::floor(value)) {
                throw ValidationError("arraybits axis values must be positive integers");
            }
            cfg.arch.c_total = static_cast<std::uint64_t>(value);
            break;
    }
    return cfg;
}

SweepResult sweep(SweepParameter parameter, const std::vector<double>& axis,
                  const SystemConfig& base, const WorkloadSource& source, unsigned threads) {
    if (axis.empty()) throw ValidationError("sweep axis must be non-empty");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) throw ValidationError("sweep axis must be strictly increasing");
    }
    if (parameter == SweepParameter::GridPoints) {
        if (!source.sizable) {
            throw ValidationError("gridpoints sweep requires a sizable workload; '" + source.name +
                                  "' has a fixed size");
        }
        for (double v : axis) {
            if (!(v >= 1) || v != std::floor(v)) {
                throw ValidationError("gridpoints axis values must be positive integers");
            }
        }
    }

    SweepResult res;
    res.parameter = parameter;
    res.axis = axis;
    res.configs.reserve(axis.size());
    for (double v : axis) {
        res.configs.push_back(apply_parameter(base, parameter, v));
        validate(res.configs.back());
    }

    auto eval_point = [&](std::size_t i) {
        const auto size = parameter == SweepParameter::GridPoints
                              ? static_cast<std::uint64_t>(axis[i])
                              : source.default_size;
        WorkloadProfile wl = source.make(res.configs[i], size);
        PerformanceReport rep = evaluate(res.configs[i], wl);
        return std::make_pair(std::move(wl), std::move(rep));
    };

    std::vector<std::pair<WorkloadProfile, PerformanceReport>> points(axis.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < axis.size(); ++i) points[i] = eval_point(i);
    } else {
        for (std::size_t start = 0; start < axis.size(); start += threads) {
            const std::size_t stop = std::min<std::size_t>(axis.size(), start + threads);
            std::vector<std::future<std::pair<WorkloadProfile, PerformanceReport>>> batch;
            for (std::size_t i = start; i < stop; ++i) {
                batch.push_back(std::async(std::launch::async, eval_point, i));
            }
            for (std::size_t i = start; i < stop; ++i) points[i] = batch[i - start].get();
        }
    }

    for (auto& [wl, rep] : points) {
        res.peaks.push_back(rep.peak);
        res.workloads.push_back(std::move(wl));
        res.reports.push_back(std::move(rep));
    }
    return res;
}

}  // namespace psram
