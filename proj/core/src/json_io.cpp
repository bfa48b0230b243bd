#include "psram/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "psram/error.hpp"

namespace psram {

namespace {

const char* const kConfigKeys[] = {"c_total_bits", "w_bits",       "f_hz",   "ops_per_cycle",
                                   "e_bit_ref_j",  "f_ref_hz",     "a_bitcell_mm2", "b_bits_per_s",
                                   "t_access_s",   "t_eo_s",       "t_oe_s"};

double number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number()) throw ValidationError(std::string("field '") + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t count_field(const json& j, const char* key) {
    const double v = number_field(j, key);
    if (!(v >= 0) || v != std::floor(v) || v > 9.0e15) {
        throw ValidationError(std::string("field '") + key + "' must be a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
}

json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

std::string_view op_name(MacOp op) { return op == MacOp::Add ? "add" : "sub"; }
std::string_view dir_name(Direction d) { return d == Direction::Left ? "left" : "right"; }

MacOp parse_op(const std::string& s) {
    if (s == "add") return MacOp::Add;
    if (s == "sub") return MacOp::Sub;
    throw ValidationError("LocalMAC op must be 'add' or 'sub', got '" + s + "'");
}

Direction parse_dir(const std::string& s) {
    if (s == "left") return Direction::Left;
    if (s == "right") return Direction::Right;
    throw ValidationError("dir must be 'left' or 'right', got '" + s + "'");
}

BoundaryPolicy parse_policy(const std::string& s) {
    for (auto p : {BoundaryPolicy::ZeroGradient, BoundaryPolicy::Fixed, BoundaryPolicy::Zero}) {
        if (s == to_string(p)) return p;
    }
    throw ValidationError("boundary policy must be zero_gradient, fixed or zero; got '" + s + "'");
}

std::uint32_t index_field(const json& j, const char* key) {
    const auto v = count_field(j, key);
    if (v > UINT32_MAX) throw ValidationError(std::string("field '") + key + "' out of range");
    return static_cast<std::uint32_t>(v);
}

json boundary_json(const Boundary& b) {
    return json{{"policy", std::string(to_string(b.policy))}, {"value", b.value}};
}

Boundary boundary_from(const json& j) {
    Boundary b;
    b.policy = parse_policy(j.value("policy", std::string("zero_gradient")));
    b.value = j.value("value", 0.0);
    return b;
}

PrimitiveState primitive_from(const json& j, PrimitiveState fallback) {
    PrimitiveState s = fallback;
    if (j.contains("density")) s.density = number_field(j, "density");
    if (j.contains("velocity")) s.velocity = number_field(j, "velocity");
    if (j.contains("pressure")) s.pressure = number_field(j, "pressure");
    return s;
}

json primitive_json(const PrimitiveState& s) {
    return json{{"density", s.density}, {"velocity", s.velocity}, {"pressure", s.pressure}};
}

}  // namespace

SystemConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    const std::set<std::string> allowed(std::begin(kConfigKeys), std::end(kConfigKeys));
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw ValidationError("unknown config field '" + key + "'");
    }
    SystemConfig cfg;
    cfg.arch.c_total = count_field(j, "c_total_bits");
    cfg.arch.w = count_field(j, "w_bits");
    cfg.arch.f = number_field(j, "f_hz");
    cfg.arch.ops = number_field(j, "ops_per_cycle");
    cfg.arch.e_bit_ref = number_field(j, "e_bit_ref_j");
    cfg.arch.f_ref = number_field(j, "f_ref_hz");
    cfg.arch.a_bitcell = number_field(j, "a_bitcell_mm2");
    cfg.mem.b = number_field(j, "b_bits_per_s");
    cfg.mem.t_access = number_field(j, "t_access_s");
    cfg.conv.t_eo = number_field(j, "t_eo_s");
    cfg.conv.t_oe = number_field(j, "t_oe_s");
    validate(cfg);
    return cfg;
}

json config_to_json(const SystemConfig& cfg) {
    return json{
        {"c_total_bits", cfg.arch.c_total}, {"w_bits", cfg.arch.w},
        {"f_hz", cfg.arch.f},               {"ops_per_cycle", cfg.arch.ops},
        {"e_bit_ref_j", cfg.arch.e_bit_ref}, {"f_ref_hz", cfg.arch.f_ref},
        {"a_bitcell_mm2", cfg.arch.a_bitcell}, {"b_bits_per_s", cfg.mem.b},
        {"t_access_s", cfg.mem.t_access},   {"t_eo_s", cfg.conv.t_eo},
        {"t_oe_s", cfg.conv.t_oe},
    };
}

json to_json(const WorkloadProfile& wl) {
    return json{{"name", wl.name}, {"n_total", wl.n_total}, {"s_bits", wl.s}};
}

json to_json(const LatencyBreakdown& b) {
    return json{{"t_mem_s", b.t_mem}, {"t_conv_s", b.t_conv}, {"t_comp_s", b.t_comp}, {"t_total_s", b.t_total}};
}

json to_json(const PerformanceReport& r) {
    return json{
        {"workload", r.workload},
        {"breakdown", to_json(r.breakdown)},
        {"sustained_ops_per_s", r.sustained},
        {"peak_ops_per_s", r.peak},
        {"p", r.p},
        {"energy_per_bit_j", r.energy_per_bit},
        {"efficiency_ops_per_j", r.efficiency},
        {"efficiency_tops_per_w", r.efficiency_tops_per_w()},
        {"efficiency_word_ops_per_j", r.efficiency_word},
        {"efficiency_convention", r.convention == EfficiencyConvention::BitLevel ? "bit" : "word"},
        {"switching_events", r.switching_events},
        {"psram_energy_j", r.psram_energy},
        {"area_mm2", r.area},
    };
}

json to_json(const SimStats& s) {
    return json{
        {"mac_cycles", s.mac_cycles},
        {"io_cycles", s.io_cycles},
        {"comm_cycles", s.comm_cycles},
        {"fused_comm_cycles", s.fused_comm_cycles},
        {"total_cycles", s.total_cycles},
        {"total_cycles_fused", s.total_cycles_fused},
        {"total_cycles_unfused", s.total_cycles_unfused},
        {"io_transfers", s.io_transfers},
        {"io_bits", s.io_bits},
        {"macs_executed", s.macs_executed},
        {"switching_events", s.switching_events},
        {"runs", s.runs},
        {"per_cell_cycles", s.per_cell_cycles},
    };
}

json to_json(const RooflinePoint& p) {
    return json{{"workload", p.workload},
                {"ai_ops_per_byte", finite_or_string(p.ai)},
                {"attainable_ops_per_s", p.attainable},
                {"bound", std::string(to_string(p.bound))}};
}

json to_json(const RooflineReport& r) {
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"ai", s.ai}, {"attainable", s.attainable}});
    json points = json::array();
    for (const auto& p : r.points) points.push_back(to_json(p));
    auto pt = [](const RoofSample& s) { return json{{"ai", s.ai}, {"attainable", s.attainable}}; };
    return json{
        {"peak_ops_per_s", r.machine.peak},
        {"bandwidth_bytes_per_s", r.machine.bandwidth},
        {"ridge_ops_per_byte", r.ridge},
        {"memory_roof", json::array({pt(r.memory_roof_start), pt(r.ridge_knee)})},
        {"compute_roof", json::array({pt(r.ridge_knee), pt(r.compute_roof_end)})},
        {"samples", samples},
        {"points", points},
    };
}

json to_json(const SweepResult& r) {
    json reports = json::array();
    json workloads = json::array();
    for (const auto& rep : r.reports) reports.push_back(to_json(rep));
    for (const auto& wl : r.workloads) workloads.push_back(to_json(wl));
    return json{{"parameter", std::string(to_string(r.parameter))},
                {"axis", r.axis},
                {"peaks", r.peaks},
                {"workloads", workloads},
                {"reports", reports}};
}

json program_to_json(const Program& p) {
    json ins = json::array();
    for (const auto& i : p.instructions) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, LocalMAC>) {
                    ins.push_back({{"kind", "LocalMAC"}, {"op", op_name(v.op)}, {"a", v.a}, {"b", v.b}, {"c", v.c}, {"z", v.z}});
                } else if constexpr (std::is_same_v<T, Send>) {
                    ins.push_back({{"kind", "Send"}, {"dir", dir_name(v.dir)}, {"reg", v.reg}});
                } else if constexpr (std::is_same_v<T, Recv>) {
                    ins.push_back({{"kind", "Recv"}, {"dir", dir_name(v.dir)}, {"reg", v.reg}});
                } else if constexpr (std::is_same_v<T, LoadInput>) {
                    ins.push_back({{"kind", "LoadInput"}, {"stream", v.stream}, {"reg", v.reg}});
                } else if constexpr (std::is_same_v<T, StoreOutput>) {
                    ins.push_back({{"kind", "StoreOutput"}, {"reg", v.reg}, {"stream", v.stream}});
                } else {
                    ins.push_back({{"kind", "LoadConst"}, {"stream", v.stream}, {"slot", v.slot}});
                }
            },
            i);
    }
    return json{{"name", p.name},
                {"points", p.points},
                {"registers", p.registers},
                {"const_slots", p.const_slots},
                {"input_streams", p.input_streams},
                {"const_streams", p.const_streams},
                {"output_streams", p.output_streams},
                {"boundary", boundary_json(p.boundary)},
                {"fuse_exchange", p.fuse_exchange},
                {"instructions", ins}};
}

Program program_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("program must be a JSON object");
    Program p;
    p.name = j.value("name", std::string{});
    p.points = count_field(j, "points");
    p.registers = index_field(j, "registers");
    p.const_slots = index_field(j, "const_slots");
    p.input_streams = j.contains("input_streams") ? index_field(j, "input_streams") : 0;
    p.const_streams = j.contains("const_streams") ? index_field(j, "const_streams") : 0;
    p.output_streams = j.contains("output_streams") ? index_field(j, "output_streams") : 0;
    if (j.contains("boundary")) p.boundary = boundary_from(j.at("boundary"));
    p.fuse_exchange = j.value("fuse_exchange", true);
    if (!j.contains("instructions") || !j.at("instructions").is_array()) {
        throw ValidationError("program needs an 'instructions' array");
    }
    for (const auto& ij : j.at("instructions")) {
        const std::string kind = ij.value("kind", std::string{});
        if (kind == "LocalMAC") {
            p.instructions.push_back(LocalMAC{parse_op(ij.value("op", std::string{})), index_field(ij, "a"),
                                              index_field(ij, "b"), index_field(ij, "c"), index_field(ij, "z")});
        } else if (kind == "Send") {
            p.instructions.push_back(Send{parse_dir(ij.value("dir", std::string{})), index_field(ij, "reg")});
        } else if (kind == "Recv") {
            p.instructions.push_back(Recv{parse_dir(ij.value("dir", std::string{})), index_field(ij, "reg")});
        } else if (kind == "LoadInput") {
            p.instructions.push_back(LoadInput{index_field(ij, "stream"), index_field(ij, "reg")});
        } else if (kind == "StoreOutput") {
            p.instructions.push_back(StoreOutput{index_field(ij, "reg"), index_field(ij, "stream")});
        } else if (kind == "LoadConst") {
            p.instructions.push_back(LoadConst{index_field(ij, "stream"), index_field(ij, "slot")});
        } else {
            throw ValidationError("unknown instruction kind '" + kind + "'");
        }
    }
    return p;
}

SodConfig sod_config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("sst config must be a JSON object");
    SodConfig cfg;
    if (j.contains("n")) cfg.n = count_field(j, "n");
    if (j.contains("steps")) cfg.steps = count_field(j, "steps");
    if (j.contains("gamma")) cfg.gamma = number_field(j, "gamma");
    if (j.contains("left")) cfg.left = primitive_from(j.at("left"), cfg.left);
    if (j.contains("right")) cfg.right = primitive_from(j.at("right"), cfg.right);
    if (j.contains("boundary")) cfg.boundary = boundary_from(j.at("boundary"));
    if (j.contains("k")) {
        cfg.k = number_field(j, "k");
    } else {
        cfg.k = cfl_k(cfg, j.contains("cfl") ? number_field(j, "cfl") : 0.4);
    }
    validate(cfg);
    return cfg;
}

json to_json(const SodConfig& cfg) {
    return json{{"n", cfg.n},
                {"steps", cfg.steps},
                {"k", cfg.k},
                {"gamma", cfg.gamma},
                {"left", primitive_json(cfg.left)},
                {"right", primitive_json(cfg.right)},
                {"boundary", boundary_json(cfg.boundary)}};
}

SpectralConfig spectral_config_from_json(const json& j, std::uint64_t seed) {
    if (!j.is_object()) throw ValidationError("vlasov config must be a JSON object");
    const std::size_t n = count_field(j, "n_modes");
    SpectralConfig cfg = random_spectral(n, seed);
    auto load = [&](const char* re, const char* im, std::vector<Complex>& dst) {
        if (!j.contains(re) && !j.contains(im)) return;
        if (!j.contains(re) || !j.contains(im)) {
            throw ValidationError(std::string("fields '") + re + "' and '" + im + "' must appear together");
        }
        const auto r = j.at(re).get<std::vector<double>>();
        const auto i = j.at(im).get<std::vector<double>>();
        if (r.size() != n || i.size() != n) {
            throw ValidationError(std::string("fields '") + re + "'/'" + im + "' must have n_modes entries");
        }
        for (std::size_t m = 0; m < n; ++m) dst[m] = {r[m], i[m]};
    };
    load("f_R", "f_I", cfg.f);
    load("k_R", "k_I", cfg.k);
    load("z_R", "z_I", cfg.z);
    validate(cfg);
    return cfg;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string sweep_csv(const SweepResult& r) {
    std::ostringstream os;
    os << to_string(r.parameter)
       << ",t_mem,t_conv,t_comp,t_total,sustained,peak,energy_per_bit_j,efficiency_tops_per_w,p\n";
    for (std::size_t i = 0; i < r.axis.size(); ++i) {
        const auto& rep = r.reports[i];
        os << format_number(r.axis[i]) << ',' << format_number(rep.breakdown.t_mem) << ','
           << format_number(rep.breakdown.t_conv) << ',' << format_number(rep.breakdown.t_comp) << ','
           << format_number(rep.breakdown.t_total) << ',' << format_number(rep.sustained) << ','
           << format_number(rep.peak) << ',' << format_number(rep.energy_per_bit) << ','
           << format_number(rep.efficiency_tops_per_w()) << ',' << rep.p << '\n';
    }
    return os.str();
}

std::string roofline_csv(const RooflineReport& r) {
    std::ostringstream os;
    os << "peak,bandwidth_bytes_per_s,ridge\n"
       << format_number(r.machine.peak) << ',' << format_number(r.machine.bandwidth) << ','
       << format_number(r.ridge) << "\n\n";
    os << "workload,ai,attainable,bound\n";
    for (const auto& p : r.points) {
        os << p.workload << ',' << format_number(p.ai) << ',' << format_number(p.attainable) << ','
           << to_string(p.bound) << '\n';
    }
    os << "\nroof_ai,roof_attainable\n";
    for (const auto& s : r.samples) os << format_number(s.ai) << ',' << format_number(s.attainable) << '\n';
    return os.str();
}

std::string report_csv(const PerformanceReport& r) {
    std::ostringstream os;
    os << "workload,t_mem,t_conv,t_comp,t_total,sustained,peak,p,energy_per_bit_j,efficiency_tops_per_w,"
          "psram_energy_j,area_mm2\n";
    os << r.workload << ',' << format_number(r.breakdown.t_mem) << ',' << format_number(r.breakdown.t_conv) << ','
       << format_number(r.breakdown.t_comp) << ',' << format_number(r.breakdown.t_total) << ','
       << format_number(r.sustained) << ',' << format_number(r.peak) << ',' << r.p << ','
       << format_number(r.energy_per_bit) << ',' << format_number(r.efficiency_tops_per_w()) << ','
       << format_number(r.psram_energy) << ',' << format_number(r.area) << '\n';
    return os.str();
}

}  // namespace psram
