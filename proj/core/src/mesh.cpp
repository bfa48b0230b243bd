#include "psram/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "psram/error.hpp"

namespace psram {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t dir_index(Direction d) { return d == Direction::Left ? 0 : 1; }

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Exchanges whose comm cycle is hidden behind an adjacent LocalMAC.  An
// exchange is a Send immediately followed by its Recv; a MAC hides at most
// one exchange.
std::uint64_t hidden_exchanges(const std::vector<Instruction>& ins) {
    std::vector<bool> mac_used(ins.size(), false);
    std::uint64_t hidden = 0;
    auto is_mac = [&](std::size_t k) { return std::holds_alternative<LocalMAC>(ins[k]); };
    for (std::size_t k = 0; k + 1 < ins.size(); ++k) {
        if (!std::holds_alternative<Send>(ins[k]) || !std::holds_alternative<Recv>(ins[k + 1])) continue;
        if (k > 0 && is_mac(k - 1) && !mac_used[k - 1]) {
            mac_used[k - 1] = true;
            ++hidden;
        } else if (k + 2 < ins.size() && is_mac(k + 2) && !mac_used[k + 2]) {
            mac_used[k + 2] = true;
            ++hidden;
        }
    }
    return hidden;
}

// Exact fixed-point helpers.  Values on the grid are integer multiples of
// 2^-frac and convert to int64 without loss.
std::int64_t to_fixed(double v, unsigned frac) {
    return static_cast<std::int64_t>(std::llrint(std::ldexp(v, static_cast<int>(frac))));
}

std::int64_t saturate(std::int64_t v, unsigned bits) {
    const std::int64_t hi = (std::int64_t{1} << (bits - 1)) - 1;
    const std::int64_t lo = -(std::int64_t{1} << (bits - 1));
    return std::clamp(v, lo, hi);
}

// Divide by 2^shift rounding to nearest, ties to even.
std::int64_t shift_rne(std::int64_t v, unsigned shift) {
    if (shift == 0) return v;
    const std::int64_t unit = std::int64_t{1} << shift;
    std::int64_t q = v >> shift;  // floor for two's complement
    const std::int64_t r = v - q * unit;
    const std::int64_t half = unit >> 1;
    if (r > half || (r == half && (q & 1) != 0)) ++q;
    return q;
}

}  // namespace

SimStats& SimStats::operator+=(const SimStats& o) {
    mac_cycles += o.mac_cycles;
    io_cycles += o.io_cycles;
    comm_cycles += o.comm_cycles;
    fused_comm_cycles += o.fused_comm_cycles;
    total_cycles += o.total_cycles;
    total_cycles_unfused += o.total_cycles_unfused;
    total_cycles_fused += o.total_cycles_fused;
    io_transfers += o.io_transfers;
    io_bits += o.io_bits;
    macs_executed += o.macs_executed;
    switching_events += o.switching_events;
    runs += o.runs;
    if (per_cell_cycles.size() < o.per_cell_cycles.size()) per_cell_cycles.resize(o.per_cell_cycles.size(), 0);
    for (std::size_t i = 0; i < o.per_cell_cycles.size(); ++i) per_cell_cycles[i] += o.per_cell_cycles[i];
    return *this;
}

std::vector<BlockRange> block_distribution(std::size_t n, std::size_t p) {
    if (p == 0) throw ValidationError("block_distribution: p must be >= 1");
    std::vector<BlockRange> blocks;
    blocks.reserve(p);
    const std::size_t base = n / p;
    const std::size_t extra = n % p;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t len = base + (i < extra ? 1 : 0);
        blocks.push_back({begin, begin + len});
        begin += len;
    }
    return blocks;
}

void validate(const MeshConfig& mesh) {
    if (mesh.p == 0) throw ValidationError("mesh p must be >= 1");
    if (mesh.w == 0) throw ValidationError("mesh w must be >= 1");
    if (mesh.quantization.mode == Quantization::Mode::Fixed) {
        if (mesh.w < 2 || mesh.w > 24) throw ValidationError("fixed-point mode requires 2 <= w <= 24");
        if (mesh.quantization.frac_bits >= mesh.w) throw ValidationError("frac_bits must be < w");
    }
}

void validate(const Program& prog) {
    if (prog.points == 0) throw ValidationError("program points must be >= 1");
    std::array<bool, 2> pending{false, false};
    auto reg_ok = [&](std::uint32_t r, std::size_t step) {
        if (r >= prog.registers) throw ProtocolError("register index " + std::to_string(r) + " out of range", step, 0);
    };
    for (std::size_t step = 0; step < prog.instructions.size(); ++step) {
        std::visit(Overloaded{
                       [&](const LocalMAC& m) {
                           if (m.a >= prog.const_slots) {
                               throw ProtocolError("const slot " + std::to_string(m.a) + " out of range", step, 0);
                           }
                           reg_ok(m.b, step);
                           reg_ok(m.c, step);
                           reg_ok(m.z, step);
                       },
                       [&](const Send& s) {
                           reg_ok(s.reg, step);
                           if (pending[dir_index(s.dir)]) {
                               throw ProtocolError("Send while a previous Send in the same direction is unmatched", step, 0);
                           }
                           pending[dir_index(s.dir)] = true;
                       },
                       [&](const Recv& r) {
                           reg_ok(r.reg, step);
                           auto& slot = pending[dir_index(opposite(r.dir))];
                           if (!slot) throw ProtocolError("Recv with no matching Send", step, 0);
                           slot = false;
                       },
                       [&](const LoadInput& l) {
                           reg_ok(l.reg, step);
                           if (l.stream >= prog.input_streams) {
                               throw ProtocolError("input stream " + std::to_string(l.stream) + " out of range", step, 0);
                           }
                       },
                       [&](const StoreOutput& s) {
                           reg_ok(s.reg, step);
                           if (s.stream >= prog.output_streams) {
                               throw ProtocolError("output stream " + std::to_string(s.stream) + " out of range", step, 0);
                           }
                       },
                       [&](const LoadConst& l) {
                           if (l.slot >= prog.const_slots) {
                               throw ProtocolError("const slot " + std::to_string(l.slot) + " out of range", step, 0);
                           }
                           if (l.stream >= prog.const_streams) {
                               throw ProtocolError("const stream " + std::to_string(l.stream) + " out of range", step, 0);
                           }
                       },
                   },
                   prog.instructions[step]);
    }
    if (pending[0] || pending[1]) {
        throw ProtocolError("Send without matching Recv at end of program", prog.instructions.size(), 0);
    }
}

double quantize(double value, const MeshConfig& mesh) {
    if (mesh.quantization.mode == Quantization::Mode::Real) return value;
    if (std::isnan(value)) throw ValidationError("cannot quantize NaN");
    const int frac = static_cast<int>(mesh.quantization.frac_bits);
    const double hi = std::ldexp((std::ldexp(1.0, static_cast<int>(mesh.w) - 1) - 1.0), -frac);
    const double lo = -std::ldexp(1.0, static_cast<int>(mesh.w) - 1 - frac);
    if (value >= hi) return hi;
    if (value <= lo) return lo;
    // nearbyint honors the default round-to-nearest-even mode.
    return std::ldexp(std::nearbyint(std::ldexp(value, frac)), -frac);
}

double mac(MacOp op, double a, double b, double c, const MeshConfig& mesh) {
    if (mesh.quantization.mode == Quantization::Mode::Real) {
        return op == MacOp::Add ? c + a * b : c - a * b;
    }
    const unsigned frac = mesh.quantization.frac_bits;
    const std::int64_t prod = to_fixed(a, frac) * to_fixed(b, frac);       // 2*frac fractional bits
    const std::int64_t cc = to_fixed(c, frac) * (std::int64_t{1} << frac);
    std::int64_t acc = op == MacOp::Add ? cc + prod : cc - prod;
    acc = saturate(acc, 2 * mesh.w + 8);
    const std::int64_t z = saturate(shift_rne(acc, frac), mesh.w);
    return std::ldexp(static_cast<double>(z), -static_cast<int>(frac));
}

std::vector<std::size_t> input_reads(const Program& program) {
    std::vector<std::size_t> reads(program.input_streams, 0);
    for (const auto& ins : program.instructions) {
        if (const auto* l = std::get_if<LoadInput>(&ins); l && l->stream < reads.size()) ++reads[l->stream];
    }
    return reads;
}

std::vector<std::size_t> const_reads(const Program& program) {
    std::vector<std::size_t> reads(program.const_streams, 0);
    for (const auto& ins : program.instructions) {
        if (const auto* l = std::get_if<LoadConst>(&ins); l && l->stream < reads.size()) ++reads[l->stream];
    }
    return reads;
}

std::uint64_t mac_count(const Program& program) {
    return static_cast<std::uint64_t>(std::count_if(program.instructions.begin(), program.instructions.end(),
                                                    [](const Instruction& i) { return std::holds_alternative<LocalMAC>(i); }));
}

SimResult execute(const Program& prog, const MeshConfig& mesh, const StreamSet& streams) {
    validate(mesh);
    validate(prog);

    const std::size_t n = prog.points;
    const auto in_reads = input_reads(prog);
    const auto c_reads = const_reads(prog);
    if (streams.inputs.size() != prog.input_streams) {
        throw ValidationError("expected " + std::to_string(prog.input_streams) + " input streams, got " +
                              std::to_string(streams.inputs.size()));
    }
    for (std::size_t s = 0; s < in_reads.size(); ++s) {
        if (streams.inputs[s].size() != in_reads[s] * n) {
            throw ValidationError("input stream " + std::to_string(s) + " has " +
                                  std::to_string(streams.inputs[s].size()) + " values, expected " +
                                  std::to_string(in_reads[s] * n));
        }
    }
    if (streams.consts.size() != prog.const_streams) {
        throw ValidationError("expected " + std::to_string(prog.const_streams) + " const streams, got " +
                              std::to_string(streams.consts.size()));
    }
    for (std::size_t s = 0; s < c_reads.size(); ++s) {
        if (streams.consts[s].size() != c_reads[s] * n) {
            throw ValidationError("const stream " + std::to_string(s) + " has " +
                                  std::to_string(streams.consts[s].size()) + " values, expected " +
                                  std::to_string(c_reads[s] * n));
        }
    }
    if (streams.preload.size() > prog.const_slots) throw ValidationError("more preload arrays than const slots");

    const std::size_t nreg = prog.registers;
    const std::size_t nslot = prog.const_slots;
    std::vector<double> regs(n * nreg, 0.0);
    std::vector<double> slots(n * nslot, 0.0);
    for (std::size_t s = 0; s < streams.preload.size(); ++s) {
        if (streams.preload[s].size() != n) {
            throw ValidationError("preload for slot " + std::to_string(s) + " must have " + std::to_string(n) + " values");
        }
        for (std::size_t i = 0; i < n; ++i) slots[i * nslot + s] = quantize(streams.preload[s][i], mesh);
    }

    std::vector<std::size_t> in_cursor(prog.input_streams, 0);
    std::vector<std::size_t> c_cursor(prog.const_streams, 0);
    SimResult res;
    res.outputs.assign(prog.output_streams, {});
    std::array<std::vector<double>, 2> channel;

    std::uint64_t mac_instr = 0;
    std::uint64_t io_instr = 0;
    std::uint64_t exchanges = 0;

    for (std::size_t step = 0; step < prog.instructions.size(); ++step) {
        std::visit(Overloaded{
                       [&](const LocalMAC& m) {
                           for (std::size_t i = 0; i < n; ++i) {
                               double* r = &regs[i * nreg];
                               r[m.z] = mac(m.op, slots[i * nslot + m.a], r[m.b], r[m.c], mesh);
                           }
                           ++mac_instr;
                       },
                       [&](const Send& s) {
                           auto& ch = channel[dir_index(s.dir)];
                           ch.resize(n);
                           for (std::size_t i = 0; i < n; ++i) ch[i] = regs[i * nreg + s.reg];
                       },
                       [&](const Recv& r) {
                           auto& ch = channel[dir_index(opposite(r.dir))];
                           for (std::size_t i = 0; i < n; ++i) {
                               std::optional<std::size_t> src;
                               if (r.dir == Direction::Right && i + 1 < n) src = i + 1;
                               if (r.dir == Direction::Left && i > 0) src = i - 1;
                               double v = 0;
                               if (src) {
                                   v = ch[*src];
                               } else {
                                   switch (prog.boundary.policy) {
                                       case BoundaryPolicy::ZeroGradient: v = ch[i]; break;
                                       case BoundaryPolicy::Fixed: v = quantize(prog.boundary.value, mesh); break;
                                       case BoundaryPolicy::Zero: v = 0; break;
                                   }
                               }
                               regs[i * nreg + r.reg] = v;
                           }
                           ch.clear();
                           ++exchanges;
                       },
                       [&](const LoadInput& l) {
                           const auto& src = streams.inputs[l.stream];
                           const std::size_t base = in_cursor[l.stream]++ * n;
                           for (std::size_t i = 0; i < n; ++i) regs[i * nreg + l.reg] = quantize(src[base + i], mesh);
                           ++io_instr;
                       },
                       [&](const StoreOutput& s) {
                           auto& dst = res.outputs[s.stream];
                           for (std::size_t i = 0; i < n; ++i) dst.push_back(regs[i * nreg + s.reg]);
                           ++io_instr;
                       },
                       [&](const LoadConst& l) {
                           const auto& src = streams.consts[l.stream];
                           const std::size_t base = c_cursor[l.stream]++ * n;
                           for (std::size_t i = 0; i < n; ++i) slots[i * nslot + l.slot] = quantize(src[base + i], mesh);
                           ++io_instr;
                       },
                   },
                   prog.instructions[step]);
    }

    SimStats& st = res.stats;
    const auto blocks = block_distribution(n, mesh.p);
    const std::uint64_t widest = ceil_div(n, mesh.p);
    const std::uint64_t hidden = hidden_exchanges(prog.instructions);

    st.mac_cycles = widest * mac_instr;
    st.io_cycles = widest * io_instr;
    st.comm_cycles = exchanges;
    st.fused_comm_cycles = exchanges - hidden;
    st.total_cycles_unfused = st.mac_cycles + st.io_cycles + st.comm_cycles;
    st.total_cycles_fused = st.mac_cycles + st.io_cycles + st.fused_comm_cycles;
    st.total_cycles = prog.fuse_exchange ? st.total_cycles_fused : st.total_cycles_unfused;
    st.macs_executed = mac_instr * n;
    st.io_transfers = io_instr * n;
    st.io_bits = st.io_transfers * mesh.w;
    st.switching_events = st.macs_executed * mesh.w;
    st.runs = 1;
    const std::uint64_t comm = prog.fuse_exchange ? st.fused_comm_cycles : st.comm_cycles;
    st.per_cell_cycles.reserve(blocks.size());
    for (const auto& b : blocks) {
        st.per_cell_cycles.push_back(b.size() == 0 ? 0 : b.size() * (mac_instr + io_instr) + comm);
    }
    return res;
}

WorkloadProfile profile_to_workload(const SimStats& stats, std::string name) {
    WorkloadProfile wl;
    wl.name = std::move(name);
    wl.n_total = 2.0 * static_cast<double>(stats.macs_executed);
    wl.s = static_cast<double>(stats.io_bits);
    return wl;
}

std::string_view to_string(BoundaryPolicy p) {
    switch (p) {
        case BoundaryPolicy::ZeroGradient: return "zero_gradient";
        case BoundaryPolicy::Fixed: return "fixed";
        case BoundaryPolicy::Zero: return "zero";
    }
    return "?";
}

}  // namespace psram
