// mesh.hpp: synchronous 1D-mesh compute-cell simulator
// =============================================================================
//
// N virtual cells run one SPMD instruction list.  Each cell owns a register
// file and a set of constant slots; constants are the `a` operand of
// LocalMAC and are either preloaded (free) or reloaded mid-stream with
// LoadConst (costs a cycle and external traffic).
//
// Streams carry data to and from external memory.  A stream is laid out
// read-major: the t-th read of cell i is element [t * N + i].  Output streams
// use the same layout.
//
// Exchanges are synchronous.  Send snapshots every cell's register; the
// matching Recv on the neighbor consumes the snapshot.  Edge cells have no
// neighbor on one side and take their value from the boundary policy.
//
// P physical cells emulate the N virtual cells in contiguous blocks.  P
// changes cycle counts only, never values.
//
// =============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "psram/perf_model.hpp"

namespace psram {

enum class MacOp { Add, Sub };
enum class Direction { Left, Right };

constexpr Direction opposite(Direction d) {
    return d == Direction::Left ? Direction::Right : Direction::Left;
}

// z = c + a*b or z = c - a*b.  `a` indexes a constant slot; b, c, z index registers.
struct LocalMAC {
    MacOp op = MacOp::Add;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t c = 0;
    std::uint32_t z = 0;
};

// Send `reg` to the neighbor in `dir`.
struct Send {
    Direction dir = Direction::Left;
    std::uint32_t reg = 0;
};

// Receive into `reg` from the neighbor in `dir`.  Matches a Send toward
// opposite(dir).
struct Recv {
    Direction dir = Direction::Right;
    std::uint32_t reg = 0;
};

struct LoadInput {
    std::uint32_t stream = 0;
    std::uint32_t reg = 0;
};

struct StoreOutput {
    std::uint32_t reg = 0;
    std::uint32_t stream = 0;
};

struct LoadConst {
    std::uint32_t stream = 0;
    std::uint32_t slot = 0;
};

using Instruction = std::variant<LocalMAC, Send, Recv, LoadInput, StoreOutput, LoadConst>;

enum class BoundaryPolicy {
    ZeroGradient,  // missing neighbor returns the receiving cell's own sent value
    Fixed,         // missing neighbor returns Boundary::value
    Zero,          // missing neighbor returns 0
};

struct Boundary {
    BoundaryPolicy policy = BoundaryPolicy::ZeroGradient;
    double value = 0;
};

struct Program {
    std::string name;
    std::size_t points = 1;            // N, virtual cells
    std::uint32_t registers = 0;
    std::uint32_t const_slots = 0;
    std::uint32_t input_streams = 0;
    std::uint32_t const_streams = 0;
    std::uint32_t output_streams = 0;
    Boundary boundary;
    bool fuse_exchange = true;         // an exchange adjacent to a MAC shares its cycle
    std::vector<Instruction> instructions;
};

struct Quantization {
    enum class Mode { Real, Fixed } mode = Mode::Real;
    unsigned frac_bits = 0;

    static Quantization real() { return {}; }
    static Quantization fixed(unsigned frac) { return {Mode::Fixed, frac}; }
};

struct MeshConfig {
    std::size_t p = 1;                 // physical cells
    unsigned w = 8;                    // bits per stored value
    Quantization quantization;
};

struct SimStats {
    std::uint64_t mac_cycles = 0;
    std::uint64_t io_cycles = 0;
    std::uint64_t comm_cycles = 0;          // one per Send/Recv pair
    std::uint64_t fused_comm_cycles = 0;    // pairs not hidden behind an adjacent MAC
    std::uint64_t total_cycles = 0;         // honors Program::fuse_exchange
    std::uint64_t total_cycles_unfused = 0;
    std::uint64_t total_cycles_fused = 0;
    std::uint64_t io_transfers = 0;         // LoadInput + StoreOutput + LoadConst executions
    std::uint64_t io_bits = 0;              // w * io_transfers
    std::uint64_t macs_executed = 0;
    std::uint64_t switching_events = 0;     // w * macs_executed
    std::uint64_t runs = 0;
    std::vector<std::uint64_t> per_cell_cycles;  // busy cycles per physical cell

    SimStats& operator+=(const SimStats& other);
};

// Input data for one execution.
struct StreamSet {
    std::vector<std::vector<double>> inputs;    // one per input stream
    std::vector<std::vector<double>> consts;    // one per const stream
    std::vector<std::vector<double>> preload;   // initial const-slot values, N each; may be short
};

struct SimResult {
    std::vector<std::vector<double>> outputs;   // one per output stream
    SimStats stats;
};

// Half-open range of virtual cells owned by one physical cell.
struct BlockRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
    bool operator==(const BlockRange&) const = default;
};

// p contiguous ranges covering [0, n); the first n % p blocks get one extra
// point; when p > n the trailing p - n blocks are empty.
std::vector<BlockRange> block_distribution(std::size_t n, std::size_t p);

void validate(const MeshConfig& mesh);

// Static checks: index ranges and Send/Recv pairing.  Throws ProtocolError
// (with step index) or ValidationError.
void validate(const Program& program);

// Snap to the signed w-bit fixed-point grid with frac_bits fractional bits,
// round-to-nearest-even, saturating.  Identity in Real mode.
double quantize(double value, const MeshConfig& mesh);

// One LocalMAC under the mesh's arithmetic.  Fixed mode accumulates exactly in
// a (2w + 8)-bit accumulator, then rounds once to w bits.
double mac(MacOp op, double a, double b, double c, const MeshConfig& mesh);

SimResult execute(const Program& program, const MeshConfig& mesh, const StreamSet& streams);

// n_total = 2 * macs_executed, s = io_bits.
WorkloadProfile profile_to_workload(const SimStats& stats, std::string name = {});

// Number of LoadInput reads of each input stream (per cell).
std::vector<std::size_t> input_reads(const Program& program);
std::vector<std::size_t> const_reads(const Program& program);
std::uint64_t mac_count(const Program& program);

std::string_view to_string(BoundaryPolicy p);

}  // namespace psram
