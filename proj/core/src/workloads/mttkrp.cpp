#include "psram/workloads/mttkrp.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "psram/error.hpp"
#include "psram/random.hpp"

namespace psram {

namespace {

constexpr std::uint32_t kSlotB = 0;
constexpr std::uint32_t kSlotX = 1;
constexpr std::uint32_t kRegZero = 0;
constexpr std::uint32_t kRegC = 1;
constexpr std::uint32_t kRegF = 2;
constexpr std::uint32_t kRegAcc = 3;

}  // namespace

std::size_t SparseTensor::mode0_rows() const {
    std::size_t rows = 0;
    for (std::size_t k = 0; k < nonzeros.size(); ++k) {
        if (k == 0 || nonzeros[k].idx[0] != nonzeros[k - 1].idx[0]) ++rows;
    }
    return rows;
}

void normalize(SparseTensor& x) {
    for (const auto& nz : x.nonzeros) {
        for (std::size_t m = 0; m < 3; ++m) {
            if (nz.idx[m] >= x.dims[m]) {
                throw ValidationError("nonzero coordinate " + std::to_string(nz.idx[m]) + " exceeds mode-" +
                                      std::to_string(m) + " dimension " + std::to_string(x.dims[m]));
            }
        }
    }
    std::stable_sort(x.nonzeros.begin(), x.nonzeros.end(),
                     [](const Nonzero& a, const Nonzero& b) { return a.idx < b.idx; });
    std::vector<Nonzero> merged;
    merged.reserve(x.nonzeros.size());
    for (const auto& nz : x.nonzeros) {
        if (!merged.empty() && merged.back().idx == nz.idx) {
            merged.back().value += nz.value;
        } else {
            merged.push_back(nz);
        }
    }
    x.nonzeros = std::move(merged);
}

FactorMatrix::FactorMatrix(std::size_t rows, std::size_t rank, double fill)
    : rows_(rows), rank_(rank), data_(rows * rank, fill) {}

SparseTensor random_tensor(std::array<std::size_t, 3> dims, double density, std::uint64_t seed) {
    if (!(density >= 0 && density <= 1)) throw ValidationError("density must be in [0, 1]");
    Rng rng(seed);
    SparseTensor x;
    x.dims = dims;
    for (std::uint32_t i = 0; i < dims[0]; ++i) {
        for (std::uint32_t j = 0; j < dims[1]; ++j) {
            for (std::uint32_t k = 0; k < dims[2]; ++k) {
                const bool keep = rng.uniform() < density;
                const double v = rng.uniform(-1.0, 1.0);
                if (keep) x.nonzeros.push_back({{i, j, k}, v});
            }
        }
    }
    return x;
}

FactorMatrix random_factor(std::size_t rows, std::size_t rank, std::uint64_t seed) {
    Rng rng(seed);
    FactorMatrix m(rows, rank);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < rank; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
    }
    return m;
}

static void check_factors(const SparseTensor& x, const FactorMatrix& b, const FactorMatrix& c, std::size_t rank) {
    if (rank < 1) throw ValidationError("rank must be >= 1");
    if (b.rows() != x.dims[1]) throw ValidationError("B must have I1 = " + std::to_string(x.dims[1]) + " rows");
    if (c.rows() != x.dims[2]) throw ValidationError("C must have I2 = " + std::to_string(x.dims[2]) + " rows");
    if (b.rank() < rank || c.rank() < rank) throw ValidationError("factor rank smaller than requested rank");
}

FactorMatrix mttkrp_oracle(const SparseTensor& x, const FactorMatrix& b, const FactorMatrix& c) {
    if (b.rank() != c.rank()) throw ValidationError("B and C must have the same rank");
    check_factors(x, b, c, b.rank());
    const std::size_t rank = b.rank();
    FactorMatrix a(x.dims[0], rank);
    SparseTensor sorted = x;
    normalize(sorted);
    for (const auto& nz : sorted.nonzeros) {
        for (std::size_t r = 0; r < rank; ++r) {
            const double hadamard = b(nz.idx[1], r) * c(nz.idx[2], r);
            a(nz.idx[0], r) = a(nz.idx[0], r) + nz.value * hadamard;
        }
    }
    return a;
}

MttkrpJob mttkrp_build_program(const SparseTensor& x_in, const FactorMatrix& b, const FactorMatrix& c,
                               std::size_t rank, const FactorMatrix* a_init) {
    check_factors(x_in, b, c, rank);
    if (a_init && (a_init->rows() != x_in.dims[0] || a_init->rank() < rank)) {
        throw ValidationError("initial A must be I0 x R");
    }
    SparseTensor x = x_in;
    normalize(x);

    MttkrpJob job;
    job.rows = x.dims[0];
    job.rank = rank;
    Program& p = job.program;
    p.name = "mttkrp-mode0";
    p.points = rank;
    p.registers = 4;
    p.const_slots = 2;
    p.input_streams = 2;   // 0: A rows in, 1: C values
    p.const_streams = 2;   // 0: B values, 1: X values
    p.output_streams = 1;  // A rows out
    p.boundary.policy = BoundaryPolicy::Zero;

    auto& s = job.streams;
    s.inputs.assign(2, {});
    s.consts.assign(2, {});
    auto push_row = [&](std::vector<double>& dst, auto&& value_of) {
        for (std::size_t r = 0; r < rank; ++r) dst.push_back(value_of(r));
    };

    auto& ins = p.instructions;
    for (std::size_t k = 0; k < x.nonzeros.size(); ++k) {
        const Nonzero& nz = x.nonzeros[k];
        const bool run_start = k == 0 || x.nonzeros[k - 1].idx[0] != nz.idx[0];
        const bool run_end = k + 1 == x.nonzeros.size() || x.nonzeros[k + 1].idx[0] != nz.idx[0];
        if (run_start) {
            job.run_rows.push_back(nz.idx[0]);
            ins.push_back(LoadInput{0, kRegAcc});
            push_row(s.inputs[0], [&](std::size_t r) { return a_init ? (*a_init)(nz.idx[0], r) : 0.0; });
        }
        ins.push_back(LoadConst{0, kSlotB});
        push_row(s.consts[0], [&](std::size_t r) { return b(nz.idx[1], r); });
        ins.push_back(LoadInput{1, kRegC});
        push_row(s.inputs[1], [&](std::size_t r) { return c(nz.idx[2], r); });
        ins.push_back(LocalMAC{MacOp::Add, kSlotB, kRegC, kRegZero, kRegF});
        ins.push_back(LoadConst{1, kSlotX});
        push_row(s.consts[1], [&](std::size_t) { return nz.value; });
        ins.push_back(LocalMAC{MacOp::Add, kSlotX, kRegF, kRegAcc, kRegAcc});
        if (run_end) ins.push_back(StoreOutput{kRegAcc, 0});
    }
    return job;
}

FactorMatrix mttkrp_collect(const MttkrpJob& job, const SimResult& result, const FactorMatrix* a_init) {
    FactorMatrix a(job.rows, job.rank);
    if (a_init) {
        for (std::size_t i = 0; i < job.rows; ++i) {
            for (std::size_t r = 0; r < job.rank; ++r) a(i, r) = (*a_init)(i, r);
        }
    }
    const auto& out = result.outputs.at(0);
    if (out.size() != job.run_rows.size() * job.rank) throw ValidationError("MTTKRP output size mismatch");
    for (std::size_t run = 0; run < job.run_rows.size(); ++run) {
        for (std::size_t r = 0; r < job.rank; ++r) a(job.run_rows[run], r) = out[run * job.rank + r];
    }
    return a;
}

WorkloadProfile mttkrp_profile(std::size_t nnz, std::size_t rows, std::size_t rank, const ArchConfig& arch) {
    WorkloadProfile wl;
    wl.name = "mttkrp";
    const double r = static_cast<double>(rank);
    wl.n_total = 4.0 * r * static_cast<double>(nnz);
    wl.s = static_cast<double>(arch.w) * r * (3.0 * static_cast<double>(nnz) + 2.0 * static_cast<double>(rows));
    return wl;
}

WorkloadProfile mttkrp_profile(const SparseTensor& x, std::size_t rank, const ArchConfig& arch) {
    SparseTensor sorted = x;
    normalize(sorted);
    return mttkrp_profile(sorted.nnz(), sorted.mode0_rows(), rank, arch);
}

// ---------------------------------------------------------------------------
// .tns text
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string_view> split(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

long long parse_int(std::string_view tok, std::size_t line) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("expected integer coordinate, got '" + std::string(tok) + "'", line);
    }
    return v;
}

double parse_real(std::string_view tok, std::size_t line) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("expected real value, got '" + std::string(tok) + "'", line);
    }
    return v;
}

}  // namespace

SparseTensor parse_tns(std::string_view text) {
    SparseTensor x;
    bool declared = false;
    std::array<std::size_t, 3> max_coord{0, 0, 0};
    std::size_t line_no = 0;

    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string_view body = trim(line.substr(1));
            if (body.rfind("dims:", 0) == 0) {
                const auto toks = split(trim(body.substr(5)));
                if (toks.size() != 3) throw ParseError("dims header needs three sizes", line_no);
                for (std::size_t m = 0; m < 3; ++m) {
                    const long long d = parse_int(toks[m], line_no);
                    if (d < 1) throw ParseError("dimension must be >= 1", line_no);
                    x.dims[m] = static_cast<std::size_t>(d);
                }
                declared = true;
            }
            continue;
        }

        const auto toks = split(line);
        if (toks.size() != 4) {
            throw ParseError("expected 'h0 h1 h2 value', got " + std::to_string(toks.size()) + " fields", line_no);
        }
        Nonzero nz;
        for (std::size_t m = 0; m < 3; ++m) {
            const long long h = parse_int(toks[m], line_no);
            if (h < 1) throw ParseError("coordinate must be >= 1", line_no);
            if (h > static_cast<long long>(UINT32_MAX)) throw ParseError("coordinate too large", line_no);
            if (declared && static_cast<std::size_t>(h) > x.dims[m]) {
                throw ParseError("coordinate exceeds declared dimension", line_no);
            }
            nz.idx[m] = static_cast<std::uint32_t>(h - 1);
            max_coord[m] = std::max(max_coord[m], static_cast<std::size_t>(h));
        }
        nz.value = parse_real(toks[3], line_no);
        x.nonzeros.push_back(nz);
    }
    if (!declared) x.dims = max_coord;
    normalize(x);
    return x;
}

SparseTensor load_tns(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open tensor file '" + path + "': file not found or unreadable");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tns(buf.str());
}

}  // namespace psram
