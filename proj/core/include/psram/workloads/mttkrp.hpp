// mttkrp.hpp: mode-0 MTTKRP of a 3-mode sparse tensor
//
//   A(h0, r) = sum over nonzeros X(h0, h1, h2) * B(h1, r) * C(h2, r)
//
// Mesh mapping: R virtual cells, cell r owns column r.  Nonzeros are
// processed in (h0, h1, h2) order.  For each nonzero a cell forms
// B(h1,r) * C(h2,r) and accumulates X times that into a register holding
// A(h0, r); the row is read at the start of each h0 run and written back at
// its end.
#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "psram/mesh.hpp"
#include "psram/perf_model.hpp"

namespace psram {

struct Nonzero {
    std::array<std::uint32_t, 3> idx{};  // 0-based
    double value = 0;
};

struct SparseTensor {
    std::array<std::size_t, 3> dims{};
    std::vector<Nonzero> nonzeros;       // sorted, unique (see normalize)

    std::size_t nnz() const { return nonzeros.size(); }
    // Distinct h0 coordinates.
    std::size_t mode0_rows() const;
};

// Sort by (h0, h1, h2) and sum duplicate coordinates.  Throws ValidationError
// for out-of-range coordinates.
void normalize(SparseTensor& x);

class FactorMatrix {
public:
    FactorMatrix() = default;
    FactorMatrix(std::size_t rows, std::size_t rank, double fill = 0.0);

    std::size_t rows() const { return rows_; }
    std::size_t rank() const { return rank_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * rank_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * rank_ + c]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t rank_ = 0;
    std::vector<double> data_;
};

// Seeded generators; values uniform in [-1, 1).
SparseTensor random_tensor(std::array<std::size_t, 3> dims, double density, std::uint64_t seed);
FactorMatrix random_factor(std::size_t rows, std::size_t rank, std::uint64_t seed);

FactorMatrix mttkrp_oracle(const SparseTensor& x, const FactorMatrix& b, const FactorMatrix& c);

struct MttkrpJob {
    Program program;
    StreamSet streams;
    std::vector<std::uint32_t> run_rows;  // h0 of each accumulation run, in output order
    std::size_t rows = 0;                 // I0
    std::size_t rank = 0;
};

// `a_init` (I0 x R) seeds the accumulators; zero when null.
MttkrpJob mttkrp_build_program(const SparseTensor& x, const FactorMatrix& b, const FactorMatrix& c,
                               std::size_t rank, const FactorMatrix* a_init = nullptr);

// Scatter simulator outputs back into an I0 x R matrix.  Rows untouched by
// any nonzero keep their `a_init` value (zero by default).
FactorMatrix mttkrp_collect(const MttkrpJob& job, const SimResult& result,
                            const FactorMatrix* a_init = nullptr);

// n_total = 4 R nnz; s = w R (3 nnz + 2 rows).
WorkloadProfile mttkrp_profile(std::size_t nnz, std::size_t rows, std::size_t rank, const ArchConfig& arch);
WorkloadProfile mttkrp_profile(const SparseTensor& x, std::size_t rank, const ArchConfig& arch);

// Coordinate text: "h0 h1 h2 value" per line, 1-based, '#' comments, optional
// "# dims: I0 I1 I2" header.  Throws ParseError with the line number.
SparseTensor parse_tns(std::string_view text);
SparseTensor load_tns(const std::string& path);

}  // namespace psram
