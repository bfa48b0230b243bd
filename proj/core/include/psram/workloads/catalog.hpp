// catalog.hpp: named workload sources used by sweeps, roofline and the CLI
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psram/roofline.hpp"
#include "psram/workloads/mttkrp.hpp"

namespace psram {

struct WorkloadOptions {
    std::size_t sst_n = 100;
    std::size_t sst_steps = 50;
    std::size_t mttkrp_rank = 16;
    std::array<std::size_t, 3> mttkrp_dims{64, 64, 64};
    double mttkrp_density = 0.01;
    std::uint64_t seed = 1;
    const SparseTensor* tensor = nullptr;  // overrides the random tensor
    std::size_t vlasov_modes = 64;
};

const std::vector<std::string>& known_workloads();

// Throws ValidationError listing the known names.
WorkloadSource workload_source(std::string_view name, const WorkloadOptions& opts = {});

// sst, mttkrp and vlasov at their default sizes for `cfg`.
std::vector<WorkloadProfile> default_workloads(const SystemConfig& cfg, const WorkloadOptions& opts = {});

}  // namespace psram
