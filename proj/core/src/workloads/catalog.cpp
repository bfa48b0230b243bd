#include "psram/workloads/catalog.hpp"

#include <memory>

#include "psram/error.hpp"
#include "psram/workloads/sod.hpp"
#include "psram/workloads/vlasov.hpp"

namespace psram {

const std::vector<std::string>& known_workloads() {
    static const std::vector<std::string> names{"sst", "mttkrp", "vlasov"};
    return names;
}

WorkloadSource workload_source(std::string_view name, const WorkloadOptions& opts) {
    WorkloadSource src;
    src.name = std::string(name);
    if (name == "sst") {
        const std::size_t steps = opts.sst_steps;
        src.make = [steps](const SystemConfig& cfg, std::uint64_t n) { return sst_profile(n, steps, cfg.arch); };
        src.default_size = opts.sst_n;
        src.sizable = true;
        return src;
    }
    if (name == "vlasov") {
        src.make = [](const SystemConfig& cfg, std::uint64_t n) { return vlasov_profile(n, cfg.arch); };
        src.default_size = opts.vlasov_modes;
        src.sizable = true;
        return src;
    }
    if (name == "mttkrp") {
        // The tensor only fixes nnz and the mode-0 row count.
        std::size_t nnz = 0;
        std::size_t rows = 0;
        if (opts.tensor) {
            nnz = opts.tensor->nnz();
            rows = opts.tensor->mode0_rows();
        } else {
            const SparseTensor x = random_tensor(opts.mttkrp_dims, opts.mttkrp_density, opts.seed);
            nnz = x.nnz();
            rows = x.mode0_rows();
        }
        const std::size_t rank = opts.mttkrp_rank;
        src.make = [nnz, rows, rank](const SystemConfig& cfg, std::uint64_t) {
            return mttkrp_profile(nnz, rows, rank, cfg.arch);
        };
        src.default_size = nnz;
        src.sizable = false;
        return src;
    }
    std::string known;
    for (const auto& k : known_workloads()) known += (known.empty() ? "" : ", ") + k;
    throw ValidationError("unknown workload '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<WorkloadProfile> default_workloads(const SystemConfig& cfg, const WorkloadOptions& opts) {
    std::vector<WorkloadProfile> out;
    for (const auto& name : known_workloads()) out.push_back(workload_source(name, opts)(cfg));
    return out;
}

}  // namespace psram
