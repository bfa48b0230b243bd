// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "psram/compare.hpp"
#include "psram/json_io.hpp"
#include "psram/random.hpp"
#include "psram/roofline.hpp"
#include "psram/workloads/catalog.hpp"
#include "psram/workloads/mttkrp.hpp"
#include "psram/workloads/sod.hpp"
#include "psram/workloads/vlasov.hpp"

#ifndef PSRAM_SOURCE_DIR
#error "PSRAM_SOURCE_DIR must point at the repository root"
#endif

using namespace psram;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

SystemConfig shipped_config() {
    std::ifstream in(std::string(PSRAM_SOURCE_DIR) + "/configs/paper-vi-a.json");
    return config_from_json(json::parse(in));
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

double round2(double v) { return std::round(v * 100) / 100; }

// 1. Energy table: energy/bit and bit-level TOPS/W over the frequency sweep.
void table_reproduction(Check& c) {
    const double f[] = {16e9, 20e9, 32e9, 48e9};
    const double pj[] = {0.40, 0.50, 0.80, 1.20};
    const double tops[] = {5.00, 4.00, 2.50, 1.67};
    const auto r = sweep(SweepParameter::Frequency, {f, f + 4}, shipped_config(), workload_source("sst"));
    for (int i = 0; i < 4; ++i) {
        const double e = r.reports[i].energy_per_bit * 1e12;
        const double t = r.reports[i].efficiency_tops_per_w();
        c.expect(rel_close(e, pj[i], 1e-12), "energy/bit at " + format_number(f[i]));
        c.expect(round2(t) == tops[i], "TOPS/W at " + format_number(f[i]));
        c.detail << ' ' << format_number(f[i] * 1e-9) << "GHz:" << format_number(e) << "pJ/" << format_number(round2(t))
                 << "TOPS/W";
    }
    // The CLI sweep CSV carries the same columns.
    std::ostringstream out, err;
    const int code = cli::run({"--config", std::string(PSRAM_SOURCE_DIR) + "/configs/paper-vi-a.json", "--format",
                               "csv", "sweep", "--param", "frequency", "--axis", "16e9,20e9,32e9,48e9"},
                              out, err);
    c.expect(code == 0, "cli sweep exit code");
    c.expect(out.str().find(",4e-13,5,32\n") != std::string::npos, "cli 16 GHz row");
    c.expect(out.str().find(",1.2e-12,1.66666667,32\n") != std::string::npos, "cli 48 GHz row");
}

// 2. Shipped configuration: P, peak and area.
void configuration(Check& c) {
    const auto r = evaluate(shipped_config(), {"sst", 1, 1});
    c.expect(r.p == 32, "P = 32");
    c.expect(rel_close(r.peak, 2.048e12, 1e-15), "peak = 2.048 TOPS");
    c.expect(rel_close(r.area, 25.6, 1e-15), "area = 25.6 mm^2");
    c.detail << " P=" << r.p << " peak=" << format_number(r.peak) << " area=" << format_number(r.area);
}

// 3. Roofline classes under the default accountings.
void roofline_classes(Check& c) {
    const auto cfg = shipped_config();
    const auto rep = roofline_report(machine_model(cfg.arch, cfg.mem), default_workloads(cfg));
    c.detail << " ridge=" << format_number(rep.ridge);
    const Bound want[] = {Bound::ComputeBound, Bound::MemoryBound, Bound::ComputeBound};
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const auto& p = rep.points[i];
        c.detail << ' ' << p.workload << ":ai=" << format_number(p.ai) << ':' << to_string(p.bound);
        c.expect(p.bound == want[i], p.workload + " bound");
    }
    c.expect(rep.points.size() == 3, "three workloads");
}

// 4. Sustained throughput: bounded by peak, approaches it, monotone.
void sustained_properties(Check& c) {
    const auto base = shipped_config();
    // (a) every configuration derived from the shipped file stays under peak.
    Rng rng(2024);
    std::size_t count = 0;
    for (int k = 0; k < 20000; ++k) {
        SystemConfig cfg = base;
        cfg.mem.b = std::pow(10.0, rng.uniform(9, 20));
        cfg.mem.t_access = rng.uniform() < 0.2 ? 0 : rng.uniform(0, 1e-6);
        cfg.conv.t_eo = rng.uniform() < 0.2 ? 0 : rng.uniform(0, 1e-7);
        cfg.conv.t_oe = rng.uniform() < 0.2 ? 0 : rng.uniform(0, 1e-7);
        const WorkloadProfile wl{"r", std::floor(std::pow(10.0, rng.uniform(0, 14))), std::floor(std::pow(10.0, rng.uniform(0, 14)))};
        if (evaluate(cfg, wl).sustained > 2.048e12) {
            c.expect(false, "sustained <= 2.048 TOPS");
            break;
        }
        ++count;
    }
    for (const auto& name : known_workloads()) {
        c.expect(evaluate(base, workload_source(name)(base)).sustained <= 2.048e12, name + " under peak");
    }
    c.detail << " (a) " << count << " configs under peak;";

    // (b) near-infinite bandwidth, no fixed latencies.
    SystemConfig ideal = base;
    ideal.mem = {1e18, 0};
    ideal.conv = {0, 0};
    for (const auto& name : known_workloads()) {
        const auto r = evaluate(ideal, workload_source(name)(ideal));
        const double gap = (r.peak - r.sustained) / r.peak;
        c.expect(gap < 0.01, name + " within 1% of peak");
        c.detail << ' ' << name << " gap=" << format_number(gap);
    }

    // (c) 20-point sweeps.
    auto geom = [](double lo, double hi) {
        std::vector<double> v(20);
        for (int i = 0; i < 20; ++i) v[i] = lo * std::pow(hi / lo, i / 19.0);
        return v;
    };
    struct Axis {
        SweepParameter p;
        std::vector<double> values;
        int direction;  // +1 non-decreasing, -1 non-increasing
    };
    std::vector<Axis> axes{{SweepParameter::Bandwidth, geom(1e11, 1e15), 1},
                           {SweepParameter::Frequency, geom(1e9, 1e11), 1},
                           {SweepParameter::ConversionLatency, geom(1e-10, 1e-6), -1}};
    // t_access has no sweep parameter of its own; step it directly.
    for (const auto& name : known_workloads()) {
        const auto src = workload_source(name);
        for (const auto& ax : axes) {
            const auto r = sweep(ax.p, ax.values, base, src);
            for (std::size_t i = 1; i < r.reports.size(); ++i) {
                const double d = r.reports[i].sustained - r.reports[i - 1].sustained;
                c.expect(ax.direction * d >= 0, name + " monotone in " + std::string(to_string(ax.p)));
            }
        }
        double prev = INFINITY;
        for (double t : geom(1e-9, 1e-5)) {
            SystemConfig cfg = base;
            cfg.mem.t_access = t;
            const double s = evaluate(cfg, src(cfg)).sustained;
            c.expect(s <= prev, name + " monotone in t_access");
            prev = s;
        }
    }
    c.detail << "; (c) B, F, t_access, t_conv sweeps monotone";
}

// 5. Streaming programs against their oracles.
void oracle_equivalence(Check& c) {
    const auto sod = sod_canonical(100, 50);
    const auto init = sod_initial_state(sod);
    const auto oracle = sst_oracle_run(init, sod);
    for (std::size_t p : {1u, 4u, 32u, 100u}) {
        const auto run = sst_stream_run(init, sod, {p, 8, {}});
        double err = 0;
        for (std::size_t k = 0; k < 3; ++k) {
            std::vector<double> a, b;
            for (std::size_t i = 0; i < init.size(); ++i) {
                a.push_back(run.state.cells[i][k]);
                b.push_back(oracle.cells[i][k]);
            }
            err = std::max(err, max_relative_error(a, b));
        }
        c.expect(err <= 1e-12, "sst P=" + std::to_string(p));
        c.detail << " sst[P=" << p << "]=" << format_number(err);
    }

    const auto x = random_tensor({8, 8, 8}, 0.05, 1);
    const auto b = random_factor(8, 4, 2);
    const auto cc = random_factor(8, 4, 3);
    const auto job = mttkrp_build_program(x, b, cc, 4);
    const auto a = mttkrp_collect(job, execute(job.program, {}, job.streams));
    // Dense triple loop over the materialized tensor.
    std::vector<double> dense(512, 0.0), ref(8 * 4, 0.0);
    for (const auto& nz : x.nonzeros) dense[(nz.idx[0] * 8 + nz.idx[1]) * 8 + nz.idx[2]] += nz.value;
    for (std::size_t h0 = 0; h0 < 8; ++h0)
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t h1 = 0; h1 < 8; ++h1)
                for (std::size_t h2 = 0; h2 < 8; ++h2) ref[h0 * 4 + r] += dense[(h0 * 8 + h1) * 8 + h2] * b(h1, r) * cc(h2, r);
    const double merr = max_relative_error(a.data(), ref);
    c.expect(merr <= 1e-12, "mttkrp");
    c.detail << " mttkrp(nnz=" << x.nnz() << ")=" << format_number(merr);

    const auto spec = random_spectral(64, 1);
    const auto v = vlasov_stream_run(spec, {});
    bool exact = true;
    for (std::size_t m = 0; m < 64; ++m) exact = exact && v.f[m] == vlasov_oracle(spec.k[m], spec.z[m], spec.f[m]);
    c.expect(exact, "vlasov exact");
    c.detail << " vlasov=" << (exact ? "exact" : "differs");

    Rng rng(5);
    std::vector<double> h(64), s(64), direct(64, 0.0);
    for (auto& e : h) e = rng.uniform(-1, 1);
    for (auto& e : s) e = rng.uniform(-1, 1);
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) direct[i] += h[j] * s[(i + 64 - j) % 64];
    const double cerr = max_relative_error(spectral_convolution(h, s, {}).values, direct);
    c.expect(cerr <= 1e-9, "convolution");
    c.detail << " conv=" << format_number(cerr);
}

// 6. Simulator counts against the closed forms.
void consistency(Check& c) {
    const ArchConfig arch;
    std::size_t cases = 0;
    for (std::size_t n : {1u, 5u, 64u, 100u}) {
        const auto sod = sod_canonical(n, 2);
        const auto init = sod_initial_state(sod);
        const auto ref = sst_stream_run(init, sod, {1, 8, {}});
        for (std::size_t p : {1u, 3u, 4u, 32u, 100u, 128u}) {
            const auto r = sst_stream_run(init, sod, {p, 8, {}});
            const auto wl = sst_profile(sod, arch);
            c.expect(2.0 * static_cast<double>(r.stats.macs_executed) == wl.n_total, "sst N_total");
            c.expect(static_cast<double>(r.stats.io_bits) == wl.s, "sst S");
            c.expect(r.stats.mac_cycles == ((n + p - 1) / p) * kSstMacsPerPointStep * 2, "sst mac cycles");
            c.expect(r.state.cells == ref.state.cells, "sst P-invariance");
            ++cases;
        }
    }
    const auto x = random_tensor({12, 10, 10}, 0.05, 7);
    const auto b = random_factor(10, 16, 8);
    const auto cc = random_factor(10, 16, 9);
    const auto job = mttkrp_build_program(x, b, cc, 16);
    const auto mref = execute(job.program, {1, 8, {}}, job.streams);
    const std::uint64_t mac_instr = mac_count(job.program);
    for (std::size_t p : {1u, 3u, 16u, 32u}) {
        const auto r = execute(job.program, {p, 8, {}}, job.streams);
        const auto wl = mttkrp_profile(x, 16, arch);
        c.expect(2.0 * static_cast<double>(r.stats.macs_executed) == wl.n_total, "mttkrp N_total");
        c.expect(static_cast<double>(r.stats.io_bits) == wl.s, "mttkrp S");
        c.expect(r.stats.mac_cycles == ((16 + p - 1) / p) * mac_instr, "mttkrp mac cycles");
        c.expect(r.outputs == mref.outputs, "mttkrp P-invariance");
        ++cases;
    }
    for (std::size_t n : {1u, 7u, 64u}) {
        const auto spec = random_spectral(n, n);
        const auto vref = vlasov_stream_run(spec, {1, 8, {}});
        for (std::size_t p : {1u, 2u, 32u, 64u}) {
            const auto r = vlasov_stream_run(spec, {p, 8, {}});
            const auto wl = vlasov_profile(n, arch);
            c.expect(2.0 * static_cast<double>(r.stats.macs_executed) == wl.n_total, "vlasov N_total");
            c.expect(static_cast<double>(r.stats.io_bits) == wl.s, "vlasov S");
            c.expect(r.stats.mac_cycles == ((n + p - 1) / p) * 6, "vlasov mac cycles");
            c.expect(r.f == vref.f, "vlasov P-invariance");
            ++cases;
        }
    }
    c.detail << ' ' << cases << " (workload, N, P) cases";
}

// 7. Conversion latency amortizes as the SST grid grows.
void amortization(Check& c) {
    SystemConfig cfg = shipped_config();
    cfg.conv = {5e-9, 5e-9};
    double prev_gap = INFINITY;
    double share = 0;
    for (double n : {1e2, 1e3, 1e4, 1e5}) {
        const auto r = evaluate(cfg, sst_profile(static_cast<std::size_t>(n), 50, cfg.arch));
        const double gap = (r.peak - r.sustained) / r.peak;
        c.expect(gap < prev_gap, "gap decreases at N=" + format_number(n));
        prev_gap = gap;
        share = r.breakdown.t_conv / r.breakdown.t_total;
        c.detail << " N=" << format_number(n) << ":gap=" << format_number(gap);
    }
    c.expect(share < 1e-3, "t_conv share at N=1e5 below 0.1%");
    c.detail << " t_conv/t_total@1e5=" << format_number(share);
}

// 8. Re-running every command from its manifest reproduces its data files.
void determinism(Check& c) {
    const fs::path root = fs::temp_directory_path() / ("psram-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::string cfg = std::string(PSRAM_SOURCE_DIR) + "/configs/paper-vi-a.json";
    const std::vector<std::vector<std::string>> commands{
        {"model", "--workload", "mttkrp"},
        {"sweep", "--param", "bandwidth", "--axis", "1e12,2e12,4e12,8e12", "--workload", "sst"},
        {"sweep", "--param", "gridpoints", "--axis", "100,1000,10000", "--workload", "vlasov"},
        {"roofline", "--workload", "all", "--custom", "knee:13.37469387755102:64"},
        {"simulate", "--workload", "sst", "--n", "100", "--steps", "50"},
        {"simulate", "--workload", "mttkrp", "--dims", "8,8,8", "--density", "0.05", "--rank", "4"},
        {"simulate", "--workload", "vlasov", "--n-modes", "64"},
        {"simulate", "--workload", "conv", "--n-modes", "64"},
    };
    int idx = 0;
    for (const auto& cmd : commands) {
        const fs::path dir = root / std::to_string(idx++);
        std::vector<std::string> args{"--config", cfg, "--seed", "3", "--format", "both", "--out", dir.string()};
        args.insert(args.end(), cmd.begin(), cmd.end());
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        c.expect(code == 0, cmd[0] + " exit code " + std::to_string(code) + ": " + err.str());
        std::ostringstream rout, rerr;
        const int rcode = cli::run({"replay", (dir / "manifest.json").string(), "--check"}, rout, rerr);
        c.expect(rcode == 0, cmd[0] + " replay: " + rout.str() + rerr.str());
    }
    fs::remove_all(root);
    c.detail << ' ' << commands.size() << " commands replayed byte-identically";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "energy table reproduction", 1.0, table_reproduction},
        {2, "shipped configuration", 1.0, configuration},
        {3, "roofline classification", 0, roofline_classes},
        {4, "sustained-performance properties", 5.0, sustained_properties},
        {5, "oracle equivalence", 60.0, oracle_equivalence},
        {6, "simulator/model consistency", 0, consistency},
        {7, "conversion-latency amortization", 0, amortization},
        {8, "determinism", 0, determinism},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.budget_s > 0 && secs >= cr.budget_s) c.expect(false, "runtime budget " + format_number(cr.budget_s) + " s");
        failures += c.ok ? 0 : 1;
        std::printf("%s %d %s (%.3f s):%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs, c.detail.str().c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
