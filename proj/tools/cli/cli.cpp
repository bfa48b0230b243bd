#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "psram/compare.hpp"
#include "psram/error.hpp"
#include "psram/json_io.hpp"
#include "psram/random.hpp"
#include "psram/roofline.hpp"
#include "psram/workloads/catalog.hpp"
#include "psram/workloads/mttkrp.hpp"
#include "psram/workloads/sod.hpp"
#include "psram/workloads/vlasov.hpp"

#ifndef PSRAM_VERSION
#define PSRAM_VERSION "0.0.0"
#endif

namespace psram::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kTool = "psram-perf";

// A run failed its oracle check; maps to exit code 2.
class ToleranceFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::string out_dir;
    std::string format = "json";
    std::uint64_t seed = 1;
};

struct WorkloadFlags {
    std::size_t n = 100;
    std::size_t steps = 50;
    std::size_t rank = 16;
    std::size_t n_modes = 64;
    double density = 0.01;
    std::vector<std::size_t> dims{64, 64, 64};
    std::string tensor;
};

// Values a replay substitutes for files named on the original command line.
struct Overrides {
    std::optional<json> config;
    std::optional<json> workload_config;
};

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(std::string("cannot open ") + what + " '" + path + "': file not found or unreadable");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path, const char* what) {
    const std::string text = read_file(path, what);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(what) + " '" + path + "' is not valid JSON: " + e.what());
    }
}

unsigned sweep_threads() {
    const char* env = std::getenv("PSRAM_PERF_THREADS");
    if (!env || !*env) return std::max(1u, std::thread::hardware_concurrency());
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) throw ValidationError("PSRAM_PERF_THREADS must be a non-negative integer");
    return static_cast<unsigned>(v);
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

// Collects a command's data products and writes them either to --out or to
// stdout.
class Output {
public:
    Output(const Globals& g, std::ostream& out) : g_(g), out_(out) {
        if (g_.format != "json" && g_.format != "csv" && g_.format != "both") {
            throw ValidationError("--format must be json, csv or both");
        }
    }

    bool wants_json() const { return g_.format != "csv"; }
    bool wants_csv() const { return g_.format != "json"; }

    void emit(const std::string& name, const std::string& content) {
        if (g_.out_dir.empty()) {
            out_ << content;
            return;
        }
        fs::create_directories(g_.out_dir);
        std::ofstream f(fs::path(g_.out_dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (fs::path(g_.out_dir) / name).string());
        f << content;
        written_.push_back(name);
    }

    void json_file(const std::string& name, const json& j) {
        if (wants_json()) emit(name, pretty(j));
    }
    void csv_file(const std::string& name, const std::string& csv) {
        if (wants_csv()) emit(name, csv);
    }

    void manifest(json m) {
        if (g_.out_dir.empty()) return;
        m["outputs"] = written_;
        fs::create_directories(g_.out_dir);
        std::ofstream f(fs::path(g_.out_dir) / "manifest.json", std::ios::binary);
        f << pretty(m);
    }

private:
    const Globals& g_;
    std::ostream& out_;
    std::vector<std::string> written_;
};

struct Context {
    std::vector<std::string> argv;
    Globals g;
    WorkloadFlags wf;
    Overrides ov;
    std::ostream& out;
    std::ostream& err;

    SystemConfig config() const {
        if (ov.config) return config_from_json(*ov.config);
        if (g.config_path.empty()) return default_system();
        return config_from_json(read_json(g.config_path, "config file"));
    }

    json manifest(const std::string& command, const SystemConfig& cfg) const {
        json inputs = json::array();
        auto input = [&](const char* role, const std::string& path) {
            inputs.push_back({{"role", role}, {"path", path}, {"absolute", fs::absolute(path).string()}});
        };
        if (!g.config_path.empty()) input("config", g.config_path);
        if (!wf.tensor.empty()) input("tensor", wf.tensor);
        const json flags{{"n", wf.n},         {"steps", wf.steps},     {"rank", wf.rank},
                         {"n_modes", wf.n_modes}, {"density", wf.density}, {"dims", wf.dims}};
        return json{{"tool", kTool},
                    {"version", PSRAM_VERSION},
                    {"command", command},
                    {"argv", argv},
                    {"config", config_to_json(cfg)},
                    {"seed", g.seed},
                    {"inputs", inputs},
                    {"workload_flags", flags},
                    {"timestamp", utc_timestamp()}};
    }

    WorkloadOptions workload_options(std::optional<SparseTensor>& tensor_storage) const {
        WorkloadOptions o;
        o.sst_n = wf.n;
        o.sst_steps = wf.steps;
        o.mttkrp_rank = wf.rank;
        o.mttkrp_density = wf.density;
        if (wf.dims.size() != 3) throw ValidationError("--dims needs exactly three sizes");
        o.mttkrp_dims = {wf.dims[0], wf.dims[1], wf.dims[2]};
        o.seed = g.seed;
        o.vlasov_modes = wf.n_modes;
        if (!wf.tensor.empty()) {
            tensor_storage = load_tns(wf.tensor);
            o.tensor = &*tensor_storage;
        }
        return o;
    }
};

void add_workload_flags(CLI::App* sub, WorkloadFlags& wf) {
    sub->add_option("--n", wf.n, "SST grid points")->capture_default_str();
    sub->add_option("--steps", wf.steps, "SST time steps")->capture_default_str();
    sub->add_option("--rank", wf.rank, "MTTKRP rank R")->capture_default_str();
    sub->add_option("--n-modes", wf.n_modes, "Vlasov Fourier modes")->capture_default_str();
    sub->add_option("--density", wf.density, "random MTTKRP tensor density")->capture_default_str();
    sub->add_option("--dims", wf.dims, "random MTTKRP tensor dims I0,I1,I2")->delimiter(',')->expected(3);
    sub->add_option("--tensor", wf.tensor, "MTTKRP tensor in .tns coordinate format");
}

// ---------------------------------------------------------------------------
// model

struct ModelArgs {
    std::string workload = "sst";
    std::optional<double> n_total;
    std::optional<double> s_bits;
    std::string convention = "bit";
};

int cmd_model(Context& ctx, const ModelArgs& a) {
    const SystemConfig cfg = ctx.config();
    WorkloadProfile wl;
    if (a.n_total || a.s_bits) {
        wl = {"custom", a.n_total.value_or(0), a.s_bits.value_or(0)};
    } else {
        std::optional<SparseTensor> t;
        wl = workload_source(a.workload, ctx.workload_options(t))(cfg);
    }
    if (a.convention != "bit" && a.convention != "word") throw ValidationError("--convention must be bit or word");
    const auto conv = a.convention == "bit" ? EfficiencyConvention::BitLevel : EfficiencyConvention::WordLevel;
    const auto report = evaluate(cfg, wl, conv);

    Output o(ctx.g, ctx.out);
    o.json_file("report.json", json{{"config", config_to_json(cfg)}, {"workload", to_json(wl)}, {"report", to_json(report)}});
    o.csv_file("report.csv", report_csv(report));
    o.manifest(ctx.manifest("model", cfg));
    return kOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string param;
    std::vector<double> axis;
    std::string workload = "sst";
};

int cmd_sweep(Context& ctx, const SweepArgs& a) {
    const SystemConfig cfg = ctx.config();
    const SweepParameter p = parse_sweep_parameter(a.param);
    std::optional<SparseTensor> t;
    const WorkloadSource src = workload_source(a.workload, ctx.workload_options(t));
    const SweepResult r = sweep(p, a.axis, cfg, src, sweep_threads());

    Output o(ctx.g, ctx.out);
    o.json_file("sweep.json", json{{"config", config_to_json(cfg)}, {"workload", a.workload}, {"sweep", to_json(r)}});
    o.csv_file("sweep.csv", sweep_csv(r));
    o.manifest(ctx.manifest("sweep", cfg));
    return kOk;
}

// ---------------------------------------------------------------------------
// roofline

struct RooflineArgs {
    std::vector<std::string> workloads;
    std::vector<std::string> custom;
};

WorkloadProfile parse_custom(const std::string& spec) {
    const auto a = spec.find(':');
    const auto b = a == std::string::npos ? a : spec.find(':', a + 1);
    if (b == std::string::npos) throw ValidationError("--custom expects NAME:N_TOTAL:S_BITS, got '" + spec + "'");
    WorkloadProfile wl;
    wl.name = spec.substr(0, a);
    try {
        std::size_t used = 0;
        const std::string n = spec.substr(a + 1, b - a - 1);
        const std::string s = spec.substr(b + 1);
        wl.n_total = std::stod(n, &used);
        if (used != n.size()) throw std::invalid_argument(n);
        wl.s = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::logic_error&) {
        throw ValidationError("--custom expects NAME:N_TOTAL:S_BITS with numeric fields, got '" + spec + "'");
    }
    validate(wl);
    return wl;
}

int cmd_roofline(Context& ctx, const RooflineArgs& a) {
    const SystemConfig cfg = ctx.config();
    std::optional<SparseTensor> t;
    const WorkloadOptions opts = ctx.workload_options(t);
    std::vector<WorkloadProfile> wls;
    for (const auto& name : a.workloads) {
        if (name == "all") {
            for (const auto& k : known_workloads()) wls.push_back(workload_source(k, opts)(cfg));
        } else {
            wls.push_back(workload_source(name, opts)(cfg));
        }
    }
    for (const auto& c : a.custom) wls.push_back(parse_custom(c));
    const auto report = roofline_report(machine_model(cfg.arch, cfg.mem), wls);

    json wl_json = json::array();
    for (const auto& wl : wls) wl_json.push_back(to_json(wl));
    Output o(ctx.g, ctx.out);
    o.json_file("roofline.json",
                json{{"config", config_to_json(cfg)}, {"workloads", wl_json}, {"roofline", to_json(report)}});
    o.csv_file("roofline.csv", roofline_csv(report));
    o.manifest(ctx.manifest("roofline", cfg));
    return kOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string workload;
    std::string quantization = "real";
    std::optional<std::size_t> cells;
    std::string workload_config;
};

Quantization parse_quantization(const std::string& s) {
    if (s == "real") return Quantization::real();
    if (s.rfind("fixed:", 0) == 0) {
        const std::string f = s.substr(6);
        if (!f.empty() && std::all_of(f.begin(), f.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
            f.size() < 4) {
            return Quantization::fixed(static_cast<unsigned>(std::stoul(f)));
        }
    }
    throw ValidationError("--quantization must be 'real' or 'fixed:F' with integer F, got '" + s + "'");
}

struct Simulated {
    SimStats stats;
    WorkloadProfile closed_form;
    std::string outputs_csv;
    json outputs_json;
    double max_rel_err = 0;
    double tolerance = 0;
};

std::vector<double> component(const EulerState& s, std::size_t c) {
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.cells[i][c];
    return v;
}

Simulated simulate_sst(const Context& ctx, const std::optional<json>& wcfg, const CLI::App& sub,
                       const SystemConfig& cfg, const MeshConfig& mesh) {
    SodConfig sod = wcfg ? sod_config_from_json(*wcfg) : sod_canonical(ctx.wf.n, ctx.wf.steps);
    if (wcfg && sub.count("--n")) sod.n = ctx.wf.n;
    if (wcfg && sub.count("--steps")) sod.steps = ctx.wf.steps;
    validate(sod);
    const auto init = sod_initial_state(sod);
    const auto run = sst_stream_run(init, sod, mesh);
    const auto oracle = sst_oracle_run(init, sod);

    Simulated s;
    s.stats = run.stats;
    s.closed_form = sst_profile(sod, cfg.arch);
    s.tolerance = 1e-12;
    for (std::size_t c = 0; c < 3; ++c) {
        s.max_rel_err = std::max(s.max_rel_err, max_relative_error(component(run.state, c), component(oracle, c)));
    }
    std::ostringstream os;
    os << "i,density,momentum,energy\n";
    for (std::size_t i = 0; i < run.state.size(); ++i) {
        const auto& w = run.state.cells[i];
        os << i << ',' << format_number(w[0]) << ',' << format_number(w[1]) << ',' << format_number(w[2]) << '\n';
    }
    s.outputs_csv = os.str();
    s.outputs_json = json{{"sst", to_json(sod)}};
    return s;
}

Simulated simulate_mttkrp(const Context& ctx, const SystemConfig& cfg, const MeshConfig& mesh) {
    SparseTensor x;
    if (!ctx.wf.tensor.empty()) {
        x = load_tns(ctx.wf.tensor);
    } else {
        if (ctx.wf.dims.size() != 3) throw ValidationError("--dims needs exactly three sizes");
        x = random_tensor({ctx.wf.dims[0], ctx.wf.dims[1], ctx.wf.dims[2]}, ctx.wf.density, ctx.g.seed);
    }
    const std::size_t rank = ctx.wf.rank;
    const auto b = random_factor(x.dims[1], rank, ctx.g.seed + 1);
    const auto c = random_factor(x.dims[2], rank, ctx.g.seed + 2);
    const auto job = mttkrp_build_program(x, b, c, rank);
    const auto res = execute(job.program, mesh, job.streams);
    const auto a = mttkrp_collect(job, res);
    const auto oracle = mttkrp_oracle(x, b, c);

    Simulated s;
    s.stats = res.stats;
    s.closed_form = mttkrp_profile(x, rank, cfg.arch);
    s.tolerance = 1e-12;
    s.max_rel_err = max_relative_error(a.data(), oracle.data());
    std::ostringstream os;
    os << "row,col,value\n";
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.rank(); ++k) os << r << ',' << k << ',' << format_number(a(r, k)) << '\n';
    s.outputs_csv = os.str();
    s.outputs_json = json{{"dims", x.dims}, {"nnz", x.nnz()}, {"rank", rank}, {"mode0_rows", x.mode0_rows()}};
    return s;
}

Simulated simulate_vlasov(const Context& ctx, const std::optional<json>& wcfg, const SystemConfig& cfg,
                          const MeshConfig& mesh) {
    const SpectralConfig spec = wcfg ? spectral_config_from_json(*wcfg, ctx.g.seed) : random_spectral(ctx.wf.n_modes, ctx.g.seed);
    const auto run = vlasov_stream_run(spec, mesh);
    std::vector<double> got, want;
    for (std::size_t m = 0; m < spec.n_modes; ++m) {
        const Complex o = vlasov_oracle(spec.k[m], spec.z[m], spec.f[m]);
        got.insert(got.end(), {run.f[m].real(), run.f[m].imag()});
        want.insert(want.end(), {o.real(), o.imag()});
    }
    Simulated s;
    s.stats = run.stats;
    s.closed_form = vlasov_profile(spec.n_modes, cfg.arch);
    s.tolerance = 0;
    s.max_rel_err = max_relative_error(got, want);
    std::ostringstream os;
    os << "mode,re,im\n";
    for (std::size_t m = 0; m < spec.n_modes; ++m)
        os << m << ',' << format_number(run.f[m].real()) << ',' << format_number(run.f[m].imag()) << '\n';
    s.outputs_csv = os.str();
    s.outputs_json = json{{"n_modes", spec.n_modes}};
    return s;
}

Simulated simulate_conv(const Context& ctx, const SystemConfig& cfg, const MeshConfig& mesh) {
    const std::size_t n = ctx.wf.n_modes;
    if (n == 0) throw ValidationError("--n-modes must be >= 1");
    Rng rng(ctx.g.seed);
    std::vector<double> h(n), c(n);
    for (auto& v : h) v = rng.uniform(-1, 1);
    for (auto& v : c) v = rng.uniform(-1, 1);
    const auto r = spectral_convolution(h, c, mesh);
    std::vector<double> direct(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) direct[i] += h[j] * c[(i + n - j) % n];

    Simulated s;
    s.stats = r.stats;
    s.closed_form = vlasov_profile(n, cfg.arch);
    s.tolerance = 1e-9;
    s.max_rel_err = max_relative_error(r.values, direct);
    std::ostringstream os;
    os << "i,value\n";
    for (std::size_t i = 0; i < n; ++i) os << i << ',' << format_number(r.values[i]) << '\n';
    s.outputs_csv = os.str();
    s.outputs_json = json{{"n", n}, {"max_imag_residue", r.max_imag_residue}};
    return s;
}

int cmd_simulate(Context& ctx, const SimulateArgs& a, const CLI::App& sub) {
    const SystemConfig cfg = ctx.config();
    MeshConfig mesh;
    mesh.w = static_cast<unsigned>(cfg.arch.w);
    mesh.p = a.cells.value_or(compute_cells(cfg.arch));
    mesh.quantization = parse_quantization(a.quantization);
    validate(mesh);

    std::optional<json> wcfg = ctx.ov.workload_config;
    if (!wcfg && !a.workload_config.empty()) wcfg = read_json(a.workload_config, "workload config");

    Simulated s;
    if (a.workload == "sst") {
        s = simulate_sst(ctx, wcfg, sub, cfg, mesh);
    } else if (a.workload == "mttkrp") {
        s = simulate_mttkrp(ctx, cfg, mesh);
    } else if (a.workload == "vlasov") {
        s = simulate_vlasov(ctx, wcfg, cfg, mesh);
    } else if (a.workload == "conv") {
        s = simulate_conv(ctx, cfg, mesh);
    } else {
        throw ValidationError("unknown workload '" + a.workload + "' (known: sst, mttkrp, vlasov, conv)");
    }

    const bool real = mesh.quantization.mode == Quantization::Mode::Real;
    const bool pass = !real || s.max_rel_err <= s.tolerance;
    const auto measured = profile_to_workload(s.stats, a.workload);
    const auto report = evaluate(cfg, measured);

    json oracle{{"max_rel_err", s.max_rel_err}, {"pass", pass}};
    // Fixed-point runs are compared against real arithmetic for information only.
    oracle["tolerance"] = real ? json(s.tolerance) : json(nullptr);
    json summary{
        {"config", config_to_json(cfg)},
        {"workload", a.workload},
        {"workload_details", s.outputs_json},
        {"mesh", {{"p", mesh.p}, {"w", mesh.w}, {"quantization", a.quantization}}},
        {"stats", to_json(s.stats)},
        {"profile", to_json(measured)},
        {"closed_form_profile", to_json(s.closed_form)},
        {"energy_j", workload_energy(cfg.arch, static_cast<double>(s.stats.switching_events))},
        {"energy_per_bit_j", energy_per_bit(cfg.arch)},
        {"report", to_json(report)},
        {"oracle", oracle},
    };
    if (wcfg) summary["workload_config"] = *wcfg;

    Output o(ctx.g, ctx.out);
    o.json_file("simulate.json", summary);
    o.csv_file("outputs.csv", s.outputs_csv);
    json m = ctx.manifest("simulate", cfg);
    if (!a.workload_config.empty()) {
        m["inputs"].push_back({{"role", "workload_config"},
                               {"path", a.workload_config},
                               {"absolute", fs::absolute(a.workload_config).string()}});
    }
    if (wcfg) m["workload_config"] = *wcfg;
    o.manifest(m);

    if (!pass) {
        std::ostringstream msg;
        msg << "oracle check failed: max relative error " << format_number(s.max_rel_err) << " exceeds tolerance "
            << format_number(s.tolerance);
        throw ToleranceFailure(msg.str());
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// replay

struct ReplayArgs {
    std::string manifest;
    std::string out_dir;
    bool check = false;
};

std::vector<std::string> without_out(const std::vector<std::string>& argv) {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (argv[i] == "--out") {
            ++i;
            continue;
        }
        if (argv[i].rfind("--out=", 0) == 0) continue;
        r.push_back(argv[i]);
    }
    return r;
}

int dispatch(const std::vector<std::string>& args, const Overrides& ov, std::ostream& out, std::ostream& err);

int cmd_replay(const ReplayArgs& a, std::ostream& out, std::ostream& err) {
    const json m = read_json(a.manifest, "manifest");
    if (!m.contains("argv") || !m.at("argv").is_array()) throw ValidationError("manifest has no argv array");
    if (m.value("tool", std::string{}) != kTool) throw ValidationError("manifest was not written by " + std::string(kTool));
    const auto argv = m.at("argv").get<std::vector<std::string>>();
    if (std::find(argv.begin(), argv.end(), "replay") != argv.end()) throw ValidationError("cannot replay a replay");

    Overrides ov;
    if (m.contains("config")) ov.config = m.at("config");
    if (m.contains("workload_config")) ov.workload_config = m.at("workload_config");

    fs::path target;
    bool temp = false;
    if (!a.out_dir.empty()) {
        target = a.out_dir;
    } else if (a.check) {
        target = fs::temp_directory_path() / ("psram-replay-" + std::to_string(std::hash<std::string>{}(a.manifest)) +
                                              "-" + std::to_string(std::time(nullptr)));
        temp = true;
    } else {
        throw ValidationError("replay needs --out DIR or --check");
    }
    auto args = without_out(argv);
    // Point --tensor at the recorded absolute path so the replay works from any directory.
    for (const auto& in : m.value("inputs", json::array())) {
        if (in.value("role", std::string{}) != "tensor" || !in.contains("absolute")) continue;
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--tensor") args[i + 1] = in.at("absolute").get<std::string>();
        }
        for (auto& arg : args) {
            if (arg.rfind("--tensor=", 0) == 0) arg = "--tensor=" + in.at("absolute").get<std::string>();
        }
    }
    args.push_back("--out");
    args.push_back(target.string());
    std::ostringstream sink;
    const int code = dispatch(args, ov, sink, err);

    if (a.check) {
        const fs::path original = fs::path(a.manifest).parent_path();
        const auto outputs = m.value("outputs", std::vector<std::string>{});
        std::size_t mismatches = 0;
        for (const auto& name : outputs) {
            const bool same = fs::exists(target / name) && fs::exists(original / name) &&
                              read_file((target / name).string(), "output") == read_file((original / name).string(), "output");
            out << (same ? "identical " : "DIFFERENT ") << name << '\n';
            mismatches += same ? 0 : 1;
        }
        if (temp) fs::remove_all(target);
        if (mismatches) {
            err << mismatches << " output file(s) differ from the manifest's run\n";
            return kRuntime;
        }
    }
    return code;
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, const Overrides& ov, std::ostream& out, std::ostream& err) {
    CLI::App app{"Performance, roofline and mesh-simulation tool for pSRAM accelerators", kTool};
    app.set_version_flag("--version", PSRAM_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx{args, {}, {}, ov, out, err};
    app.add_option("--config", ctx.g.config_path, "system configuration JSON (default: built-in defaults)");
    app.add_option("--out", ctx.g.out_dir, "write data files and manifest.json into DIR");
    app.add_option("--format", ctx.g.format, "json, csv or both")->capture_default_str();
    app.add_option("--seed", ctx.g.seed, "seed for generated inputs")->capture_default_str();

    ModelArgs model;
    auto* m = app.add_subcommand("model", "evaluate the analytical model for one workload");
    m->add_option("--workload", model.workload, "sst, mttkrp or vlasov")->capture_default_str();
    m->add_option("--n-total", model.n_total, "custom workload operations");
    m->add_option("--s-bits", model.s_bits, "custom workload traffic in bits");
    m->add_option("--convention", model.convention, "energy-efficiency convention: bit or word")->capture_default_str();
    add_workload_flags(m, ctx.wf);

    SweepArgs sw;
    auto* s = app.add_subcommand("sweep", "sweep one parameter");
    s->add_option("--param", sw.param, "bandwidth, frequency, conversion, gridpoints or arraybits")->required();
    s->add_option("--axis", sw.axis, "comma-separated axis values")->required()->delimiter(',');
    s->add_option("--workload", sw.workload, "sst, mttkrp or vlasov")->capture_default_str();
    add_workload_flags(s, ctx.wf);

    RooflineArgs rl;
    auto* r = app.add_subcommand("roofline", "classify workloads against the machine roofline");
    r->add_option("--workload", rl.workloads, "workload names, or 'all'")->delimiter(',');
    r->add_option("--custom", rl.custom, "NAME:N_TOTAL:S_BITS");
    add_workload_flags(r, ctx.wf);

    SimulateArgs sim;
    auto* sm = app.add_subcommand("simulate", "run a workload on the mesh simulator and check it against its oracle");
    sm->add_option("--workload", sim.workload, "sst, mttkrp, vlasov or conv")->required();
    sm->add_option("--quantization", sim.quantization, "real or fixed:F")->capture_default_str();
    sm->add_option("--cells", sim.cells, "physical compute cells (default: from config)");
    sm->add_option("--workload-config", sim.workload_config, "JSON inputs for sst or vlasov");
    add_workload_flags(sm, ctx.wf);

    ReplayArgs rp;
    auto* rpl = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    rpl->add_option("manifest", rp.manifest, "manifest.json")->required();
    rpl->add_option("--out", rp.out_dir, "output directory for the re-run");
    rpl->add_flag("--check", rp.check, "compare the re-run byte-for-byte with the recorded outputs");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    if (*m) return cmd_model(ctx, model);
    if (*s) return cmd_sweep(ctx, sw);
    if (*r) return cmd_roofline(ctx, rl);
    if (*sm) return cmd_simulate(ctx, sim, *sm);
    return cmd_replay(rp, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, {}, out, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const psram::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
}

}  // namespace psram::cli
