// galerkin: command-line front end for decomposition, baselines and sweeps.

#include "galerkin/errors.hpp"
#include "galerkin/graph_laplacian.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/harness.hpp"
#include "galerkin/hermite.hpp"
#include "galerkin/io.hpp"
#include "galerkin/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace {

using namespace galerkin;
using nlohmann::json;

struct Common {
    std::string data = "sampler:sphere";
    std::size_t n = 1000;
    int d = 3;
    double noise = 0.05;
    std::string kernel;
    std::optional<std::size_t> p;
    std::optional<double> epsilon;
    std::size_t k = 25;
    std::uint64_t seed = 0;
    std::size_t reps = 1;
    std::string out;
    std::string format;  // resolved after parsing
    std::string geometry = "auto";
};

void add_data_flags(CLI::App* cmd, Common& c)
{
    cmd->add_option("--data", c.data, "dataset file (CSV or binary) or sampler:<sphere|gaussian|two_moons>");
    cmd->add_option("--n", c.n, "sample size for samplers")->check(CLI::PositiveNumber);
    cmd->add_option("--d", c.d, "dimension for samplers")->check(CLI::PositiveNumber);
    cmd->add_option("--noise", c.noise, "two_moons noise level");
    cmd->add_option("--seed", c.seed, "RNG seed for data and landmarks");
}

void add_fit_flags(CLI::App* cmd, Common& c)
{
    cmd->add_option("--kernel", c.kernel, R"(kernel JSON, e.g. {"family":"poly","degree":3})");
    cmd->add_option("--p", c.p, "number of landmarks (default ceil(sqrt(n)))")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", c.epsilon, "regularisation");
    cmd->add_option("--k", c.k, "number of eigenvalues scored against the sphere spectrum");
}

void add_out_flags(CLI::App* cmd, Common& c)
{
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--format", c.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
}

KernelSpec parse_kernel(const std::string& text, KernelSpec fallback)
{
    return text.empty() ? fallback : io::kernel_from_json(text);
}

bool is_sampler(const std::string& data, std::string* name = nullptr)
{
    constexpr std::string_view prefix = "sampler:";
    if (data.rfind(prefix, 0) != 0) {
        return false;
    }
    if (name) {
        *name = data.substr(prefix.size());
    }
    return true;
}

Dataset load_data(const Common& c)
{
    std::string name;
    if (is_sampler(c.data, &name)) {
        return harness::sample_dataset({name, c.n, c.d, c.noise}, c.seed);
    }
    return io::load_dataset(c.data);
}

GradientGeometry geometry_for(const Common& c)
{
    if (c.geometry == "ambient") {
        return GradientGeometry::Ambient;
    }
    if (c.geometry == "tangent") {
        return GradientGeometry::SphereTangent;
    }
    return c.data == "sampler:sphere" ? GradientGeometry::SphereTangent : GradientGeometry::Ambient;
}

// Output goes to --out or stdout.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw ConfigError("cannot open output file " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_spectrum(std::ostream& out, const Common& c, const SpectralEstimate& est, double seconds,
                    std::optional<double> error, const std::string& method)
{
    if (c.format == "csv") {
        out << "index,eigenvalue\n";
        out.precision(17);
        for (Eigen::Index i = 0; i < est.values().size(); ++i) {
            out << i << ',' << est.values()(i) << '\n';
        }
        return;
    }
    json j = json::parse(io::estimate_to_json(est));
    j["type"] = method;
    j["wall_time"] = seconds;
    if (error) {
        j["surrogate_error"] = *error;
    }
    out << j.dump() << '\n';
}

int cmd_decompose(const Common& c)
{
    const Dataset data = load_data(c);
    const KernelSpec kernel = parse_kernel(c.kernel, KernelSpec::polynomial(3));
    const auto t0 = std::chrono::steady_clock::now();
    const SpectralEstimate est = decompose(data, kernel, {c.p, c.epsilon, c.seed, geometry_for(c)});
    const double secs = seconds_since(t0);
    std::optional<double> error;
    if (c.data == "sampler:sphere") {
        error = harness::galerkin_sphere_error({est.values().data(), est.size()}, c.d, c.k);
    }
    Output out(c.out);
    write_spectrum(out.stream(), c, est, secs, error, "galerkin");
    return 0;
}

int cmd_graph(const Common& c, std::optional<double> alpha)
{
    const Dataset data = load_data(c);
    const KernelSpec kernel = parse_kernel(c.kernel, KernelSpec::polynomial(3));
    const auto t0 = std::chrono::steady_clock::now();
    const GraphWeights weights = alpha ? weight_matrix(data, *alpha) : kernel_weight_matrix(data, kernel);
    GraphOptions opts;
    opts.p = c.p;
    opts.epsilon = c.epsilon;
    opts.seed = c.seed;
    const std::size_t p = c.p.value_or(default_landmark_count(data.size()));
    const std::vector<std::size_t> grid{p};
    const auto ests = graph_decompose_nested(data, kernel, weights, grid, opts);
    const double secs = seconds_since(t0);
    std::optional<double> error;
    if (c.data == "sampler:sphere") {
        error = harness::graph_sphere_error({ests.front().values().data(), ests.front().size()}, c.d, c.k);
    }
    Output out(c.out);
    write_spectrum(out.stream(), c, ests.front(), secs, error, "graph");
    return 0;
}

int cmd_hermite(const Common& c)
{
    Output out(c.out);
    auto& os = out.stream();
    const KernelSpec kernel = parse_kernel(c.kernel, KernelSpec::gaussian(1.0));
    if (is_sampler(c.data)) {
        // held-out comparison on the constant-target demo
        harness::HermiteDemoConfig hc;
        hc.n = c.n;
        hc.d = c.d;
        hc.p = c.p.value_or(100);
        hc.kernel = kernel;
        hc.epsilon = c.epsilon;
        if (c.format == "csv") {
            os << "seed,hermite_rmse,plain_rmse\n";
        }
        for (std::size_t r = 0; r < c.reps; ++r) {
            const auto res = harness::hermite_demo(hc, c.seed + r);
            if (c.format == "csv") {
                os << c.seed + r << ',' << res.hermite_rmse << ',' << res.plain_rmse << '\n';
            } else {
                os << json{{"type", "hermite_demo"},
                           {"seed", c.seed + r},
                           {"hermite_rmse", res.hermite_rmse},
                           {"plain_rmse", res.plain_rmse}}
                          .dump()
                   << '\n';
            }
        }
        return 0;
    }
    const HermiteProblem problem = io::load_hermite_problem(c.data);
    const HermiteModel model = hermite_fit(problem, kernel, {c.p, c.epsilon, c.seed});
    if (c.format == "csv") {
        os << "index,alpha\n";
        os.precision(17);
        for (Eigen::Index i = 0; i < model.alpha().size(); ++i) {
            os << i << ',' << model.alpha()(i) << '\n';
        }
    } else {
        os << io::hermite_model_to_json(model) << '\n';
    }
    return 0;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_sweep(const Common& c, const std::string& config_path, const std::string& task, const std::string& p_list,
              std::vector<double> alphas)
{
    harness::ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = harness::config_from_json(read_file(config_path));
    } else {
        std::string sampler = "sphere";
        if (!is_sampler(c.data, &sampler)) {
            throw ConfigError("sweep draws its data from a sampler, got --data " + c.data);
        }
        cfg = harness::default_sphere_config(
            task == "graph" ? harness::Task::GraphSphere : harness::Task::GalerkinSphere, c.n, c.d);
        cfg.data.sampler = sampler;
        cfg.data.noise = c.noise;
        if (!c.kernel.empty()) {
            cfg.kernels = {io::kernel_from_json(c.kernel)};
        }
        if (c.p) {
            cfg.p_grid = {*c.p};
        }
        if (!p_list.empty()) {
            cfg.p_grid = json::parse(p_list).get<std::vector<std::size_t>>();
        }
        if (!alphas.empty()) {
            cfg.weight_scales = std::move(alphas);
        }
        cfg.epsilon = c.epsilon;
        cfg.k = c.k;
        cfg.repetitions = c.reps;
        cfg.base_seed = c.seed;
        if (c.geometry == "ambient") {
            cfg.geometry = GradientGeometry::Ambient;
        }
        cfg.validate();
    }

    Output out(c.out);
    auto& os = out.stream();
    if (cfg.task == harness::Task::HermiteDemo) {
        for (const auto& r : harness::run_hermite_sweep(cfg)) {
            os << json{{"type", "hermite_demo"}, {"hermite_rmse", r.hermite_rmse}, {"plain_rmse", r.plain_rmse}}.dump()
               << '\n';
        }
        return 0;
    }
    if (cfg.task == harness::Task::EigenfunctionExport) {
        const SpectralEstimate est = harness::fit_for_export(cfg);
        os << io::estimate_to_json(est) << '\n';
        return 0;
    }

    const bool csv = c.format == "csv";
    if (csv) {
        harness::write_record_csv_header(os);
    }
    const auto result = harness::run_experiment(cfg, [&](const harness::ResultRecord& r) {
        if (csv) {
            harness::write_record_csv(os, r);
        } else {
            harness::write_record_jsonl(os, r);
        }
        os.flush();
    });
    if (csv) {
        std::cerr << "best " << result.summary.method << " error " << result.summary.best_error << " (run "
                  << result.summary.best_run_index << ")\n";
    } else {
        harness::write_summary_jsonl(os, result.summary);
    }
    return 0;
}

int cmd_export(Common c, const std::vector<std::size_t>& indices, std::size_t resolution, double margin)
{
    const Dataset data = load_data(c);
    if (data.dim() != 2) {
        throw ConfigError("export-grid needs 2-dimensional data");
    }
    const KernelSpec kernel = parse_kernel(c.kernel, KernelSpec::exponential(1.0));
    const SpectralEstimate est =
        decompose(data, kernel, {c.p, c.epsilon, c.seed, GradientGeometry::Ambient});
    harness::GridSpec grid;
    grid.resolution = {resolution, resolution};
    for (int a = 0; a < 2; ++a) {
        grid.mins[a] = data.points().col(a).minCoeff() - margin;
        grid.maxs[a] = data.points().col(a).maxCoeff() + margin;
    }
    const auto table = harness::export_eigenfunction_grid(est, indices, grid);
    Output out(c.out);
    harness::write_grid_csv(out.stream(), table, indices);
    return 0;
}

int cmd_time(const Common& c, const std::vector<std::size_t>& ns, const std::vector<int>& ds)
{
    const KernelSpec kernel = parse_kernel(c.kernel, KernelSpec::polynomial(3));
    const auto rows = harness::time_scaling_report(kernel, c.p.value_or(177), ns, ds, c.seed, c.reps,
                                                   c.geometry == "ambient" ? GradientGeometry::Ambient
                                                                           : GradientGeometry::SphereTangent);
    Output out(c.out);
    if (c.format == "jsonl") {
        for (const auto& r : rows) {
            out.stream() << json{{"n", r.n}, {"d", r.d}, {"p", r.p}, {"seconds", r.seconds}}.dump() << '\n';
        }
    } else {
        harness::write_timing_csv(out.stream(), rows);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Galerkin estimation of Laplacian spectra from samples"};
    app.require_subcommand(1);

    Common c;
    std::optional<double> alpha;
    std::string config_path;
    std::string task = "galerkin";
    std::string p_list;
    std::vector<double> alphas;
    std::vector<std::size_t> indices{0, 1, 2, 3};
    std::size_t resolution = 100;
    double margin = 0.25;
    std::vector<std::size_t> ns{20000, 40000, 80000};
    std::vector<int> ds{3};

    auto* dec = app.add_subcommand("decompose", "estimate eigenvalues and eigenfunctions");
    add_data_flags(dec, c);
    add_fit_flags(dec, c);
    add_out_flags(dec, c);
    dec->add_option("--geometry", c.geometry, "gradient geometry")->check(CLI::IsMember({"auto", "ambient", "tangent"}));

    auto* graph = app.add_subcommand("graph-baseline", "graph-Laplacian projection baseline");
    add_data_flags(graph, c);
    add_fit_flags(graph, c);
    add_out_flags(graph, c);
    graph->add_option("--alpha", alpha, "weights exp(-alpha |x-y|^2); default uses the kernel as weights");

    auto* herm = app.add_subcommand("hermite", "regression with gradient observations");
    add_data_flags(herm, c);
    add_fit_flags(herm, c);
    add_out_flags(herm, c);
    herm->add_option("--reps", c.reps, "repetitions of the sampler demo");

    auto* sweep = app.add_subcommand("sweep", "grid sweep on the sphere");
    add_data_flags(sweep, c);
    add_fit_flags(sweep, c);
    add_out_flags(sweep, c);
    sweep->add_option("--config", config_path, "experiment config JSON");
    sweep->add_option("--task", task, "galerkin or graph")->check(CLI::IsMember({"galerkin", "graph"}));
    sweep->add_option("--p-grid", p_list, "JSON list of landmark counts");
    sweep->add_option("--alpha", alphas, "graph weight scales")->delimiter(',');
    sweep->add_option("--reps", c.reps, "repetitions");
    sweep->add_option("--geometry", c.geometry, "gradient geometry")->check(CLI::IsMember({"auto", "ambient", "tangent"}));

    auto* exp = app.add_subcommand("export-grid", "eigenfunction values on a regular 2-d grid");
    add_data_flags(exp, c);
    add_fit_flags(exp, c);
    exp->add_option("--out", c.out, "output path (default stdout)");
    exp->add_option("--indices", indices, "eigenfunction indices")->delimiter(',');
    exp->add_option("--resolution", resolution, "grid points per axis")->check(CLI::PositiveNumber);
    exp->add_option("--margin", margin, "padding around the data bounding box");

    auto* timing = app.add_subcommand("time-report", "decompose wall time over n and d");
    add_fit_flags(timing, c);
    add_out_flags(timing, c);
    timing->add_option("--n", ns, "sample sizes")->delimiter(',');
    timing->add_option("--d", ds, "dimensions")->delimiter(',');
    timing->add_option("--seed", c.seed, "RNG seed");
    timing->add_option("--reps", c.reps, "timing repeats (minimum reported)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }
    if (exp->parsed() && c.data == "sampler:sphere") {
        c.data = "sampler:two_moons";
    }
    if (c.format.empty()) {
        c.format = timing->parsed() ? "csv" : "jsonl";
    }

    try {
        if (dec->parsed()) {
            return cmd_decompose(c);
        }
        if (graph->parsed()) {
            return cmd_graph(c, alpha);
        }
        if (herm->parsed()) {
            return cmd_hermite(c);
        }
        if (sweep->parsed()) {
            return cmd_sweep(c, config_path, task, p_list, alphas);
        }
        if (exp->parsed()) {
            return cmd_export(c, indices, resolution, margin);
        }
        return cmd_time(c, ns, ds);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
