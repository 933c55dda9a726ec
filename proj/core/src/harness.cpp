#include "galerkin/harness.hpp"

#include "galerkin/errors.hpp"
#include "galerkin/graph_laplacian.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/hermite.hpp"
#include "galerkin/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

namespace galerkin::harness {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::array kTasks = {
    std::pair{Task::GalerkinSphere, "galerkin_sphere"},
    std::pair{Task::GraphSphere, "graph_sphere"},
    std::pair{Task::HermiteDemo, "hermite_demo"},
    std::pair{Task::EigenfunctionExport, "eigenfunction_export"},
};

std::string task_name(Task t)
{
    for (const auto& [task, name] : kTasks) {
        if (task == t) {
            return name;
        }
    }
    return "";
}

Task task_from(const std::string& s)
{
    for (const auto& [task, name] : kTasks) {
        if (s == name) {
            return task;
        }
    }
    throw ConfigError("unknown task \"" + s + "\"");
}

json kernel_json(const KernelSpec& k)
{
    return json::parse(io::kernel_to_json(k));
}

double max_off_diagonal(const Matrix& m)
{
    double worst = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j) {
                worst = std::max(worst, std::abs(m(i, j)));
            }
        }
    }
    return worst;
}

std::vector<std::size_t> usable_p(const ExperimentConfig& c)
{
    std::vector<std::size_t> out;
    for (std::size_t p : c.p_grid) {
        if (p <= c.data.n) {
            out.push_back(p);
        }
    }
    return out;
}

struct WeightOption {
    bool from_kernel = false;
    double alpha = 0.0;

    [[nodiscard]] std::string label() const
    {
        if (from_kernel) {
            return "kernel";
        }
        json j = alpha;
        return "alpha=" + j.dump();
    }
};

std::vector<WeightOption> weight_options(const ExperimentConfig& c)
{
    std::vector<WeightOption> out;
    if (c.kernel_weights) {
        out.push_back({true, 0.0});
    }
    for (double a : c.weight_scales) {
        out.push_back({false, a});
    }
    return out;
}

void fill_failure(ResultRecord& r, const std::exception& e)
{
    r.error = e.what();
    r.surrogate_error = 1.0;
    r.eigenvalues.clear();
    r.padded = true;
}

// One unit of scheduled work: produces the records for a contiguous run-index range.
struct Job {
    std::size_t first_index = 0;
    std::size_t count = 0;
    std::function<std::vector<ResultRecord>()> work;
};

std::vector<Job> galerkin_jobs(const ExperimentConfig& c)
{
    std::vector<Job> jobs;
    const auto ps = usable_p(c);
    std::size_t index = 0;
    for (std::size_t rep = 0; rep < c.repetitions; ++rep) {
        for (const KernelSpec& kernel : c.kernels) {
            const std::uint64_t seed = c.base_seed + rep;
            jobs.push_back({index, ps.size(), [c, ps, kernel, rep, seed, index]() {
                                const Dataset data = sample_dataset(c.data, seed);
                                std::vector<ResultRecord> out;
                                for (std::size_t j = 0; j < ps.size(); ++j) {
                                    ResultRecord r;
                                    r.run_index = index + j;
                                    r.repetition = rep;
                                    r.seed = seed;
                                    r.method = "galerkin";
                                    r.kernel = kernel;
                                    r.p = ps[j];
                                    r.n = data.size();
                                    r.d = static_cast<int>(data.dim());
                                    try {
                                        const auto start = Clock::now();
                                        const SpectralEstimate est =
                                            decompose(data, kernel, {ps[j], c.epsilon, seed, c.geometry});
                                        r.wall_time = seconds_since(start);
                                        const std::span<const double> vals(est.values().data(), est.size());
                                        r.surrogate_error =
                                            galerkin_sphere_error(vals, r.d, c.k, &r.eigenvalues, &r.padded);
                                        const std::size_t kk = std::min(c.k + 1, est.size());
                                        r.orthogonality_defect =
                                            max_off_diagonal(empirical_orthogonality(est, data, kk));
                                    } catch (const std::exception& e) {
                                        fill_failure(r, e);
                                    }
                                    out.push_back(std::move(r));
                                }
                                return out;
                            }});
            index += ps.size();
        }
    }
    return jobs;
}

std::vector<Job> graph_jobs(const ExperimentConfig& c)
{
    std::vector<Job> jobs;
    const auto ps = usable_p(c);
    const auto options = weight_options(c);
    std::size_t index = 0;
    for (std::size_t rep = 0; rep < c.repetitions; ++rep) {
        for (const WeightOption& w : options) {
            const std::uint64_t seed = c.base_seed + rep;
            const std::size_t count = ps.size() * c.kernels.size();
            jobs.push_back({index, count, [c, ps, w, rep, seed, index]() {
                                const Dataset data = sample_dataset(c.data, seed);
                                std::vector<ResultRecord> out;
                                std::optional<GraphWeights> shared;
                                double shared_time = 0.0;
                                std::size_t idx = index;
                                for (const KernelSpec& kernel : c.kernels) {
                                    std::vector<ResultRecord> batch;
                                    for (std::size_t p : ps) {
                                        ResultRecord r;
                                        r.run_index = idx++;
                                        r.repetition = rep;
                                        r.seed = seed;
                                        r.method = "graph";
                                        r.weights = w.label();
                                        r.kernel = kernel;
                                        r.p = p;
                                        r.n = data.size();
                                        r.d = static_cast<int>(data.dim());
                                        batch.push_back(std::move(r));
                                    }
                                    try {
                                        auto start = Clock::now();
                                        double weight_time = shared_time;
                                        std::optional<GraphWeights> own;
                                        if (w.from_kernel) {
                                            own = kernel_weight_matrix(data, kernel);
                                            weight_time = seconds_since(start);
                                        } else if (!shared) {
                                            shared = weight_matrix(data, w.alpha);
                                            shared_time = weight_time = seconds_since(start);
                                        }
                                        const GraphWeights& weights = own ? *own : *shared;
                                        start = Clock::now();
                                        GraphOptions go;
                                        go.epsilon = c.epsilon;
                                        go.seed = seed;
                                        const auto ests = graph_decompose_nested(data, kernel, weights, ps, go);
                                        const double fit_time = seconds_since(start);
                                        for (std::size_t j = 0; j < ps.size(); ++j) {
                                            ResultRecord& r = batch[j];
                                            r.wall_time = weight_time + fit_time;
                                            const auto& est = ests[j];
                                            const std::span<const double> vals(est.values().data(), est.size());
                                            r.surrogate_error =
                                                graph_sphere_error(vals, r.d, c.k, &r.eigenvalues, &r.padded);
                                            const std::size_t kk = std::min(c.k + 1, est.size());
                                            r.orthogonality_defect =
                                                max_off_diagonal(empirical_orthogonality(est, data, kk));
                                        }
                                    } catch (const std::exception& e) {
                                        for (auto& r : batch) {
                                            fill_failure(r, e);
                                        }
                                    }
                                    std::move(batch.begin(), batch.end(), std::back_inserter(out));
                                }
                                return out;
                            }});
            index += count;
        }
    }
    return jobs;
}

}  // namespace

void ExperimentConfig::validate() const
{
    if (data.n < 1) {
        throw ConfigError("dataset size n must be >= 1");
    }
    if (data.sampler != "sphere" && data.sampler != "gaussian" && data.sampler != "two_moons") {
        throw ConfigError("unknown sampler \"" + data.sampler + "\" (sphere, gaussian, two_moons)");
    }
    if (kernels.empty()) {
        throw ConfigError("kernel grid is empty");
    }
    for (const auto& k : kernels) {
        k.validate();
    }
    if (p_grid.empty()) {
        throw ConfigError("p grid is empty");
    }
    if (*std::max_element(p_grid.begin(), p_grid.end()) > data.n) {
        throw ConfigError("p grid exceeds n=" + std::to_string(data.n));
    }
    if (std::find(p_grid.begin(), p_grid.end(), std::size_t{0}) != p_grid.end()) {
        throw ConfigError("p grid contains 0");
    }
    if (task == Task::GraphSphere && weight_scales.empty() && !kernel_weights) {
        throw ConfigError("graph task needs at least one weight option");
    }
    for (double a : weight_scales) {
        if (!(a > 0.0)) {
            throw ConfigError("weight scales must be positive");
        }
    }
    if (k < 1) {
        throw ConfigError("metric truncation k must be >= 1");
    }
    if (repetitions < 1) {
        throw ConfigError("repetitions must be >= 1");
    }
    if (epsilon && !(*epsilon >= 0.0)) {
        throw ConfigError("epsilon must be >= 0");
    }
}

std::vector<KernelSpec> default_kernel_grid()
{
    std::vector<KernelSpec> out;
    for (int s : {2, 3, 4, 5, 6}) {
        out.push_back(KernelSpec::polynomial(s));
    }
    for (double sigma : {0.1, 1.0, 10.0, 100.0, 1000.0}) {
        out.push_back(KernelSpec::exponential(sigma));
    }
    for (double sigma : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        out.push_back(KernelSpec::gaussian(sigma));
    }
    return out;
}

std::vector<std::size_t> default_p_grid(std::size_t n)
{
    std::vector<std::size_t> out;
    const double lo = std::log10(30.0);
    const double hi = std::log10(1000.0);
    for (int i = 0; i < 5; ++i) {
        const auto p = static_cast<std::size_t>(std::lround(std::pow(10.0, lo + (hi - lo) * i / 4.0)));
        if (p <= n) {
            out.push_back(p);
        }
    }
    if (out.empty()) {
        out.push_back(n);
    }
    return out;
}

std::vector<double> default_weight_scales()
{
    std::vector<double> out;
    for (double sigma : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        out.push_back(1.0 / (2.0 * sigma * sigma));
    }
    return out;
}

ExperimentConfig default_sphere_config(Task task, std::size_t n, int d)
{
    ExperimentConfig c;
    c.task = task;
    c.data = {"sphere", n, d, 0.0};
    c.kernels = default_kernel_grid();
    c.p_grid = default_p_grid(n);
    c.weight_scales = default_weight_scales();
    return c;
}

ExperimentConfig config_from_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
    try {
        ExperimentConfig c;
        c.task = task_from(j.value("task", std::string("galerkin_sphere")));
        if (j.contains("data")) {
            const json& dj = j.at("data");
            c.data.sampler = dj.value("sampler", c.data.sampler);
            c.data.n = dj.value("n", c.data.n);
            c.data.d = dj.value("d", c.data.d);
            c.data.noise = dj.value("noise", c.data.noise);
        }
        if (j.contains("kernels")) {
            for (const auto& kj : j.at("kernels")) {
                c.kernels.push_back(io::kernel_from_json(kj.dump()));
            }
        } else {
            c.kernels = default_kernel_grid();
        }
        c.p_grid = j.contains("p_grid") ? j.at("p_grid").get<std::vector<std::size_t>>() : default_p_grid(c.data.n);
        c.weight_scales = j.contains("weight_scales") ? j.at("weight_scales").get<std::vector<double>>()
                                                      : default_weight_scales();
        c.kernel_weights = j.value("kernel_weights", c.kernel_weights);
        c.k = j.value("k", c.k);
        if (j.contains("epsilon") && !j.at("epsilon").is_null()) {
            c.epsilon = j.at("epsilon").get<double>();
        }
        c.repetitions = j.value("repetitions", c.repetitions);
        c.base_seed = j.value("base_seed", c.base_seed);
        const auto geometry = j.value("geometry", std::string("tangent"));
        if (geometry == "tangent") {
            c.geometry = GradientGeometry::SphereTangent;
        } else if (geometry == "ambient") {
            c.geometry = GradientGeometry::Ambient;
        } else {
            throw ConfigError("geometry must be \"tangent\" or \"ambient\"");
        }
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& c)
{
    json kernels = json::array();
    for (const auto& k : c.kernels) {
        kernels.push_back(kernel_json(k));
    }
    json j{{"task", task_name(c.task)},
           {"data", {{"sampler", c.data.sampler}, {"n", c.data.n}, {"d", c.data.d}, {"noise", c.data.noise}}},
           {"kernels", kernels},
           {"p_grid", c.p_grid},
           {"weight_scales", c.weight_scales},
           {"kernel_weights", c.kernel_weights},
           {"k", c.k},
           {"epsilon", c.epsilon ? json(*c.epsilon) : json(nullptr)},
           {"repetitions", c.repetitions},
           {"base_seed", c.base_seed},
           {"geometry", c.geometry == GradientGeometry::SphereTangent ? "tangent" : "ambient"}};
    return j.dump();
}

std::size_t worker_count()
{
    if (const char* env = std::getenv("GALERKIN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

Dataset sample_dataset(const DatasetSpec& spec, std::uint64_t seed)
{
    if (spec.sampler == "sphere") {
        return sample_sphere(spec.n, spec.d, seed);
    }
    if (spec.sampler == "gaussian") {
        return sample_gaussian(spec.n, spec.d, seed);
    }
    if (spec.sampler == "two_moons") {
        return sample_two_moons(spec.n, spec.noise, seed);
    }
    throw ConfigError("unknown sampler \"" + spec.sampler + "\"");
}

double galerkin_sphere_error(std::span<const double> values, int d, std::size_t k, std::vector<double>* kept,
                             bool* padded)
{
    const auto truth = sphere_spectrum(d, k);
    const auto inv = estimate_to_inverses(values, k);
    if (kept) {
        auto nz = nonzero_eigenvalues(values);
        nz.resize(std::min(nz.size(), k));
        *kept = std::move(nz);
    }
    if (padded) {
        *padded = inv.padded;
    }
    return surrogate_error(truth, std::span<const double>(inv.inverses.data(), k), k);
}

double graph_sphere_error(std::span<const double> values, int d, std::size_t k, std::vector<double>* kept,
                          bool* padded)
{
    const auto truth = sphere_spectrum(d, k);
    auto nz = nonzero_eigenvalues(values);
    const std::size_t m = std::min(k, nz.size());
    Vector inv = Vector::Zero(static_cast<Eigen::Index>(k));
    std::vector<double> scaled;
    if (m > 0) {
        const Vector head = Eigen::Map<const Vector>(nz.data(), static_cast<Eigen::Index>(m));
        const Vector r = rescale_eigenvalues(head, truth.sum(m), m);
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            inv(i) = 1.0 / r(i);
            scaled.push_back(r(i));
        }
    }
    if (kept) {
        *kept = std::move(scaled);
    }
    if (padded) {
        *padded = m < k;
    }
    return surrogate_error(truth, std::span<const double>(inv.data(), k), k);
}

SummaryRecord summarize(const std::vector<ResultRecord>& records)
{
    SummaryRecord s;
    if (records.empty()) {
        return s;
    }
    s.method = records.front().method;
    s.n = records.front().n;
    s.d = records.front().d;
    s.best_error = std::numeric_limits<double>::infinity();
    std::map<std::size_t, double> per_rep;
    for (const auto& r : records) {
        if (r.surrogate_error < s.best_error) {
            s.best_error = r.surrogate_error;
            s.best_run_index = r.run_index;
        }
        auto [it, inserted] = per_rep.try_emplace(r.repetition, r.surrogate_error);
        if (!inserted) {
            it->second = std::min(it->second, r.surrogate_error);
        }
    }
    for (const auto& [rep, best] : per_rep) {
        s.best_per_repetition.push_back(best);
    }
    return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RecordSink& sink, std::size_t threads)
{
    config.validate();
    std::vector<Job> jobs;
    if (config.task == Task::GalerkinSphere) {
        jobs = galerkin_jobs(config);
    } else if (config.task == Task::GraphSphere) {
        jobs = graph_jobs(config);
    } else {
        throw ConfigError("run_experiment sweeps only galerkin_sphere and graph_sphere tasks");
    }
    if (config.data.sampler != "sphere") {
        throw ConfigError("sphere tasks need the sphere sampler");
    }

    std::vector<std::optional<std::vector<ResultRecord>>> done(jobs.size());
    std::vector<ResultRecord> ordered;
    std::size_t next_emit = 0;
    std::mutex mu;
    std::atomic<std::size_t> next_job{0};

    auto flush = [&]() {
        // emit the completed prefix in run-index order
        while (next_emit < jobs.size() && done[next_emit]) {
            for (auto& r : *done[next_emit]) {
                if (sink) {
                    sink(r);
                }
                ordered.push_back(std::move(r));
            }
            done[next_emit].reset();
            ++next_emit;
        }
    };
    auto worker = [&]() {
        for (std::size_t j = next_job++; j < jobs.size(); j = next_job++) {
            auto recs = jobs[j].work();
            std::lock_guard lock(mu);
            done[j] = std::move(recs);
            flush();
        }
    };

    const std::size_t nworkers = std::min(threads ? threads : worker_count(), jobs.size());
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < nworkers; ++w) {
            pool.emplace_back(worker);
        }
    }
    ExperimentResult result{std::move(ordered), {}};
    result.summary = summarize(result.records);
    return result;
}

namespace {

json record_json(const ResultRecord& r)
{
    json j{{"type", "run"},
           {"run_index", r.run_index},
           {"repetition", r.repetition},
           {"seed", r.seed},
           {"method", r.method},
           {"kernel", kernel_json(r.kernel)},
           {"p", r.p},
           {"n", r.n},
           {"d", r.d},
           {"surrogate_error", r.surrogate_error},
           {"wall_time", r.wall_time},
           {"eigenvalues", r.eigenvalues},
           {"orthogonality_defect", r.orthogonality_defect},
           {"padded", r.padded}};
    if (!r.weights.empty()) {
        j["weights"] = r.weights;
    }
    if (!r.error.empty()) {
        j["error"] = r.error;
    }
    return j;
}

}  // namespace

void write_record_jsonl(std::ostream& out, const ResultRecord& record)
{
    out << record_json(record).dump() << '\n';
}

void write_summary_jsonl(std::ostream& out, const SummaryRecord& s)
{
    out << json{{"type", "summary"},
                {"method", s.method},
                {"n", s.n},
                {"d", s.d},
                {"best_error", s.best_error},
                {"best_run_index", s.best_run_index},
                {"best_per_repetition", s.best_per_repetition}}
               .dump()
        << '\n';
}

void write_record_csv_header(std::ostream& out)
{
    out << "run_index,repetition,seed,method,weights,kernel,p,n,d,surrogate_error,wall_time,orthogonality_defect,"
           "padded,error\n";
}

void write_record_csv(std::ostream& out, const ResultRecord& r)
{
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    const auto old = out.precision(17);
    out << r.run_index << ',' << r.repetition << ',' << r.seed << ',' << r.method << ',' << r.weights << ','
        << r.kernel.label() << ',' << r.p << ',' << r.n << ',' << r.d << ',' << r.surrogate_error << ','
        << r.wall_time << ',' << r.orthogonality_defect << ',' << (r.padded ? 1 : 0) << ',' << err << '\n';
    out.precision(old);
}

RowMatrix export_eigenfunction_grid(const SpectralEstimate& est, std::span<const std::size_t> indices,
                                    const GridSpec& grid)
{
    if (est.landmarks().dim() != 2) {
        throw ConfigError("eigenfunction grid export supports d = 2 only, estimate has d = " +
                          std::to_string(est.landmarks().dim()));
    }
    for (std::size_t i : indices) {
        if (i >= est.size()) {
            throw InputError("eigenfunction index " + std::to_string(i) + " out of range");
        }
    }
    const auto [r0, r1] = grid.resolution;
    if (r0 < 1 || r1 < 1) {
        throw ConfigError("grid resolution must be >= 1 per axis");
    }
    auto axis = [&](int a, std::size_t i, std::size_t r) {
        return r == 1 ? grid.mins[a] : grid.mins[a] + (grid.maxs[a] - grid.mins[a]) * static_cast<double>(i) /
                                                          static_cast<double>(r - 1);
    };
    RowMatrix pts(static_cast<Eigen::Index>(r0 * r1), 2);
    for (std::size_t b = 0; b < r1; ++b) {
        for (std::size_t a = 0; a < r0; ++a) {
            const auto row = static_cast<Eigen::Index>(b * r0 + a);
            pts(row, 0) = axis(0, a, r0);
            pts(row, 1) = axis(1, b, r1);
        }
    }
    const Dataset grid_points(pts);
    const Matrix F = est.evaluate_all(grid_points);  // t x m
    RowMatrix table(pts.rows(), 2 + static_cast<Eigen::Index>(indices.size()));
    table.leftCols(2) = pts;
    for (std::size_t c = 0; c < indices.size(); ++c) {
        table.col(2 + static_cast<Eigen::Index>(c)) = F.row(static_cast<Eigen::Index>(indices[c])).transpose();
    }
    return table;
}

void write_grid_csv(std::ostream& out, const RowMatrix& table, std::span<const std::size_t> indices)
{
    out << "x1,x2";
    for (std::size_t i : indices) {
        out << ",f" << i;
    }
    out << '\n';
    const auto old = out.precision(17);
    for (Eigen::Index r = 0; r < table.rows(); ++r) {
        for (Eigen::Index c = 0; c < table.cols(); ++c) {
            out << (c ? "," : "") << table(r, c);
        }
        out << '\n';
    }
    out.precision(old);
}

std::vector<TimingRow> time_scaling_report(const KernelSpec& kernel, std::size_t p, std::span<const std::size_t> n_grid,
                                           std::span<const int> d_grid, std::uint64_t seed, std::size_t repeats,
                                           GradientGeometry geometry)
{
    std::vector<TimingRow> rows;
    for (int d : d_grid) {
        for (std::size_t n : n_grid) {
            const Dataset data = sample_sphere(n, d, seed);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < std::max<std::size_t>(repeats, 1); ++r) {
                const auto start = Clock::now();
                const SpectralEstimate est = decompose(data, kernel, {p, std::nullopt, seed, geometry});
                best = std::min(best, seconds_since(start));
                if (est.size() == 0) {
                    throw SolverError("empty estimate in timing run");
                }
            }
            rows.push_back({n, d, p, best});
        }
    }
    return rows;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows)
{
    out << "n,d,p,seconds\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.d << ',' << r.p << ',' << r.seconds << '\n';
    }
}

HermiteDemoResult hermite_demo(const HermiteDemoConfig& config, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto draw = [&](std::size_t n) {
        RowMatrix x(static_cast<Eigen::Index>(n), config.d);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            x.data()[i] = unif(rng);
        }
        return Dataset(std::move(x));
    };
    const Dataset train = draw(config.n);
    const Dataset test = draw(config.n_test);
    const Vector y = Vector::Constant(static_cast<Eigen::Index>(config.n), config.target);
    const HermiteProblem problem{train, y, RowMatrix::Zero(static_cast<Eigen::Index>(config.n), config.d)};

    const HermiteOptions opts{config.p, config.epsilon, seed};
    const HermiteModel herm = hermite_fit(problem, config.kernel, opts);
    const HermiteModel plain = plain_ridge_fit(train, y, config.kernel, opts);
    auto rmse = [&](const HermiteModel& m) {
        return std::sqrt((m.predict_all(test).array() - config.target).square().mean());
    };
    return {rmse(herm), rmse(plain)};
}

std::vector<HermiteDemoResult> run_hermite_sweep(const ExperimentConfig& config)
{
    HermiteDemoConfig hc;
    hc.n = config.data.n;
    hc.d = config.data.d;
    hc.p = config.p_grid.front();
    hc.kernel = config.kernels.front();
    hc.epsilon = config.epsilon;
    std::vector<HermiteDemoResult> out;
    for (std::size_t r = 0; r < config.repetitions; ++r) {
        out.push_back(hermite_demo(hc, config.base_seed + r));
    }
    return out;
}

SpectralEstimate fit_for_export(const ExperimentConfig& config)
{
    config.validate();
    const Dataset data = sample_dataset(config.data, config.base_seed);
    const GradientGeometry geometry = config.data.sampler == "sphere" ? config.geometry : GradientGeometry::Ambient;
    return decompose(data, config.kernels.front(), {config.p_grid.front(), config.epsilon, config.base_seed, geometry});
}

}  // namespace galerkin::harness
