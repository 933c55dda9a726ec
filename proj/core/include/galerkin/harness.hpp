#pragma once

#include "galerkin/dataset.hpp"
#include "galerkin/gram.hpp"
#include "galerkin/kernels.hpp"
#include "galerkin/spectral.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace galerkin::harness {

enum class Task { GalerkinSphere, GraphSphere, HermiteDemo, EigenfunctionExport };

struct DatasetSpec {
    std::string sampler = "sphere";  // sphere | gaussian | two_moons
    std::size_t n = 1000;
    int d = 3;
    double noise = 0.05;  // two_moons only
};

/// Sweep description. Grid points are kernels x p_grid (Galerkin) or
/// weight options x kernels x p_grid (graph baseline), each repeated
/// `repetitions` times on a fresh dataset drawn with seed base_seed + r.
struct ExperimentConfig {
    Task task = Task::GalerkinSphere;
    DatasetSpec data;
    std::vector<KernelSpec> kernels;
    std::vector<std::size_t> p_grid;
    std::vector<double> weight_scales;  // graph alpha values, exp(-alpha |x_i - x_j|^2)
    bool kernel_weights = true;         // graph option w_ij = k_{x_i}(x_j) with the basis kernel
    std::size_t k = 25;
    std::optional<double> epsilon;
    std::size_t repetitions = 1;
    std::uint64_t base_seed = 0;
    GradientGeometry geometry = GradientGeometry::SphereTangent;

    /// Throws ConfigError on empty grids or n < max(p_grid).
    void validate() const;
};

/// Polynomial s in {2..6}, exponential sigma in {.1, 1, 10, 100, 1000},
/// Gaussian sigma in {.01, .1, 1, 10, 100}.
std::vector<KernelSpec> default_kernel_grid();

/// Five log-spaced values in [30, 1000] (30, 72, 173, 416, 1000), dropping those above n.
std::vector<std::size_t> default_p_grid(std::size_t n);

/// alpha = 1 / (2 sigma^2) for sigma in {.01, .1, 1, 10, 100}.
std::vector<double> default_weight_scales();

/// Default grids around a sphere dataset of size n in dimension d.
ExperimentConfig default_sphere_config(Task task, std::size_t n, int d);

ExperimentConfig config_from_json(std::string_view json);
std::string config_to_json(const ExperimentConfig& config);

/// One grid point x repetition.
struct ResultRecord {
    std::size_t run_index = 0;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
    std::string method;   // "galerkin" or "graph"
    std::string weights;  // graph only: "kernel" or "alpha=<value>"
    KernelSpec kernel;
    std::size_t p = 0;
    std::size_t n = 0;
    int d = 0;
    double surrogate_error = 0.0;
    double wall_time = 0.0;  // assembly + solve seconds; graph runs share the n^2 p projection across p
    std::vector<double> eigenvalues;  // first k nonzero, ascending (rescaled for graph)
    double orthogonality_defect = 0.0;  // max |off-diagonal| of the training Gram of the first k+1 functions
    bool padded = false;
    std::string error;  // non-empty when the run failed; surrogate_error is then 1
};

/// Best-of-grid aggregate for one (n, d, method).
struct SummaryRecord {
    std::string method;
    std::size_t n = 0;
    int d = 0;
    double best_error = 0.0;  // min over every record
    std::size_t best_run_index = 0;
    std::vector<double> best_per_repetition;
};

struct ExperimentResult {
    std::vector<ResultRecord> records;
    SummaryRecord summary;
};

using RecordSink = std::function<void(const ResultRecord&)>;

/// Runs the sweep with up to `threads` workers (0: GALERKIN_THREADS or the
/// hardware concurrency). Records are emitted to `sink` and returned in
/// run-index order whatever the schedule. Failures inside a run are stored in
/// the record. Only GalerkinSphere and GraphSphere are sweepable.
ExperimentResult run_experiment(const ExperimentConfig& config, const RecordSink& sink = {}, std::size_t threads = 0);

/// Min-aggregation of records that share method/n/d.
SummaryRecord summarize(const std::vector<ResultRecord>& records);

/// Worker count from GALERKIN_THREADS, else hardware concurrency (at least 1).
std::size_t worker_count();

/// Draws a dataset from a sampler spec.
Dataset sample_dataset(const DatasetSpec& spec, std::uint64_t seed);

/// Surrogate error of Galerkin eigenvalues against the sphere spectrum.
double galerkin_sphere_error(std::span<const double> values, int d, std::size_t k,
                             std::vector<double>* kept = nullptr, bool* padded = nullptr);

/// Surrogate error of graph eigenvalues after rescaling the first k nonzero
/// ones to sum to the true sum.
double graph_sphere_error(std::span<const double> values, int d, std::size_t k,
                          std::vector<double>* kept = nullptr, bool* padded = nullptr);

void write_record_jsonl(std::ostream& out, const ResultRecord& record);
void write_summary_jsonl(std::ostream& out, const SummaryRecord& summary);
void write_record_csv_header(std::ostream& out);
void write_record_csv(std::ostream& out, const ResultRecord& record);

/// Regular 2-D grid, resolution[a] points per axis from mins[a] to maxs[a].
struct GridSpec {
    std::array<double, 2> mins{-1.0, -1.0};
    std::array<double, 2> maxs{1.0, 1.0};
    std::array<std::size_t, 2> resolution{50, 50};
};

/// Rows (x1, x2, f_{i1}, f_{i2}, ...) over the grid, x1 varying fastest.
/// Throws ConfigError unless the estimate lives in d = 2.
RowMatrix export_eigenfunction_grid(const SpectralEstimate& est, std::span<const std::size_t> indices,
                                    const GridSpec& grid);
void write_grid_csv(std::ostream& out, const RowMatrix& table, std::span<const std::size_t> indices);

struct TimingRow {
    std::size_t n = 0;
    int d = 0;
    std::size_t p = 0;
    double seconds = 0.0;  // min over `repeats` timed decompose calls
};

/// Wall time of decompose on sphere data per (n, d); data generation is not timed.
std::vector<TimingRow> time_scaling_report(const KernelSpec& kernel, std::size_t p, std::span<const std::size_t> n_grid,
                                           std::span<const int> d_grid, std::uint64_t seed, std::size_t repeats = 3,
                                           GradientGeometry geometry = GradientGeometry::SphereTangent);
void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

struct HermiteDemoResult {
    double hermite_rmse = 0.0;
    double plain_rmse = 0.0;
};

struct HermiteDemoConfig {
    std::size_t n = 1000;
    std::size_t p = 100;
    int d = 1;
    std::size_t n_test = 2000;
    double target = 1.0;  // constant function, zero gradient
    KernelSpec kernel = KernelSpec::gaussian(1.0);
    std::optional<double> epsilon;
};

/// Constant noiseless target on x ~ U[-1, 1]^d: held-out RMSE of the Hermite
/// fit and of plain kernel ridge with the same landmarks.
HermiteDemoResult hermite_demo(const HermiteDemoConfig& config, std::uint64_t seed);

/// hermite_demo once per repetition (seed base_seed + r) with the config's
/// first kernel, n, d and first p.
std::vector<HermiteDemoResult> run_hermite_sweep(const ExperimentConfig& config);

/// decompose on the sampled dataset (seed base_seed) with the config's first
/// kernel and first p, for eigenfunction export.
SpectralEstimate fit_for_export(const ExperimentConfig& config);

}  // namespace galerkin::harness
