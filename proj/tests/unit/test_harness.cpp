#include "doctest.h"

#include "galerkin/errors.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/harness.hpp"

#include "json.hpp"

#include <cstdlib>
#include <sstream>

using namespace galerkin;
using namespace galerkin::harness;

namespace {

ExperimentConfig small_config(Task task = Task::GalerkinSphere)
{
    ExperimentConfig c;
    c.task = task;
    c.data = {"sphere", 200, 3, 0.0};
    c.kernels = {KernelSpec::polynomial(3), KernelSpec::gaussian(1.0)};
    c.p_grid = {10, 20};
    c.weight_scales = {0.5};
    c.k = 10;
    c.repetitions = 2;
    c.base_seed = 11;
    return c;
}

void same_except_time(const ResultRecord& a, const ResultRecord& b)
{
    CHECK(a.run_index == b.run_index);
    CHECK(a.seed == b.seed);
    CHECK(a.method == b.method);
    CHECK(a.weights == b.weights);
    CHECK(a.kernel == b.kernel);
    CHECK(a.p == b.p);
    CHECK(a.surrogate_error == b.surrogate_error);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.orthogonality_defect == b.orthogonality_defect);
    CHECK(a.padded == b.padded);
    CHECK(a.error == b.error);
}

}  // namespace

TEST_CASE("one grid point, one repetition")
{
    auto c = small_config();
    c.kernels = {KernelSpec::polynomial(2)};
    c.p_grid = {15};
    c.repetitions = 1;
    std::size_t streamed = 0;
    const auto r = run_experiment(c, [&](const ResultRecord&) { ++streamed; });
    CHECK(streamed == 1);
    REQUIRE(r.records.size() == 1);
    CHECK(r.summary.method == "galerkin");
    CHECK(r.summary.best_error == r.records[0].surrogate_error);
    CHECK(r.records[0].error.empty());
    CHECK(r.records[0].wall_time > 0.0);
}

TEST_CASE("galerkin sweep layout, determinism and summary")
{
    const auto c = small_config();
    const auto a = run_experiment(c, {}, 1);
    const auto b = run_experiment(c, {}, 3);
    REQUIRE(a.records.size() == 2 * 2 * 2);
    REQUIRE(b.records.size() == a.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].run_index == i);
        same_except_time(a.records[i], b.records[i]);
    }
    CHECK(a.records[0].seed == 11);
    CHECK(a.records.back().seed == 12);
    CHECK(a.records.back().repetition == 1);

    double best = 1e300;
    for (const auto& r : a.records) {
        best = std::min(best, r.surrogate_error);
        CHECK(r.eigenvalues.size() <= c.k);
        CHECK(r.surrogate_error >= 0.0);
    }
    CHECK(a.summary.best_error == best);
    CHECK(a.records[a.summary.best_run_index].surrogate_error == best);
    CHECK(a.summary.best_per_repetition.size() == 2);
}

TEST_CASE("graph sweep records weights and rescaled eigenvalues")
{
    auto c = small_config(Task::GraphSphere);
    c.repetitions = 1;
    const auto r = run_experiment(c, {}, 1);
    // (kernel weights + one alpha) x 2 kernels x 2 p
    REQUIRE(r.records.size() == 8);
    CHECK(r.records[0].weights == "kernel");
    CHECK(r.records[4].weights.rfind("alpha=", 0) == 0);
    const auto truth = sphere_spectrum(3, c.k);
    for (const auto& rec : r.records) {
        CHECK(rec.method == "graph");
        if (!rec.eigenvalues.empty()) {
            double s = 0.0;
            for (double v : rec.eigenvalues) {
                s += v;
            }
            CHECK(s == doctest::Approx(truth.sum(rec.eigenvalues.size())).epsilon(1e-10));
        }
    }
}

TEST_CASE("per-run failures are recorded, not thrown")
{
    auto c = small_config(Task::GraphSphere);
    c.kernels = {KernelSpec::polynomial(1, 0.0, 1.0)};  // negative weights
    c.weight_scales = {};
    c.repetitions = 1;
    const auto r = run_experiment(c, {}, 1);
    REQUIRE(r.records.size() == 2);
    for (const auto& rec : r.records) {
        CHECK_FALSE(rec.error.empty());
        CHECK(rec.surrogate_error == 1.0);
    }
}

TEST_CASE("config validation")
{
    auto c = small_config();
    CHECK_NOTHROW(c.validate());
    c.p_grid = {};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.p_grid = {500};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.kernels = {};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.data.sampler = "torus";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config(Task::HermiteDemo);
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("config JSON round trip")
{
    auto c = small_config(Task::GraphSphere);
    c.epsilon = 1e-7;
    c.geometry = GradientGeometry::Ambient;
    const auto back = config_from_json(config_to_json(c));
    CHECK(back.task == c.task);
    CHECK(back.data.n == c.data.n);
    CHECK(back.kernels == c.kernels);
    CHECK(back.p_grid == c.p_grid);
    CHECK(back.weight_scales == c.weight_scales);
    CHECK(back.epsilon == c.epsilon);
    CHECK(back.repetitions == c.repetitions);
    CHECK(back.base_seed == c.base_seed);
    CHECK(back.geometry == GradientGeometry::Ambient);

    const auto minimal = config_from_json(R"({"data":{"n":2000,"d":3}})");
    CHECK(minimal.kernels.size() == 15);
    CHECK(minimal.p_grid == std::vector<std::size_t>{30, 72, 173, 416, 1000});
    CHECK_THROWS_AS(config_from_json("{"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"task":"nope"})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"data":{"n":"many"}})"), ConfigError);
}

TEST_CASE("default grids")
{
    CHECK(default_kernel_grid().size() == 15);
    CHECK(default_p_grid(100) == std::vector<std::size_t>{30, 72});
    CHECK(default_p_grid(10) == std::vector<std::size_t>{10});
    const auto a = default_weight_scales();
    CHECK(a.size() == 5);
    CHECK(a[2] == doctest::Approx(0.5));
}

TEST_CASE("worker count honours the environment")
{
    setenv("GALERKIN_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("GALERKIN_THREADS", "junk", 1);
    CHECK(worker_count() >= 1);
    unsetenv("GALERKIN_THREADS");
}

TEST_CASE("record writers")
{
    const auto r = run_experiment([] {
        auto c = small_config();
        c.repetitions = 1;
        c.kernels = {KernelSpec::polynomial(2)};
        c.p_grid = {10};
        return c;
    }());
    std::stringstream jl;
    write_record_jsonl(jl, r.records[0]);
    write_summary_jsonl(jl, r.summary);
    std::string line;
    std::getline(jl, line);
    const auto rec = nlohmann::json::parse(line);
    CHECK(rec["type"] == "run");
    CHECK(rec["kernel"]["family"] == "poly");
    std::getline(jl, line);
    CHECK(nlohmann::json::parse(line)["type"] == "summary");

    std::stringstream csv;
    write_record_csv_header(csv);
    write_record_csv(csv, r.records[0]);
    std::getline(csv, line);
    CHECK(line.rfind("run_index,", 0) == 0);
    std::getline(csv, line);
    CHECK(line.rfind("0,0,11,galerkin,", 0) == 0);
}

TEST_CASE("eigenfunction grid export")
{
    const auto data = sample_two_moons(300, 0.05, 1);
    const auto est = decompose(data, KernelSpec::exponential(1.0), {20, std::nullopt, 0});
    GridSpec one;
    one.mins = {0.25, -0.5};
    one.maxs = {0.25, -0.5};
    one.resolution = {1, 1};
    const std::vector<std::size_t> idx{0, 1, 2};
    const auto t = export_eigenfunction_grid(est, idx, one);
    REQUIRE(t.rows() == 1);
    const std::vector<double> x{0.25, -0.5};
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(t(0, 2 + i) == doctest::Approx(est.evaluate(i, x)).epsilon(1e-12));
    }

    GridSpec g;
    g.resolution = {4, 3};
    const auto full = export_eigenfunction_grid(est, idx, g);
    CHECK(full.rows() == 12);
    CHECK(full(1, 0) > full(0, 0));
    CHECK(full(1, 1) == full(0, 1));

    Matrix A = est.left_coeffs();
    A.row(1).setZero();
    const SpectralEstimate zeroed(est.values(), A, A, est.landmarks(), est.kernel(), est.epsilon());
    CHECK(export_eigenfunction_grid(zeroed, idx, g).col(3).isZero());

    std::stringstream out;
    write_grid_csv(out, t, idx);
    std::string header;
    std::getline(out, header);
    CHECK(header == "x1,x2,f0,f1,f2");

    const auto sphere = decompose(sample_sphere(100, 3, 1), KernelSpec::polynomial(2), {10, std::nullopt, 0});
    CHECK_THROWS_AS(export_eigenfunction_grid(sphere, idx, g), ConfigError);
}

TEST_CASE("timing report")
{
    const std::vector<std::size_t> ns{300};
    const std::vector<int> ds{3};
    const auto rows = time_scaling_report(KernelSpec::polynomial(3), 20, ns, ds, 1, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 300);
    CHECK(rows[0].seconds > 0.0);
    std::stringstream out;
    write_timing_csv(out, rows);
    CHECK(out.str().rfind("n,d,p,seconds\n300,3,20,", 0) == 0);
}

TEST_CASE("hermite demo")
{
    HermiteDemoConfig c;
    c.n = 200;
    c.p = 20;
    c.n_test = 100;
    const auto r = hermite_demo(c, 3);
    CHECK(r.hermite_rmse >= 0.0);
    CHECK(r.plain_rmse >= 0.0);
    const auto again = hermite_demo(c, 3);
    CHECK(again.hermite_rmse == r.hermite_rmse);
}
