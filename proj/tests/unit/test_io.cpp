#include "doctest.h"
#include "oracles.hpp"

#include "galerkin/errors.hpp"
#include "galerkin/gram.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/hermite.hpp"
#include "galerkin/io.hpp"
#include "galerkin/spectral.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace galerkin;

namespace {

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("galerkin_io_" + name);
}

}  // namespace

TEST_CASE("container round trip")
{
    io::Container c;
    c.metadata = R"({"k":1})";
    RowMatrix a(2, 3);
    a << 1, 2, 3, 4, 5, 6.5;
    c.arrays.push_back({"a", a});
    c.arrays.push_back({"empty", RowMatrix(0, 4)});
    std::stringstream buf;
    io::write_container(buf, c);
    CHECK(buf.str().substr(0, 4) == "GLKB");
    const auto back = io::read_container(buf);
    CHECK(back.metadata == c.metadata);
    CHECK(back.array("a") == a);
    CHECK(back.array("empty").cols() == 4);
    CHECK_THROWS_AS((void)back.array("missing"), InputError);

    std::stringstream junk("nope");
    CHECK_THROWS_AS(io::read_container(junk), InputError);
    std::string truncated = buf.str();
    truncated.resize(truncated.size() - 3);
    std::stringstream cut(truncated);
    CHECK_THROWS_AS(io::read_container(cut), InputError);
}

TEST_CASE("dataset CSV and binary")
{
    std::stringstream in("1,2\n3.5,-4\n\n");
    const auto d = io::read_dataset_csv(in);
    CHECK(d.size() == 2);
    CHECK(d.points()(1, 1) == -4.0);
    std::stringstream ragged("1,2\n3\n");
    CHECK_THROWS_AS(io::read_dataset_csv(ragged), InputError);
    std::stringstream text("1,x\n");
    CHECK_THROWS_AS(io::read_dataset_csv(text), InputError);

    const auto sphere = sample_sphere(20, 3, 1);
    std::stringstream out;
    io::write_dataset_csv(out, sphere);
    CHECK(io::read_dataset_csv(out).points() == sphere.points());

    const auto csv_path = temp_file("data.csv");
    {
        std::ofstream f(csv_path);
        io::write_dataset_csv(f, sphere);
    }
    CHECK(io::load_dataset(csv_path).points() == sphere.points());
    const auto bin_path = temp_file("data.bin");
    io::save_dataset_binary(bin_path, sphere);
    CHECK(io::load_dataset(bin_path).points() == sphere.points());
    std::filesystem::remove(csv_path);
    std::filesystem::remove(bin_path);
    CHECK_THROWS_AS(io::load_dataset(temp_file("missing")), InputError);
}

TEST_CASE("gram triplet round trips")
{
    const auto data = sample_sphere(50, 3, 2);
    const auto g = build_gram_laplacian(KernelSpec::polynomial(2), data.head(5), data);
    const auto c = io::gram_from_container(io::gram_to_container(g));
    CHECK(c.L == g.L);
    CHECK(c.Psi == g.Psi);
    CHECK(c.n_samples == 50);
    const auto j = io::gram_from_json(io::gram_to_json(g));
    CHECK(j.L == g.L);
    CHECK(j.Phi == g.Phi);
}

TEST_CASE("spectral estimate round trips")
{
    const auto data = sample_sphere(100, 3, 3);
    const auto est = decompose(data, KernelSpec::gaussian(0.5), {10, std::nullopt, 1});
    for (const auto& back :
         {io::estimate_from_container(io::estimate_to_container(est)), io::estimate_from_json(io::estimate_to_json(est))}) {
        CHECK(back.values() == est.values());
        CHECK(back.left_coeffs() == est.left_coeffs());
        CHECK(back.right_coeffs() == est.right_coeffs());
        CHECK(back.landmarks().points() == est.landmarks().points());
        CHECK(back.kernel() == est.kernel());
        CHECK(back.epsilon() == est.epsilon());
    }
}

TEST_CASE("hermite model and problem IO")
{
    std::mt19937_64 rng(4);
    const auto lm = oracle::random_points(3, 2, rng);
    Vector a(3);
    a << 1.0, -0.25, 3.0;
    const HermiteModel m(a, lm, KernelSpec::exponential(2.0), 1e-9);
    const auto back = io::hermite_model_from_json(io::hermite_model_to_json(m));
    CHECK(back.alpha() == m.alpha());
    CHECK(back.landmarks().points() == lm.points());
    CHECK(back.kernel() == m.kernel());
    CHECK(back.epsilon() == 1e-9);

    std::stringstream csv("0.1,0.2,1.0,0.5,0.6\n0.3,0.4,2.0,0.7,0.8\n");
    const auto p = io::read_hermite_problem_csv(csv);
    CHECK(p.data.dim() == 2);
    CHECK(p.values(1) == 2.0);
    CHECK(p.gradients(0, 1) == 0.6);
    std::stringstream even("1,2\n");
    CHECK_THROWS_AS(io::read_hermite_problem_csv(even), InputError);
}
