#pragma once

#include "galerkin/dataset.hpp"
#include "galerkin/gram.hpp"
#include "galerkin/ground_truth.hpp"
#include "galerkin/hermite.hpp"
#include "galerkin/kernels.hpp"
#include "galerkin/spectral.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace galerkin::io {

/// Binary container layout (all integers and floats little-endian):
///
///   "GLKB"                      4-byte magic
///   u32 version                 currently 1
///   u32 metadata_length         followed by that many bytes of UTF-8 JSON
///   u32 array_count
///   per array:
///     u32 name_length, name bytes
///     u64 rows, u64 cols
///     rows * cols f64, row-major
struct NamedArray {
    std::string name;
    RowMatrix data;
};

struct Container {
    std::string metadata = "{}";
    std::vector<NamedArray> arrays;

    /// Throws InputError when no array has this name.
    [[nodiscard]] const RowMatrix& array(std::string_view name) const;
};

void write_container(std::ostream& out, const Container& container);
Container read_container(std::istream& in);
void save_container(const std::filesystem::path& path, const Container& container);
Container load_container(const std::filesystem::path& path);

/// {"family": "poly"|"exp"|"gauss", "degree", "offset", "scale", "sigma"};
/// absent fields take KernelSpec defaults.
std::string kernel_to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(std::string_view json);

/// CSV without header, one point per line, d comma-separated columns.
Dataset read_dataset_csv(std::istream& in);
void write_dataset_csv(std::ostream& out, const Dataset& data);

/// Reads a binary container (array "points") when the file starts with the
/// magic, CSV otherwise.
Dataset load_dataset(const std::filesystem::path& path);
void save_dataset_binary(const std::filesystem::path& path, const Dataset& data);

/// Arrays "L", "Phi", "Psi"; metadata {"n_samples": n}.
Container gram_to_container(const GramTriplet& gram);
GramTriplet gram_from_container(const Container& container);
std::string gram_to_json(const GramTriplet& gram);
GramTriplet gram_from_json(std::string_view json);

/// Arrays "values" (t x 1), "left", "right", "landmarks"; metadata
/// {"kernel": {...}, "epsilon": eps}.
Container estimate_to_container(const SpectralEstimate& est);
SpectralEstimate estimate_from_container(const Container& container);
std::string estimate_to_json(const SpectralEstimate& est);
SpectralEstimate estimate_from_json(std::string_view json);

/// {"alpha": [...], "landmarks": [[...]], "kernel": {...}, "epsilon": eps}.
std::string hermite_model_to_json(const HermiteModel& model);
HermiteModel hermite_model_from_json(std::string_view json);

/// CSV rows [x (d), y, t (d)]; d is inferred from the column count 2d + 1.
HermiteProblem read_hermite_problem_csv(std::istream& in);
/// Same layout from a container with arrays "points", "values" (n x 1), "gradients".
HermiteProblem load_hermite_problem(const std::filesystem::path& path);

/// [[value, multiplicity], ...].
std::string spectrum_to_json(const GroundTruthSpectrum& spectrum);

}  // namespace galerkin::io
