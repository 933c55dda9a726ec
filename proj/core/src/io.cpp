#include "galerkin/io.hpp"

#include "galerkin/errors.hpp"

#include "json.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace galerkin::io {

using nlohmann::json;

namespace {

constexpr std::array<char, 4> kMagic = {'G', 'L', 'K', 'B'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& out, T value)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
        throw InputError("binary container truncated");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

std::string get_bytes(std::istream& in, std::uint32_t len)
{
    std::string s(len, '\0');
    if (len > 0 && !in.read(s.data(), len)) {
        throw InputError("binary container truncated");
    }
    return s;
}

json matrix_to_json(const Eigen::Ref<const Matrix>& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const char* what)
{
    if (!j.is_array()) {
        throw InputError(std::string(what) + ": expected an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
            throw InputError(std::string(what) + ": ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = j[i][c].get<double>();
        }
    }
    return m;
}

Vector vector_from_json(const json& j, const char* what)
{
    if (!j.is_array()) {
        throw InputError(std::string(what) + ": expected an array");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = j[i].get<double>();
    }
    return v;
}

json kernel_json(const KernelSpec& k)
{
    switch (k.family) {
    case KernelFamily::PolynomialDot:
        return {{"family", "poly"}, {"degree", k.degree}, {"offset", k.offset}, {"scale", k.scale}};
    case KernelFamily::ExponentialDist:
        return {{"family", "exp"}, {"sigma", k.sigma}};
    case KernelFamily::GaussianDist:
        return {{"family", "gauss"}, {"sigma", k.sigma}};
    }
    return {};
}

KernelSpec kernel_from(const json& j)
{
    if (!j.is_object() || !j.contains("family")) {
        throw ConfigError("kernel JSON needs a \"family\" field");
    }
    const auto family = j.at("family").get<std::string>();
    KernelSpec k;
    if (family == "poly") {
        k.family = KernelFamily::PolynomialDot;
    } else if (family == "exp") {
        k.family = KernelFamily::ExponentialDist;
    } else if (family == "gauss") {
        k.family = KernelFamily::GaussianDist;
    } else {
        throw ConfigError("unknown kernel family \"" + family + "\" (expected poly, exp or gauss)");
    }
    k.degree = j.value("degree", k.degree);
    k.offset = j.value("offset", k.offset);
    k.scale = j.value("scale", k.scale);
    k.sigma = j.value("sigma", k.sigma);
    k.validate();
    return k;
}

json parse(std::string_view text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

std::vector<std::vector<double>> read_csv_rows(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::exception&) {
                throw InputError("CSV line " + std::to_string(lineno) + ": cannot parse \"" + cell + "\"");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw InputError("CSV line " + std::to_string(lineno) + ": expected " +
                             std::to_string(rows.front().size()) + " columns, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InputError("CSV input is empty");
    }
    return rows;
}

bool has_magic(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::array<char, 4> head{};
    return in.read(head.data(), 4) && head == kMagic;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    return in;
}

}  // namespace

const RowMatrix& Container::array(std::string_view name) const
{
    for (const auto& a : arrays) {
        if (a.name == name) {
            return a.data;
        }
    }
    throw InputError("container has no array named \"" + std::string(name) + "\"");
}

void write_container(std::ostream& out, const Container& container)
{
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(container.metadata.size()));
    out.write(container.metadata.data(), static_cast<std::streamsize>(container.metadata.size()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(container.arrays.size()));
    for (const auto& a : container.arrays) {
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(a.name.size()));
        out.write(a.name.data(), static_cast<std::streamsize>(a.name.size()));
        put_le<std::uint64_t>(out, static_cast<std::uint64_t>(a.data.rows()));
        put_le<std::uint64_t>(out, static_cast<std::uint64_t>(a.data.cols()));
        for (Eigen::Index i = 0; i < a.data.size(); ++i) {
            put_le<double>(out, a.data.data()[i]);
        }
    }
    if (!out) {
        throw InputError("failed writing binary container");
    }
}

Container read_container(std::istream& in)
{
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || magic != kMagic) {
        throw InputError("not a GLKB binary container");
    }
    const auto version = get_le<std::uint32_t>(in);
    if (version != kVersion) {
        throw InputError("unsupported container version " + std::to_string(version));
    }
    Container c;
    c.metadata = get_bytes(in, get_le<std::uint32_t>(in));
    const auto count = get_le<std::uint32_t>(in);
    for (std::uint32_t a = 0; a < count; ++a) {
        NamedArray arr;
        arr.name = get_bytes(in, get_le<std::uint32_t>(in));
        const auto rows = get_le<std::uint64_t>(in);
        const auto cols = get_le<std::uint64_t>(in);
        arr.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index i = 0; i < arr.data.size(); ++i) {
            arr.data.data()[i] = get_le<double>(in);
        }
        c.arrays.push_back(std::move(arr));
    }
    return c;
}

void save_container(const std::filesystem::path& path, const Container& container)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path.string());
    }
    write_container(out, container);
}

Container load_container(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_container(in);
}

std::string kernel_to_json(const KernelSpec& kernel)
{
    return kernel_json(kernel).dump();
}

KernelSpec kernel_from_json(std::string_view text)
{
    return kernel_from(parse(text, "kernel JSON"));
}

Dataset read_dataset_csv(std::istream& in)
{
    const auto rows = read_csv_rows(in);
    RowMatrix pts(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return Dataset(std::move(pts));
}

void write_dataset_csv(std::ostream& out, const Dataset& data)
{
    const auto old = out.precision(17);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto r = data.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            out << (j ? "," : "") << r[j];
        }
        out << '\n';
    }
    out.precision(old);
}

Dataset load_dataset(const std::filesystem::path& path)
{
    if (has_magic(path)) {
        return Dataset(load_container(path).array("points"));
    }
    auto in = open_in(path);
    return read_dataset_csv(in);
}

void save_dataset_binary(const std::filesystem::path& path, const Dataset& data)
{
    save_container(path, Container{"{}", {{"points", data.points()}}});
}

Container gram_to_container(const GramTriplet& gram)
{
    return Container{json{{"n_samples", gram.n_samples}}.dump(), {{"L", gram.L}, {"Phi", gram.Phi}, {"Psi", gram.Psi}}};
}

GramTriplet gram_from_container(const Container& container)
{
    const json meta = parse(container.metadata, "gram metadata");
    return {container.array("L"), container.array("Phi"), container.array("Psi"),
            meta.value("n_samples", std::size_t{0})};
}

std::string gram_to_json(const GramTriplet& gram)
{
    return json{{"n_samples", gram.n_samples},
                {"L", matrix_to_json(gram.L)},
                {"Phi", matrix_to_json(gram.Phi)},
                {"Psi", matrix_to_json(gram.Psi)}}
        .dump();
}

GramTriplet gram_from_json(std::string_view text)
{
    const json j = parse(text, "gram JSON");
    return {matrix_from_json(j.at("L"), "L"), matrix_from_json(j.at("Phi"), "Phi"),
            matrix_from_json(j.at("Psi"), "Psi"), j.value("n_samples", std::size_t{0})};
}

Container estimate_to_container(const SpectralEstimate& est)
{
    const json meta{{"kernel", kernel_json(est.kernel())}, {"epsilon", est.epsilon()}};
    return Container{meta.dump(),
                     {{"values", est.values()},
                      {"left", est.left_coeffs()},
                      {"right", est.right_coeffs()},
                      {"landmarks", est.landmarks().points()}}};
}

SpectralEstimate estimate_from_container(const Container& container)
{
    const json meta = parse(container.metadata, "estimate metadata");
    const RowMatrix& values = container.array("values");
    return {Vector(Eigen::Map<const Vector>(values.data(), values.size())),
            container.array("left"),
            container.array("right"),
            Dataset(container.array("landmarks")),
            kernel_from(meta.at("kernel")),
            meta.value("epsilon", 0.0)};
}

std::string estimate_to_json(const SpectralEstimate& est)
{
    json values = json::array();
    for (Eigen::Index i = 0; i < est.values().size(); ++i) {
        values.push_back(est.values()(i));
    }
    return json{{"kernel", kernel_json(est.kernel())},
                {"epsilon", est.epsilon()},
                {"values", values},
                {"left", matrix_to_json(est.left_coeffs())},
                {"right", matrix_to_json(est.right_coeffs())},
                {"landmarks", matrix_to_json(est.landmarks().points())}}
        .dump();
}

SpectralEstimate estimate_from_json(std::string_view text)
{
    const json j = parse(text, "estimate JSON");
    return {vector_from_json(j.at("values"), "values"),
            matrix_from_json(j.at("left"), "left"),
            matrix_from_json(j.at("right"), "right"),
            Dataset(matrix_from_json(j.at("landmarks"), "landmarks")),
            kernel_from(j.at("kernel")),
            j.value("epsilon", 0.0)};
}

std::string hermite_model_to_json(const HermiteModel& model)
{
    json alpha = json::array();
    for (Eigen::Index i = 0; i < model.alpha().size(); ++i) {
        alpha.push_back(model.alpha()(i));
    }
    return json{{"alpha", alpha},
                {"landmarks", matrix_to_json(model.landmarks().points())},
                {"kernel", kernel_json(model.kernel())},
                {"epsilon", model.epsilon()}}
        .dump();
}

HermiteModel hermite_model_from_json(std::string_view text)
{
    const json j = parse(text, "hermite model JSON");
    return {vector_from_json(j.at("alpha"), "alpha"), Dataset(matrix_from_json(j.at("landmarks"), "landmarks")),
            kernel_from(j.at("kernel")), j.value("epsilon", 0.0)};
}

HermiteProblem read_hermite_problem_csv(std::istream& in)
{
    const auto rows = read_csv_rows(in);
    const std::size_t cols = rows.front().size();
    if (cols < 3 || cols % 2 == 0) {
        throw InputError("hermite CSV needs 2d+1 columns [x, y, t], got " + std::to_string(cols));
    }
    const auto d = static_cast<Eigen::Index>((cols - 1) / 2);
    const auto n = static_cast<Eigen::Index>(rows.size());
    RowMatrix x(n, d);
    Vector y(n);
    RowMatrix t(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = rows[static_cast<std::size_t>(i)];
        for (Eigen::Index l = 0; l < d; ++l) {
            x(i, l) = r[static_cast<std::size_t>(l)];
            t(i, l) = r[static_cast<std::size_t>(d + 1 + l)];
        }
        y(i) = r[static_cast<std::size_t>(d)];
    }
    HermiteProblem p{Dataset(std::move(x)), std::move(y), std::move(t)};
    p.validate();
    return p;
}

HermiteProblem load_hermite_problem(const std::filesystem::path& path)
{
    if (has_magic(path)) {
        const Container c = load_container(path);
        const RowMatrix& v = c.array("values");
        HermiteProblem p{Dataset(c.array("points")), Vector(Eigen::Map<const Vector>(v.data(), v.size())),
                         c.array("gradients")};
        p.validate();
        return p;
    }
    auto in = open_in(path);
    return read_hermite_problem_csv(in);
}

std::string spectrum_to_json(const GroundTruthSpectrum& spectrum)
{
    json out = json::array();
    for (const auto& b : spectrum.blocks()) {
        out.push_back(json::array({b.eigenvalue, b.multiplicity}));
    }
    return out.dump();
}

}  // namespace galerkin::io
