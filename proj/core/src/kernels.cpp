#include "galerkin/kernels.hpp"

#include "galerkin/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace galerkin {

namespace {

constexpr double kCoincidentTol = 1e-12;

// Decayed exponentials are cut to 0 before they reach subnormal range, where the
// dense products slow down by two orders of magnitude. Products of two surviving
// values stay normal.
constexpr double kNegligible = 1e-150;

double decayed(double v)
{
    return std::abs(v) < kNegligible ? 0.0 : v;
}

void require_finite(double t)
{
    if (!std::isfinite(t)) {
        throw InputError("kernel profile evaluated at a non-finite argument");
    }
}

void require_same_dim(std::size_t a, std::size_t b)
{
    if (a != b) {
        throw InputError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// |x - y| through the norm expansion, matching the matrix code paths.
double expanded_distance(std::span<const double> x, std::span<const double> y)
{
    return distance_from_products(dot(x, x), dot(x, y), dot(y, y));
}

// Scalar c such that grad k_y(x) = c * v, with v = y (dot product) or x - y (distance).
double gradient_factor(const KernelSpec& kernel, std::span<const double> y, std::span<const double> x)
{
    if (kernel.is_dot_product()) {
        return q_prime(kernel, dot(x, y));
    }
    return q_prime_over_t(kernel, expanded_distance(x, y));
}

}  // namespace

KernelSpec KernelSpec::polynomial(int degree, double offset, double scale)
{
    KernelSpec k;
    k.family = KernelFamily::PolynomialDot;
    k.degree = degree;
    k.offset = offset;
    k.scale = scale;
    k.validate();
    return k;
}

KernelSpec KernelSpec::exponential(double sigma)
{
    KernelSpec k;
    k.family = KernelFamily::ExponentialDist;
    k.sigma = sigma;
    k.validate();
    return k;
}

KernelSpec KernelSpec::gaussian(double sigma)
{
    KernelSpec k;
    k.family = KernelFamily::GaussianDist;
    k.sigma = sigma;
    k.validate();
    return k;
}

void KernelSpec::validate() const
{
    if (is_dot_product()) {
        if (degree < 1) {
            throw ConfigError("polynomial kernel degree must be >= 1");
        }
        if (!std::isfinite(offset) || !std::isfinite(scale)) {
            throw ConfigError("polynomial kernel offset/scale must be finite");
        }
    } else if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("distance kernel bandwidth sigma must be positive and finite");
    }
}

std::string KernelSpec::label() const
{
    std::ostringstream os;
    switch (family) {
    case KernelFamily::PolynomialDot:
        os << "poly(s=" << degree;
        if (offset != 1.0 || scale != 1.0) {
            os << ",c0=" << offset << ",c1=" << scale;
        }
        os << ")";
        break;
    case KernelFamily::ExponentialDist:
        os << "exp(sigma=" << sigma << ")";
        break;
    case KernelFamily::GaussianDist:
        os << "gauss(sigma=" << sigma << ")";
        break;
    }
    return os.str();
}

double q_eval(const KernelSpec& kernel, double t)
{
    require_finite(t);
    switch (kernel.family) {
    case KernelFamily::PolynomialDot:
        return std::pow(kernel.offset + kernel.scale * t, kernel.degree);
    case KernelFamily::ExponentialDist:
        return decayed(std::exp(-t / kernel.sigma));
    case KernelFamily::GaussianDist:
        return decayed(std::exp(-t * t / (2.0 * kernel.sigma * kernel.sigma)));
    }
    return 0.0;
}

double q_prime(const KernelSpec& kernel, double t)
{
    require_finite(t);
    switch (kernel.family) {
    case KernelFamily::PolynomialDot:
        return kernel.degree * kernel.scale * std::pow(kernel.offset + kernel.scale * t, kernel.degree - 1);
    case KernelFamily::ExponentialDist:
        return decayed(-std::exp(-t / kernel.sigma) / kernel.sigma);
    case KernelFamily::GaussianDist: {
        const double s2 = kernel.sigma * kernel.sigma;
        return decayed(-(t / s2) * std::exp(-t * t / (2.0 * s2)));
    }
    }
    return 0.0;
}

double q_prime_over_t(const KernelSpec& kernel, double t)
{
    require_finite(t);
    switch (kernel.family) {
    case KernelFamily::PolynomialDot:
        throw ConfigError("q'(t)/t is only defined for distance kernels");
    case KernelFamily::ExponentialDist:
        if (t < kCoincidentTol) {
            return 0.0;
        }
        return q_prime(kernel, t) / t;
    case KernelFamily::GaussianDist: {
        const double s2 = kernel.sigma * kernel.sigma;
        return decayed(-std::exp(-t * t / (2.0 * s2)) / s2);
    }
    }
    return 0.0;
}

double kernel_eval(const KernelSpec& kernel, std::span<const double> x, std::span<const double> y)
{
    require_same_dim(x.size(), y.size());
    if (kernel.is_dot_product()) {
        return q_eval(kernel, dot(x, y));
    }
    return q_eval(kernel, expanded_distance(x, y));
}

void kernel_gradient(const KernelSpec& kernel, std::span<const double> y, std::span<const double> x,
                     std::span<double> out)
{
    require_same_dim(x.size(), y.size());
    require_same_dim(x.size(), out.size());
    const double c = gradient_factor(kernel, y, x);
    for (std::size_t l = 0; l < x.size(); ++l) {
        out[l] = kernel.is_dot_product() ? c * y[l] : c * (x[l] - y[l]);
    }
}

double grad_inner(const KernelSpec& kernel, std::span<const double> y, std::span<const double> z,
                  std::span<const double> x)
{
    require_same_dim(x.size(), y.size());
    require_same_dim(x.size(), z.size());
    const double cy = gradient_factor(kernel, y, x);
    const double cz = gradient_factor(kernel, z, x);
    if (kernel.is_dot_product()) {
        return cy * cz * dot(y, z);
    }
    double g = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        g += (x[l] - y[l]) * (x[l] - z[l]);
    }
    return cy * cz * g;
}

double grad_inner_tangent(const KernelSpec& kernel, std::span<const double> y, std::span<const double> z,
                          std::span<const double> x)
{
    const double full = grad_inner(kernel, y, z, x);
    const double xx = dot(x, x);
    if (xx == 0.0) {
        return full;
    }
    // Radial components <grad k(x), x> of both gradients.
    const double ry = kernel.is_dot_product() ? gradient_factor(kernel, y, x) * dot(y, x)
                                              : gradient_factor(kernel, y, x) * (xx - dot(y, x));
    const double rz = kernel.is_dot_product() ? gradient_factor(kernel, z, x) * dot(z, x)
                                              : gradient_factor(kernel, z, x) * (xx - dot(z, x));
    return full - ry * rz / xx;
}

double grad_dot(const KernelSpec& kernel, std::span<const double> y, std::span<const double> x,
                std::span<const double> t)
{
    require_same_dim(x.size(), y.size());
    require_same_dim(x.size(), t.size());
    const double c = gradient_factor(kernel, y, x);
    if (kernel.is_dot_product()) {
        return c * dot(y, t);
    }
    double g = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        g += (x[l] - y[l]) * t[l];
    }
    return c * g;
}

double distance_from_products(double xx, double xy, double yy)
{
    const double sq = xx - 2.0 * xy + yy;
    if (sq <= 64.0 * std::numeric_limits<double>::epsilon() * (xx + yy)) {
        return 0.0;
    }
    return std::sqrt(sq);
}

Matrix inner_products(const Dataset& landmarks, const Dataset& data)
{
    require_same_dim(landmarks.dim(), data.dim());
    return landmarks.points() * data.points().transpose();
}

Matrix distances(const Dataset& landmarks, const Dataset& data)
{
    Matrix n = inner_products(landmarks, data);
    const Vector ln = landmarks.squared_norms();
    const Vector dn = data.squared_norms();
    for (Eigen::Index k = 0; k < n.cols(); ++k) {
        for (Eigen::Index i = 0; i < n.rows(); ++i) {
            n(i, k) = distance_from_products(ln(i), n(i, k), dn(k));
        }
    }
    return n;
}

Matrix cross_gram(const KernelSpec& kernel, const Dataset& landmarks, const Dataset& data)
{
    kernel.validate();
    Matrix g = kernel.is_dot_product() ? inner_products(landmarks, data) : distances(landmarks, data);
    return g.unaryExpr([&kernel](double t) { return q_eval(kernel, t); });
}

}  // namespace galerkin
