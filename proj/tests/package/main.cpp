#include "galerkin/ground_truth.hpp"
#include "galerkin/spectral.hpp"

#include <cstdlib>
#include <iostream>

int main()
{
    const auto data = galerkin::sample_sphere(2000, 3, 1);
    const auto est = galerkin::decompose(data, galerkin::KernelSpec::polynomial(3),
                                         {.p = 50, .seed = 1, .geometry = galerkin::GradientGeometry::SphereTangent});
    const double first = est.values()(1);
    std::cout << first << "\n";
    return first > 1.5 && first < 2.5 ? EXIT_SUCCESS : EXIT_FAILURE;
}
