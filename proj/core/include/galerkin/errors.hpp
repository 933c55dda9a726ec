#pragma once

#include <stdexcept>
#include <string>

namespace galerkin {

/// Malformed input: non-finite values, mismatched dimensions, bad indices.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Incompatible configuration, e.g. a distance kernel passed to a dot-product path.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A non-finite value produced while assembling a Gram matrix.
class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear-algebra failure (matrix not positive definite, singular system).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace galerkin
