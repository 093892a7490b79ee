#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gaussdual {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Cholesky pivot fell at or below the pivot tolerance.
class NotPositiveDefinite : public Error {
public:
    NotPositiveDefinite(std::size_t pivot_index, double pivot)
        : Error("matrix is not positive definite: pivot " + std::to_string(pivot_index) +
                " = " + std::to_string(pivot)),
          pivot_index_(pivot_index) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Input matrix is asymmetric beyond the symmetrization tolerance.
class AsymmetricMatrix : public Error {
public:
    using Error::Error;
};

/// A sparsity graph expected to be a forest contains a cycle.
class NotAForest : public Error {
public:
    using Error::Error;
};

class InfeasibleStructure : public Error {
public:
    using Error::Error;
};

/// Malformed model or dual file.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gaussdual
