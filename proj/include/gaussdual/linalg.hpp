#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>

#include "gaussdual/errors.hpp"

namespace gaussdual {

/// Relative asymmetry below which inputs are silently symmetrized.
inline constexpr double kSymmetryTolerance = 1e-12;

/// Pivots at or below kPivotTolerance * max(1, max diagonal) count as non-positive.
inline constexpr double kPivotTolerance = 1e-12;

/// Absolute pivot threshold for a matrix whose largest diagonal entry is `max_diag`.
inline double pivot_threshold(double max_diag) {
    return kPivotTolerance * (max_diag > 1.0 ? max_diag : 1.0);
}

/// Dense symmetric matrix. Symmetry is established at construction and
/// preserved by every operation exposed here.
class SymMatrix {
public:
    SymMatrix() = default;

    /// n x n zero matrix.
    explicit SymMatrix(std::size_t n);

    /// Accepts `m` if it is square and symmetric within kSymmetryTolerance
    /// (relative to its largest entry); the stored value is (m + m^T) / 2.
    /// Throws DimensionMismatch or AsymmetricMatrix otherwise.
    explicit SymMatrix(const Eigen::MatrixXd& m);

    /// Row-major initializer, mostly for tests and fixtures.
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    double operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    /// Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);

    const Eigen::MatrixXd& dense() const noexcept { return m_; }

    SymMatrix scaled(double c) const;

    friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
        return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
    }

private:
    Eigen::MatrixXd m_;
};

struct SpdFactor {
    Eigen::MatrixXd lower;  ///< Cholesky factor L with m = L L^T.
    double logdet = 0.0;    ///< 2 * sum(log L_ii).
};

/// Cholesky factorization with the shared pivot tolerance.
/// Throws NotPositiveDefinite with the offending pivot index.
SpdFactor spd_factorize(const SymMatrix& m);

/// Log-determinant of an SPD matrix (0 for the empty matrix).
double spd_logdet(const SymMatrix& m);

SymMatrix spd_inverse(const SymMatrix& m);

bool is_spd(const SymMatrix& m) noexcept;

}  // namespace gaussdual
