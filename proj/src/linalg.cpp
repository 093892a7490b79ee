#include "gaussdual/linalg.hpp"

#include <cmath>
#include <string>

namespace gaussdual {

SymMatrix::SymMatrix(std::size_t n)
    : m_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected square");
    }
    const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
    const double asym = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
    if (!std::isfinite(scale)) throw AsymmetricMatrix("matrix contains non-finite entries");
    if (asym > kSymmetryTolerance * scale) {
        throw AsymmetricMatrix("matrix asymmetry " + std::to_string(asym) +
                               " exceeds tolerance relative to max entry " + std::to_string(scale));
    }
    m_ = 0.5 * (m + m.transpose());
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd m(n, n);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Eigen::Index>(row.size()) != n) {
            throw DimensionMismatch("initializer row " + std::to_string(i) + " has " +
                                    std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(n));
        }
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    *this = SymMatrix(m);
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix out(n);
    out.m_.setIdentity();
    return out;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
    const auto r = static_cast<Eigen::Index>(i);
    const auto c = static_cast<Eigen::Index>(j);
    m_(r, c) = value;
    m_(c, r) = value;
}

SymMatrix SymMatrix::scaled(double c) const {
    SymMatrix out;
    out.m_ = c * m_;
    return out;
}

namespace {

// Unblocked right-looking loop; only used to locate the failing pivot.
NotPositiveDefinite locate_failed_pivot(const Eigen::MatrixXd& a, double threshold) {
    const Eigen::Index n = a.rows();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double pivot = a(j, j) - l.row(j).head(j).squaredNorm();
        if (!(pivot > threshold)) return NotPositiveDefinite(static_cast<std::size_t>(j), pivot);
        const double root = std::sqrt(pivot);
        l(j, j) = root;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            l(i, j) = (a(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / root;
        }
    }
    return NotPositiveDefinite(static_cast<std::size_t>(n), 0.0);
}

}  // namespace

SpdFactor spd_factorize(const SymMatrix& m) {
    const Eigen::MatrixXd& a = m.dense();
    SpdFactor f;
    if (a.rows() == 0) return f;

    const double threshold = pivot_threshold(a.diagonal().maxCoeff());
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) throw locate_failed_pivot(a, threshold);
    f.lower = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
        const double pivot = f.lower(j, j) * f.lower(j, j);
        if (!(pivot > threshold)) throw NotPositiveDefinite(static_cast<std::size_t>(j), pivot);
        logdet += std::log(pivot);
    }
    f.logdet = logdet;
    return f;
}

double spd_logdet(const SymMatrix& m) { return spd_factorize(m).logdet; }

SymMatrix spd_inverse(const SymMatrix& m) {
    const SpdFactor f = spd_factorize(m);
    const Eigen::Index n = f.lower.rows();
    Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(n, n);
    const auto lower = f.lower.triangularView<Eigen::Lower>();
    lower.solveInPlace(inv);
    lower.transpose().solveInPlace(inv);
    // Exact symmetrization; the triangular solves leave rounding-level asymmetry.
    SymMatrix out(n == 0 ? Eigen::MatrixXd() : Eigen::MatrixXd(0.5 * (inv + inv.transpose())));
    return out;
}

bool is_spd(const SymMatrix& m) noexcept {
    try {
        spd_factorize(m);
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

}  // namespace gaussdual
