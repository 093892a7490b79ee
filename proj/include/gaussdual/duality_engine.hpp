#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaussdual/dual_nfg.hpp"
#include "gaussdual/ladder_model.hpp"
#include "gaussdual/tree_inference.hpp"

namespace gaussdual {

enum class DualMethod { TreeBp, Dense };
enum class DirectMethod { Dense, BlockTridiag };

struct DualitySolveOptions {
    DualMethod method = DualMethod::TreeBp;
    /// With TreeBp, a cyclic dual falls back to dense elimination (and records
    /// a warning) instead of throwing NotAForest.
    bool allow_fallback = true;
};

/// Outcome of the dual-domain computation of log det(Sigma).
struct DualitySolution {
    double logdet_sigma = 0.0;        ///< sum of local logdets - logdet(dual precision)
    double sum_local_logdets = 0.0;
    std::vector<double> local_logdets;
    LogDetReport dual;                ///< elimination of the dual precision
    bool fell_back = false;
    std::optional<std::string> warning;
};

/// log det(Sigma) = log det(Sigma') + sum_l log det(Sigma_l), with Sigma' the
/// covariance of the pinned dual Gaussian.
DualitySolution solve_via_duality(const LadderModel& model, DualitySolveOptions options = {});

double logdet_sigma_via_duality(const LadderModel& model, DualMethod method = DualMethod::TreeBp);

/// Same quantity through the primal route: -log det of the assembled global precision.
LogDetReport solve_direct(const LadderModel& model, DirectMethod method = DirectMethod::Dense);

double logdet_sigma_direct(const LadderModel& model, DirectMethod method = DirectMethod::Dense);

/// Normalization constants, all as natural logarithms.
struct ZReport {
    double log_zf = 0.0;                ///< log det(2 pi Sigma)^(1/2)
    std::vector<double> log_zl;         ///< log det(2 pi Sigma_l)^(1/2)
    double log_z = 0.0;                 ///< log_zf - sum(log_zl)
    double log_zprime = 0.0;            ///< (k + N/2) log 2 pi + log det(Sigma')/2
    double duality_residual = 0.0;      ///< log_zprime - (N log 2 pi + log_z)
};

/// Builds a ZReport from its determinant ingredients. `logdet_sigma` and
/// `logdet_dual_covariance` may come from independent routes.
ZReport make_zreport(const LadderModel& model, double logdet_sigma,
                     const std::vector<double>& local_logdets, double logdet_dual_covariance);

/// All constants through the dual route; the residual is then zero up to rounding.
ZReport z_constants(const LadderModel& model, DualMethod method = DualMethod::TreeBp);

struct DualityCheck {
    bool passed = false;
    ZReport z;                    ///< Z from the primal route, Z' from the dual route
    double logdet_sigma_direct = 0.0;
    double logdet_sigma_dual = 0.0;
    double tolerance = 0.0;
    std::string diagnostics;      ///< both values and a digest of the dual matrix on failure
};

/// Cross-checks Z' = (2 pi)^N Z with Z computed from the primal precision and
/// Z' from the dual precision. Never throws for numerical failures; those
/// are reported through `diagnostics`.
DualityCheck check_duality(const LadderModel& model, double tol,
                           DirectMethod direct = DirectMethod::Dense,
                           DualMethod dual = DualMethod::TreeBp);

bool verify_duality(const LadderModel& model, double tol);

}  // namespace gaussdual
