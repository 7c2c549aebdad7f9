#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "volnet/network.hpp"
#include "volnet/panel.hpp"
#include "volnet/zero_adjust.hpp"

namespace volnet {

/// Log-squared return panel, ystar[t][i] = ln(max(y^2, eps_i)).
struct LogSquaredPanel {
    Eigen::MatrixXd ystar; // T x n
    ZeroAdjust adjust;
    Eigen::VectorXd applied; // per-series replacement value
    Eigen::Index adjusted_cells = 0;
    std::vector<std::string> labels;
    std::vector<std::string> dates;

    Eigen::Index periods() const { return ystar.rows(); }
    Eigen::Index series_count() const { return ystar.cols(); }
};

LogSquaredPanel log_square_transform(const ReturnPanel& panel, const ZeroAdjust& adjust = {});

/// Network log-ARCH fit: the volatility equation reads
///   ystar_t = phi0 + rho W ystar_t + Gamma ystar_{t-1} + u_t
/// with diagonal Gamma, estimated by two-step GMM with spatial-lag
/// instruments [1, ystar_{t-1}, W ystar_{t-1}, W^2 ystar_{t-1}].
struct NetLogArchFit {
    double rho = 0.0;
    Eigen::VectorXd gamma; // node-specific temporal effects
    Eigen::VectorXd phi0;  // node intercepts
    double sigma2 = 0.0;   // pooled residual variance
    Eigen::VectorXd std_errors; // aligned with [rho, gamma..., phi0...]
    Eigen::VectorXd t_stats;
    WeightMatrix weights;
    bool invertible = true; // (I - rho W) invertible at the fitted rho
    std::vector<std::string> labels;

    // Moment pieces kept so the quadratic GMM objective can be re-evaluated
    // at arbitrary parameter values.
    Eigen::MatrixXd moment_design; // Z'X / N
    Eigen::VectorXd moment_target; // Z'y / N
    Eigen::MatrixXd moment_weight; // efficient second-step weight

    double objective(double rho_v, const Eigen::VectorXd& gamma_v,
                     const Eigen::VectorXd& phi0_v) const;
    double objective_at_fit() const { return objective(rho, gamma, phi0); }
};

NetLogArchFit fit_gmm(const LogSquaredPanel& ys, const WeightMatrix& w);

/// One-step-ahead log-volatility forecast from the reduced form,
/// (I - rho W)^{-1} (phi0 + Gamma ystar_t).
Eigen::VectorXd forecast_logvol(const NetLogArchFit& fit, const Eigen::VectorXd& ystar_t);

} // namespace volnet
