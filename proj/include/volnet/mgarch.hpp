#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "volnet/garch.hpp"
#include "volnet/panel.hpp"

namespace volnet {

/// Stage-1 state shared by the conditional-correlation models: per-series
/// univariate fits plus the standardized residual matrix.
struct UnivariateStage {
    std::vector<GarchFit> fits;
    Eigen::MatrixXd eps; // T x n standardized residuals
    Eigen::MatrixXd h;   // T x n conditional variances
    std::vector<std::string> labels;
};

UnivariateStage fit_univariate_stage(const ReturnPanel& panel, const GarchSpec& spec,
                                     std::uint64_t seed = 1234);

struct CccFit {
    std::vector<GarchFit> univariate;
    Eigen::MatrixXd R; // constant conditional correlation
    double common_shape = 8.0;
    double log_lik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    int k_params = 0;
    bool psd_projected = false;
    bool conditioning_warning = false;
    std::vector<std::string> labels;
    Eigen::MatrixXd y_tail; // demeaned returns, max_lag x n (forecast state)
    Eigen::MatrixXd h_tail; // variances, max_lag x n
};

struct DccFit {
    std::vector<GarchFit> univariate;
    double a = 0.0;
    double b = 0.0;
    double se_a = 0.0; // stage-2 curvature standard errors
    double se_b = 0.0;
    double common_shape = 8.0;
    Eigen::MatrixXd Qbar;
    std::vector<Eigen::MatrixXd> R_path; // length T
    double log_lik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    int k_params = 0;
    bool boundary = false;
    std::vector<std::string> labels;
    Eigen::MatrixXd y_tail;
    Eigen::MatrixXd h_tail;
};

struct GoFactorParams {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct GoGarchFit {
    Eigen::MatrixXd Z;           // mixing matrix, Z = P A^{1/2} U
    Eigen::MatrixXd P;           // eigenvectors of the unconditional covariance
    Eigen::VectorXd eigenvalues; // descending
    Eigen::MatrixXd U;           // orthogonal rotation
    std::vector<GoFactorParams> factors;
    Eigen::MatrixXd H_path;                  // T x n factor variances
    std::vector<Eigen::MatrixXd> sigma_path; // Z H_t Z'
    std::vector<Eigen::MatrixXd> R_path;
    double log_lik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    int k_params = 0;
    Eigen::VectorXd mean; // per-series sample mean removed before mixing
    std::vector<std::string> labels;
    Eigen::MatrixXd f_tail; // last factor values (forecast state)
    Eigen::MatrixXd h_tail;
};

CccFit fit_ccc(const ReturnPanel& panel, const GarchSpec& spec, std::uint64_t seed = 1234);
CccFit fit_ccc(const ReturnPanel& panel, const UnivariateStage& stage);

DccFit fit_dcc(const ReturnPanel& panel, const GarchSpec& spec, std::uint64_t seed = 1234);
DccFit fit_dcc(const ReturnPanel& panel, const UnivariateStage& stage, std::uint64_t seed = 1234);

GoGarchFit fit_gogarch(const ReturnPanel& panel, std::uint64_t seed = 1234, int restarts = 3);

/// One-step-ahead (or iterated h-step) conditional variance per series. The
/// first step closes the fitted recursion on the last in-sample point; later
/// steps replace squared returns by their conditional expectation.
Eigen::VectorXd mgarch_variance_forecast(const CccFit& fit, int horizon = 1);
Eigen::VectorXd mgarch_variance_forecast(const DccFit& fit, int horizon = 1);
Eigen::VectorXd mgarch_variance_forecast(const GoGarchFit& fit, int horizon = 1);

/// DCC correlation recursion for fixed (a, b) started at Qbar; exposed so the
/// constant-correlation limit and the weight construction can reuse it.
std::vector<Eigen::MatrixXd> dcc_correlation_path(const Eigen::MatrixXd& eps, double a, double b);

/// Mean of a correlation-matrix path (used for the time-averaged weights).
Eigen::MatrixXd average_correlation(const std::vector<Eigen::MatrixXd>& path);

/// Log-density sum of standardized multivariate-t observations with
/// correlation R and shape nu > 2.
double mvt_corr_loglik(const Eigen::MatrixXd& eps, const Eigen::MatrixXd& R, double nu);

} // namespace volnet
