#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "volnet/errors.hpp"
#include "volnet/zero_adjust.hpp"

namespace volnet {

enum class MeanSpec { zero, constant };
enum class Innovation { gaussian, student_t };

struct GarchSpec {
    int p = 1; // ARCH order
    int q = 1; // GARCH order
    MeanSpec mean = MeanSpec::constant;
    Innovation innovation = Innovation::student_t;

    void validate() const;
};

struct GarchParams {
    double mu = 0.0;
    double omega = 1e-4;
    Eigen::VectorXd alpha; // length p, all >= 0
    Eigen::VectorXd beta;  // length q, all >= 0
    double nu = 8.0;       // Student-t shape; ignored for gaussian

    double persistence() const { return alpha.sum() + beta.sum(); }
    double unconditional_variance() const { return omega / (1.0 - persistence()); }
    /// Throws NumericalError unless omega > 0, coefficients >= 0 and
    /// persistence < 1.
    void require_stationary() const;
};

struct FitDiagnostics {
    bool converged = false;
    bool at_boundary = false; // some coefficient pinned at its constraint
    int restarts_used = 0;
    double grad_norm = 0.0; // infinity norm of the score at the optimum
    int iterations = 0;
};

struct GarchFit {
    GarchSpec spec;
    GarchParams params;
    Eigen::VectorXd h_path; // filtered conditional variances, length T
    double log_lik = 0.0;
    std::vector<std::string> param_names;
    Eigen::VectorXd std_errors; // inverse numerical Hessian
    Eigen::VectorXd p_values;
    FitDiagnostics diagnostics;

    Eigen::VectorXd param_vector() const;
};

/// Thrown when the optimizer fails to converge after all restarts; carries
/// the best point reached so the caller can inspect it.
class GarchFitError : public NumericalError {
public:
    GarchFitError(const std::string& msg, GarchFit best)
        : NumericalError(msg), best_fit(std::move(best)) {}
    GarchFit best_fit;
};

struct LogArchFit {
    double omega_log = 0.0;
    Eigen::VectorXd gamma; // lag coefficients, length P
    int lags = 0;
    double residual_variance = 0.0;
};

/// Maximum-likelihood GARCH(p,q) fit. Optimizes a transformed unconstrained
/// parameterization (log omega, multinomial-logistic ARCH/GARCH shares,
/// log(nu-2)) with random restarts, then polishes with Newton steps in the
/// original space so the reported score is tight at interior optima.
GarchFit fit_garch(const Eigen::VectorXd& series, const GarchSpec& spec,
                   std::uint64_t seed = 1234, int restarts = 5);

/// Deterministic variance recursion; presample h is the unconditional
/// variance and presample squared innovations are their sample mean.
Eigen::VectorXd garch_filter(const GarchParams& params, const Eigen::VectorXd& series);

/// Least-squares regression of ln(y_t^2) on its own lags with intercept;
/// zeros replaced per the adjustment scheme before taking logs.
LogArchFit fit_log_arch(const Eigen::VectorXd& series, int lags,
                        const ZeroAdjust& adjust = {});

Eigen::VectorXd simulate_garch(const GarchParams& params, Eigen::Index horizon,
                               std::uint64_t seed, Innovation innovation = Innovation::gaussian);

namespace detail {
/// Negative log-likelihood of the demeaned series under the variance
/// recursion; writes the variance path into h if non-null.
double garch_negloglik(const GarchParams& params, Innovation innovation,
                       const Eigen::VectorXd& demeaned, Eigen::VectorXd* h);
} // namespace detail

} // namespace volnet
