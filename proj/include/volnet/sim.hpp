#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "volnet/garch.hpp"
#include "volnet/netarch.hpp"
#include "volnet/panel.hpp"

namespace volnet {

enum class NetInnovationLaw {
    gaussian,       // u_t ~ N(0, sigma2 I); clean estimator checks
    log_chi_square, // u_t = ln eps^2 with eps standard normal
};

struct NetSimSpec {
    Eigen::Index n = 2;
    Eigen::Index T = 500;
    double rho = 0.0;
    Eigen::VectorXd gamma; // diagonal of Gamma
    Eigen::VectorXd phi0;
    Eigen::MatrixXd W; // normalized weights
    NetInnovationLaw law = NetInnovationLaw::log_chi_square;
    double sigma2 = 1.0; // gaussian law only
    std::uint64_t seed = 1;
    Eigen::Index burn_in = 200;

    void validate() const;
};

struct NetSim {
    LogSquaredPanel ystar;
    ReturnPanel returns;
};

/// Draws from ystar_t = (I - rho W)^{-1} (phi0 + Gamma ystar_{t-1} + u_t)
/// and reconstructs returns as sign * exp(ystar / 2) with independent fair
/// coin signs.
NetSim simulate_net_logarch(const NetSimSpec& spec);

/// Gaussian-innovation DCC panel: univariate GARCH scales correlated shocks
/// whose correlation follows the (a, b) recursion around Rbar.
ReturnPanel simulate_dcc(Eigen::Index n, Eigen::Index T, double a, double b,
                         const Eigen::MatrixXd& Rbar, const std::vector<GarchParams>& params,
                         std::uint64_t seed);

/// Monthly date stamps starting at 1950-01 (helper for synthetic panels).
std::vector<std::string> synthetic_dates(Eigen::Index T);

} // namespace volnet
