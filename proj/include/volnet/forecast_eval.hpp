#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volnet/garch.hpp"
#include "volnet/netarch.hpp"
#include "volnet/network.hpp"
#include "volnet/panel.hpp"
#include "volnet/parallel.hpp"

namespace volnet {

enum class ModelKind {
    net_euclidean,
    net_correlation,
    net_piccolo,
    net_ccc,
    net_dcc,
    net_go,
    std_ccc,
    std_dcc,
    std_go,
};

std::string to_string(ModelKind m);
ModelKind model_kind_from_string(const std::string& s);
std::vector<ModelKind> default_roster();

struct RollingConfig {
    Eigen::Index window = 300; // training length T0
    ZeroAdjust zero_adjust;
    std::vector<ModelKind> roster = default_roster();
    WeightNormalization normalization = WeightNormalization::row_stochastic;
    int piccolo_lags = 5;
    GarchSpec garch_spec;
    int go_restarts = 1; // per-window GO-GARCH restarts (full refit either way)
    std::uint64_t seed = 1;
    ExecPolicy exec = ExecPolicy::serial();
    double min_completeness = 0.95;
};

/// Out-of-sample forecast errors on the realized log-volatility scale,
/// e_{i,t} = ln y_{i,t}^2 - forecast, one T_out x n matrix per model.
struct LossPanel {
    std::vector<ModelKind> models;
    std::vector<std::string> labels;
    std::vector<std::string> dates;   // out-of-sample stamps
    Eigen::MatrixXd actual;           // realized log-volatility
    std::vector<Eigen::MatrixXd> errors;
    std::vector<std::vector<char>> valid; // per model, per window
    std::vector<double> completeness;     // fraction of successful windows

    Eigen::Index out_of_sample() const { return actual.rows(); }
    Eigen::Index series_count() const { return actual.cols(); }
    Eigen::Index model_index(ModelKind m) const;

    /// Rows where every model produced a forecast; errors compacted to those
    /// rows. Throws if any model falls below `min_completeness`.
    LossPanel complete_subset(double min_completeness = 0.95) const;
};

LossPanel rolling_forecast(const ReturnPanel& panel, const RollingConfig& cfg);

enum class LossType { squared, absolute };

struct AccuracySummary {
    double rmsfe = 0.0; // mean over series of per-series root mean squared error
    double mafe = 0.0;  // mean over series of per-series mean absolute error
};

AccuracySummary rmsfe_mafe(const Eigen::MatrixXd& errors);
AccuracySummary rmsfe_mafe(const LossPanel& lp, ModelKind model);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    LossType loss_type = LossType::squared;
    bool degenerate = false;
    double raw_mean = 0.0; // mean loss differential (CW: the unscaled statistic)
};

/// Diebold-Mariano test with lag-0 HAC variance and two-sided normal
/// p-values; identical forecasts degenerate to p = 1.
TestResult dm_test(const Eigen::VectorXd& e1, const Eigen::VectorXd& e2, LossType loss);

/// Pooled variant: loss differentials stacked across series before testing.
TestResult dm_test_pooled(const LossPanel& lp, ModelKind m1, ModelKind m2, LossType loss);

/// Clark-West MSPE-adjusted test for nested pairs; one-sided normal critical
/// values. Model 2 nests model 1.
TestResult cw_test(const Eigen::VectorXd& e_small, const Eigen::VectorXd& e_big,
                   const Eigen::VectorXd& yhat_small, const Eigen::VectorXd& yhat_big);

TestResult cw_test_pooled(const LossPanel& lp, ModelKind small, ModelKind big);

struct BootstrapCi {
    double rmsfe_point = 0.0, rmsfe_lower = 0.0, rmsfe_upper = 0.0;
    double mafe_point = 0.0, mafe_lower = 0.0, mafe_upper = 0.0;
    int replications = 0;
    bool small_b_warning = false;
};

/// Percentile bootstrap over time indices (shared across series so the
/// cross-section stays intact).
BootstrapCi bootstrap_ci(const Eigen::MatrixXd& errors, int B = 2000, double level = 0.95,
                         std::uint64_t seed = 1, const ExecPolicy& exec = ExecPolicy::serial());

enum class McsStatistic { t_max, t_range };

struct McsModelResult {
    std::string name;
    int rank_max = 0;
    double v_max = 0.0;
    double p_max = 1.0;
    int rank_range = 0;
    double v_range = 0.0;
    double p_range = 1.0;
    double avg_loss = 0.0;
    bool in_superior_set_max = false;
    bool in_superior_set_range = false;
};

struct McsResult {
    std::vector<McsModelResult> models;
    double alpha = 0.05;
    int replications = 0;
    Eigen::Index block_length = 0;
};

/// Hansen's Model Confidence Set with a moving-block bootstrap of block
/// length ceil(P^{1/3}); emits both the T_max and the range-statistic
/// rankings and sequential p-values.
McsResult mcs(const Eigen::MatrixXd& losses, const std::vector<std::string>& names,
              double alpha = 0.05, int B = 5000, std::uint64_t seed = 1,
              const ExecPolicy& exec = ExecPolicy::serial());

/// Time x models matrix of cross-section-average losses feeding the MCS.
Eigen::MatrixXd mcs_loss_matrix(const LossPanel& lp, LossType loss);

} // namespace volnet
