#pragma once

#include <Eigen/Dense>

namespace volnet {

/// Replacement policy for zero squared returns ahead of the log transform.
enum class ZeroAdjustScheme {
    min_nonzero,  // smallest nonzero y^2 in the series
    percentile_1, // 1st percentile of the nonzero y^2 values
    fixed,        // caller-supplied constant (default 1e-6)
};

struct ZeroAdjust {
    ZeroAdjustScheme scheme = ZeroAdjustScheme::min_nonzero;
    double fixed_value = 1e-6;
};

/// Per-series replacement value epsilon > 0; errors on an all-zero series.
double zero_adjust_value(const Eigen::VectorXd& series, const ZeroAdjust& adjust);

} // namespace volnet
