#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace volnet {

/// Panel of strictly positive price levels: one date column, one column per
/// series, no missing cells. Rows are time, columns are series.
struct PricePanel {
    std::vector<std::string> labels;
    std::vector<std::string> dates; // ISO-8601 or YYYY-MM, strictly increasing
    Eigen::MatrixXd prices;         // (T+1) x n

    Eigen::Index periods() const { return prices.rows(); }
    Eigen::Index series_count() const { return prices.cols(); }
    void validate() const;
};

/// Panel of log returns; row t is ln(p[t+1]) - ln(p[t]).
struct ReturnPanel {
    std::vector<std::string> labels;
    std::vector<std::string> dates; // length T, stamp of the return period end
    Eigen::MatrixXd returns;        // T x n

    Eigen::Index periods() const { return returns.rows(); }
    Eigen::Index series_count() const { return returns.cols(); }
    Eigen::VectorXd series(Eigen::Index i) const { return returns.col(i); }
};

struct DescriptiveStats {
    std::string label;
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0; // sample, divisor T-1
    double minimum = 0.0;
    double maximum = 0.0;
    double skewness = 0.0; // third standardized moment
    double kurtosis = 0.0; // fourth standardized moment (Gaussian -> 3)
    double jb_stat = 0.0;
    double jb_pvalue = 1.0;
    bool degenerate = false; // zero variance: higher moments undefined
};

/// Loads a price CSV: header row `date,<label>,...`, one ISO-8601 or YYYY-MM
/// date per row, strictly positive prices. Rejects ragged rows, bad dates and
/// non-positive prices, naming the offending row/column.
PricePanel load_prices(const std::string& path);

/// Same parser on an in-memory document; `origin` names the source in errors.
PricePanel parse_prices_csv(const std::string& text, const std::string& origin = "<memory>");

/// Writes the ingestion CSV schema (used by `simulate` for round trips).
void save_prices_csv(const PricePanel& panel, const std::string& path);

ReturnPanel log_returns(const PricePanel& panel);

DescriptiveStats describe(const Eigen::VectorXd& series, const std::string& label = "");

std::vector<DescriptiveStats> describe_panel(const ReturnPanel& panel);

/// Pearson correlation matrix across series; errors on zero-variance series.
Eigen::MatrixXd correlation_matrix(const ReturnPanel& panel);

} // namespace volnet
