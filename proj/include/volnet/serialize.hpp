#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "volnet/forecast_eval.hpp"
#include "volnet/garch.hpp"
#include "volnet/mgarch.hpp"
#include "volnet/netarch.hpp"
#include "volnet/panel.hpp"

namespace volnet {

using Json = nlohmann::ordered_json;

Json to_json(const DescriptiveStats& s);
Json to_json(const std::vector<DescriptiveStats>& stats);
Json matrix_json(const Eigen::MatrixXd& m);
Json correlation_json(const Eigen::MatrixXd& corr, const std::vector<std::string>& labels);

Json to_json(const GarchFit& fit);
Json to_json(const CccFit& fit, bool include_paths = false);
Json to_json(const DccFit& fit, bool include_paths = false);
Json to_json(const GoGarchFit& fit, bool include_paths = false);
Json to_json(const NetLogArchFit& fit);
Json to_json(const BootstrapCi& ci);
Json to_json(const TestResult& r);
Json to_json(const McsResult& r);
Json to_json(const AccuracySummary& s);

/// Aligned-text descriptive table; JB p-values below 2.2e-16 print as
/// "< 2.2e-16" while the JSON keeps full precision.
std::string stats_table_text(const std::vector<DescriptiveStats>& stats);
std::string correlation_table_text(const Eigen::MatrixXd& corr,
                                   const std::vector<std::string>& labels);
std::string mcs_table_text(const McsResult& r);

/// Loss CSV: model,series,date,error rows in deterministic order.
void write_loss_csv(const LossPanel& lp, const std::string& path);

} // namespace volnet
