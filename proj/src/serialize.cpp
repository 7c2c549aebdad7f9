#include "volnet/serialize.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "volnet/errors.hpp"
#include "volnet/network.hpp"

namespace volnet {

namespace {

std::vector<double> vec(const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
}

Json diag_json(const FitDiagnostics& d) {
    return Json{{"converged", d.converged},
                {"at_boundary", d.at_boundary},
                {"restarts_used", d.restarts_used},
                {"grad_norm", d.grad_norm},
                {"iterations", d.iterations}};
}

} // namespace

Json matrix_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const DescriptiveStats& s) {
    return Json{{"label", s.label},
                {"mean", s.mean},
                {"median", s.median},
                {"std_dev", s.std_dev},
                {"minimum", s.minimum},
                {"maximum", s.maximum},
                {"skewness", s.skewness},
                {"kurtosis", s.kurtosis},
                {"jb_stat", s.jb_stat},
                {"jb_pvalue", s.jb_pvalue},
                {"degenerate", s.degenerate}};
}

Json to_json(const std::vector<DescriptiveStats>& stats) {
    Json arr = Json::array();
    for (const auto& s : stats) arr.push_back(to_json(s));
    return Json{{"series", std::move(arr)}};
}

Json correlation_json(const Eigen::MatrixXd& corr, const std::vector<std::string>& labels) {
    return Json{{"labels", labels}, {"correlation", matrix_json(corr)}};
}

Json to_json(const GarchFit& fit) {
    Json params = Json::object();
    const Eigen::VectorXd raw = fit.param_vector();
    for (std::size_t i = 0; i < fit.param_names.size(); ++i)
        params[fit.param_names[i]] = raw[static_cast<Eigen::Index>(i)];
    auto clean = [](const Eigen::VectorXd& v) {
        Json arr = Json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            arr.push_back(std::isfinite(v[i]) ? Json(v[i]) : Json(nullptr));
        return arr;
    };
    return Json{{"params", std::move(params)},
                {"log_lik", fit.log_lik},
                {"std_errors", clean(fit.std_errors)},
                {"p_values", clean(fit.p_values)},
                {"diagnostics", diag_json(fit.diagnostics)}};
}

namespace {

Json univariate_block(const std::vector<GarchFit>& fits, const std::vector<std::string>& labels) {
    Json u = Json::object();
    for (std::size_t i = 0; i < fits.size(); ++i) u[labels[i]] = to_json(fits[i]);
    return u;
}

Json path_json(const std::vector<Eigen::MatrixXd>& path) {
    Json arr = Json::array();
    for (const auto& m : path) arr.push_back(matrix_json(m));
    return arr;
}

} // namespace

Json to_json(const CccFit& fit, bool include_paths) {
    Json j{{"model", "ccc"},
           {"labels", fit.labels},
           {"R", matrix_json(fit.R)},
           {"common_shape", fit.common_shape},
           {"log_lik", fit.log_lik},
           {"aic", fit.aic},
           {"bic", fit.bic},
           {"k_params", fit.k_params},
           {"psd_projected", fit.psd_projected},
           {"conditioning_warning", fit.conditioning_warning},
           {"univariate", univariate_block(fit.univariate, fit.labels)}};
    (void)include_paths;
    return j;
}

Json to_json(const DccFit& fit, bool include_paths) {
    Json j{{"model", "dcc"},
           {"labels", fit.labels},
           {"a", fit.a},
           {"b", fit.b},
           {"common_shape", fit.common_shape},
           {"log_lik", fit.log_lik},
           {"aic", fit.aic},
           {"bic", fit.bic},
           {"k_params", fit.k_params},
           {"boundary", fit.boundary},
           {"Qbar", matrix_json(fit.Qbar)},
           {"univariate", univariate_block(fit.univariate, fit.labels)}};
    if (include_paths) j["R_path"] = path_json(fit.R_path);
    return j;
}

Json to_json(const GoGarchFit& fit, bool include_paths) {
    Json factors = Json::array();
    for (const auto& f : fit.factors)
        factors.push_back(Json{{"omega", f.omega}, {"alpha", f.alpha}, {"beta", f.beta}});
    Json j{{"model", "gogarch"},
           {"labels", fit.labels},
           {"U", matrix_json(fit.U)},
           {"Z", matrix_json(fit.Z)},
           {"eigenvalues", vec(fit.eigenvalues)},
           {"factors", std::move(factors)},
           {"log_lik", fit.log_lik},
           {"aic", fit.aic},
           {"bic", fit.bic},
           {"k_params", fit.k_params}};
    if (include_paths) j["R_path"] = path_json(fit.R_path);
    return j;
}

Json to_json(const NetLogArchFit& fit) {
    auto clean = [](const Eigen::VectorXd& v) {
        Json arr = Json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i)
            arr.push_back(std::isfinite(v[i]) ? Json(v[i]) : Json(nullptr));
        return arr;
    };
    return Json{{"model", "net-log-arch"},
                {"labels", fit.labels},
                {"weight_method", to_string(fit.weights.method)},
                {"normalization", to_string(fit.weights.normalization)},
                {"rho", fit.rho},
                {"gamma", vec(fit.gamma)},
                {"phi0", vec(fit.phi0)},
                {"sigma2", fit.sigma2},
                {"std_errors", clean(fit.std_errors)},
                {"t_stats", clean(fit.t_stats)},
                {"invertible", fit.invertible}};
}

Json to_json(const BootstrapCi& ci) {
    return Json{{"rmsfe", ci.rmsfe_point},
                {"rmsfe_lower", ci.rmsfe_lower},
                {"rmsfe_upper", ci.rmsfe_upper},
                {"mafe", ci.mafe_point},
                {"mafe_lower", ci.mafe_lower},
                {"mafe_upper", ci.mafe_upper},
                {"replications", ci.replications},
                {"small_b_warning", ci.small_b_warning}};
}

Json to_json(const TestResult& r) {
    return Json{{"statistic", r.statistic},
                {"p_value", r.p_value},
                {"loss", r.loss_type == LossType::squared ? "squared" : "absolute"},
                {"degenerate", r.degenerate},
                {"raw_mean", r.raw_mean}};
}

Json to_json(const McsResult& r) {
    Json models = Json::array();
    for (const auto& m : r.models)
        models.push_back(Json{{"model", m.name},
                              {"rank_M", m.rank_max},
                              {"v_M", m.v_max},
                              {"mcs_p_M", m.p_max},
                              {"rank_R", m.rank_range},
                              {"v_R", m.v_range},
                              {"mcs_p_R", m.p_range},
                              {"loss", m.avg_loss},
                              {"in_superior_set_M", m.in_superior_set_max},
                              {"in_superior_set_R", m.in_superior_set_range}});
    return Json{{"alpha", r.alpha},
                {"replications", r.replications},
                {"block_length", r.block_length},
                {"models", std::move(models)}};
}

Json to_json(const AccuracySummary& s) {
    return Json{{"rmsfe", s.rmsfe}, {"mafe", s.mafe}};
}

namespace {

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os << std::setprecision(prec) << v;
    return os.str();
}

std::string table(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
        }
        os << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return os.str();
}

} // namespace

std::string stats_table_text(const std::vector<DescriptiveStats>& stats) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : stats) {
        const std::string jb =
            s.jb_pvalue < 2.2e-16 ? "< 2.2e-16" : fmt(s.jb_pvalue, 4);
        rows.push_back({s.label, fmt(s.mean, 7), fmt(s.median, 7), fmt(s.std_dev, 7),
                        fmt(s.minimum, 7), fmt(s.maximum, 7), fmt(s.skewness, 7),
                        fmt(s.kurtosis, 7), jb});
    }
    return table({"series", "mean", "median", "std_dev", "min", "max", "skewness", "kurtosis",
                  "jb_pvalue"},
                 rows);
}

std::string correlation_table_text(const Eigen::MatrixXd& corr,
                                   const std::vector<std::string>& labels) {
    std::vector<std::string> header{""};
    header.insert(header.end(), labels.begin(), labels.end());
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < corr.rows(); ++i) {
        std::vector<std::string> row{labels[static_cast<std::size_t>(i)]};
        for (Eigen::Index j = 0; j < corr.cols(); ++j) row.push_back(fmt(corr(i, j), 4));
        rows.push_back(std::move(row));
    }
    return table(header, rows);
}

std::string mcs_table_text(const McsResult& r) {
    std::vector<McsModelResult> by_rank = r.models;
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto& a, const auto& b) { return a.rank_max < b.rank_max; });
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : by_rank)
        rows.push_back({m.name, std::to_string(m.rank_max), fmt(m.v_max, 4), fmt(m.p_max, 4),
                        std::to_string(m.rank_range), fmt(m.v_range, 4), fmt(m.p_range, 4),
                        fmt(m.avg_loss, 6), m.in_superior_set_max ? "yes" : "no"});
    return table({"model", "rank_M", "v_M", "MCS_p_M", "rank_R", "v_R", "MCS_p_R", "loss",
                  "in_set"},
                 rows);
}

void write_loss_csv(const LossPanel& lp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write loss file: " + path);
    out << "model,series,date,error\n";
    out.precision(17);
    for (std::size_t m = 0; m < lp.models.size(); ++m)
        for (Eigen::Index t = 0; t < lp.out_of_sample(); ++t) {
            if (!lp.valid[m][static_cast<std::size_t>(t)]) continue;
            for (Eigen::Index i = 0; i < lp.series_count(); ++i)
                out << to_string(lp.models[m]) << ',' << lp.labels[static_cast<std::size_t>(i)]
                    << ',' << lp.dates[static_cast<std::size_t>(t)] << ',' << lp.errors[m](t, i)
                    << '\n';
        }
}

} // namespace volnet
