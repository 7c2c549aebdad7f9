#include "volnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <tuple>

#include "volnet/errors.hpp"
#include "volnet/garch.hpp"

#include <json.hpp>

namespace volnet {

std::string to_string(DissimilarityMethod m) {
    switch (m) {
        case DissimilarityMethod::euclidean: return "euclidean";
        case DissimilarityMethod::correlation: return "correlation";
        case DissimilarityMethod::piccolo: return "piccolo";
        case DissimilarityMethod::ccc: return "ccc";
        case DissimilarityMethod::dcc: return "dcc";
        case DissimilarityMethod::go: return "go";
    }
    return "?";
}

std::string to_string(WeightNormalization s) {
    switch (s) {
        case WeightNormalization::row_stochastic: return "row_stochastic";
        case WeightNormalization::spectral: return "spectral";
        case WeightNormalization::none: return "none";
    }
    return "?";
}

DissimilarityMethod dissimilarity_method_from_string(const std::string& s) {
    for (auto m : {DissimilarityMethod::euclidean, DissimilarityMethod::correlation,
                   DissimilarityMethod::piccolo, DissimilarityMethod::ccc,
                   DissimilarityMethod::dcc, DissimilarityMethod::go})
        if (to_string(m) == s) return m;
    throw ConfigError("unknown dissimilarity method: " + s);
}

WeightNormalization weight_normalization_from_string(const std::string& s) {
    for (auto w : {WeightNormalization::row_stochastic, WeightNormalization::spectral,
                   WeightNormalization::none})
        if (to_string(w) == s) return w;
    throw ConfigError("unknown weight normalization: " + s);
}

DissimilarityMatrix correlation_dissimilarity(const Eigen::MatrixXd& corr,
                                              DissimilarityMethod method,
                                              std::vector<std::string> labels) {
    const Eigen::Index n = corr.rows();
    DissimilarityMatrix out;
    out.method = method;
    out.labels = std::move(labels);
    out.d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double rho = 0.5 * (corr(i, j) + corr(j, i));
            if (rho > 1.0) {
                rho = 1.0;
                ++out.clamped;
            }
            const double d = std::sqrt(std::max(0.0, 2.0 * (1.0 - rho)));
            out.d(i, j) = d;
            out.d(j, i) = d;
        }
    }
    return out;
}

DissimilarityMatrix dissimilarity(const ReturnPanel& panel, DissimilarityMethod method,
                                  const NetworkInputs& inputs) {
    const Eigen::Index n = panel.series_count();
    DissimilarityMatrix out;
    out.method = method;
    out.labels = panel.labels;

    switch (method) {
        case DissimilarityMethod::euclidean: {
            out.d = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    const double d = (panel.returns.col(i) - panel.returns.col(j)).norm();
                    out.d(i, j) = d;
                    out.d(j, i) = d;
                }
            return out;
        }
        case DissimilarityMethod::correlation:
            return correlation_dissimilarity(correlation_matrix(panel), method, panel.labels);
        case DissimilarityMethod::piccolo: {
            const int P = inputs.piccolo_lags;
            Eigen::MatrixXd coeffs(n, P); // zero-padded coefficient vectors
            coeffs.setZero();
            for (Eigen::Index i = 0; i < n; ++i) {
                const LogArchFit f = fit_log_arch(panel.series(i), P, inputs.zero_adjust);
                coeffs.row(i).head(f.gamma.size()) = f.gamma.transpose();
            }
            out.d = Eigen::MatrixXd::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    const double d = (coeffs.row(i) - coeffs.row(j)).norm();
                    out.d(i, j) = d;
                    out.d(j, i) = d;
                }
            return out;
        }
        case DissimilarityMethod::ccc:
            if (!inputs.ccc) throw ConfigError("dissimilarity 'ccc' requires a CCC fit");
            return correlation_dissimilarity(inputs.ccc->R, method, panel.labels);
        case DissimilarityMethod::dcc:
            if (!inputs.dcc) throw ConfigError("dissimilarity 'dcc' requires a DCC fit");
            return correlation_dissimilarity(average_correlation(inputs.dcc->R_path), method,
                                             panel.labels);
        case DissimilarityMethod::go:
            if (!inputs.go) throw ConfigError("dissimilarity 'go' requires a GO-GARCH fit");
            return correlation_dissimilarity(average_correlation(inputs.go->R_path), method,
                                             panel.labels);
    }
    throw ConfigError("unhandled dissimilarity method");
}

WeightMatrix to_weights(const DissimilarityMatrix& d) {
    const Eigen::Index n = d.d.rows();
    const bool bounded = d.method == DissimilarityMethod::ccc ||
                         d.method == DissimilarityMethod::dcc ||
                         d.method == DissimilarityMethod::go;
    WeightMatrix w;
    w.method = d.method;
    w.labels = d.labels;
    w.normalization = WeightNormalization::none;
    w.w_raw = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double wij;
            if (bounded) {
                // d^2 = 2 (1 - rho), so this is 1 / (2(1 - rho) + 1)
                wij = 1.0 / (d.d(i, j) * d.d(i, j) + 1.0);
            } else {
                if (!(d.d(i, j) > 0.0))
                    throw NumericalError("coincident nodes: zero " + to_string(d.method) +
                                         " distance between '" +
                                         d.labels[static_cast<std::size_t>(i)] + "' and '" +
                                         d.labels[static_cast<std::size_t>(j)] + "'");
                wij = 1.0 / d.d(i, j);
            }
            w.w_raw(i, j) = wij;
            w.w_raw(j, i) = wij;
        }
    }
    w.w_norm = w.w_raw;
    return w;
}

WeightMatrix normalize(const WeightMatrix& w, WeightNormalization scheme) {
    WeightMatrix out = w;
    out.normalization = scheme;
    const Eigen::Index n = w.w_raw.rows();
    switch (scheme) {
        case WeightNormalization::none:
            out.w_norm = w.w_raw;
            return out;
        case WeightNormalization::row_stochastic: {
            out.w_norm = w.w_raw;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double s = w.w_raw.row(i).sum();
                if (!(s > 0.0))
                    throw NumericalError("row " + std::to_string(i) +
                                         " has zero weight sum; row-stochastic normalization undefined");
                out.w_norm.row(i) /= s;
            }
            return out;
        }
        case WeightNormalization::spectral: {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w.w_raw);
            const double lam = es.eigenvalues().cwiseAbs().maxCoeff();
            if (!(lam > 0.0)) throw NumericalError("zero spectral radius; normalization undefined");
            out.w_norm = w.w_raw / lam;
            return out;
        }
    }
    throw ConfigError("unhandled normalization scheme");
}

void export_graph(const WeightMatrix& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write edge list: " + path);
    out << "source,target,weight\n";
    out.precision(17);
    const Eigen::Index n = w.w_raw.rows();
    struct Edge {
        std::string source, target;
        double weight;
    };
    std::vector<Edge> edges;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (w.w_raw(i, j) == 0.0) continue;
            std::string a = w.labels[static_cast<std::size_t>(i)];
            std::string b = w.labels[static_cast<std::size_t>(j)];
            if (b < a) std::swap(a, b);
            edges.push_back({std::move(a), std::move(b), w.w_raw(i, j)});
        }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.source, x.target) < std::tie(y.source, y.target);
    });
    for (const auto& e : edges) out << e.source << ',' << e.target << ',' << e.weight << '\n';
}

void export_adjacency_json(const WeightMatrix& w, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["method"] = to_string(w.method);
    doc["normalization"] = to_string(w.normalization);
    doc["labels"] = w.labels;
    const Eigen::Index n = w.w_raw.rows();
    auto dump = [&](const Eigen::MatrixXd& m) {
        std::vector<std::vector<double>> rows;
        for (Eigen::Index i = 0; i < n; ++i)
            rows.emplace_back(m.row(i).begin(), m.row(i).end());
        return rows;
    };
    doc["w_raw"] = dump(w.w_raw);
    doc["w_norm"] = dump(w.w_norm);
    std::ofstream out(path);
    if (!out) throw DataError("cannot write adjacency file: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace volnet
