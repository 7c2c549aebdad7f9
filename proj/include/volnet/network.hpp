#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "volnet/mgarch.hpp"
#include "volnet/panel.hpp"
#include "volnet/zero_adjust.hpp"

namespace volnet {

enum class DissimilarityMethod { euclidean, correlation, piccolo, ccc, dcc, go };

enum class WeightNormalization { row_stochastic, spectral, none };

std::string to_string(DissimilarityMethod m);
std::string to_string(WeightNormalization s);
DissimilarityMethod dissimilarity_method_from_string(const std::string& s);
WeightNormalization weight_normalization_from_string(const std::string& s);

struct DissimilarityMatrix {
    DissimilarityMethod method = DissimilarityMethod::euclidean;
    Eigen::MatrixXd d; // symmetric, zero diagonal, nonnegative
    std::vector<std::string> labels;
    int clamped = 0; // correlations clipped to 1 on numerical overshoot
};

struct WeightMatrix {
    DissimilarityMethod method = DissimilarityMethod::euclidean;
    Eigen::MatrixXd w_raw;  // symmetric, zero diagonal
    Eigen::MatrixXd w_norm; // weights used in estimation
    WeightNormalization normalization = WeightNormalization::none;
    std::vector<std::string> labels;
};

/// Optional model fits feeding the model-based dissimilarities.
struct NetworkInputs {
    const CccFit* ccc = nullptr;
    const DccFit* dcc = nullptr;
    const GoGarchFit* go = nullptr;
    int piccolo_lags = 5;
    ZeroAdjust zero_adjust;
};

DissimilarityMatrix dissimilarity(const ReturnPanel& panel, DissimilarityMethod method,
                                  const NetworkInputs& inputs = {});

/// Correlation-to-distance map d = sqrt(2 (1 - rho)) applied entrywise; used
/// by the correlation / ccc / dcc / go methods.
DissimilarityMatrix correlation_dissimilarity(const Eigen::MatrixXd& corr,
                                              DissimilarityMethod method,
                                              std::vector<std::string> labels);

/// Raw weights: reciprocal distance for euclidean/correlation/piccolo,
/// bounded transform 1/(d^2 + 1) = 1/(2(1-rho)+1) for the GARCH-implied
/// methods.
WeightMatrix to_weights(const DissimilarityMatrix& d);

WeightMatrix normalize(const WeightMatrix& w, WeightNormalization scheme);

/// Writes a deterministic `source,target,weight` edge list (undirected,
/// i < j, raw weights).
void export_graph(const WeightMatrix& w, const std::string& path);

/// JSON adjacency dump carrying raw and normalized weights plus provenance.
void export_adjacency_json(const WeightMatrix& w, const std::string& path);

} // namespace volnet
