// Command-line front end: subcommands over a declarative JSON run
// configuration with flag overrides. Exit codes: 0 success, 2 config error,
// 3 data error, 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "volnet/forecast_eval.hpp"
#include "volnet/garch.hpp"
#include "volnet/mgarch.hpp"
#include "volnet/netarch.hpp"
#include "volnet/network.hpp"
#include "volnet/panel.hpp"
#include "volnet/rng.hpp"
#include "volnet/serialize.hpp"
#include "volnet/sim.hpp"

namespace fs = std::filesystem;
using volnet::Json;

namespace {

constexpr const char* kVersion = "volnet 1.0.0";

struct RunConfig {
    std::string data_path;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    int threads = 1;

    volnet::ZeroAdjust zero_adjust;
    Eigen::Index window = 300;
    std::vector<volnet::ModelKind> roster = volnet::default_roster();
    volnet::WeightNormalization normalization = volnet::WeightNormalization::row_stochastic;
    int piccolo_lags = 5;

    int bootstrap_b = 2000;
    double mcs_alpha = 0.05;
    int mcs_b = 5000;

    bool include_paths = false;
    bool sensitivity = false;

    // simulate subcommand
    Eigen::Index sim_n = 6;
    Eigen::Index sim_t = 480;
    double sim_rho = 0.5;
    double sim_gamma = 0.2;
    double sim_phi0 = -1.0;
    std::string sim_law = "log_chi_square";
    double sim_sigma2 = 1.0;

    Json raw = Json::object();
};

volnet::ZeroAdjust parse_zero_adjust(const Json& j) {
    volnet::ZeroAdjust z;
    const std::string scheme = j.value("scheme", "min_nonzero");
    if (scheme == "min_nonzero") z.scheme = volnet::ZeroAdjustScheme::min_nonzero;
    else if (scheme == "percentile_1") z.scheme = volnet::ZeroAdjustScheme::percentile_1;
    else if (scheme == "fixed") z.scheme = volnet::ZeroAdjustScheme::fixed;
    else throw volnet::ConfigError("unknown zero_adjust scheme: " + scheme);
    z.fixed_value = j.value("fixed_value", 1e-6);
    return z;
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw volnet::ConfigError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw volnet::ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    cfg.raw = j;
    cfg.data_path = j.value("data", cfg.data_path);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    if (j.contains("zero_adjust")) cfg.zero_adjust = parse_zero_adjust(j["zero_adjust"]);
    cfg.window = j.value("window", cfg.window);
    if (j.contains("roster")) {
        cfg.roster.clear();
        for (const auto& name : j["roster"])
            cfg.roster.push_back(volnet::model_kind_from_string(name.get<std::string>()));
    }
    if (j.contains("normalization"))
        cfg.normalization =
            volnet::weight_normalization_from_string(j["normalization"].get<std::string>());
    cfg.piccolo_lags = j.value("piccolo_lags", cfg.piccolo_lags);
    cfg.bootstrap_b = j.value("bootstrap_b", cfg.bootstrap_b);
    if (j.contains("mcs")) {
        cfg.mcs_alpha = j["mcs"].value("alpha", cfg.mcs_alpha);
        cfg.mcs_b = j["mcs"].value("b", cfg.mcs_b);
    }
    cfg.include_paths = j.value("include_paths", cfg.include_paths);
    cfg.sensitivity = j.value("sensitivity", cfg.sensitivity);
    if (j.contains("simulate")) {
        const Json& s = j["simulate"];
        cfg.sim_n = s.value("n", cfg.sim_n);
        cfg.sim_t = s.value("T", cfg.sim_t);
        cfg.sim_rho = s.value("rho", cfg.sim_rho);
        cfg.sim_gamma = s.value("gamma", cfg.sim_gamma);
        cfg.sim_phi0 = s.value("phi0", cfg.sim_phi0);
        cfg.sim_law = s.value("law", cfg.sim_law);
        cfg.sim_sigma2 = s.value("sigma2", cfg.sim_sigma2);
    }
    return cfg;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Workspace {
    RunConfig cfg;
    fs::path out;
    std::vector<std::string> artifacts;

    explicit Workspace(RunConfig c) : cfg(std::move(c)) {
        const char* env = std::getenv("VOLNET_OUTPUT_DIR");
        out = env ? fs::path(env) : fs::path(cfg.output_dir);
        fs::create_directories(out);
    }

    std::string file(const std::string& name) {
        artifacts.push_back(name);
        return (out / name).string();
    }

    void write_json(const std::string& name, const Json& j) {
        std::ofstream f(file(name));
        f << j.dump(2) << '\n';
    }

    void write_text(const std::string& name, const std::string& text) {
        std::ofstream f(file(name));
        f << text;
    }

    void manifest(const std::string& command) {
        Json j{{"command", command},
               {"version", kVersion},
               {"seed", cfg.seed},
               {"config_hash", fnv1a(cfg.raw.dump())},
               {"artifacts", artifacts}};
        std::ofstream f(out / "manifest.json");
        f << j.dump(2) << '\n';
    }
};

volnet::ReturnPanel load_returns(const RunConfig& cfg) {
    if (cfg.data_path.empty())
        throw volnet::ConfigError("no data file configured (set \"data\" or --data)");
    return volnet::log_returns(volnet::load_prices(cfg.data_path));
}

volnet::GarchSpec default_spec() { return volnet::GarchSpec{}; }

struct MgarchFits {
    volnet::UnivariateStage stage;
    volnet::CccFit ccc;
    volnet::DccFit dcc;
    volnet::GoGarchFit go;
};

MgarchFits fit_all_mgarch(const volnet::ReturnPanel& r, std::uint64_t seed) {
    MgarchFits f;
    f.stage = volnet::fit_univariate_stage(r, default_spec(), seed);
    f.ccc = volnet::fit_ccc(r, f.stage);
    f.dcc = volnet::fit_dcc(r, f.stage, seed);
    f.go = volnet::fit_gogarch(r, seed);
    return f;
}

std::map<volnet::DissimilarityMethod, volnet::WeightMatrix> build_all_weights(
    const volnet::ReturnPanel& r, const MgarchFits& fits, const RunConfig& cfg) {
    volnet::NetworkInputs inputs;
    inputs.ccc = &fits.ccc;
    inputs.dcc = &fits.dcc;
    inputs.go = &fits.go;
    inputs.piccolo_lags = cfg.piccolo_lags;
    inputs.zero_adjust = cfg.zero_adjust;
    std::map<volnet::DissimilarityMethod, volnet::WeightMatrix> out;
    for (auto m : {volnet::DissimilarityMethod::euclidean, volnet::DissimilarityMethod::correlation,
                   volnet::DissimilarityMethod::piccolo, volnet::DissimilarityMethod::ccc,
                   volnet::DissimilarityMethod::dcc, volnet::DissimilarityMethod::go})
        out.emplace(m, volnet::normalize(volnet::to_weights(volnet::dissimilarity(r, m, inputs)),
                                         cfg.normalization));
    return out;
}

volnet::RollingConfig rolling_config(const RunConfig& cfg) {
    volnet::RollingConfig rc;
    rc.window = cfg.window;
    rc.zero_adjust = cfg.zero_adjust;
    rc.roster = cfg.roster;
    rc.normalization = cfg.normalization;
    rc.piccolo_lags = cfg.piccolo_lags;
    rc.seed = cfg.seed;
    rc.exec = cfg.threads == 1 ? volnet::ExecPolicy::serial()
                               : volnet::ExecPolicy::parallel(cfg.threads);
    return rc;
}

void write_actuals_csv(const volnet::LossPanel& lp, const std::string& path) {
    std::ofstream out(path);
    out << "series,date,actual\n";
    out.precision(17);
    for (Eigen::Index t = 0; t < lp.out_of_sample(); ++t)
        for (Eigen::Index i = 0; i < lp.series_count(); ++i)
            out << lp.labels[static_cast<std::size_t>(i)] << ','
                << lp.dates[static_cast<std::size_t>(t)] << ',' << lp.actual(t, i) << '\n';
}

volnet::LossPanel read_losses(const fs::path& dir) {
    const fs::path loss_path = dir / "losses.csv";
    const fs::path act_path = dir / "actuals.csv";
    std::ifstream loss_in(loss_path);
    if (!loss_in) throw volnet::DataError("cannot open " + loss_path.string() + " (run `forecast` first)");
    std::ifstream act_in(act_path);
    if (!act_in) throw volnet::DataError("cannot open " + act_path.string() + " (run `forecast` first)");

    struct Key {
        std::string series, date;
    };
    std::vector<std::string> model_order, series_order, date_order;
    std::map<std::string, std::map<std::string, std::map<std::string, double>>> cells;
    std::string line;
    std::getline(loss_in, line); // header
    while (std::getline(loss_in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string model, series, date, err;
        std::getline(ss, model, ',');
        std::getline(ss, series, ',');
        std::getline(ss, date, ',');
        std::getline(ss, err, ',');
        if (cells.find(model) == cells.end()) model_order.push_back(model);
        cells[model][date][series] = std::stod(err);
    }
    std::map<std::string, std::map<std::string, double>> actual;
    std::getline(act_in, line);
    while (std::getline(act_in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string series, date, val;
        std::getline(ss, series, ',');
        std::getline(ss, date, ',');
        std::getline(ss, val, ',');
        if (actual.find(date) == actual.end()) date_order.push_back(date);
        if (actual[date].find(series) == actual[date].end() &&
            std::find(series_order.begin(), series_order.end(), series) == series_order.end())
            series_order.push_back(series);
        actual[date][series] = std::stod(val);
    }

    volnet::LossPanel lp;
    lp.labels = series_order;
    lp.dates = date_order;
    const Eigen::Index P = static_cast<Eigen::Index>(date_order.size());
    const Eigen::Index n = static_cast<Eigen::Index>(series_order.size());
    lp.actual.resize(P, n);
    for (Eigen::Index t = 0; t < P; ++t)
        for (Eigen::Index i = 0; i < n; ++i)
            lp.actual(t, i) = actual[date_order[static_cast<std::size_t>(t)]]
                                    [series_order[static_cast<std::size_t>(i)]];
    for (const auto& name : model_order) {
        lp.models.push_back(volnet::model_kind_from_string(name));
        Eigen::MatrixXd e = Eigen::MatrixXd::Constant(P, n, std::nan(""));
        std::vector<char> valid(static_cast<std::size_t>(P), 0);
        std::size_t ok = 0;
        auto& per_model = cells[name];
        for (Eigen::Index t = 0; t < P; ++t) {
            auto it = per_model.find(date_order[static_cast<std::size_t>(t)]);
            if (it == per_model.end()) continue; // window skipped for this model
            for (Eigen::Index i = 0; i < n; ++i)
                e(t, i) = it->second.at(series_order[static_cast<std::size_t>(i)]);
            valid[static_cast<std::size_t>(t)] = 1;
            ++ok;
        }
        lp.errors.push_back(std::move(e));
        lp.valid.push_back(std::move(valid));
        lp.completeness.push_back(static_cast<double>(ok) / static_cast<double>(P));
    }
    return lp;
}

// ---- subcommand bodies ----

void cmd_describe(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);
    const auto stats = volnet::describe_panel(r);
    const Eigen::MatrixXd corr = volnet::correlation_matrix(r);
    const std::string text = volnet::stats_table_text(stats);
    std::cout << text << '\n' << volnet::correlation_table_text(corr, r.labels);
    ws.write_text("stats.txt", text);
    ws.write_json("stats.json", volnet::to_json(stats));
    ws.write_text("correlation.txt", volnet::correlation_table_text(corr, r.labels));
    ws.write_json("correlation.json", volnet::correlation_json(corr, r.labels));
    ws.manifest("describe");
}

void cmd_fit_garch(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);
    Json fits = Json::object();
    for (Eigen::Index i = 0; i < r.series_count(); ++i) {
        const volnet::GarchFit fit = volnet::fit_garch(
            r.series(i), default_spec(),
            volnet::stream_seed(ws.cfg.seed, 0xf17, static_cast<std::uint64_t>(i)));
        fits[r.labels[static_cast<std::size_t>(i)]] = volnet::to_json(fit);
        std::cout << r.labels[static_cast<std::size_t>(i)] << ": log_lik=" << fit.log_lik
                  << (fit.diagnostics.converged ? "" : "  [not converged]") << '\n';
    }
    ws.write_json("garch_fits.json", fits);
    ws.manifest("fit-garch");
}

void cmd_fit_mgarch(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);
    const MgarchFits fits = fit_all_mgarch(r, ws.cfg.seed);
    Json j{{"ccc", volnet::to_json(fits.ccc, ws.cfg.include_paths)},
           {"dcc", volnet::to_json(fits.dcc, ws.cfg.include_paths)},
           {"gogarch", volnet::to_json(fits.go, ws.cfg.include_paths)}};
    ws.write_json("mgarch.json", j);
    std::cout << "CCC log_lik=" << fits.ccc.log_lik << " aic=" << fits.ccc.aic << '\n'
              << "DCC log_lik=" << fits.dcc.log_lik << " aic=" << fits.dcc.aic
              << " a=" << fits.dcc.a << " b=" << fits.dcc.b << '\n'
              << "GO  log_lik=" << fits.go.log_lik << " aic=" << fits.go.aic << '\n';
    ws.manifest("fit-mgarch");
}

void cmd_network(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);
    const MgarchFits fits = fit_all_mgarch(r, ws.cfg.seed);
    const auto weights = build_all_weights(r, fits, ws.cfg);
    Json summary = Json::object();
    for (const auto& [method, w] : weights) {
        const std::string name = volnet::to_string(method);
        volnet::export_graph(w, ws.file("edges_" + name + ".csv"));
        volnet::export_adjacency_json(w, ws.file("adjacency_" + name + ".json"));
        summary[name] = Json{{"normalization", volnet::to_string(w.normalization)},
                             {"nodes", w.labels.size()}};
    }
    ws.write_json("networks.json", summary);
    ws.manifest("network");
}

Json netarch_table(const volnet::ReturnPanel& r, const MgarchFits& fits, const RunConfig& cfg) {
    const auto weights = build_all_weights(r, fits, cfg);
    const volnet::LogSquaredPanel ys = volnet::log_square_transform(r, cfg.zero_adjust);
    Json rows = Json::array();
    for (const auto& [method, w] : weights) {
        const volnet::NetLogArchFit fit = volnet::fit_gmm(ys, w);
        Json row = volnet::to_json(fit);
        rows.push_back(std::move(row));
    }
    return Json{{"normalization", volnet::to_string(cfg.normalization)}, {"networks", rows}};
}

void cmd_fit_net(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);
    const MgarchFits fits = fit_all_mgarch(r, ws.cfg.seed);
    const Json j = netarch_table(r, fits, ws.cfg);
    ws.write_json("netarch.json", j);
    for (const auto& row : j["networks"])
        std::cout << row["weight_method"].get<std::string>() << ": rho="
                  << row["rho"].get<double>() << " sigma2=" << row["sigma2"].get<double>()
                  << '\n';
    ws.manifest("fit-net");
}

void cmd_forecast(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);
    const volnet::LossPanel lp = volnet::rolling_forecast(r, rolling_config(ws.cfg));
    volnet::write_loss_csv(lp, ws.file("losses.csv"));
    write_actuals_csv(lp, ws.file("actuals.csv"));
    Json comp = Json::object();
    for (std::size_t m = 0; m < lp.models.size(); ++m)
        comp[volnet::to_string(lp.models[m])] = lp.completeness[m];
    ws.write_json("completeness.json", comp);
    std::cout << "windows: " << lp.out_of_sample() << "\n";
    for (std::size_t m = 0; m < lp.models.size(); ++m)
        std::cout << volnet::to_string(lp.models[m]) << ": completeness "
                  << lp.completeness[m] * 100.0 << "%\n";
    ws.manifest("forecast");
}

Json inference_block(const volnet::LossPanel& lp, volnet::ModelKind benchmark, int bootstrap_b,
                     std::uint64_t seed, const volnet::ExecPolicy& exec, bool with_cw) {
    Json rows = Json::array();
    for (std::size_t m = 0; m < lp.models.size(); ++m) {
        const volnet::ModelKind kind = lp.models[m];
        const volnet::BootstrapCi ci =
            volnet::bootstrap_ci(lp.errors[m], bootstrap_b, 0.95,
                                 volnet::stream_seed(seed, 0xc1, m), exec);
        Json row{{"model", volnet::to_string(kind)}, {"ci", volnet::to_json(ci)}};
        if (kind != benchmark) {
            row["dm_vs_benchmark"] = volnet::to_json(
                volnet::dm_test_pooled(lp, kind, benchmark, volnet::LossType::squared));
            if (with_cw)
                row["cw_vs_benchmark"] = volnet::to_json(volnet::cw_test_pooled(lp, benchmark, kind));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"benchmark", volnet::to_string(benchmark)}, {"models", rows}};
}

std::string evaluation_report_text(const Json& j) {
    std::ostringstream os;
    os << "forecast accuracy (log-volatility scale)\n";
    for (const auto& row : j["accuracy"])
        os << "  " << row["model"].get<std::string>() << ": RMSFE "
           << row["rmsfe"].get<double>() << ", MAFE " << row["mafe"].get<double>() << '\n';
    for (const char* key : {"inference_vs_net_go", "inference_vs_std_dcc"}) {
        if (!j.contains(key)) continue;
        const Json& block = j[key];
        os << "inference vs " << block["benchmark"].get<std::string>()
           << " (95% bootstrap CIs; DM on squared loss)\n";
        for (const auto& row : block["models"]) {
            const Json& ci = row["ci"];
            os << "  " << row["model"].get<std::string>() << ": RMSFE ["
               << ci["rmsfe_lower"].get<double>() << ", " << ci["rmsfe_upper"].get<double>()
               << "], MAFE [" << ci["mafe_lower"].get<double>() << ", "
               << ci["mafe_upper"].get<double>() << "]";
            if (row.contains("dm_vs_benchmark"))
                os << ", DM p " << row["dm_vs_benchmark"]["p_value"].get<double>();
            if (row.contains("cw_vs_benchmark"))
                os << ", CW p " << row["cw_vs_benchmark"]["p_value"].get<double>();
            os << '\n';
        }
    }
    return os.str();
}

void cmd_evaluate(Workspace& ws) {
    const volnet::LossPanel lp = read_losses(ws.out).complete_subset();
    const volnet::ExecPolicy exec = ws.cfg.threads == 1 ? volnet::ExecPolicy::serial()
                                                        : volnet::ExecPolicy::parallel(ws.cfg.threads);
    Json accuracy = Json::array();
    for (std::size_t m = 0; m < lp.models.size(); ++m) {
        const volnet::AccuracySummary s = volnet::rmsfe_mafe(lp.errors[m]);
        accuracy.push_back(Json{{"model", volnet::to_string(lp.models[m])},
                                {"rmsfe", s.rmsfe},
                                {"mafe", s.mafe}});
        std::cout << volnet::to_string(lp.models[m]) << ": RMSFE=" << s.rmsfe
                  << " MAFE=" << s.mafe << '\n';
    }
    Json j{{"accuracy", accuracy}};
    const bool has_netgo =
        std::find(lp.models.begin(), lp.models.end(), volnet::ModelKind::net_go) != lp.models.end();
    const bool has_stddcc =
        std::find(lp.models.begin(), lp.models.end(), volnet::ModelKind::std_dcc) != lp.models.end();
    if (has_netgo)
        j["inference_vs_net_go"] = inference_block(lp, volnet::ModelKind::net_go,
                                                   ws.cfg.bootstrap_b, ws.cfg.seed, exec, false);
    if (has_stddcc)
        j["inference_vs_std_dcc"] = inference_block(lp, volnet::ModelKind::std_dcc,
                                                    ws.cfg.bootstrap_b, ws.cfg.seed, exec, true);
    ws.write_json("evaluation.json", j);
    ws.write_text("evaluation.txt", evaluation_report_text(j));
    ws.manifest("evaluate");
}

void cmd_mcs(Workspace& ws) {
    const volnet::LossPanel lp = read_losses(ws.out).complete_subset();
    const volnet::ExecPolicy exec = ws.cfg.threads == 1 ? volnet::ExecPolicy::serial()
                                                        : volnet::ExecPolicy::parallel(ws.cfg.threads);
    std::vector<std::string> names;
    for (auto m : lp.models) names.push_back(volnet::to_string(m));
    const volnet::McsResult res =
        volnet::mcs(volnet::mcs_loss_matrix(lp, volnet::LossType::squared), names,
                    ws.cfg.mcs_alpha, ws.cfg.mcs_b, volnet::stream_seed(ws.cfg.seed, 0x3c5), exec);
    const std::string text = volnet::mcs_table_text(res);
    std::cout << text;
    ws.write_text("mcs.txt", text);
    ws.write_json("mcs.json", volnet::to_json(res));
    ws.manifest("mcs");
}

void cmd_simulate(Workspace& ws) {
    volnet::NetSimSpec spec;
    spec.n = ws.cfg.sim_n;
    spec.T = ws.cfg.sim_t;
    spec.rho = ws.cfg.sim_rho;
    spec.gamma = Eigen::VectorXd::Constant(spec.n, ws.cfg.sim_gamma);
    spec.phi0 = Eigen::VectorXd::Constant(spec.n, ws.cfg.sim_phi0);
    // complete graph, row-stochastic
    spec.W = Eigen::MatrixXd::Constant(spec.n, spec.n, 1.0 / static_cast<double>(spec.n - 1));
    spec.W.diagonal().setZero();
    spec.law = ws.cfg.sim_law == "gaussian" ? volnet::NetInnovationLaw::gaussian
                                            : volnet::NetInnovationLaw::log_chi_square;
    spec.sigma2 = ws.cfg.sim_sigma2;
    spec.seed = ws.cfg.seed;
    const volnet::NetSim sim = volnet::simulate_net_logarch(spec);

    // Serialize through the ingestion schema: prices start at 100 and follow
    // the simulated log returns, so load + log_returns round-trips.
    volnet::PricePanel prices;
    prices.labels = sim.returns.labels;
    prices.dates = volnet::synthetic_dates(spec.T + 1);
    prices.prices.resize(spec.T + 1, spec.n);
    prices.prices.row(0).setConstant(100.0);
    for (Eigen::Index t = 0; t < spec.T; ++t)
        for (Eigen::Index i = 0; i < spec.n; ++i)
            prices.prices(t + 1, i) =
                prices.prices(t, i) * std::exp(sim.returns.returns(t, i));
    volnet::save_prices_csv(prices, ws.file("simulated_prices.csv"));

    Json truth{{"n", spec.n},         {"T", spec.T},
               {"rho", spec.rho},     {"gamma", ws.cfg.sim_gamma},
               {"phi0", ws.cfg.sim_phi0}, {"law", ws.cfg.sim_law},
               {"sigma2", spec.sigma2},   {"seed", spec.seed}};
    ws.write_json("simulation_truth.json", truth);
    std::cout << "simulated panel: n=" << spec.n << " T=" << spec.T << '\n';
    ws.manifest("simulate");
}

void cmd_reproduce(Workspace& ws) {
    const volnet::ReturnPanel r = load_returns(ws.cfg);

    // Table 1 / 2: descriptive statistics and correlations.
    const auto stats = volnet::describe_panel(r);
    ws.write_text("table1_descriptive.txt", volnet::stats_table_text(stats));
    ws.write_json("table1_descriptive.json", volnet::to_json(stats));
    const Eigen::MatrixXd corr = volnet::correlation_matrix(r);
    ws.write_text("table2_correlation.txt", volnet::correlation_table_text(corr, r.labels));
    ws.write_json("table2_correlation.json", volnet::correlation_json(corr, r.labels));

    // Table 3: univariate GARCH(1,1)-t. Table 4/5: CCC/DCC and GO.
    const MgarchFits fits = fit_all_mgarch(r, ws.cfg.seed);
    Json t3 = Json::object();
    for (std::size_t i = 0; i < fits.stage.fits.size(); ++i)
        t3[r.labels[i]] = volnet::to_json(fits.stage.fits[i]);
    ws.write_json("table3_garch.json", t3);
    ws.write_json("table4_ccc_dcc.json", Json{{"ccc", volnet::to_json(fits.ccc)},
                                              {"dcc", volnet::to_json(fits.dcc)}});
    ws.write_json("table5_gogarch.json", volnet::to_json(fits.go));

    // Figure 3 artifacts: graph exports per method.
    const auto weights = build_all_weights(r, fits, ws.cfg);
    for (const auto& [method, w] : weights) {
        const std::string name = volnet::to_string(method);
        volnet::export_graph(w, ws.file("figure3_edges_" + name + ".csv"));
        volnet::export_adjacency_json(w, ws.file("figure3_adjacency_" + name + ".json"));
    }

    // Table 7: GMM estimates per network.
    ws.write_json("table7_netarch.json", netarch_table(r, fits, ws.cfg));

    // Rolling forecasts, inference, MCS (Tables 5/6/8-shaped).
    const volnet::LossPanel lp_raw = volnet::rolling_forecast(r, rolling_config(ws.cfg));
    volnet::write_loss_csv(lp_raw, ws.file("losses.csv"));
    write_actuals_csv(lp_raw, ws.file("actuals.csv"));
    const volnet::LossPanel lp = lp_raw.complete_subset();
    const volnet::ExecPolicy exec = ws.cfg.threads == 1 ? volnet::ExecPolicy::serial()
                                                        : volnet::ExecPolicy::parallel(ws.cfg.threads);

    Json accuracy = Json::array();
    for (std::size_t m = 0; m < lp.models.size(); ++m) {
        const volnet::AccuracySummary s = volnet::rmsfe_mafe(lp.errors[m]);
        accuracy.push_back(Json{{"model", volnet::to_string(lp.models[m])},
                                {"rmsfe", s.rmsfe},
                                {"mafe", s.mafe}});
    }
    Json eval{{"accuracy", accuracy}};
    if (std::find(lp.models.begin(), lp.models.end(), volnet::ModelKind::net_go) !=
        lp.models.end())
        eval["inference_vs_net_go"] = inference_block(lp, volnet::ModelKind::net_go,
                                                      ws.cfg.bootstrap_b, ws.cfg.seed, exec, false);
    if (std::find(lp.models.begin(), lp.models.end(), volnet::ModelKind::std_dcc) !=
        lp.models.end())
        eval["inference_vs_std_dcc"] = inference_block(lp, volnet::ModelKind::std_dcc,
                                                       ws.cfg.bootstrap_b, ws.cfg.seed, exec, true);
    ws.write_json("table5_forecast_inference.json", eval);
    ws.write_text("table5_forecast_inference.txt", evaluation_report_text(eval));

    std::vector<std::string> names;
    for (auto m : lp.models) names.push_back(volnet::to_string(m));
    const volnet::McsResult res =
        volnet::mcs(volnet::mcs_loss_matrix(lp, volnet::LossType::squared), names,
                    ws.cfg.mcs_alpha, ws.cfg.mcs_b, volnet::stream_seed(ws.cfg.seed, 0x3c5), exec);
    ws.write_text("table6_mcs.txt", volnet::mcs_table_text(res));
    ws.write_json("table6_mcs.json", volnet::to_json(res));

    if (ws.cfg.sensitivity) {
        // Appendix grid: training windows x zero-adjustment schemes.
        Json grid = Json::array();
        for (const Eigen::Index t0 : {200, 250, 300, 350}) {
            volnet::RollingConfig rc = rolling_config(ws.cfg);
            rc.window = t0;
            const volnet::LossPanel lpg = volnet::rolling_forecast(r, rc).complete_subset();
            for (std::size_t m = 0; m < lpg.models.size(); ++m) {
                const volnet::AccuracySummary s = volnet::rmsfe_mafe(lpg.errors[m]);
                grid.push_back(Json{{"model", volnet::to_string(lpg.models[m])},
                                    {"window", t0},
                                    {"zero_adjust", "baseline"},
                                    {"rmsfe", s.rmsfe},
                                    {"mafe", s.mafe}});
            }
        }
        for (const auto& [name, scheme] :
             std::vector<std::pair<std::string, volnet::ZeroAdjustScheme>>{
                 {"min", volnet::ZeroAdjustScheme::min_nonzero},
                 {"p1", volnet::ZeroAdjustScheme::percentile_1},
                 {"fixed_1e-6", volnet::ZeroAdjustScheme::fixed}}) {
            volnet::RollingConfig rc = rolling_config(ws.cfg);
            rc.zero_adjust = volnet::ZeroAdjust{scheme, 1e-6};
            const volnet::LossPanel lpg = volnet::rolling_forecast(r, rc).complete_subset();
            for (std::size_t m = 0; m < lpg.models.size(); ++m) {
                const volnet::AccuracySummary s = volnet::rmsfe_mafe(lpg.errors[m]);
                grid.push_back(Json{{"model", volnet::to_string(lpg.models[m])},
                                    {"window", ws.cfg.window},
                                    {"zero_adjust", name},
                                    {"rmsfe", s.rmsfe},
                                    {"mafe", s.mafe}});
            }
        }
        ws.write_json("table8_sensitivity.json", grid);
    }
    ws.manifest("reproduce");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) + " - network log-ARCH volatility toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_override;
    std::string out_override;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> threads_override;
    std::optional<Eigen::Index> window_override;
    std::optional<std::string> norm_override;
    std::optional<int> piccolo_override;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--data", data_override, "price CSV path (overrides config)");
    app.add_option("--out", out_override, "output directory (overrides config)");
    app.add_option("--seed", seed_override, "RNG seed (overrides config)");
    app.add_option("--threads", threads_override, "worker threads (1 = serial)");
    app.add_option("--window", window_override, "rolling training window T0");
    app.add_option("--normalization", norm_override, "row_stochastic | spectral | none");
    app.add_option("--piccolo-lags", piccolo_override, "log-ARCH lag order for Piccolo distances");

    for (const char* name : {"describe", "fit-garch", "fit-mgarch", "network", "fit-net",
                             "forecast", "evaluate", "mcs", "simulate", "reproduce"})
        app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = load_config(config_path);
        if (!data_override.empty()) cfg.data_path = data_override;
        if (!out_override.empty()) cfg.output_dir = out_override;
        if (seed_override) cfg.seed = *seed_override;
        if (threads_override) cfg.threads = *threads_override;
        if (window_override) cfg.window = *window_override;
        if (norm_override) cfg.normalization = volnet::weight_normalization_from_string(*norm_override);
        if (piccolo_override) cfg.piccolo_lags = *piccolo_override;

        Workspace ws(std::move(cfg));
        const std::string sub = app.get_subcommands().front()->get_name();
        if (sub == "describe") cmd_describe(ws);
        else if (sub == "fit-garch") cmd_fit_garch(ws);
        else if (sub == "fit-mgarch") cmd_fit_mgarch(ws);
        else if (sub == "network") cmd_network(ws);
        else if (sub == "fit-net") cmd_fit_net(ws);
        else if (sub == "forecast") cmd_forecast(ws);
        else if (sub == "evaluate") cmd_evaluate(ws);
        else if (sub == "mcs") cmd_mcs(ws);
        else if (sub == "simulate") cmd_simulate(ws);
        else if (sub == "reproduce") cmd_reproduce(ws);
        return 0;
    } catch (const volnet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const volnet::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const volnet::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}
