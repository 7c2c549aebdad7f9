// Acceptance battery. One line per criterion: PASS / FAIL / SKIP.
// Criteria 1-7 need the OPEC monthly price CSV (env VOLNET_OPEC_CSV or
// data/opec_monthly_prices.csv near the working directory) and skip cleanly
// without it. Criterion 8 always runs.

#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "volnet/forecast_eval.hpp"
#include "volnet/garch.hpp"
#include "volnet/mathx.hpp"
#include "volnet/mgarch.hpp"
#include "volnet/netarch.hpp"
#include "volnet/network.hpp"
#include "volnet/panel.hpp"
#include "volnet/rng.hpp"
#include "volnet/sim.hpp"

using namespace volnet;
namespace fs = std::filesystem;

namespace {

void report(int criterion, const std::string& status, const std::string& detail) {
    std::cout << "[acceptance] criterion " << criterion << ": " << status
              << (detail.empty() ? "" : " - " + detail) << std::endl;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<std::string> find_dataset() {
    if (const char* env = std::getenv("VOLNET_OPEC_CSV")) {
        if (fs::exists(env)) return std::string(env);
        return std::nullopt;
    }
    fs::path rel = "data/opec_monthly_prices.csv";
    fs::path base = fs::current_path();
    for (int up = 0; up < 5; ++up) {
        const fs::path cand = base / rel;
        if (fs::exists(cand)) return cand.string();
        base = base.parent_path();
    }
    return std::nullopt;
}

const std::vector<std::string> kCountries = {"Algeria", "Iran",         "Libya",
                                             "Nigeria", "Saudi Arabia", "UAE"};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

/// Panel restricted and reordered to the six reference countries.
ReturnPanel ordered_panel(const ReturnPanel& r) {
    ReturnPanel out;
    out.dates = r.dates;
    out.returns.resize(r.periods(), 6);
    for (std::size_t k = 0; k < kCountries.size(); ++k) {
        Eigen::Index found = -1;
        for (Eigen::Index i = 0; i < r.series_count(); ++i) {
            const std::string have = lower(r.labels[static_cast<std::size_t>(i)]);
            const std::string want = lower(kCountries[k]);
            if (have == want || have.find(want) != std::string::npos ||
                (k == 4 && have.find("saudi") != std::string::npos) ||
                (k == 5 && have.find("emirates") != std::string::npos)) {
                found = i;
                break;
            }
        }
        REQUIRE_MESSAGE(found >= 0, "dataset misses country ", kCountries[k]);
        out.labels.push_back(kCountries[k]);
        out.returns.col(static_cast<Eigen::Index>(k)) = r.returns.col(found);
    }
    return out;
}

/// Lazily computed shared state for the dataset-dependent criteria.
struct OpecState {
    ReturnPanel panel;
    std::optional<UnivariateStage> stage;
    std::optional<CccFit> ccc;
    std::optional<DccFit> dcc;
    std::optional<GoGarchFit> go;
    std::optional<LossPanel> losses;

    const UnivariateStage& get_stage() {
        if (!stage) stage = fit_univariate_stage(panel, GarchSpec{}, 1);
        return *stage;
    }
    const CccFit& get_ccc() {
        if (!ccc) ccc = fit_ccc(panel, get_stage());
        return *ccc;
    }
    const DccFit& get_dcc() {
        if (!dcc) dcc = fit_dcc(panel, get_stage(), 1);
        return *dcc;
    }
    const GoGarchFit& get_go() {
        if (!go) go = fit_gogarch(panel, 1);
        return *go;
    }
    const LossPanel& get_losses() {
        if (!losses) {
            RollingConfig cfg;
            cfg.window = 300;
            cfg.roster = default_roster();
            cfg.seed = 1;
            cfg.exec = ExecPolicy::parallel(0);
            losses = rolling_forecast(panel, cfg).complete_subset();
        }
        return *losses;
    }
};

OpecState* opec() {
    static std::optional<OpecState> state;
    static bool attempted = false;
    if (!attempted) {
        attempted = true;
        if (const auto path = find_dataset()) {
            OpecState s;
            s.panel = ordered_panel(log_returns(load_prices(*path)));
            state = std::move(s);
        }
    }
    return state ? &*state : nullptr;
}

GarchParams params11(double omega, double alpha, double beta, double mu = 0.0,
                     double nu = 8.0) {
    GarchParams p;
    p.mu = mu;
    p.omega = omega;
    p.alpha = Eigen::VectorXd::Constant(1, alpha);
    p.beta = Eigen::VectorXd::Constant(1, beta);
    p.nu = nu;
    return p;
}

WeightMatrix star_weights(Eigen::Index n, Eigen::Index hub) {
    WeightMatrix w;
    for (Eigen::Index i = 0; i < n; ++i) w.labels.push_back("node" + std::to_string(i + 1));
    w.w_raw = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == hub) continue;
        w.w_raw(hub, i) = 1.0;
        w.w_raw(i, hub) = 1.0;
    }
    w.w_norm = w.w_raw;
    for (Eigen::Index i = 0; i < n; ++i) w.w_norm.row(i) /= w.w_norm.row(i).sum();
    w.normalization = WeightNormalization::row_stochastic;
    return w;
}

WeightMatrix ring_weights(Eigen::Index n) {
    WeightMatrix w;
    for (Eigen::Index i = 0; i < n; ++i) w.labels.push_back("node" + std::to_string(i + 1));
    w.w_raw = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w.w_raw(i, (i + 1) % n) = 1.0;
        w.w_raw(i, (i + n - 1) % n) = 1.0;
    }
    w.w_norm = w.w_raw / 2.0;
    w.normalization = WeightNormalization::row_stochastic;
    return w;
}

double rmsfe_of(const LossPanel& lp, ModelKind m) { return rmsfe_mafe(lp, m).rmsfe; }

/// 50-seed GMM recovery study; also backs criterion 5's fallback rule.
bool netarch_recovery_study(std::string* summary) {
    const Eigen::Index n = 6, T = 2000;
    const WeightMatrix w = ring_weights(n);
    int hits = 0;
    const int seeds = 50;
    for (int s = 0; s < seeds; ++s) {
        NetSimSpec spec;
        spec.n = n;
        spec.T = T;
        spec.rho = 0.5;
        spec.gamma = Eigen::VectorXd::Constant(n, 0.2);
        spec.phi0 = Eigen::VectorXd::Constant(n, -1.0);
        spec.W = w.w_norm;
        spec.law = NetInnovationLaw::gaussian;
        spec.sigma2 = 1.0;
        spec.seed = 9000 + static_cast<std::uint64_t>(s);
        const NetSim sim = simulate_net_logarch(spec);
        const NetLogArchFit fit = fit_gmm(sim.ystar, w);
        if (std::isfinite(fit.std_errors[0]) &&
            std::abs(fit.rho - 0.5) <= 2.0 * fit.std_errors[0])
            ++hits;
    }
    if (summary)
        *summary = std::to_string(hits) + "/" + std::to_string(seeds) + " seeds within 2 SE";
    return hits >= 45; // 90% of 50
}

} // namespace

TEST_SUITE_BEGIN("paper-reproduction");

TEST_CASE("criterion 1: descriptive reproduction") {
    OpecState* st = opec();
    if (!st) {
        report(1, "SKIP", "OPEC dataset not available");
        return;
    }
    CHECK(st->panel.periods() == 479); // 480 monthly prices
    CHECK(st->panel.series_count() == 6);
    const auto t0 = std::chrono::steady_clock::now();
    const auto stats = describe_panel(st->panel);
    const Eigen::MatrixXd corr = correlation_matrix(st->panel);
    const double elapsed = seconds_since(t0);

    struct Row {
        double mean, median, sd, min, max, skew, kurt;
    };
    const std::vector<Row> table1 = {
        {0.002013494, 0.007443834, 0.1015212, -0.6951943, 0.4956162, -0.6866453, 7.851252},
        {0.002149783, 0.005534048, 0.104726, -0.6475425, 0.5536787, -0.6061617, 6.594064},
        {0.001960725, 0.007137005, 0.1056493, -0.7700193, 0.5214684, -0.799952, 9.663932},
        {0.001953813, 0.009854897, 0.1035821, -0.7654379, 0.4708431, -0.8414405, 9.467677},
        {0.002079986, 0.006545478, 0.09922573, -0.6665233, 0.5178323, -0.8279926, 8.10026},
        {0.001946261, 0.007240163, 0.09070767, -0.4717577, 0.4757471, -0.6159549, 5.649863}};
    const double table2[6][6] = {
        {1.0000, 0.9518, 0.9928, 0.9946, 0.9529, 0.9376},
        {0.9518, 1.0000, 0.9515, 0.9525, 0.9804, 0.9677},
        {0.9928, 0.9515, 1.0000, 0.9934, 0.9537, 0.9350},
        {0.9946, 0.9525, 0.9934, 1.0000, 0.9569, 0.9356},
        {0.9529, 0.9804, 0.9537, 0.9569, 1.0000, 0.9769},
        {0.9376, 0.9677, 0.9350, 0.9356, 0.9769, 1.0000}};

    bool ok = true;
    for (std::size_t i = 0; i < 6; ++i) {
        const auto& s = stats[i];
        const auto& e = table1[i];
        ok = ok && std::abs(s.mean - e.mean) < 1e-6 && std::abs(s.median - e.median) < 1e-6 &&
             std::abs(s.std_dev - e.sd) < 1e-6 && std::abs(s.minimum - e.min) < 1e-6 &&
             std::abs(s.maximum - e.max) < 1e-6 && std::abs(s.skewness - e.skew) < 1e-4 &&
             std::abs(s.kurtosis - e.kurt) < 1e-4 && s.jb_pvalue < 2.2e-16;
        CHECK(std::abs(s.mean - e.mean) < 1e-6);
        CHECK(std::abs(s.median - e.median) < 1e-6);
        CHECK(std::abs(s.std_dev - e.sd) < 1e-6);
        CHECK(std::abs(s.minimum - e.min) < 1e-6);
        CHECK(std::abs(s.maximum - e.max) < 1e-6);
        CHECK(std::abs(s.skewness - e.skew) < 1e-4);
        CHECK(std::abs(s.kurtosis - e.kurt) < 1e-4);
        CHECK(s.jb_pvalue < 2.2e-16);
    }
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            ok = ok && std::abs(corr(i, j) - table2[i][j]) < 1e-4;
            CHECK(std::abs(corr(i, j) - table2[i][j]) < 1e-4);
        }
    CHECK(elapsed < 1.0);
    report(1, ok && elapsed < 1.0 ? "PASS" : "FAIL",
           "Table 1/2 per cell, runtime " + std::to_string(elapsed) + " s");
}

TEST_CASE("criterion 2: univariate GARCH matches Table 3") {
    OpecState* st = opec();
    if (!st) {
        report(2, "SKIP", "OPEC dataset not available");
        return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const UnivariateStage& stage = st->get_stage();
    const double elapsed = seconds_since(t0);

    struct Row {
        double alpha, beta, nu, loglik;
    };
    const std::vector<Row> table3 = {{0.4432, 0.5408, 8.3936, 508.95},
                                     {0.5865, 0.4036, 5.4360, 512.53},
                                     {0.4496, 0.5494, 8.7382, 502.36},
                                     {0.4553, 0.5437, 8.8888, 508.90},
                                     {0.5391, 0.4599, 5.0903, 546.14},
                                     {0.5155, 0.4835, 5.1511, 575.59}};
    bool ok = true;
    for (std::size_t i = 0; i < 6; ++i) {
        const GarchFit& f = stage.fits[i];
        ok = ok && std::abs(f.params.alpha[0] - table3[i].alpha) <= 0.02 &&
             std::abs(f.params.beta[0] - table3[i].beta) <= 0.02 &&
             std::abs(f.params.nu - table3[i].nu) <= 0.5 &&
             std::abs(f.log_lik - table3[i].loglik) <= 1.0;
        CHECK(std::abs(f.params.alpha[0] - table3[i].alpha) <= 0.02);
        CHECK(std::abs(f.params.beta[0] - table3[i].beta) <= 0.02);
        CHECK(std::abs(f.params.nu - table3[i].nu) <= 0.5);
        CHECK(std::abs(f.log_lik - table3[i].loglik) <= 1.0);
    }
    CHECK(elapsed < 30.0);
    report(2, ok && elapsed < 30.0 ? "PASS" : "FAIL",
           "six GARCH(1,1)-t fits, runtime " + std::to_string(elapsed) + " s");
}

TEST_CASE("criterion 3: DCC matches Table 4") {
    OpecState* st = opec();
    if (!st) {
        report(3, "SKIP", "OPEC dataset not available");
        return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const DccFit& dcc = st->get_dcc();
    const CccFit& ccc = st->get_ccc();
    const double elapsed = seconds_since(t0);
    const bool ok = std::abs(dcc.a - 0.1016) <= 0.01 && std::abs(dcc.b - 0.8207) <= 0.02 &&
                    std::abs(dcc.log_lik - 7486.96) <= 5.0 && dcc.log_lik > ccc.log_lik;
    CHECK(std::abs(dcc.a - 0.1016) <= 0.01);
    CHECK(std::abs(dcc.b - 0.8207) <= 0.02);
    CHECK(std::abs(dcc.log_lik - 7486.96) <= 5.0);
    CHECK(dcc.log_lik > ccc.log_lik);
    CHECK(elapsed < 120.0);
    report(3, ok && elapsed < 120.0 ? "PASS" : "FAIL",
           "a=" + std::to_string(dcc.a) + " b=" + std::to_string(dcc.b) +
               " loglik=" + std::to_string(dcc.log_lik));
}

TEST_CASE("criterion 4: GO-GARCH log-likelihood and rotation recovery") {
    // Simulation round trip (always runs): median angle error below 5
    // degrees at T = 3000.
    std::vector<double> angle_errors;
    const Eigen::Index n = 3, T = 3000;
    Eigen::MatrixXd Z0(3, 3);
    Z0 << 1.0, 0.5, 0.2, -0.4, 1.1, 0.3, 0.2, -0.2, 0.9;
    const std::vector<GarchParams> factors = {params11(0.10, 0.30, 0.60),
                                              params11(0.05, 0.10, 0.85),
                                              params11(0.25, 0.45, 0.30)};
    for (int seed = 0; seed < 9; ++seed) {
        ReturnPanel r;
        r.dates = synthetic_dates(T);
        Eigen::MatrixXd f(T, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            r.labels.push_back("s" + std::to_string(i + 1));
            f.col(i) = simulate_garch(factors[static_cast<std::size_t>(i)], T,
                                      7000 + 10 * static_cast<std::uint64_t>(seed) +
                                          static_cast<std::uint64_t>(i));
        }
        r.returns = f * Z0.transpose();
        const GoGarchFit fit = fit_gogarch(r, 500 + static_cast<std::uint64_t>(seed), 2);

        // True rotation expressed in the estimated whitening basis.
        const Eigen::MatrixXd U_true = fit.eigenvalues.array().rsqrt().matrix().asDiagonal() *
                                       fit.P.transpose() * Z0;
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (Eigen::Index j = 0; j < n; ++j) {
            double best = -1.0;
            Eigen::Index pick = -1;
            for (Eigen::Index k = 0; k < n; ++k) {
                if (used[static_cast<std::size_t>(k)]) continue;
                const double c = std::abs(U_true.col(j).normalized().dot(fit.U.col(k)));
                if (c > best) {
                    best = c;
                    pick = k;
                }
            }
            used[static_cast<std::size_t>(pick)] = true;
            angle_errors.push_back(std::acos(std::min(1.0, best)) * 180.0 / kPi);
        }
    }
    const double med = median(angle_errors);
    CHECK(med < 5.0);

    OpecState* st = opec();
    if (!st) {
        report(4, med < 5.0 ? "PASS" : "FAIL",
               "rotation recovery median angle " + std::to_string(med) +
                   " deg; Table 5 log-lik part SKIPPED (no dataset)");
        return;
    }
    const GoGarchFit& go = st->get_go();
    const bool ok = std::abs(go.log_lik - 7351.5) <= 10.0;
    CHECK(std::abs(go.log_lik - 7351.5) <= 10.0);
    report(4, ok && med < 5.0 ? "PASS" : "FAIL",
           "loglik=" + std::to_string(go.log_lik) + ", median angle " + std::to_string(med));
}

TEST_CASE("criterion 5: network GMM rho against Table 7") {
    OpecState* st = opec();
    if (!st) {
        report(5, "SKIP", "OPEC dataset not available (MC recovery fallback runs in criterion 8)");
        return;
    }
    const LogSquaredPanel ys = log_square_transform(st->panel, ZeroAdjust{});
    NetworkInputs inputs;
    inputs.go = &st->get_go();
    std::string matched;
    double best_euc = 0.0, best_go = 0.0;
    for (auto scheme : {WeightNormalization::row_stochastic, WeightNormalization::spectral,
                        WeightNormalization::none}) {
        const WeightMatrix we = normalize(
            to_weights(dissimilarity(st->panel, DissimilarityMethod::euclidean, inputs)), scheme);
        const WeightMatrix wg = normalize(
            to_weights(dissimilarity(st->panel, DissimilarityMethod::go, inputs)), scheme);
        const double rho_e = fit_gmm(ys, we).rho;
        const double rho_g = fit_gmm(ys, wg).rho;
        std::cout << "  scheme " << to_string(scheme) << ": euclidean rho=" << rho_e
                  << ", go rho=" << rho_g << '\n';
        if (rho_e >= 0.90 && rho_e <= 1.00 && rho_g >= 0.87 && rho_g <= 0.97) {
            matched = to_string(scheme);
            best_euc = rho_e;
            best_go = rho_g;
        }
    }
    if (!matched.empty()) {
        report(5, "PASS", "scheme '" + matched + "' matches: euclidean rho=" +
                              std::to_string(best_euc) + ", go rho=" + std::to_string(best_go));
        CHECK(true);
    } else {
        std::string summary;
        const bool recovered = netarch_recovery_study(&summary);
        CHECK(recovered);
        report(5, recovered ? "PASS" : "FAIL",
               "no scheme matched Table 7; MC recovery fallback: " + summary);
    }
}

TEST_CASE("criterion 6: forecast battery orderings at baseline") {
    OpecState* st = opec();
    if (!st) {
        report(6, "SKIP", "OPEC dataset not available");
        return;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const LossPanel& lp = st->get_losses();
    const double elapsed = seconds_since(t0);

    const double r_netgo = rmsfe_of(lp, ModelKind::net_go);
    const double r_netccc = rmsfe_of(lp, ModelKind::net_ccc);
    const double r_netdcc = rmsfe_of(lp, ModelKind::net_dcc);
    const double r_stdccc = rmsfe_of(lp, ModelKind::std_ccc);
    const double r_stddcc = rmsfe_of(lp, ModelKind::std_dcc);
    const double r_euc = rmsfe_of(lp, ModelKind::net_euclidean);
    const double r_corr = rmsfe_of(lp, ModelKind::net_correlation);
    const double r_pic = rmsfe_of(lp, ModelKind::net_piccolo);
    const double r_stdgo = rmsfe_of(lp, ModelKind::std_go);

    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        CHECK_MESSAGE(cond, what);
        ok = ok && cond;
    };
    expect(r_stddcc < r_netgo, "Std DCC < Net-GO");
    expect(r_netgo <= r_netccc + 1e-12, "Net-GO <= Net-CCC");
    expect(r_netgo <= r_netdcc + 1e-12, "Net-GO <= Net-DCC");
    expect(std::max(r_netccc, r_netdcc) < r_stdccc, "Net-CCC/DCC < Std CCC");
    expect(r_stdccc < r_euc, "Std CCC < Euclidean");
    expect(r_euc < r_corr, "Euclidean < Correlation");
    expect(r_corr < std::min(r_pic, r_stdgo), "Correlation < Piccolo ~ Std GO");
    expect(std::abs(r_netgo - 2.4182) <= 0.05 * 2.4182, "Net-GO RMSFE within 5%");
    expect(std::abs(r_stddcc - 2.3854) <= 0.05 * 2.3854, "Std DCC RMSFE within 5%");
    CHECK(elapsed < 1800.0);
    report(6, ok && elapsed < 1800.0 ? "PASS" : "FAIL",
           "runtime " + std::to_string(elapsed) + " s");
}

TEST_CASE("criterion 7: inference battery") {
    OpecState* st = opec();
    if (!st) {
        report(7, "SKIP", "OPEC dataset not available");
        return;
    }
    const LossPanel& lp = st->get_losses();
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        CHECK_MESSAGE(cond, what);
        ok = ok && cond;
    };
    expect(dm_test_pooled(lp, ModelKind::net_go, ModelKind::std_go, LossType::squared).p_value <
               0.01,
           "DM Net-GO vs Std GO < 0.01");
    expect(dm_test_pooled(lp, ModelKind::net_go, ModelKind::std_ccc, LossType::squared).p_value <
               0.01,
           "DM Net-GO vs Std CCC < 0.01");
    for (auto [a, b] : std::vector<std::pair<ModelKind, ModelKind>>{
             {ModelKind::net_ccc, ModelKind::net_dcc},
             {ModelKind::net_ccc, ModelKind::net_go},
             {ModelKind::net_dcc, ModelKind::net_go}})
        expect(dm_test_pooled(lp, a, b, LossType::squared).p_value > 0.05,
               "DM between network variants > 0.05");

    std::vector<std::string> names;
    for (auto m : lp.models) names.push_back(to_string(m));
    const McsResult res = mcs(mcs_loss_matrix(lp, LossType::squared), names, 0.05, 5000, 1,
                              ExecPolicy::parallel(0));
    auto inset = [&](ModelKind m) {
        return res.models[static_cast<std::size_t>(lp.model_index(m))].in_superior_set_max;
    };
    for (auto m : {ModelKind::std_dcc, ModelKind::net_go, ModelKind::net_ccc, ModelKind::net_dcc,
                   ModelKind::std_ccc})
        expect(inset(m), "retained: " + to_string(m));
    for (auto m : {ModelKind::net_euclidean, ModelKind::net_correlation, ModelKind::net_piccolo,
                   ModelKind::std_go})
        expect(!inset(m), "eliminated: " + to_string(m));
    expect(res.models[static_cast<std::size_t>(lp.model_index(ModelKind::std_dcc))].p_max ==
               1.0,
           "Std DCC mcs_p = 1.0");
    report(7, ok ? "PASS" : "FAIL", "DM + MCS battery");
}

TEST_SUITE_END();

TEST_CASE("criterion 8: property suites (no dataset required)") {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    auto expect = [&](bool cond, const std::string& what) {
        CHECK_MESSAGE(cond, what);
        ok = ok && cond;
    };

    // --- data module invariants ---
    {
        Rng rng = make_rng(1);
        std::normal_distribution<double> normal(0.0, 0.1);
        PricePanel p;
        p.labels = {"A", "B"};
        p.prices.resize(80, 2);
        p.prices.row(0) << 100.0, 42.0;
        p.dates = synthetic_dates(80);
        for (Eigen::Index t = 1; t < 80; ++t)
            for (int i = 0; i < 2; ++i)
                p.prices(t, i) = p.prices(t - 1, i) * std::exp(normal(rng));
        const ReturnPanel r = log_returns(p);
        bool round_trip = true;
        for (int i = 0; i < 2; ++i) {
            double logp = std::log(p.prices(0, i));
            for (Eigen::Index t = 0; t < r.periods(); ++t) {
                logp += r.returns(t, i);
                round_trip = round_trip &&
                             std::abs(std::exp(logp) - p.prices(t + 1, i)) / p.prices(t + 1, i) <
                                 1e-10;
            }
        }
        expect(round_trip, "price/return round trip to 1e-10");

        const Eigen::MatrixXd corr = correlation_matrix(r);
        expect((corr - corr.transpose()).cwiseAbs().maxCoeff() < 1e-12 && corr(0, 0) == 1.0 &&
                   corr(1, 1) == 1.0,
               "correlation symmetry and unit diagonal");

        const DescriptiveStats s1 = describe(r.series(0));
        const DescriptiveStats s2 = describe((3.7 * r.series(0).array()).matrix());
        expect(std::abs(s1.skewness - s2.skewness) < 1e-8 &&
                   std::abs(s1.kurtosis - s2.kurtosis) < 1e-8 &&
                   std::abs(s1.jb_stat - s2.jb_stat) < 1e-8,
               "describe scale invariance");
    }

    // --- garch module invariants ---
    {
        const GarchParams truth = params11(0.30, 0.25, 0.55, 0.05, 7.0);
        const Eigen::VectorXd y = simulate_garch(truth, 1500, 31, Innovation::student_t);
        const GarchFit fit = fit_garch(y, GarchSpec{}, 3);
        expect(!fit.diagnostics.at_boundary, "interior optimum on simulated data");

        Rng rng = make_rng(77);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        bool dominates = true;
        for (int k = 0; k < 100; ++k) {
            GarchParams cand;
            cand.mu = fit.params.mu + 0.02 * (u01(rng) - 0.5);
            const double s = 0.98 * u01(rng);
            const double f = u01(rng);
            cand.alpha = Eigen::VectorXd::Constant(1, s * f);
            cand.beta = Eigen::VectorXd::Constant(1, s * (1.0 - f));
            cand.omega = (0.2 + 1.6 * u01(rng)) * (y.squaredNorm() / y.size()) * (1.0 - s);
            cand.nu = 2.5 + 20.0 * u01(rng);
            const Eigen::VectorXd dm = y.array() - cand.mu;
            dominates = dominates &&
                        -detail::garch_negloglik(cand, Innovation::student_t, dm, nullptr) <=
                            fit.log_lik + 1e-9;
        }
        expect(dominates, "fitted log-lik dominates 100 random feasible draws");

        auto nll_raw = [&](const Eigen::VectorXd& raw) {
            GarchParams p = fit.params;
            p.mu = raw[0];
            p.omega = raw[1];
            p.alpha[0] = raw[2];
            p.beta[0] = raw[3];
            p.nu = raw[4];
            return detail::garch_negloglik(p, Innovation::student_t,
                                           (y.array() - p.mu).matrix(), nullptr);
        };
        Eigen::VectorXd raw(5);
        raw << fit.params.mu, fit.params.omega, fit.params.alpha[0], fit.params.beta[0],
            fit.params.nu;
        double gmax = 0.0;
        for (int i = 0; i < 5; ++i) {
            Eigen::VectorXd rp = raw, rm = raw;
            rp[i] += 1e-6;
            rm[i] -= 1e-6;
            gmax = std::max(gmax, std::abs((nll_raw(rp) - nll_raw(rm)) / 2e-6));
        }
        expect(gmax < 1e-4, "score below 1e-4 at the optimum (step 1e-6)");

        const Eigen::VectorXd h = garch_filter(truth, y);
        const Eigen::VectorXd hs =
            garch_filter(params11(4.0 * 0.30, 0.25, 0.55, 2.0 * 0.05, 7.0),
                         (2.0 * y.array()).matrix());
        expect(((hs - 4.0 * h).cwiseAbs().array() / (4.0 * h.array())).maxCoeff() < 1e-10,
               "filter scale equivariance");
    }

    // --- mgarch invariants ---
    {
        ReturnPanel r;
        r.dates = synthetic_dates(600);
        r.labels = {"A", "B", "C"};
        r.returns.resize(600, 3);
        r.returns.col(0) = simulate_garch(params11(0.10, 0.15, 0.70), 600, 11);
        r.returns.col(1) = simulate_garch(params11(0.20, 0.25, 0.60), 600, 12);
        r.returns.col(2) = simulate_garch(params11(0.15, 0.20, 0.65), 600, 13);
        for (Eigen::Index t = 0; t < 600; ++t) { // common factor for correlation
            const double c = 0.5 * r.returns(t, 0);
            r.returns(t, 1) += c;
            r.returns(t, 2) -= 0.3 * c;
        }
        GarchSpec spec;
        spec.innovation = Innovation::gaussian;
        const UnivariateStage stage = fit_univariate_stage(r, spec, 5);
        const CccFit ccc = fit_ccc(r, stage);
        const DccFit dcc = fit_dcc(r, stage, 5);
        bool rt_ok = true;
        for (const auto& R : dcc.R_path) {
            rt_ok = rt_ok && (R.diagonal().array() == 1.0).all() &&
                    (R - R.transpose()).cwiseAbs().maxCoeff() < 1e-12;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
            rt_ok = rt_ok && es.eigenvalues().minCoeff() > -1e-10;
        }
        expect(rt_ok, "DCC correlation path invariants");
        bool collapse = true;
        for (const auto& R : dcc_correlation_path(stage.eps, 0.0, 0.0))
            collapse = collapse && (R - ccc.R).cwiseAbs().maxCoeff() < 1e-8;
        expect(collapse, "DCC with a=b=0 reproduces CCC's R");

        // Likelihood ordering needs genuinely time-varying correlations.
        Eigen::MatrixXd Rbar(3, 3);
        Rbar << 1.0, 0.6, 0.4, 0.6, 1.0, 0.5, 0.4, 0.5, 1.0;
        const ReturnPanel dyn =
            simulate_dcc(3, 1500, 0.10, 0.85, Rbar,
                         {params11(0.10, 0.10, 0.80), params11(0.20, 0.15, 0.70),
                          params11(0.05, 0.10, 0.85)},
                         99);
        const UnivariateStage dstage = fit_univariate_stage(dyn, spec, 5);
        const CccFit dccc = fit_ccc(dyn, dstage);
        const DccFit ddcc = fit_dcc(dyn, dstage, 5);
        expect(ddcc.log_lik > dccc.log_lik, "DCC likelihood above CCC on dynamic panel");

        const GoGarchFit go = fit_gogarch(r, 4, 1);
        Eigen::MatrixXd centered = r.returns;
        for (int i = 0; i < 3; ++i) centered.col(i).array() -= centered.col(i).mean();
        const Eigen::MatrixXd S = centered.transpose() * centered / 600.0;
        expect((go.Z * go.Z.transpose() - S).cwiseAbs().maxCoeff() < 1e-8,
               "GO mixing reproduces the sample covariance");
        bool go_ok = true;
        for (const auto& R : go.R_path) {
            go_ok = go_ok && (R.diagonal().array() == 1.0).all() &&
                    (R - R.transpose()).cwiseAbs().maxCoeff() < 1e-12;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
            go_ok = go_ok && es.eigenvalues().minCoeff() > -1e-10;
        }
        expect(go_ok, "GO correlation path invariants");
    }

    // --- network invariants ---
    {
        Eigen::MatrixXd corr(2, 2);
        corr.setIdentity();
        bool mono = true, round = true;
        double prev = -1.0;
        for (double rho = -1.0; rho <= 1.0 + 1e-9; rho += 0.01) {
            corr(0, 1) = corr(1, 0) = rho;
            const DissimilarityMatrix d =
                correlation_dissimilarity(corr, DissimilarityMethod::ccc, {"a", "b"});
            const WeightMatrix w = to_weights(d);
            mono = mono && w.w_raw(0, 1) > prev;
            prev = w.w_raw(0, 1);
            round = round && std::abs((1.0 - d.d(0, 1) * d.d(0, 1) / 2.0) - rho) < 1e-12;
        }
        expect(mono, "bounded weight monotone in correlation");
        expect(round, "correlation-distance round trip to 1e-12");

        DissimilarityMatrix d;
        d.method = DissimilarityMethod::euclidean;
        d.labels = {"a", "b"};
        d.d = Eigen::MatrixXd::Zero(2, 2);
        double wprev = 1e18;
        bool dec = true;
        for (double dist = 0.3; dist < 9.0; dist += 0.17) {
            d.d(0, 1) = d.d(1, 0) = dist;
            const double wv = to_weights(d).w_raw(0, 1);
            dec = dec && wv < wprev;
            wprev = wv;
        }
        expect(dec, "inverse-distance weights strictly decreasing");
    }

    // --- netarch invariants ---
    {
        const WeightMatrix w = ring_weights(4);
        NetSimSpec spec;
        spec.n = 4;
        spec.T = 400;
        spec.rho = 0.4;
        spec.gamma = Eigen::VectorXd::Constant(4, 0.2);
        spec.phi0 = Eigen::VectorXd::Constant(4, -1.0);
        spec.W = w.w_norm;
        spec.law = NetInnovationLaw::gaussian;
        spec.seed = 3;
        const NetSim sim = simulate_net_logarch(spec);
        const NetLogArchFit fit = fit_gmm(sim.ystar, w);

        const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4) - fit.rho * w.w_norm;
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        bool identity_ok = true;
        const Eigen::MatrixXd& ys = sim.ystar.ystar;
        for (Eigen::Index t = 1; t < ys.rows(); ++t) {
            const Eigen::VectorXd u = A * ys.row(t).transpose() - fit.phi0 -
                                      fit.gamma.asDiagonal() * ys.row(t - 1).transpose();
            const Eigen::VectorXd back =
                lu.solve(fit.phi0 + fit.gamma.asDiagonal() * ys.row(t - 1).transpose() + u);
            identity_ok =
                identity_ok && (back - ys.row(t).transpose()).cwiseAbs().maxCoeff() < 1e-10;
        }
        expect(identity_ok, "reduced-form residual identity to 1e-10");

        Rng rng = make_rng(2025);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        bool dominated = true;
        const double at_fit = fit.objective_at_fit();
        for (int k = 0; k < 100; ++k) {
            Eigen::VectorXd g(4), c(4);
            for (int i = 0; i < 4; ++i) {
                g[i] = 0.8 * u(rng);
                c[i] = fit.phi0[i] + u(rng);
            }
            dominated = dominated && at_fit <= fit.objective(0.95 * u(rng), g, c) + 1e-12;
        }
        expect(dominated, "GMM objective minimal at the fit");

        NetLogArchFit affine = fit;
        Eigen::VectorXd x(4), z(4);
        for (int i = 0; i < 4; ++i) {
            x[i] = u(rng);
            z[i] = u(rng);
        }
        const double a = 1.3, b = -0.4;
        const Eigen::VectorXd lhs = forecast_logvol(affine, a * x + b * z);
        const Eigen::VectorXd rhs =
            a * forecast_logvol(affine, x) + b * forecast_logvol(affine, z) -
            (a + b - 1.0) * forecast_logvol(affine, Eigen::VectorXd::Zero(4));
        expect((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10, "forecast affine property");

        WeightMatrix zero;
        zero.labels = w.labels;
        zero.w_raw = Eigen::MatrixXd::Zero(4, 4);
        zero.w_norm = zero.w_raw;
        const NetLogArchFit ols = fit_gmm(sim.ystar, zero);
        bool ols_ok = ols.rho == 0.0;
        for (Eigen::Index i = 0; i < 4; ++i) {
            double sxx = 0, sx = 0, sxy = 0, sy = 0;
            const double m = static_cast<double>(ys.rows() - 1);
            for (Eigen::Index t = 1; t < ys.rows(); ++t) {
                sx += ys(t - 1, i);
                sy += ys(t, i);
                sxx += ys(t - 1, i) * ys(t - 1, i);
                sxy += ys(t - 1, i) * ys(t, i);
            }
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            const double intercept = (sy - slope * sx) / m;
            ols_ok = ols_ok && std::abs(ols.gamma[i] - slope) < 1e-8 &&
                     std::abs(ols.phi0[i] - intercept) < 1e-8;
        }
        expect(ols_ok, "W = 0 collapses to per-equation least squares");
    }

    // --- forecast_eval invariants ---
    {
        Rng rng = make_rng(404);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::VectorXd e1(60), e2(60);
        for (int t = 0; t < 60; ++t) {
            e1[t] = normal(rng);
            e2[t] = 0.7 * normal(rng) + 0.2;
        }
        const TestResult fw = dm_test(e1, e2, LossType::squared);
        const TestResult bw = dm_test(e2, e1, LossType::squared);
        expect(std::abs(fw.statistic + bw.statistic) < 1e-12 &&
                   std::abs(fw.p_value - bw.p_value) < 1e-12,
               "DM antisymmetry");

        Eigen::MatrixXd errs(80, 3);
        for (Eigen::Index t = 0; t < 80; ++t)
            for (int i = 0; i < 3; ++i) errs(t, i) = normal(rng) * (1.0 + i);
        const AccuracySummary acc = rmsfe_mafe(errs);
        expect(acc.mafe <= acc.rmsfe + 1e-12, "MAFE <= RMSFE");
        const BootstrapCi ci = bootstrap_ci(errs, 400, 0.95, 5);
        expect(ci.rmsfe_lower <= ci.rmsfe_point && ci.rmsfe_point <= ci.rmsfe_upper &&
                   ci.mafe_lower <= ci.mafe_point && ci.mafe_point <= ci.mafe_upper,
               "bootstrap CI contains the point estimate");

        Eigen::MatrixXd base(200, 2);
        for (int t = 0; t < 200; ++t) {
            base(t, 0) = 1.0 + 0.2 * normal(rng);
            base(t, 1) = 1.02 + 0.2 * normal(rng);
        }
        const McsResult before = mcs(base, {"a", "b"}, 0.05, 200, 9);
        Eigen::MatrixXd ext(200, 3);
        ext.leftCols(2) = base;
        for (int t = 0; t < 200; ++t) ext(t, 2) = base(t, 0) + 2.0 + 0.05 * normal(rng);
        const McsResult after = mcs(ext, {"a", "b", "dominated"}, 0.05, 200, 9);
        bool mono_ok = !after.models[2].in_superior_set_max;
        for (int i = 0; i < 2; ++i)
            if (before.models[static_cast<std::size_t>(i)].in_superior_set_max)
                mono_ok = mono_ok && after.models[static_cast<std::size_t>(i)].in_superior_set_max;
        expect(mono_ok, "MCS monotone under adding a dominated model");
    }

    // --- sim invariants ---
    {
        NetSimSpec spec;
        spec.n = 2;
        spec.T = 200;
        spec.rho = 0.3;
        spec.gamma = Eigen::VectorXd::Constant(2, 0.2);
        spec.phi0 = Eigen::VectorXd::Constant(2, -1.0);
        spec.W.resize(2, 2);
        spec.W << 0.0, 1.0, 1.0, 0.0;
        spec.seed = 8;
        const NetSim s1 = simulate_net_logarch(spec);
        const NetSim s2 = simulate_net_logarch(spec);
        expect((s1.ystar.ystar - s2.ystar.ystar).cwiseAbs().maxCoeff() == 0.0,
               "simulators are pure functions of (spec, seed)");

        const GarchParams gp = params11(0.1, 0.15, 0.75);
        const Eigen::VectorXd y = simulate_garch(gp, 5000, 21);
        const Eigen::VectorXd h = garch_filter(gp, y);
        const double v = (y.array() / h.array().sqrt()).square().mean();
        expect(v > 0.9 && v < 1.1, "standardized residual variance in [0.9, 1.1]");
    }

    // --- DM empirical size ---
    {
        int rejections = 0;
        const int reps = 1000, T = 200;
        for (int rep = 0; rep < reps; ++rep) {
            Rng rng = make_rng(3000, static_cast<std::uint64_t>(rep));
            std::normal_distribution<double> normal(0.0, 1.0);
            Eigen::VectorXd e1(T), e2(T);
            for (int t = 0; t < T; ++t) {
                e1[t] = normal(rng);
                e2[t] = normal(rng);
            }
            if (dm_test(e1, e2, LossType::squared).p_value < 0.05) ++rejections;
        }
        const double size = static_cast<double>(rejections) / reps;
        expect(size >= 0.03 && size <= 0.07,
               "DM empirical size " + std::to_string(size) + " in [0.03, 0.07]");
    }

    // --- CW empirical size ---
    {
        int rejections = 0;
        const int reps = 1000, P = 200;
        for (int rep = 0; rep < reps; ++rep) {
            Rng rng = make_rng(4000, static_cast<std::uint64_t>(rep));
            std::normal_distribution<double> normal(0.0, 1.0);
            Eigen::VectorXd y(P), noise(P);
            for (int t = 0; t < P; ++t) {
                y[t] = normal(rng);
                noise[t] = 0.4 * normal(rng);
            }
            const Eigen::VectorXd yh1 = Eigen::VectorXd::Zero(P);
            const TestResult r = cw_test(y - yh1, y - noise, yh1, noise);
            if (r.p_value < 0.05) ++rejections;
        }
        const double size = static_cast<double>(rejections) / reps;
        expect(size >= 0.03 && size <= 0.07,
               "CW empirical size " + std::to_string(size) + " in [0.03, 0.07]");
    }

    // --- MCS retention of the true best over constructed panels ---
    {
        int retained = 0;
        const int panels = 500, P = 200;
        for (int rep = 0; rep < panels; ++rep) {
            Rng rng = make_rng(5000, static_cast<std::uint64_t>(rep));
            std::normal_distribution<double> normal(0.0, 1.0);
            Eigen::MatrixXd losses(P, 3);
            for (int t = 0; t < P; ++t) {
                losses(t, 0) = 1.00 + 0.30 * normal(rng);
                losses(t, 1) = 1.06 + 0.30 * normal(rng);
                losses(t, 2) = 1.09 + 0.30 * normal(rng);
            }
            const McsResult r =
                mcs(losses, {"best", "mid", "worst"}, 0.05, 200,
                    stream_seed(6000, static_cast<std::uint64_t>(rep)));
            if (r.models[0].in_superior_set_max) ++retained;
        }
        const double rate = static_cast<double>(retained) / panels;
        expect(rate >= 0.95, "MCS retains the true best in " + std::to_string(rate * 100.0) +
                                 "% of 500 panels");
    }

    // --- estimator Monte-Carlo recovery: GARCH on iid data ---
    // With alpha = 0 the GARCH beta is unidentified (ridge through
    // omega / (1 - beta)), so the check targets the identified functionals:
    // the unconditional variance and the shock response alpha.
    {
        std::vector<double> var_z, alpha_hat;
        const Eigen::Index T = 1000;
        const double se_var = 0.01 * std::sqrt(2.0 / static_cast<double>(T));
        for (int s = 0; s < 20; ++s) {
            const Eigen::VectorXd y = simulate_garch(
                params11(0.01, 0.0, 0.0), T, stream_seed(7000, static_cast<std::uint64_t>(s)));
            GarchSpec spec;
            spec.mean = MeanSpec::zero;
            spec.innovation = Innovation::gaussian;
            const GarchFit fit = fit_garch(y, spec, static_cast<std::uint64_t>(s));
            var_z.push_back(std::abs(fit.params.unconditional_variance() - 0.01) / se_var);
            alpha_hat.push_back(fit.params.alpha[0]);
        }
        expect(median(var_z) <= 2.0,
               "median unconditional-variance recovery within 2 SE (iid data)");
        expect(median(alpha_hat) <= 2.0 / std::sqrt(static_cast<double>(T)),
               "median fitted alpha near 0 (iid data)");
    }

    // --- estimator recovery: CCC independence ---
    {
        ReturnPanel r;
        r.dates = synthetic_dates(2000);
        r.labels = {"A", "B"};
        r.returns.resize(2000, 2);
        r.returns.col(0) = simulate_garch(params11(0.10, 0.15, 0.70), 2000, 611);
        r.returns.col(1) = simulate_garch(params11(0.20, 0.25, 0.60), 2000, 612);
        GarchSpec spec;
        spec.innovation = Innovation::gaussian;
        const CccFit fit = fit_ccc(r, spec, 6);
        expect(std::abs(fit.R(0, 1)) < 0.05, "independent series: |R12| < 0.05 at T=2000");
    }

    // --- estimator recovery: DCC (a, b) over 20 seeds ---
    {
        Eigen::MatrixXd Rbar(3, 3);
        Rbar << 1.0, 0.5, 0.3, 0.5, 1.0, 0.4, 0.3, 0.4, 1.0;
        const std::vector<GarchParams> gp = {params11(0.10, 0.10, 0.80),
                                             params11(0.20, 0.15, 0.70),
                                             params11(0.05, 0.10, 0.85)};
        std::vector<double> za, zb;
        GarchSpec spec;
        spec.innovation = Innovation::gaussian;
        for (int s = 0; s < 20; ++s) {
            const ReturnPanel panel =
                simulate_dcc(3, 3000, 0.05, 0.90, Rbar, gp,
                             stream_seed(8000, static_cast<std::uint64_t>(s)));
            const DccFit fit = fit_dcc(panel, spec, static_cast<std::uint64_t>(s));
            if (std::isfinite(fit.se_a) && fit.se_a > 0.0)
                za.push_back(std::abs(fit.a - 0.05) / fit.se_a);
            if (std::isfinite(fit.se_b) && fit.se_b > 0.0)
                zb.push_back(std::abs(fit.b - 0.90) / fit.se_b);
        }
        expect(!za.empty() && !zb.empty(), "DCC stage-2 standard errors available");
        expect(median(za) <= 2.0, "median a recovery within 2 SE");
        expect(median(zb) <= 2.0, "median b recovery within 2 SE");
    }

    // --- estimator recovery: network GMM over 50 seeds ---
    {
        std::string summary;
        expect(netarch_recovery_study(&summary), "GMM rho recovery: " + summary);
    }

    // --- null model: rho = 0, Gamma = 0 stays insignificant ---
    {
        const WeightMatrix w = ring_weights(4);
        int quiet = 0;
        const int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            NetSimSpec spec;
            spec.n = 4;
            spec.T = 1000;
            spec.rho = 0.0;
            spec.gamma = Eigen::VectorXd::Zero(4);
            spec.phi0 = Eigen::VectorXd::Constant(4, -1.0);
            spec.W = w.w_norm;
            spec.law = NetInnovationLaw::gaussian;
            spec.seed = stream_seed(8600, static_cast<std::uint64_t>(s));
            const NetSim sim = simulate_net_logarch(spec);
            const NetLogArchFit fit = fit_gmm(sim.ystar, w);
            bool all_small = std::abs(fit.t_stats[0]) < 2.0;
            for (Eigen::Index i = 1; i <= 4; ++i)
                all_small = all_small && std::abs(fit.t_stats[i]) < 2.0;
            if (all_small) ++quiet;
        }
        expect(quiet >= 18, "null model: rho and gamma insignificant in >= 90% of seeds");
    }

    // --- dominance: true W beats a permuted W out of sample ---
    {
        int wins = 0;
        const int seeds = 20;
        double agg_true = 0.0, agg_perm = 0.0;
        const WeightMatrix w_true = star_weights(4, 0);
        const WeightMatrix w_perm = star_weights(4, 1);
        for (int s = 0; s < seeds; ++s) {
            NetSimSpec spec;
            spec.n = 4;
            spec.T = 320;
            spec.rho = 0.6;
            spec.gamma = Eigen::VectorXd::Constant(4, 0.2);
            spec.phi0 = Eigen::VectorXd::Constant(4, -1.0);
            spec.W = w_true.w_norm;
            spec.law = NetInnovationLaw::gaussian;
            spec.seed = stream_seed(8800, static_cast<std::uint64_t>(s));
            const NetSim sim = simulate_net_logarch(spec);
            const Eigen::MatrixXd& ys = sim.ystar.ystar;
            const Eigen::Index T0 = 220;
            double mse_true = 0.0, mse_perm = 0.0;
            Eigen::Index count = 0;
            for (Eigen::Index t = T0; t < spec.T; ++t) {
                LogSquaredPanel train;
                train.ystar = ys.topRows(t);
                train.labels = sim.ystar.labels;
                train.adjust = sim.ystar.adjust;
                train.applied = sim.ystar.applied;
                const NetLogArchFit f_true = fit_gmm(train, w_true);
                const NetLogArchFit f_perm = fit_gmm(train, w_perm);
                const Eigen::VectorXd p_true =
                    forecast_logvol(f_true, ys.row(t - 1).transpose());
                const Eigen::VectorXd p_perm =
                    forecast_logvol(f_perm, ys.row(t - 1).transpose());
                mse_true += (ys.row(t).transpose() - p_true).squaredNorm();
                mse_perm += (ys.row(t).transpose() - p_perm).squaredNorm();
                ++count;
            }
            agg_true += mse_true / static_cast<double>(count);
            agg_perm += mse_perm / static_cast<double>(count);
            if (mse_true < mse_perm) ++wins;
        }
        expect(agg_true < agg_perm, "true W attains lower aggregate squared loss");
        expect(wins >= 12, "true W wins in " + std::to_string(wins) + "/20 seeds");
    }

    const double elapsed = seconds_since(t0);
    expect(elapsed < 600.0, "criterion 8 runtime " + std::to_string(elapsed) + " s < 600 s");
    report(8, ok ? "PASS" : "FAIL",
           "property suites, runtime " + std::to_string(elapsed) + " s");
}
