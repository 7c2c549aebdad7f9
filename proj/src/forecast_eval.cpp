#include "volnet/forecast_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "volnet/mathx.hpp"
#include "volnet/mgarch.hpp"
#include "volnet/rng.hpp"

namespace volnet {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTiny = 1e-300;
} // namespace

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::net_euclidean: return "net-euclidean";
        case ModelKind::net_correlation: return "net-correlation";
        case ModelKind::net_piccolo: return "net-piccolo";
        case ModelKind::net_ccc: return "net-ccc";
        case ModelKind::net_dcc: return "net-dcc";
        case ModelKind::net_go: return "net-go";
        case ModelKind::std_ccc: return "std-ccc";
        case ModelKind::std_dcc: return "std-dcc";
        case ModelKind::std_go: return "std-go";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    for (ModelKind m : default_roster())
        if (to_string(m) == s) return m;
    throw ConfigError("unknown model kind: " + s);
}

std::vector<ModelKind> default_roster() {
    return {ModelKind::net_euclidean, ModelKind::net_correlation, ModelKind::net_piccolo,
            ModelKind::net_ccc,       ModelKind::net_dcc,         ModelKind::net_go,
            ModelKind::std_ccc,       ModelKind::std_dcc,         ModelKind::std_go};
}

Eigen::Index LossPanel::model_index(ModelKind m) const {
    for (std::size_t k = 0; k < models.size(); ++k)
        if (models[k] == m) return static_cast<Eigen::Index>(k);
    throw ConfigError("model '" + to_string(m) + "' not present in the loss panel");
}

LossPanel LossPanel::complete_subset(double min_completeness) const {
    for (std::size_t m = 0; m < models.size(); ++m)
        if (completeness[m] < min_completeness)
            throw NumericalError("model '" + to_string(models[m]) + "' completed only " +
                                 std::to_string(completeness[m] * 100.0) +
                                 "% of windows; evaluation requires " +
                                 std::to_string(min_completeness * 100.0) + "%");
    std::vector<Eigen::Index> rows;
    for (Eigen::Index t = 0; t < out_of_sample(); ++t) {
        bool all = true;
        for (const auto& v : valid)
            if (!v[static_cast<std::size_t>(t)]) all = false;
        if (all) rows.push_back(t);
    }
    LossPanel out;
    out.models = models;
    out.labels = labels;
    out.completeness.assign(models.size(), 1.0);
    const Eigen::Index P = static_cast<Eigen::Index>(rows.size());
    out.actual.resize(P, actual.cols());
    out.errors.assign(models.size(), Eigen::MatrixXd(P, actual.cols()));
    out.valid.assign(models.size(), std::vector<char>(static_cast<std::size_t>(P), 1));
    for (Eigen::Index r = 0; r < P; ++r) {
        out.dates.push_back(dates[static_cast<std::size_t>(rows[static_cast<std::size_t>(r)])]);
        out.actual.row(r) = actual.row(rows[static_cast<std::size_t>(r)]);
        for (std::size_t m = 0; m < models.size(); ++m)
            out.errors[m].row(r) = errors[m].row(rows[static_cast<std::size_t>(r)]);
    }
    return out;
}

namespace {

ReturnPanel slice_returns(const ReturnPanel& panel, Eigen::Index start, Eigen::Index len) {
    ReturnPanel out;
    out.labels = panel.labels;
    out.dates.assign(panel.dates.begin() + start, panel.dates.begin() + start + len);
    out.returns = panel.returns.middleRows(start, len);
    return out;
}

bool roster_has(const std::vector<ModelKind>& roster, ModelKind m) {
    return std::find(roster.begin(), roster.end(), m) != roster.end();
}

} // namespace

LossPanel rolling_forecast(const ReturnPanel& panel, const RollingConfig& cfg) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    const Eigen::Index T0 = cfg.window;
    if (T0 < 30) throw ConfigError("training window too short");
    if (T0 >= T) throw ConfigError("training window must be below the sample length");
    if (T <= T0 + 10) throw DataError("too few periods beyond the training window");
    if (cfg.roster.empty()) throw ConfigError("empty model roster");

    const Eigen::Index P = T - T0;

    LossPanel lp;
    lp.models = cfg.roster;
    lp.labels = panel.labels;
    lp.dates.assign(panel.dates.begin() + T0, panel.dates.end());
    lp.actual = Eigen::MatrixXd::Constant(P, n, kNaN);
    lp.errors.assign(cfg.roster.size(), Eigen::MatrixXd::Constant(P, n, kNaN));
    lp.valid.assign(cfg.roster.size(), std::vector<char>(static_cast<std::size_t>(P), 0));
    lp.completeness.assign(cfg.roster.size(), 0.0);

    const bool need_stage1 =
        roster_has(cfg.roster, ModelKind::std_ccc) || roster_has(cfg.roster, ModelKind::std_dcc) ||
        roster_has(cfg.roster, ModelKind::net_ccc) || roster_has(cfg.roster, ModelKind::net_dcc);
    const bool need_ccc =
        roster_has(cfg.roster, ModelKind::std_ccc) || roster_has(cfg.roster, ModelKind::net_ccc);
    const bool need_dcc =
        roster_has(cfg.roster, ModelKind::std_dcc) || roster_has(cfg.roster, ModelKind::net_dcc);
    const bool need_go =
        roster_has(cfg.roster, ModelKind::std_go) || roster_has(cfg.roster, ModelKind::net_go);

    parallel_for(P, cfg.exec, [&](std::int64_t w) {
        const ReturnPanel train = slice_returns(panel, w, T0);
        const std::uint64_t wseed = stream_seed(cfg.seed, 0x207711, static_cast<std::uint64_t>(w));

        LogSquaredPanel ys;
        try {
            ys = log_square_transform(train, cfg.zero_adjust);
        } catch (const std::exception&) {
            return; // no model can run this window
        }
        const Eigen::VectorXd ystar_last = ys.ystar.row(T0 - 1).transpose();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ynext = panel.returns(w + T0, i);
            lp.actual(w, i) = std::log(std::max(ynext * ynext, ys.applied[i]));
        }

        // Shared fits: any failure leaves dependent models invalid.
        std::optional<UnivariateStage> stage1;
        std::optional<CccFit> ccc;
        std::optional<DccFit> dcc;
        std::optional<GoGarchFit> go;
        if (need_stage1) {
            try {
                stage1 = fit_univariate_stage(train, cfg.garch_spec, wseed);
            } catch (const std::exception&) {
            }
        }
        if (need_ccc && stage1) {
            try {
                ccc = fit_ccc(train, *stage1);
            } catch (const std::exception&) {
            }
        }
        if (need_dcc && stage1) {
            try {
                dcc = fit_dcc(train, *stage1, wseed);
            } catch (const std::exception&) {
            }
        }
        if (need_go) {
            try {
                go = fit_gogarch(train, wseed, cfg.go_restarts);
            } catch (const std::exception&) {
            }
        }

        auto net_forecast = [&](DissimilarityMethod method) {
            NetworkInputs inputs;
            inputs.piccolo_lags = cfg.piccolo_lags;
            inputs.zero_adjust = cfg.zero_adjust;
            inputs.ccc = ccc ? &*ccc : nullptr;
            inputs.dcc = dcc ? &*dcc : nullptr;
            inputs.go = go ? &*go : nullptr;
            const WeightMatrix wm =
                normalize(to_weights(dissimilarity(train, method, inputs)), cfg.normalization);
            const NetLogArchFit fit = fit_gmm(ys, wm);
            return forecast_logvol(fit, ystar_last);
        };

        for (std::size_t m = 0; m < cfg.roster.size(); ++m) {
            try {
                Eigen::VectorXd fc;
                switch (cfg.roster[m]) {
                    case ModelKind::net_euclidean:
                        fc = net_forecast(DissimilarityMethod::euclidean);
                        break;
                    case ModelKind::net_correlation:
                        fc = net_forecast(DissimilarityMethod::correlation);
                        break;
                    case ModelKind::net_piccolo:
                        fc = net_forecast(DissimilarityMethod::piccolo);
                        break;
                    case ModelKind::net_ccc:
                        if (!ccc) throw NumericalError("CCC fit unavailable");
                        fc = net_forecast(DissimilarityMethod::ccc);
                        break;
                    case ModelKind::net_dcc:
                        if (!dcc) throw NumericalError("DCC fit unavailable");
                        fc = net_forecast(DissimilarityMethod::dcc);
                        break;
                    case ModelKind::net_go:
                        if (!go) throw NumericalError("GO fit unavailable");
                        fc = net_forecast(DissimilarityMethod::go);
                        break;
                    case ModelKind::std_ccc:
                        if (!ccc) throw NumericalError("CCC fit unavailable");
                        fc = mgarch_variance_forecast(*ccc).array().log();
                        break;
                    case ModelKind::std_dcc:
                        if (!dcc) throw NumericalError("DCC fit unavailable");
                        fc = mgarch_variance_forecast(*dcc).array().log();
                        break;
                    case ModelKind::std_go:
                        if (!go) throw NumericalError("GO fit unavailable");
                        fc = mgarch_variance_forecast(*go).array().log();
                        break;
                }
                if (fc.size() != n || !fc.allFinite()) throw NumericalError("bad forecast");
                lp.errors[m].row(w) = lp.actual.row(w) - fc.transpose();
                lp.valid[m][static_cast<std::size_t>(w)] = 1;
            } catch (const std::exception&) {
                // window skipped for this model; completeness accounts for it
            }
        }
    });

    for (std::size_t m = 0; m < cfg.roster.size(); ++m) {
        std::size_t ok = 0;
        for (char v : lp.valid[m]) ok += v ? 1 : 0;
        lp.completeness[m] = static_cast<double>(ok) / static_cast<double>(P);
    }
    return lp;
}

AccuracySummary rmsfe_mafe(const Eigen::MatrixXd& errors) {
    const Eigen::Index P = errors.rows();
    const Eigen::Index n = errors.cols();
    if (P == 0 || n == 0) throw DataError("empty loss panel");
    if (!errors.allFinite())
        throw DataError("loss panel contains non-finite values (use complete_subset)");
    AccuracySummary s;
    for (Eigen::Index i = 0; i < n; ++i) {
        s.rmsfe += std::sqrt(errors.col(i).squaredNorm() / static_cast<double>(P));
        s.mafe += errors.col(i).cwiseAbs().mean();
    }
    s.rmsfe /= static_cast<double>(n);
    s.mafe /= static_cast<double>(n);
    return s;
}

AccuracySummary rmsfe_mafe(const LossPanel& lp, ModelKind model) {
    return rmsfe_mafe(lp.errors[static_cast<std::size_t>(lp.model_index(model))]);
}

namespace {

double loss_of(double e, LossType loss) {
    return loss == LossType::squared ? e * e : std::abs(e);
}

TestResult dm_core(const Eigen::VectorXd& d, LossType loss) {
    const Eigen::Index T = d.size();
    if (!d.allFinite()) throw DataError("loss differentials contain non-finite values");
    TestResult r;
    r.loss_type = loss;
    const double dbar = d.mean();
    r.raw_mean = dbar;
    const double var_pop = (d.array() - dbar).square().sum() / static_cast<double>(T);
    if (var_pop < kTiny) {
        r.degenerate = true;
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    r.statistic = dbar / std::sqrt(var_pop / static_cast<double>(T));
    r.p_value = 2.0 * (1.0 - normal_cdf(std::abs(r.statistic)));
    return r;
}

} // namespace

TestResult dm_test(const Eigen::VectorXd& e1, const Eigen::VectorXd& e2, LossType loss) {
    if (e1.size() != e2.size()) throw ConfigError("DM test needs equal-length error series");
    if (e1.size() < 10) throw DataError("DM test needs at least 10 observations");
    Eigen::VectorXd d(e1.size());
    for (Eigen::Index t = 0; t < e1.size(); ++t)
        d[t] = loss_of(e1[t], loss) - loss_of(e2[t], loss);
    return dm_core(d, loss);
}

TestResult dm_test_pooled(const LossPanel& lp, ModelKind m1, ModelKind m2, LossType loss) {
    const Eigen::MatrixXd& a = lp.errors[static_cast<std::size_t>(lp.model_index(m1))];
    const Eigen::MatrixXd& b = lp.errors[static_cast<std::size_t>(lp.model_index(m2))];
    Eigen::VectorXd d(a.size());
    Eigen::Index k = 0;
    for (Eigen::Index t = 0; t < a.rows(); ++t)
        for (Eigen::Index i = 0; i < a.cols(); ++i, ++k)
            d[k] = loss_of(a(t, i), loss) - loss_of(b(t, i), loss);
    return dm_core(d, loss);
}

TestResult cw_test(const Eigen::VectorXd& e_small, const Eigen::VectorXd& e_big,
                   const Eigen::VectorXd& yhat_small, const Eigen::VectorXd& yhat_big) {
    const Eigen::Index P = e_small.size();
    if (e_big.size() != P || yhat_small.size() != P || yhat_big.size() != P)
        throw ConfigError("CW test needs equal spans");
    if (P < 10) throw DataError("CW test needs at least 10 observations");
    Eigen::VectorXd f(P);
    for (Eigen::Index t = 0; t < P; ++t) {
        const double adj = yhat_small[t] - yhat_big[t];
        f[t] = e_small[t] * e_small[t] - (e_big[t] * e_big[t] - adj * adj);
    }
    TestResult r;
    r.loss_type = LossType::squared;
    const double fbar = f.mean();
    r.raw_mean = fbar;
    const double var_pop = (f.array() - fbar).square().sum() / static_cast<double>(P);
    if (var_pop < kTiny) {
        r.degenerate = true;
        r.statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    r.statistic = std::sqrt(static_cast<double>(P)) * fbar / std::sqrt(var_pop);
    r.p_value = 1.0 - normal_cdf(r.statistic);
    return r;
}

TestResult cw_test_pooled(const LossPanel& lp, ModelKind small, ModelKind big) {
    const Eigen::MatrixXd& es = lp.errors[static_cast<std::size_t>(lp.model_index(small))];
    const Eigen::MatrixXd& eb = lp.errors[static_cast<std::size_t>(lp.model_index(big))];
    const Eigen::Index N = es.size();
    Eigen::VectorXd e1(N), e2(N), y1(N), y2(N);
    Eigen::Index k = 0;
    for (Eigen::Index t = 0; t < es.rows(); ++t)
        for (Eigen::Index i = 0; i < es.cols(); ++i, ++k) {
            e1[k] = es(t, i);
            e2[k] = eb(t, i);
            y1[k] = lp.actual(t, i) - es(t, i);
            y2[k] = lp.actual(t, i) - eb(t, i);
        }
    return cw_test(e1, e2, y1, y2);
}

BootstrapCi bootstrap_ci(const Eigen::MatrixXd& errors, int B, double level, std::uint64_t seed,
                         const ExecPolicy& exec) {
    const Eigen::Index P = errors.rows();
    const Eigen::Index n = errors.cols();
    if (P == 0 || n == 0) throw DataError("empty loss panel");
    if (B < 1) throw ConfigError("bootstrap needs B >= 1");

    BootstrapCi ci;
    ci.replications = B;
    ci.small_b_warning = B < 100;
    const AccuracySummary point = rmsfe_mafe(errors);
    ci.rmsfe_point = point.rmsfe;
    ci.mafe_point = point.mafe;

    std::vector<double> rms_draws(static_cast<std::size_t>(B));
    std::vector<double> mae_draws(static_cast<std::size_t>(B));
    parallel_for(B, exec, [&](std::int64_t b) {
        Rng rng = make_rng(seed, 0xb007, static_cast<std::uint64_t>(b));
        std::uniform_int_distribution<Eigen::Index> pick(0, P - 1);
        Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd sum_abs = Eigen::VectorXd::Zero(n);
        for (Eigen::Index t = 0; t < P; ++t) {
            const Eigen::Index idx = pick(rng); // same index for every series
            for (Eigen::Index i = 0; i < n; ++i) {
                const double e = errors(idx, i);
                sum_sq[i] += e * e;
                sum_abs[i] += std::abs(e);
            }
        }
        double rm = 0.0, ma = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            rm += std::sqrt(sum_sq[i] / static_cast<double>(P));
            ma += sum_abs[i] / static_cast<double>(P);
        }
        rms_draws[static_cast<std::size_t>(b)] = rm / static_cast<double>(n);
        mae_draws[static_cast<std::size_t>(b)] = ma / static_cast<double>(n);
    });

    const double lo = 0.5 * (1.0 - level);
    ci.rmsfe_lower = quantile(rms_draws, lo);
    ci.rmsfe_upper = quantile(rms_draws, 1.0 - lo);
    ci.mafe_lower = quantile(mae_draws, lo);
    ci.mafe_upper = quantile(mae_draws, 1.0 - lo);
    return ci;
}

Eigen::MatrixXd mcs_loss_matrix(const LossPanel& lp, LossType loss) {
    const Eigen::Index P = lp.out_of_sample();
    const Eigen::Index M = static_cast<Eigen::Index>(lp.models.size());
    Eigen::MatrixXd out(P, M);
    for (Eigen::Index m = 0; m < M; ++m) {
        const Eigen::MatrixXd& e = lp.errors[static_cast<std::size_t>(m)];
        for (Eigen::Index t = 0; t < P; ++t) {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < e.cols(); ++i) acc += loss_of(e(t, i), loss);
            out(t, m) = acc / static_cast<double>(e.cols());
        }
    }
    return out;
}

namespace {

struct McsRun {
    std::vector<int> rank;
    std::vector<double> v;
    std::vector<double> p;
};

/// Full elimination sequence (continues past the stopping rule so every model
/// gets a rank and a sequential p-value).
McsRun mcs_procedure(const Eigen::VectorXd& full_mean, const Eigen::MatrixXd& boot_mean,
                     McsStatistic kind) {
    const Eigen::Index M = full_mean.size();
    const Eigen::Index B = boot_mean.rows();
    McsRun run;
    run.rank.assign(static_cast<std::size_t>(M), 0);
    run.v.assign(static_cast<std::size_t>(M), 0.0);
    run.p.assign(static_cast<std::size_t>(M), 1.0);

    std::vector<Eigen::Index> active(static_cast<std::size_t>(M));
    std::iota(active.begin(), active.end(), 0);
    double p_cum = 0.0;
    int next_rank = static_cast<int>(M);

    while (active.size() >= 2) {
        const Eigen::Index m = static_cast<Eigen::Index>(active.size());
        // d_i. = mean_j (Lbar_i - Lbar_j) over the active set
        double avg_full = 0.0;
        for (Eigen::Index a : active) avg_full += full_mean[a];
        avg_full /= static_cast<double>(m);
        const double scale = static_cast<double>(m) / static_cast<double>(m - 1);

        Eigen::VectorXd d_dot(m);
        for (Eigen::Index k = 0; k < m; ++k)
            d_dot[k] = scale * (full_mean[active[static_cast<std::size_t>(k)]] - avg_full);

        Eigen::MatrixXd dstar(B, m); // bootstrap deviations of d_i.
        for (Eigen::Index b = 0; b < B; ++b) {
            double avg_b = 0.0;
            for (Eigen::Index a : active) avg_b += boot_mean(b, a);
            avg_b /= static_cast<double>(m);
            for (Eigen::Index k = 0; k < m; ++k) {
                const double dib =
                    scale * (boot_mean(b, active[static_cast<std::size_t>(k)]) - avg_b);
                dstar(b, k) = dib - d_dot[k];
            }
        }

        Eigen::Index worst = 0;
        double stat = 0.0;
        double p_k = 1.0;

        if (kind == McsStatistic::t_max) {
            Eigen::VectorXd var_i = dstar.array().square().colwise().mean();
            Eigen::VectorXd t_i(m);
            for (Eigen::Index k = 0; k < m; ++k)
                t_i[k] = var_i[k] > kTiny ? d_dot[k] / std::sqrt(var_i[k]) : 0.0;
            stat = t_i.maxCoeff(&worst);
            Eigen::Index exceed = 0;
            for (Eigen::Index b = 0; b < B; ++b) {
                double tb = -std::numeric_limits<double>::infinity();
                for (Eigen::Index k = 0; k < m; ++k)
                    if (var_i[k] > kTiny) tb = std::max(tb, dstar(b, k) / std::sqrt(var_i[k]));
                if (tb > stat) ++exceed;
            }
            p_k = static_cast<double>(exceed) / static_cast<double>(B);
            for (Eigen::Index k = 0; k < m; ++k)
                run.v[static_cast<std::size_t>(active[static_cast<std::size_t>(k)])] = t_i[k];
        } else {
            // Range statistic over pairwise differentials.
            Eigen::MatrixXd var_ij = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index b = 0; b < B; ++b)
                for (Eigen::Index k = 0; k < m; ++k)
                    for (Eigen::Index l = k + 1; l < m; ++l) {
                        const double dev = (boot_mean(b, active[static_cast<std::size_t>(k)]) -
                                            boot_mean(b, active[static_cast<std::size_t>(l)])) -
                                           (full_mean[active[static_cast<std::size_t>(k)]] -
                                            full_mean[active[static_cast<std::size_t>(l)]]);
                        var_ij(k, l) += dev * dev;
                    }
            var_ij /= static_cast<double>(B);
            Eigen::VectorXd t_sup = Eigen::VectorXd::Constant(m, -1e308);
            stat = -1e308;
            for (Eigen::Index k = 0; k < m; ++k)
                for (Eigen::Index l = 0; l < m; ++l) {
                    if (k == l) continue;
                    const double dkl = full_mean[active[static_cast<std::size_t>(k)]] -
                                       full_mean[active[static_cast<std::size_t>(l)]];
                    const double vij = var_ij(std::min(k, l), std::max(k, l));
                    const double t = vij > kTiny ? dkl / std::sqrt(vij) : 0.0;
                    t_sup[k] = std::max(t_sup[k], t);
                    stat = std::max(stat, t);
                }
            t_sup.maxCoeff(&worst);
            Eigen::Index exceed = 0;
            for (Eigen::Index b = 0; b < B; ++b) {
                double tb = -std::numeric_limits<double>::infinity();
                for (Eigen::Index k = 0; k < m; ++k)
                    for (Eigen::Index l = k + 1; l < m; ++l) {
                        const double dev =
                            std::abs((boot_mean(b, active[static_cast<std::size_t>(k)]) -
                                      boot_mean(b, active[static_cast<std::size_t>(l)])) -
                                     (full_mean[active[static_cast<std::size_t>(k)]] -
                                      full_mean[active[static_cast<std::size_t>(l)]]));
                        const double vij = var_ij(k, l);
                        if (vij > kTiny) tb = std::max(tb, dev / std::sqrt(vij));
                    }
                if (tb > stat) ++exceed;
            }
            p_k = static_cast<double>(exceed) / static_cast<double>(B);
            for (Eigen::Index k = 0; k < m; ++k)
                run.v[static_cast<std::size_t>(active[static_cast<std::size_t>(k)])] = t_sup[k];
        }

        p_cum = std::max(p_cum, p_k);
        const Eigen::Index worst_model = active[static_cast<std::size_t>(worst)];
        run.p[static_cast<std::size_t>(worst_model)] = p_cum;
        run.rank[static_cast<std::size_t>(worst_model)] = next_rank--;
        active.erase(active.begin() + worst);
    }
    run.rank[static_cast<std::size_t>(active[0])] = 1;
    run.p[static_cast<std::size_t>(active[0])] = 1.0;
    return run;
}

} // namespace

McsResult mcs(const Eigen::MatrixXd& losses, const std::vector<std::string>& names, double alpha,
              int B, std::uint64_t seed, const ExecPolicy& exec) {
    const Eigen::Index P = losses.rows();
    const Eigen::Index M = losses.cols();
    if (M < 1) throw ConfigError("MCS needs at least one model");
    if (static_cast<Eigen::Index>(names.size()) != M)
        throw ConfigError("MCS names/models mismatch");
    if (P < 10) throw DataError("MCS needs at least 10 loss observations");
    if (B < 1) throw ConfigError("MCS needs B >= 1");

    if (!losses.allFinite()) throw DataError("loss matrix contains non-finite values");

    McsResult result;
    result.alpha = alpha;
    result.replications = B;
    result.block_length =
        static_cast<Eigen::Index>(std::ceil(std::pow(static_cast<double>(P), 1.0 / 3.0)));

    const Eigen::VectorXd full_mean = losses.colwise().mean();

    result.models.resize(static_cast<std::size_t>(M));
    for (Eigen::Index m = 0; m < M; ++m) {
        auto& row = result.models[static_cast<std::size_t>(m)];
        row.name = names[static_cast<std::size_t>(m)];
        row.avg_loss = full_mean[m];
    }
    if (M == 1) {
        auto& row = result.models[0];
        row.rank_max = row.rank_range = 1;
        row.p_max = row.p_range = 1.0;
        row.in_superior_set_max = row.in_superior_set_range = true;
        return result;
    }

    // Degenerate input: identical losses across all models.
    double max_gap = 0.0;
    for (Eigen::Index m = 1; m < M; ++m)
        max_gap = std::max(max_gap, (losses.col(m) - losses.col(0)).cwiseAbs().maxCoeff());
    if (max_gap < kTiny) {
        for (Eigen::Index m = 0; m < M; ++m) {
            auto& row = result.models[static_cast<std::size_t>(m)];
            row.rank_max = row.rank_range = static_cast<int>(m) + 1;
            row.p_max = row.p_range = 1.0;
            row.in_superior_set_max = row.in_superior_set_range = true;
        }
        return result;
    }

    // Moving-block bootstrap means, shared across both statistics.
    const Eigen::Index L = result.block_length;
    Eigen::MatrixXd boot_mean(B, M);
    parallel_for(B, exec, [&](std::int64_t b) {
        Rng rng = make_rng(seed, 0x3c5, static_cast<std::uint64_t>(b));
        std::uniform_int_distribution<Eigen::Index> start(0, P - L);
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(M);
        Eigen::Index filled = 0;
        while (filled < P) {
            const Eigen::Index s = start(rng);
            const Eigen::Index take = std::min(L, P - filled);
            for (Eigen::Index k = 0; k < take; ++k) acc += losses.row(s + k).transpose();
            filled += take;
        }
        boot_mean.row(b) = (acc / static_cast<double>(P)).transpose();
    });

    const McsRun rmax = mcs_procedure(full_mean, boot_mean, McsStatistic::t_max);
    const McsRun rrange = mcs_procedure(full_mean, boot_mean, McsStatistic::t_range);
    for (Eigen::Index m = 0; m < M; ++m) {
        auto& row = result.models[static_cast<std::size_t>(m)];
        row.rank_max = rmax.rank[static_cast<std::size_t>(m)];
        row.v_max = rmax.v[static_cast<std::size_t>(m)];
        row.p_max = rmax.p[static_cast<std::size_t>(m)];
        row.in_superior_set_max = row.p_max >= alpha;
        row.rank_range = rrange.rank[static_cast<std::size_t>(m)];
        row.v_range = rrange.v[static_cast<std::size_t>(m)];
        row.p_range = rrange.p[static_cast<std::size_t>(m)];
        row.in_superior_set_range = row.p_range >= alpha;
    }
    return result;
}

} // namespace volnet
