#include "volnet/mgarch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "volnet/mathx.hpp"
#include "volnet/optimize.hpp"
#include "volnet/rng.hpp"

namespace volnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x) {
    const Eigen::Index T = x.rows();
    Eigen::MatrixXd centered = x;
    for (Eigen::Index i = 0; i < x.cols(); ++i) centered.col(i).array() -= x.col(i).mean();
    return centered.transpose() * centered / static_cast<double>(T);
}

Eigen::MatrixXd cov_to_corr(const Eigen::MatrixXd& cov) {
    const Eigen::Index n = cov.rows();
    Eigen::VectorXd inv_sd = cov.diagonal().array().sqrt().inverse();
    Eigen::MatrixXd corr = inv_sd.asDiagonal() * cov * inv_sd.asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) corr(i, i) = 1.0;
    return 0.5 * (corr + corr.transpose());
}

/// Eigenvalue floor that keeps a correlation-like matrix usable in a
/// log-determinant; rescales the diagonal back to one.
Eigen::MatrixXd nearest_psd_correlation(const Eigen::MatrixXd& R, double floor = 1e-8) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(floor);
    Eigen::MatrixXd fixed =
        es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    return cov_to_corr(fixed);
}

double sum_half_log_h(const Eigen::MatrixXd& h) {
    return 0.5 * h.array().log().sum();
}

/// Common-shape estimate for the stage-2 multivariate t: 1-D search over
/// log(nu - 2).
double fit_common_shape(const std::function<double(double)>& corr_loglik, double nu_start) {
    auto nll = [&](const Eigen::VectorXd& th) {
        const double nu = 2.0 + std::exp(std::clamp(th[0], -20.0, 8.0));
        const double ll = corr_loglik(nu);
        return std::isfinite(ll) ? -ll : kInf;
    };
    Eigen::VectorXd th0(1);
    th0[0] = std::log(nu_start - 2.0);
    BfgsOptions opts;
    opts.max_iterations = 120;
    const OptimResult res = bfgs_minimize(nll, th0, opts);
    return 2.0 + std::exp(std::clamp(res.x[0], -20.0, 8.0));
}

int stage1_param_count(const std::vector<GarchFit>& fits) {
    int k = 0;
    for (const auto& f : fits) k += static_cast<int>(f.param_vector().size());
    return k;
}

Eigen::MatrixXd tail_rows(const Eigen::MatrixXd& x, Eigen::Index m) {
    return x.bottomRows(std::min(m, x.rows()));
}

Eigen::VectorXd iterate_univariate_forecast(const GarchParams& p, const Eigen::VectorXd& y_tail,
                                            const Eigen::VectorXd& h_tail, int horizon) {
    // Exact one-step forecast, then iterated expectations (E[y^2] = h).
    const int np = static_cast<int>(p.alpha.size());
    const int nq = static_cast<int>(p.beta.size());
    std::vector<double> y2(y_tail.size()), h(h_tail.size());
    for (Eigen::Index i = 0; i < y_tail.size(); ++i) y2[i] = y_tail[i] * y_tail[i];
    for (Eigen::Index i = 0; i < h_tail.size(); ++i) h[i] = h_tail[i];
    Eigen::VectorXd out(horizon);
    for (int step = 0; step < horizon; ++step) {
        double ht = p.omega;
        for (int i = 1; i <= np; ++i) {
            const std::size_t idx = y2.size() >= static_cast<std::size_t>(i)
                                        ? y2.size() - i
                                        : static_cast<std::size_t>(0);
            ht += p.alpha[i - 1] * (y2.size() >= static_cast<std::size_t>(i)
                                        ? y2[idx]
                                        : p.unconditional_variance());
        }
        for (int j = 1; j <= nq; ++j) {
            const std::size_t idx = h.size() >= static_cast<std::size_t>(j)
                                        ? h.size() - j
                                        : static_cast<std::size_t>(0);
            ht += p.beta[j - 1] * (h.size() >= static_cast<std::size_t>(j)
                                       ? h[idx]
                                       : p.unconditional_variance());
        }
        out[step] = ht;
        y2.push_back(ht); // E[y^2 | F] = h for later steps
        h.push_back(ht);
    }
    return out;
}

} // namespace

double mvt_corr_loglik(const Eigen::MatrixXd& eps, const Eigen::MatrixXd& R, double nu) {
    const Eigen::Index T = eps.rows();
    const Eigen::Index n = eps.cols();
    Eigen::LLT<Eigen::MatrixXd> llt(R);
    if (llt.info() != Eigen::Success) return -kInf;
    const Eigen::MatrixXd L = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) logdet += 2.0 * std::log(L(i, i));
    const double cterm = std::lgamma(0.5 * (nu + static_cast<double>(n))) -
                         std::lgamma(0.5 * nu) -
                         0.5 * static_cast<double>(n) * std::log(kPi * (nu - 2.0));
    double ll = static_cast<double>(T) * (cterm - 0.5 * logdet);
    const Eigen::MatrixXd solved = llt.solve(eps.transpose()); // n x T
    for (Eigen::Index t = 0; t < T; ++t) {
        const double q = eps.row(t).dot(solved.col(t));
        ll -= 0.5 * (nu + static_cast<double>(n)) * std::log1p(q / (nu - 2.0));
    }
    return ll;
}

UnivariateStage fit_univariate_stage(const ReturnPanel& panel, const GarchSpec& spec,
                                     std::uint64_t seed) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    UnivariateStage st;
    st.labels = panel.labels;
    st.fits.reserve(static_cast<std::size_t>(n));
    st.eps.resize(T, n);
    st.h.resize(T, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        try {
            st.fits.push_back(
                fit_garch(panel.series(i), spec, stream_seed(seed, 0xf17, static_cast<std::uint64_t>(i))));
        } catch (const std::exception& e) {
            throw NumericalError("univariate fit failed for series '" +
                                 panel.labels[static_cast<std::size_t>(i)] + "': " + e.what());
        }
        const GarchFit& f = st.fits.back();
        st.h.col(i) = f.h_path;
        st.eps.col(i) =
            (panel.series(i).array() - f.params.mu) / f.h_path.array().sqrt();
    }
    return st;
}

CccFit fit_ccc(const ReturnPanel& panel, const GarchSpec& spec, std::uint64_t seed) {
    return fit_ccc(panel, fit_univariate_stage(panel, spec, seed));
}

CccFit fit_ccc(const ReturnPanel& panel, const UnivariateStage& stage) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    if (n < 2) throw DataError("CCC requires at least two series");

    CccFit fit;
    fit.univariate = stage.fits;
    fit.labels = panel.labels;
    fit.R = cov_to_corr(sample_covariance(stage.eps));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.R);
    const double min_eig = es.eigenvalues().minCoeff();
    if (min_eig < -1e-10) {
        fit.R = nearest_psd_correlation(fit.R);
        fit.psd_projected = true;
    }
    double max_offdiag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            max_offdiag = std::max(max_offdiag, std::abs(fit.R(i, j)));
    fit.conditioning_warning = max_offdiag > 1.0 - 1e-10 || min_eig < 1e-10;

    // Near-singular R still needs a usable log-determinant for the shape fit.
    const Eigen::MatrixXd R_lik =
        fit.conditioning_warning ? nearest_psd_correlation(fit.R) : fit.R;
    fit.common_shape = fit_common_shape(
        [&](double nu) { return mvt_corr_loglik(stage.eps, R_lik, nu); }, 8.0);

    fit.log_lik =
        mvt_corr_loglik(stage.eps, R_lik, fit.common_shape) - sum_half_log_h(stage.h);
    fit.k_params = stage1_param_count(fit.univariate) +
                   static_cast<int>(n * (n - 1) / 2) + 1;
    const double Td = static_cast<double>(T);
    fit.aic = (-2.0 * fit.log_lik + 2.0 * fit.k_params) / Td;
    fit.bic = (-2.0 * fit.log_lik + fit.k_params * std::log(Td)) / Td;

    int max_lag = 1;
    for (const auto& f : fit.univariate) max_lag = std::max(max_lag, std::max(f.spec.p, f.spec.q));
    Eigen::MatrixXd demeaned = panel.returns;
    for (Eigen::Index i = 0; i < n; ++i)
        demeaned.col(i).array() -= fit.univariate[static_cast<std::size_t>(i)].params.mu;
    fit.y_tail = tail_rows(demeaned, max_lag);
    fit.h_tail = tail_rows(stage.h, max_lag);
    return fit;
}

std::vector<Eigen::MatrixXd> dcc_correlation_path(const Eigen::MatrixXd& eps, double a, double b) {
    const Eigen::Index T = eps.rows();
    const Eigen::MatrixXd Qbar = sample_covariance(eps);
    std::vector<Eigen::MatrixXd> path(static_cast<std::size_t>(T));
    Eigen::MatrixXd Q = Qbar;
    for (Eigen::Index t = 0; t < T; ++t) {
        if (t > 0) {
            Q = (1.0 - a - b) * Qbar +
                a * (eps.row(t - 1).transpose() * eps.row(t - 1)) + b * Q;
            Q = 0.5 * (Q + Q.transpose()).eval();
        }
        path[static_cast<std::size_t>(t)] = cov_to_corr(Q);
    }
    return path;
}

Eigen::MatrixXd average_correlation(const std::vector<Eigen::MatrixXd>& path) {
    if (path.empty()) throw NumericalError("empty correlation path");
    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(path[0].rows(), path[0].cols());
    for (const auto& R : path) avg += R;
    return avg / static_cast<double>(path.size());
}

DccFit fit_dcc(const ReturnPanel& panel, const GarchSpec& spec, std::uint64_t seed) {
    return fit_dcc(panel, fit_univariate_stage(panel, spec, seed), seed);
}

DccFit fit_dcc(const ReturnPanel& panel, const UnivariateStage& stage, std::uint64_t seed) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    if (n < 2) throw DataError("DCC requires at least two series");

    const Eigen::MatrixXd Qbar = sample_covariance(stage.eps);

    // Correlation likelihood over (a, b, nu); Q recursion started at Qbar.
    auto corr_loglik = [&](double a, double b, double nu) {
        if (a < 0.0 || b < 0.0 || a + b >= 1.0 || nu <= 2.0) return -kInf;
        const Eigen::Index nn = n;
        double ll = 0.0;
        const double cterm = std::lgamma(0.5 * (nu + static_cast<double>(nn))) -
                             std::lgamma(0.5 * nu) -
                             0.5 * static_cast<double>(nn) * std::log(kPi * (nu - 2.0));
        Eigen::MatrixXd Q = Qbar;
        for (Eigen::Index t = 0; t < T; ++t) {
            if (t > 0) {
                Q = (1.0 - a - b) * Qbar +
                    a * (stage.eps.row(t - 1).transpose() * stage.eps.row(t - 1)) + b * Q;
                Q = 0.5 * (Q + Q.transpose()).eval();
            }
            const Eigen::MatrixXd R = cov_to_corr(Q);
            Eigen::LLT<Eigen::MatrixXd> llt(R);
            if (llt.info() != Eigen::Success) return -kInf;
            double logdet = 0.0;
            for (Eigen::Index i = 0; i < nn; ++i)
                logdet += 2.0 * std::log(llt.matrixL()(i, i));
            const Eigen::VectorXd sol = llt.solve(stage.eps.row(t).transpose());
            const double q = stage.eps.row(t).dot(sol);
            ll += cterm - 0.5 * logdet -
                  0.5 * (nu + static_cast<double>(nn)) * std::log1p(q / (nu - 2.0));
        }
        return ll;
    };

    auto unpack = [](const Eigen::VectorXd& th) {
        const double ea = std::exp(std::clamp(th[0], -40.0, 40.0));
        const double eb = std::exp(std::clamp(th[1], -40.0, 40.0));
        const double denom = 1.0 + ea + eb;
        const double nu = 2.0 + std::exp(std::clamp(th[2], -20.0, 8.0));
        return std::array<double, 3>{ea / denom, eb / denom, nu};
    };
    auto nll = [&](const Eigen::VectorXd& th) {
        const auto [a, b, nu] = unpack(th);
        const double ll = corr_loglik(a, b, nu);
        return std::isfinite(ll) ? -ll : kInf;
    };

    BfgsOptions opts;
    opts.max_iterations = 250;
    Rng rng = make_rng(seed, 0xdcc);
    std::normal_distribution<double> jitter(0.0, 0.5);

    Eigen::VectorXd th0(3);
    th0 << std::log(0.05 / 0.05), std::log(0.90 / 0.05), std::log(8.0 - 2.0);
    OptimResult best;
    best.value = kInf;
    for (int r = 0; r < 3; ++r) {
        Eigen::VectorXd th = th0;
        if (r > 0)
            for (int i = 0; i < 3; ++i) th[i] += jitter(rng);
        const OptimResult res = bfgs_minimize(nll, th, opts);
        if (res.value < best.value) best = res;
        if (std::isfinite(best.value) && best.converged) break;
    }
    if (!std::isfinite(best.value))
        throw NumericalError("DCC stage-2 optimization failed to find a finite likelihood");

    const auto [a, b, nu] = unpack(best.x);

    DccFit fit;
    fit.univariate = stage.fits;
    fit.labels = panel.labels;
    fit.a = a;
    fit.b = b;
    fit.common_shape = nu;
    fit.Qbar = Qbar;
    fit.boundary = a + b > 1.0 - 1e-6;

    // Curvature standard errors for (a, b), stage-1 treated as fixed.
    {
        auto raw_nll = [&](const Eigen::VectorXd& x) {
            const double ll = corr_loglik(x[0], x[1], x[2]);
            return std::isfinite(ll) ? -ll : kInf;
        };
        Eigen::VectorXd x0(3);
        x0 << a, b, nu;
        Eigen::VectorXd steps(3);
        for (int i = 0; i < 3; ++i) steps[i] = std::max(1e-5, 1e-3 * std::abs(x0[i]));
        const Eigen::MatrixXd H = numerical_hessian_steps(raw_nll, x0, steps);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
        fit.se_a = fit.se_b = std::numeric_limits<double>::quiet_NaN();
        if (lu.isInvertible()) {
            const Eigen::MatrixXd V = lu.inverse();
            if (V(0, 0) > 0.0) fit.se_a = std::sqrt(V(0, 0));
            if (V(1, 1) > 0.0) fit.se_b = std::sqrt(V(1, 1));
        }
    }
    fit.R_path = dcc_correlation_path(stage.eps, a, b);
    fit.log_lik = corr_loglik(a, b, nu) - sum_half_log_h(stage.h);
    fit.k_params = stage1_param_count(fit.univariate) +
                   static_cast<int>(n * (n - 1) / 2) + 3;
    const double Td = static_cast<double>(T);
    fit.aic = (-2.0 * fit.log_lik + 2.0 * fit.k_params) / Td;
    fit.bic = (-2.0 * fit.log_lik + fit.k_params * std::log(Td)) / Td;

    int max_lag = 1;
    for (const auto& f : fit.univariate) max_lag = std::max(max_lag, std::max(f.spec.p, f.spec.q));
    Eigen::MatrixXd demeaned = panel.returns;
    for (Eigen::Index i = 0; i < n; ++i)
        demeaned.col(i).array() -= fit.univariate[static_cast<std::size_t>(i)].params.mu;
    fit.y_tail = tail_rows(demeaned, max_lag);
    fit.h_tail = tail_rows(stage.h, max_lag);
    return fit;
}

namespace {

Eigen::MatrixXd givens_product(const Eigen::VectorXd& angles, Eigen::Index n) {
    Eigen::MatrixXd U = Eigen::MatrixXd::Identity(n, n);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n - 1; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j, ++k) {
            const double c = std::cos(angles[k]);
            const double s = std::sin(angles[k]);
            // right-multiply by the plane rotation in (i, j)
            const Eigen::VectorXd ui = U.col(i);
            const Eigen::VectorXd uj = U.col(j);
            U.col(i) = c * ui - s * uj;
            U.col(j) = s * ui + c * uj;
        }
    }
    return U;
}

struct GoObjectiveParts {
    Eigen::VectorXd angles;
    std::vector<GarchParams> factor_params;
};

GoObjectiveParts unpack_go(const Eigen::VectorXd& th, Eigen::Index n) {
    const Eigen::Index m = n * (n - 1) / 2;
    GoObjectiveParts parts;
    parts.angles = th.head(m);
    parts.factor_params.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        GarchParams p;
        p.mu = 0.0;
        p.omega = std::exp(std::clamp(th[m + 3 * i], -40.0, 40.0));
        const double ea = std::exp(std::clamp(th[m + 3 * i + 1], -40.0, 40.0));
        const double eb = std::exp(std::clamp(th[m + 3 * i + 2], -40.0, 40.0));
        const double denom = 1.0 + ea + eb;
        p.alpha = Eigen::VectorXd::Constant(1, ea / denom);
        p.beta = Eigen::VectorXd::Constant(1, eb / denom);
        parts.factor_params[static_cast<std::size_t>(i)] = p;
    }
    return parts;
}

} // namespace

GoGarchFit fit_gogarch(const ReturnPanel& panel, std::uint64_t seed, int restarts) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    if (n < 2) throw DataError("GO-GARCH requires at least two series (factor rotation undefined)");

    Eigen::VectorXd mean(n);
    Eigen::MatrixXd centered = panel.returns;
    for (Eigen::Index i = 0; i < n; ++i) {
        mean[i] = centered.col(i).mean();
        centered.col(i).array() -= mean[i];
    }
    const Eigen::MatrixXd S = centered.transpose() * centered / static_cast<double>(T);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.eigenvalues().minCoeff() < 1e-12 * es.eigenvalues().maxCoeff())
        throw DataError("GO-GARCH: unconditional covariance is rank-deficient");

    // Descending eigenvalue order.
    Eigen::VectorXd lambda(n);
    Eigen::MatrixXd P(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lambda[i] = es.eigenvalues()[n - 1 - i];
        P.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    const Eigen::MatrixXd whitened =
        centered * P * lambda.array().rsqrt().matrix().asDiagonal(); // T x n

    const double det_term = 0.5 * static_cast<double>(T) * lambda.array().log().sum();
    const Eigen::Index m = n * (n - 1) / 2;

    auto nll = [&](const Eigen::VectorXd& th) {
        const GoObjectiveParts parts = unpack_go(th, n);
        const Eigen::MatrixXd U = givens_product(parts.angles, n);
        const Eigen::MatrixXd F = whitened * U;
        double total = det_term;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double v = detail::garch_negloglik(
                parts.factor_params[static_cast<std::size_t>(i)], Innovation::gaussian,
                F.col(i), nullptr);
            if (!std::isfinite(v)) return kInf;
            total += v;
        }
        return total;
    };

    Eigen::VectorXd th0(m + 3 * n);
    th0.head(m).setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
        th0[m + 3 * i] = std::log(0.10);              // omega for unit-variance factors
        th0[m + 3 * i + 1] = std::log(0.10 / 0.10);   // alpha share
        th0[m + 3 * i + 2] = std::log(0.80 / 0.10);   // beta share
    }

    BfgsOptions opts;
    opts.max_iterations = 600;
    Rng rng = make_rng(seed, 0x60);
    std::uniform_real_distribution<double> angle_draw(-kPi / 4.0, kPi / 4.0);

    OptimResult best;
    best.value = kInf;
    for (int r = 0; r <= restarts; ++r) {
        Eigen::VectorXd th = th0;
        if (r > 0)
            for (Eigen::Index i = 0; i < m; ++i) th[i] = angle_draw(rng);
        const OptimResult res = bfgs_minimize(nll, th, opts);
        if (res.value < best.value) best = res;
    }
    if (!std::isfinite(best.value))
        throw NumericalError("GO-GARCH optimization failed to find a finite likelihood");

    GoObjectiveParts parts = unpack_go(best.x, n);
    Eigen::MatrixXd U = givens_product(parts.angles, n);

    // Canonical column signs: largest-magnitude entry positive.
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index imax = 0;
        U.col(j).cwiseAbs().maxCoeff(&imax);
        if (U(imax, j) < 0.0) U.col(j) = -U.col(j);
    }

    GoGarchFit fit;
    fit.labels = panel.labels;
    fit.mean = mean;
    fit.P = P;
    fit.eigenvalues = lambda;
    fit.U = U;
    fit.Z = P * lambda.array().sqrt().matrix().asDiagonal() * U;
    fit.factors.resize(static_cast<std::size_t>(n));
    fit.H_path.resize(T, n);

    const Eigen::MatrixXd F = whitened * U;
    double loglik = -det_term;
    for (Eigen::Index i = 0; i < n; ++i) {
        const GarchParams& p = parts.factor_params[static_cast<std::size_t>(i)];
        fit.factors[static_cast<std::size_t>(i)] = {p.omega, p.alpha[0], p.beta[0]};
        Eigen::VectorXd h;
        const double v = detail::garch_negloglik(p, Innovation::gaussian, F.col(i), &h);
        loglik -= v;
        fit.H_path.col(i) = h;
    }
    fit.log_lik = loglik;
    fit.k_params = static_cast<int>(3 * n);
    const double Td = static_cast<double>(T);
    fit.aic = (-2.0 * fit.log_lik + 2.0 * fit.k_params) / Td;
    fit.bic = (-2.0 * fit.log_lik + fit.k_params * std::log(Td)) / Td;

    fit.sigma_path.resize(static_cast<std::size_t>(T));
    fit.R_path.resize(static_cast<std::size_t>(T));
    for (Eigen::Index t = 0; t < T; ++t) {
        const Eigen::MatrixXd sigma =
            fit.Z * fit.H_path.row(t).asDiagonal() * fit.Z.transpose();
        fit.sigma_path[static_cast<std::size_t>(t)] = sigma;
        fit.R_path[static_cast<std::size_t>(t)] = cov_to_corr(sigma);
    }
    fit.f_tail = F.bottomRows(1);
    fit.h_tail = fit.H_path.bottomRows(1);
    return fit;
}

namespace {

Eigen::VectorXd ccc_like_forecast(const std::vector<GarchFit>& fits,
                                  const Eigen::MatrixXd& y_tail, const Eigen::MatrixXd& h_tail,
                                  int horizon) {
    if (horizon < 1) throw ConfigError("forecast horizon must be >= 1");
    const Eigen::Index n = static_cast<Eigen::Index>(fits.size());
    Eigen::VectorXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd path = iterate_univariate_forecast(
            fits[static_cast<std::size_t>(i)].params, y_tail.col(i), h_tail.col(i), horizon);
        out[i] = path[horizon - 1];
    }
    return out;
}

} // namespace

Eigen::VectorXd mgarch_variance_forecast(const CccFit& fit, int horizon) {
    return ccc_like_forecast(fit.univariate, fit.y_tail, fit.h_tail, horizon);
}

Eigen::VectorXd mgarch_variance_forecast(const DccFit& fit, int horizon) {
    return ccc_like_forecast(fit.univariate, fit.y_tail, fit.h_tail, horizon);
}

Eigen::VectorXd mgarch_variance_forecast(const GoGarchFit& fit, int horizon) {
    if (horizon < 1) throw ConfigError("forecast horizon must be >= 1");
    const Eigen::Index n = fit.Z.rows();
    Eigen::VectorXd h(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& f = fit.factors[static_cast<std::size_t>(i)];
        GarchParams p;
        p.omega = f.omega;
        p.alpha = Eigen::VectorXd::Constant(1, f.alpha);
        p.beta = Eigen::VectorXd::Constant(1, f.beta);
        const Eigen::VectorXd path = iterate_univariate_forecast(
            p, fit.f_tail.col(i), fit.h_tail.col(i), horizon);
        h[i] = path[horizon - 1];
    }
    const Eigen::MatrixXd sigma = fit.Z * h.asDiagonal() * fit.Z.transpose();
    return sigma.diagonal();
}

} // namespace volnet
