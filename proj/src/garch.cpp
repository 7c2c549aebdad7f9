#include "volnet/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "volnet/mathx.hpp"
#include "volnet/optimize.hpp"
#include "volnet/rng.hpp"

namespace volnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int free_param_count(const GarchSpec& spec) {
    int k = 1 + spec.p + spec.q; // omega + alpha + beta
    if (spec.mean == MeanSpec::constant) ++k;
    if (spec.innovation == Innovation::student_t) ++k;
    return k;
}

// Transformed layout: [mu?][log omega][u_1..u_{p+q}][log(nu-2)?].
Eigen::VectorXd to_theta(const GarchParams& p, const GarchSpec& spec) {
    Eigen::VectorXd theta(free_param_count(spec));
    int k = 0;
    if (spec.mean == MeanSpec::constant) theta[k++] = p.mu;
    theta[k++] = std::log(p.omega);
    const double total = p.persistence();
    const double slack = std::max(1e-10, 1.0 - total);
    for (int i = 0; i < spec.p; ++i)
        theta[k++] = std::log(std::max(p.alpha[i], 1e-10) / slack);
    for (int j = 0; j < spec.q; ++j)
        theta[k++] = std::log(std::max(p.beta[j], 1e-10) / slack);
    if (spec.innovation == Innovation::student_t) theta[k++] = std::log(p.nu - 2.0);
    return theta;
}

GarchParams from_theta(const Eigen::VectorXd& theta, const GarchSpec& spec) {
    GarchParams p;
    p.alpha.resize(spec.p);
    p.beta.resize(spec.q);
    int k = 0;
    p.mu = spec.mean == MeanSpec::constant ? theta[k++] : 0.0;
    p.omega = std::exp(std::clamp(theta[k++], -40.0, 40.0));
    double denom = 1.0;
    const int m = spec.p + spec.q;
    for (int i = 0; i < m; ++i) denom += std::exp(std::clamp(theta[k + i], -40.0, 40.0));
    for (int i = 0; i < spec.p; ++i)
        p.alpha[i] = std::exp(std::clamp(theta[k + i], -40.0, 40.0)) / denom;
    for (int j = 0; j < spec.q; ++j)
        p.beta[j] = std::exp(std::clamp(theta[k + spec.p + j], -40.0, 40.0)) / denom;
    k += m;
    p.nu = spec.innovation == Innovation::student_t
               ? 2.0 + std::exp(std::clamp(theta[k], -30.0, 8.0))
               : 0.0;
    return p;
}

// Original-space layout used for the Newton polish and standard errors.
Eigen::VectorXd to_raw(const GarchParams& p, const GarchSpec& spec) {
    Eigen::VectorXd raw(free_param_count(spec));
    int k = 0;
    if (spec.mean == MeanSpec::constant) raw[k++] = p.mu;
    raw[k++] = p.omega;
    for (int i = 0; i < spec.p; ++i) raw[k++] = p.alpha[i];
    for (int j = 0; j < spec.q; ++j) raw[k++] = p.beta[j];
    if (spec.innovation == Innovation::student_t) raw[k++] = p.nu;
    return raw;
}

GarchParams from_raw(const Eigen::VectorXd& raw, const GarchSpec& spec) {
    GarchParams p;
    p.alpha.resize(spec.p);
    p.beta.resize(spec.q);
    int k = 0;
    p.mu = spec.mean == MeanSpec::constant ? raw[k++] : 0.0;
    p.omega = raw[k++];
    for (int i = 0; i < spec.p; ++i) p.alpha[i] = raw[k++];
    for (int j = 0; j < spec.q; ++j) p.beta[j] = raw[k++];
    p.nu = spec.innovation == Innovation::student_t ? raw[k++] : 0.0;
    return p;
}

bool raw_feasible(const GarchParams& p, const GarchSpec& spec) {
    if (!(p.omega > 0.0)) return false;
    for (int i = 0; i < spec.p; ++i)
        if (p.alpha[i] < 0.0) return false;
    for (int j = 0; j < spec.q; ++j)
        if (p.beta[j] < 0.0) return false;
    if (p.persistence() >= 1.0) return false;
    if (spec.innovation == Innovation::student_t && !(p.nu > 2.0)) return false;
    return true;
}

std::vector<std::string> make_param_names(const GarchSpec& spec) {
    std::vector<std::string> names;
    if (spec.mean == MeanSpec::constant) names.push_back("mu");
    names.push_back("omega");
    for (int i = 1; i <= spec.p; ++i) names.push_back("alpha" + std::to_string(i));
    for (int j = 1; j <= spec.q; ++j) names.push_back("beta" + std::to_string(j));
    if (spec.innovation == Innovation::student_t) names.push_back("nu");
    return names;
}

} // namespace

void GarchSpec::validate() const {
    if (p < 1) throw ConfigError("GARCH spec requires p >= 1");
    if (q < 0) throw ConfigError("GARCH spec requires q >= 0");
}

void GarchParams::require_stationary() const {
    if (!(omega > 0.0)) throw NumericalError("omega must be positive");
    if (alpha.size() > 0 && alpha.minCoeff() < 0.0)
        throw NumericalError("negative ARCH coefficient");
    if (beta.size() > 0 && beta.minCoeff() < 0.0)
        throw NumericalError("negative GARCH coefficient");
    if (!(persistence() < 1.0)) throw NumericalError("nonstationary GARCH parameters");
}

Eigen::VectorXd GarchFit::param_vector() const { return to_raw(params, spec); }

namespace detail {

double garch_negloglik(const GarchParams& params, Innovation innovation,
                       const Eigen::VectorXd& y, Eigen::VectorXd* h_out) {
    const Eigen::Index T = y.size();
    const int p = static_cast<int>(params.alpha.size());
    const int q = static_cast<int>(params.beta.size());
    const double persistence = params.persistence();
    if (!(params.omega > 0.0) || persistence >= 1.0) return kInf;

    const double h0 = params.omega / (1.0 - persistence);
    const double y2bar = y.squaredNorm() / static_cast<double>(T);

    Eigen::VectorXd h(T);
    double nll = 0.0;
    double tdist_const = 0.0;
    const double nu = params.nu;
    if (innovation == Innovation::student_t) {
        if (!(nu > 2.0)) return kInf;
        tdist_const = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                      0.5 * std::log(kPi * (nu - 2.0));
    }
    for (Eigen::Index t = 0; t < T; ++t) {
        double ht = params.omega;
        for (int i = 1; i <= p; ++i) {
            const double y2 = t - i >= 0 ? y[t - i] * y[t - i] : y2bar;
            ht += params.alpha[i - 1] * y2;
        }
        for (int j = 1; j <= q; ++j) {
            const double hj = t - j >= 0 ? h[t - j] : h0;
            ht += params.beta[j - 1] * hj;
        }
        h[t] = ht;
        if (!(ht > 0.0) || !std::isfinite(ht)) return kInf;
        if (innovation == Innovation::gaussian) {
            nll += 0.5 * (std::log(2.0 * kPi * ht) + y[t] * y[t] / ht);
        } else {
            const double z2 = y[t] * y[t] / ht;
            nll += -tdist_const + 0.5 * std::log(ht) +
                   0.5 * (nu + 1.0) * std::log1p(z2 / (nu - 2.0));
        }
    }
    if (h_out) *h_out = std::move(h);
    return std::isfinite(nll) ? nll : kInf;
}

} // namespace detail

Eigen::VectorXd garch_filter(const GarchParams& params, const Eigen::VectorXd& series) {
    params.require_stationary();
    Eigen::VectorXd h;
    const Eigen::VectorXd demeaned = series.array() - params.mu;
    detail::garch_negloglik(params, Innovation::gaussian, demeaned, &h);
    if (h.size() != series.size()) throw NumericalError("variance recursion failed");
    return h;
}

GarchFit fit_garch(const Eigen::VectorXd& series, const GarchSpec& spec, std::uint64_t seed,
                   int restarts) {
    spec.validate();
    const Eigen::Index T = series.size();
    if (T < 50) throw DataError("fit_garch needs at least 50 observations");
    const double sample_mean = series.mean();
    const double sample_var =
        (series.array() - sample_mean).square().sum() / static_cast<double>(T - 1);
    if (!(sample_var > 0.0)) throw DataError("degenerate series: zero variance");

    auto objective = [&](const Eigen::VectorXd& theta) {
        const GarchParams p = from_theta(theta, spec);
        const Eigen::VectorXd y = series.array() - p.mu;
        return detail::garch_negloglik(p, spec.innovation, y, nullptr);
    };

    // Moment-based start: mild ARCH, persistent GARCH.
    GarchParams start;
    start.mu = spec.mean == MeanSpec::constant ? sample_mean : 0.0;
    start.alpha = Eigen::VectorXd::Constant(spec.p, 0.10 / spec.p);
    start.beta = Eigen::VectorXd::Constant(spec.q, spec.q > 0 ? 0.80 / spec.q : 0.0);
    start.omega = sample_var * (1.0 - start.persistence());
    start.nu = 8.0;

    BfgsOptions opts;
    opts.max_iterations = 400;
    opts.grad_tol = 1e-9;

    Rng rng = make_rng(seed, 0x6a5c);
    std::normal_distribution<double> jitter(0.0, 0.6);

    OptimResult best;
    best.value = kInf;
    int used = 0;
    const Eigen::VectorXd theta0 = to_theta(start, spec);
    for (int r = 0; r <= restarts; ++r) {
        Eigen::VectorXd th = theta0;
        if (r > 0)
            for (Eigen::Index i = 0; i < th.size(); ++i) th[i] += jitter(rng);
        const OptimResult res = bfgs_minimize(objective, th, opts);
        ++used;
        const double prev_best = best.value;
        if (res.value < best.value) best = res;
        // Stop early once a fresh start replicates the incumbent optimum.
        if (r > 0 && std::isfinite(prev_best) && std::abs(res.value - prev_best) < 1e-7) break;
    }

    GarchFit fit;
    fit.spec = spec;
    fit.param_names = make_param_names(spec);
    fit.diagnostics.restarts_used = used - 1;

    GarchParams p = from_theta(best.x, spec);

    auto raw_objective = [&](const Eigen::VectorXd& raw) {
        const GarchParams rp = from_raw(raw, spec);
        if (!raw_feasible(rp, spec)) return kInf;
        const Eigen::VectorXd y = series.array() - rp.mu;
        return detail::garch_negloglik(rp, spec.innovation, y, nullptr);
    };

    // Interior iff no coefficient is pinned against a constraint.
    auto interior = [&](const GarchParams& gp) {
        const double eps = 1e-7;
        if (gp.alpha.size() > 0 && gp.alpha.minCoeff() < eps) return false;
        if (gp.beta.size() > 0 && gp.beta.minCoeff() < eps) return false;
        if (gp.persistence() > 1.0 - eps) return false;
        if (spec.innovation == Innovation::student_t && (gp.nu < 2.0 + 1e-5 || gp.nu > 150.0))
            return false;
        return true;
    };

    double nll = raw_objective(to_raw(p, spec));
    fit.diagnostics.at_boundary = !interior(p);

    // Two-stage Newton polish: first in the well-scaled transformed space,
    // then in the original space so the reported score is tight there too.
    if (std::isfinite(nll) && !fit.diagnostics.at_boundary) {
        Eigen::VectorXd th = to_theta(p, spec);
        Eigen::VectorXd gsteps(th.size()), hsteps(th.size());
        for (Eigen::Index i = 0; i < th.size(); ++i) {
            gsteps[i] = 1e-5 * std::max(1.0, std::abs(th[i]));
            hsteps[i] = 1e-3 * std::max(1.0, std::abs(th[i]));
        }
        th = newton_polish(objective, th, gsteps, hsteps, 3e-8, 25);
        p = from_theta(th, spec);
        fit.diagnostics.at_boundary = !interior(p);
    }
    if (!fit.diagnostics.at_boundary) {
        Eigen::VectorXd raw = to_raw(p, spec);
        Eigen::VectorXd gsteps(raw.size()), hsteps(raw.size());
        for (Eigen::Index i = 0; i < raw.size(); ++i) {
            gsteps[i] = 6e-6 * std::max(1e-3, std::abs(raw[i]));
            hsteps[i] = 1e-3 * std::max(1e-2, std::abs(raw[i]));
        }
        raw = newton_polish(raw_objective, raw, gsteps, hsteps, 1e-5, 12);
        p = from_raw(raw, spec);
        fit.diagnostics.at_boundary = !interior(p);
    }
    nll = raw_objective(to_raw(p, spec));

    if (!std::isfinite(nll)) {
        fit.params = p;
        fit.log_lik = -nll;
        throw GarchFitError("GARCH optimizer failed to reach a finite likelihood", fit);
    }

    fit.params = p;
    fit.log_lik = -nll;
    {
        const Eigen::VectorXd y = series.array() - p.mu;
        detail::garch_negloglik(p, spec.innovation, y, &fit.h_path);
    }

    const Eigen::VectorXd raw = to_raw(p, spec);
    Eigen::VectorXd gsteps(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i)
        gsteps[i] = 6e-6 * std::max(1e-3, std::abs(raw[i]));
    const Eigen::VectorXd g = numerical_gradient_steps(raw_objective, raw, gsteps);
    fit.diagnostics.grad_norm = g.lpNorm<Eigen::Infinity>();
    fit.diagnostics.iterations = best.iterations;
    fit.diagnostics.converged =
        best.converged || fit.diagnostics.grad_norm < 1e-3 * std::max(1.0, std::abs(nll));
    if (!fit.diagnostics.converged && !fit.diagnostics.at_boundary)
        throw GarchFitError("GARCH optimizer did not converge after restarts", fit);

    // Standard errors from the inverse numerical Hessian.
    Eigen::VectorXd hsteps(raw.size());
    for (Eigen::Index i = 0; i < raw.size(); ++i)
        hsteps[i] = 1e-3 * std::max(1e-2, std::abs(raw[i]));
    const Eigen::MatrixXd H = numerical_hessian_steps(raw_objective, raw, hsteps);
    const Eigen::Index k = raw.size();
    fit.std_errors = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
    fit.p_values = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
    if (lu.isInvertible()) {
        const Eigen::MatrixXd cov = lu.inverse();
        for (Eigen::Index i = 0; i < k; ++i) {
            if (cov(i, i) > 0.0) {
                fit.std_errors[i] = std::sqrt(cov(i, i));
                const double z = raw[i] / fit.std_errors[i];
                fit.p_values[i] = 2.0 * (1.0 - normal_cdf(std::abs(z)));
            }
        }
    }
    return fit;
}

LogArchFit fit_log_arch(const Eigen::VectorXd& series, int lags, const ZeroAdjust& adjust) {
    const Eigen::Index T = series.size();
    if (lags < 1) throw ConfigError("log-ARCH lag order must be >= 1");
    if (lags >= T) throw DataError("log-ARCH lag order must be below the sample size");
    if (T <= lags + 10) throw DataError("log-ARCH fit needs T > P + 10");

    const double eps = zero_adjust_value(series, adjust);
    Eigen::VectorXd x(T);
    for (Eigen::Index t = 0; t < T; ++t)
        x[t] = std::log(std::max(series[t] * series[t], eps));

    const Eigen::Index rows = T - lags;
    Eigen::MatrixXd X(rows, lags + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index t = lags; t < T; ++t) {
        const Eigen::Index r = t - lags;
        y[r] = x[t];
        X(r, 0) = 1.0;
        for (int p = 1; p <= lags; ++p) X(r, p) = x[t - p];
    }
    const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
    LogArchFit fit;
    fit.lags = lags;
    fit.omega_log = coef[0];
    fit.gamma = coef.tail(lags);
    const Eigen::VectorXd resid = y - X * coef;
    const Eigen::Index dof = rows - (lags + 1);
    fit.residual_variance = dof > 0 ? resid.squaredNorm() / static_cast<double>(dof) : 0.0;
    return fit;
}

Eigen::VectorXd simulate_garch(const GarchParams& params, Eigen::Index horizon,
                               std::uint64_t seed, Innovation innovation) {
    params.require_stationary();
    if (innovation == Innovation::student_t && !(params.nu > 2.0))
        throw NumericalError("Student-t simulation requires nu > 2");
    const int p = static_cast<int>(params.alpha.size());
    const int q = static_cast<int>(params.beta.size());
    const Eigen::Index burn = 200;
    const Eigen::Index total = horizon + burn;

    Rng rng = make_rng(seed, 0x51);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::chi_squared_distribution<double> chisq(params.nu);

    auto draw = [&]() {
        if (innovation == Innovation::gaussian) return normal(rng);
        // Student-t scaled to unit variance.
        const double z = normal(rng);
        const double g = chisq(rng);
        return z * std::sqrt((params.nu - 2.0) / g);
    };

    const double h0 = params.unconditional_variance();
    Eigen::VectorXd y(total), h(total);
    for (Eigen::Index t = 0; t < total; ++t) {
        double ht = params.omega;
        for (int i = 1; i <= p; ++i) {
            const double y2 = t - i >= 0 ? y[t - i] * y[t - i] : h0;
            ht += params.alpha[i - 1] * y2;
        }
        for (int j = 1; j <= q; ++j) {
            const double hj = t - j >= 0 ? h[t - j] : h0;
            ht += params.beta[j - 1] * hj;
        }
        h[t] = ht;
        y[t] = std::sqrt(ht) * draw();
    }
    return params.mu + y.tail(horizon).array();
}

double zero_adjust_value(const Eigen::VectorXd& series, const ZeroAdjust& adjust) {
    if (adjust.scheme == ZeroAdjustScheme::fixed) {
        if (!(adjust.fixed_value > 0.0)) throw ConfigError("fixed zero adjustment must be > 0");
        return adjust.fixed_value;
    }
    std::vector<double> nonzero_sq;
    nonzero_sq.reserve(static_cast<std::size_t>(series.size()));
    for (Eigen::Index t = 0; t < series.size(); ++t)
        if (series[t] != 0.0) nonzero_sq.push_back(series[t] * series[t]);
    if (nonzero_sq.empty()) throw DataError("all-zero series: zero adjustment undefined");
    if (adjust.scheme == ZeroAdjustScheme::min_nonzero)
        return *std::min_element(nonzero_sq.begin(), nonzero_sq.end());
    return quantile(std::move(nonzero_sq), 0.01);
}

} // namespace volnet
