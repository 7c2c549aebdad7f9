#include "volnet/netarch.hpp"

#include <cmath>
#include <limits>

#include "volnet/errors.hpp"
#include "volnet/mathx.hpp"

namespace volnet {

LogSquaredPanel log_square_transform(const ReturnPanel& panel, const ZeroAdjust& adjust) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    LogSquaredPanel out;
    out.adjust = adjust;
    out.labels = panel.labels;
    out.dates = panel.dates;
    out.applied.resize(n);
    out.ystar.resize(T, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double eps = zero_adjust_value(panel.series(i), adjust);
        out.applied[i] = eps;
        for (Eigen::Index t = 0; t < T; ++t) {
            const double y2 = panel.returns(t, i) * panel.returns(t, i);
            if (y2 < eps) ++out.adjusted_cells;
            out.ystar(t, i) = std::log(std::max(y2, eps));
        }
    }
    return out;
}

namespace {

/// Smallest singular value of (I - rho W); used as the invertibility check.
bool system_invertible(double rho, const Eigen::MatrixXd& W) {
    const Eigen::Index n = W.rows();
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - rho * W;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    return svd.singularValues().minCoeff() > 1e-10;
}

} // namespace

double NetLogArchFit::objective(double rho_v, const Eigen::VectorXd& gamma_v,
                                const Eigen::VectorXd& phi0_v) const {
    if (moment_design.size() == 0)
        throw NumericalError("GMM objective unavailable (zero-weight fit uses least squares)");
    const Eigen::Index n = gamma.size();
    Eigen::VectorXd beta(2 * n + 1);
    beta[0] = rho_v;
    beta.segment(1, n) = gamma_v;
    beta.segment(1 + n, n) = phi0_v;
    const Eigen::VectorXd gbar = moment_target - moment_design * beta;
    return gbar.dot(moment_weight * gbar);
}

NetLogArchFit fit_gmm(const LogSquaredPanel& ys, const WeightMatrix& w) {
    const Eigen::Index T = ys.periods();
    const Eigen::Index n = ys.series_count();
    if (T < 30) throw DataError("fit_gmm needs at least 30 periods");
    if (w.w_norm.rows() != n || w.w_norm.cols() != n)
        throw ConfigError("weight matrix dimension does not match the panel");

    const Eigen::MatrixXd& W = w.w_norm;
    const bool zero_w = W.cwiseAbs().maxCoeff() == 0.0;

    const Eigen::Index rows = T - 1; // observations t = 1..T-1
    const Eigen::Index N = rows * n;
    const Eigen::Index kx = 2 * n + 1;

    // Spatial lags of the current and lagged panel.
    const Eigen::MatrixXd wy = ys.ystar * W.transpose();   // (W ystar_t)_i
    const Eigen::MatrixXd w2y = wy * W.transpose();        // (W^2 ystar_t)_i

    NetLogArchFit fit;
    fit.labels = ys.labels;
    fit.weights = w;
    fit.gamma.resize(n);
    fit.phi0.resize(n);
    fit.std_errors = Eigen::VectorXd::Constant(kx, std::numeric_limits<double>::quiet_NaN());
    fit.t_stats = Eigen::VectorXd::Constant(kx, std::numeric_limits<double>::quiet_NaN());

    if (zero_w) {
        // No spatial lag: the model collapses to per-equation least squares
        // of ystar_t on (1, ystar_{t-1}).
        fit.rho = 0.0;
        double ss = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Eigen::MatrixXd X(rows, 2);
            Eigen::VectorXd y(rows);
            for (Eigen::Index t = 1; t < T; ++t) {
                X(t - 1, 0) = 1.0;
                X(t - 1, 1) = ys.ystar(t - 1, i);
                y(t - 1) = ys.ystar(t, i);
            }
            const Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
            fit.phi0[i] = coef[0];
            fit.gamma[i] = coef[1];
            ss += (y - X * coef).squaredNorm();
        }
        fit.sigma2 = ss / static_cast<double>(N);
        fit.invertible = true;
        return fit;
    }

    // Stacked design: beta = [rho, gamma_1..gamma_n, phi_1..phi_n].
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(N, kx);
    Eigen::VectorXd y(N);
    const Eigen::Index kz = 2 * n + 2;
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(N, kz);
    for (Eigen::Index t = 1; t < T; ++t) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const Eigen::Index r = (t - 1) * n + i;
            y[r] = ys.ystar(t, i);
            X(r, 0) = wy(t, i);
            X(r, 1 + i) = ys.ystar(t - 1, i);
            X(r, 1 + n + i) = 1.0;
            Z(r, i) = 1.0;
            Z(r, n + i) = ys.ystar(t - 1, i);
            Z(r, 2 * n) = wy(t - 1, i);
            Z(r, 2 * n + 1) = w2y(t - 1, i);
        }
    }

    // Structured weight matrices can make W^2 ystar collinear with the other
    // instruments (complete graphs, n = 2). Keep a maximal independent
    // column subset; identification requires at least kx of them.
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> zqr(Z);
        zqr.setThreshold(1e-8);
        const Eigen::Index zrank = zqr.rank();
        if (zrank < kx)
            throw NumericalError("instrument matrix rank-deficient: model not identified");
        if (zrank < Z.cols()) {
            const auto& perm = zqr.colsPermutation().indices();
            std::vector<Eigen::Index> keep(perm.data(), perm.data() + zrank);
            std::sort(keep.begin(), keep.end());
            Eigen::MatrixXd reduced(N, zrank);
            for (Eigen::Index c = 0; c < zrank; ++c)
                reduced.col(c) = Z.col(keep[static_cast<std::size_t>(c)]);
            Z = std::move(reduced);
        }
    }
    const Eigen::Index kz_eff = Z.cols();

    const Eigen::MatrixXd A = Z.transpose() * X / static_cast<double>(N);
    const Eigen::VectorXd b = Z.transpose() * y / static_cast<double>(N);
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        qr.setThreshold(1e-10);
        if (qr.rank() < kx)
            throw NumericalError("instrument matrix rank-deficient: model not identified");
    }

    // Step 1: identity-weighted moments.
    const Eigen::VectorXd beta1 =
        (A.transpose() * A).ldlt().solve(A.transpose() * b);
    const Eigen::VectorXd u1 = y - X * beta1;

    // Step 2: efficient weight from the first-step residuals.
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(kz_eff, kz_eff);
    for (Eigen::Index r = 0; r < N; ++r)
        S.noalias() += u1[r] * u1[r] * (Z.row(r).transpose() * Z.row(r));
    S /= static_cast<double>(N);
    Eigen::LDLT<Eigen::MatrixXd> sldlt(S);
    if (sldlt.info() != Eigen::Success || (sldlt.vectorD().array() <= 0.0).any())
        throw NumericalError("GMM moment covariance is singular");
    const Eigen::MatrixXd Sinv = sldlt.solve(Eigen::MatrixXd::Identity(kz_eff, kz_eff));

    const Eigen::MatrixXd AtS = A.transpose() * Sinv;
    const Eigen::MatrixXd M = AtS * A;
    const Eigen::VectorXd beta2 = M.ldlt().solve(AtS * b);
    const Eigen::VectorXd u2 = y - X * beta2;

    fit.rho = beta2[0];
    fit.gamma = beta2.segment(1, n);
    fit.phi0 = beta2.segment(1 + n, n);
    fit.sigma2 = u2.squaredNorm() / static_cast<double>(N);
    fit.moment_design = A;
    fit.moment_target = b;
    fit.moment_weight = Sinv;

    // Sandwich collapses for efficient GMM: Var = (G' S^-1 G)^{-1} / N.
    const Eigen::MatrixXd V = M.ldlt().solve(Eigen::MatrixXd::Identity(kx, kx)) /
                              static_cast<double>(N);
    for (Eigen::Index j = 0; j < kx; ++j) {
        if (V(j, j) > 0.0) {
            fit.std_errors[j] = std::sqrt(V(j, j));
            fit.t_stats[j] = beta2[j] / fit.std_errors[j];
        }
    }

    fit.invertible = system_invertible(fit.rho, W);
    return fit;
}

Eigen::VectorXd forecast_logvol(const NetLogArchFit& fit, const Eigen::VectorXd& ystar_t) {
    const Eigen::Index n = fit.gamma.size();
    if (ystar_t.size() != n) throw ConfigError("forecast input dimension mismatch");
    if (!fit.invertible)
        throw NumericalError("(I - rho W) is singular at the fitted rho; forecast refused");
    const Eigen::MatrixXd A =
        Eigen::MatrixXd::Identity(n, n) - fit.rho * fit.weights.w_norm;
    const Eigen::VectorXd rhs = fit.phi0 + fit.gamma.asDiagonal() * ystar_t;
    return A.partialPivLu().solve(rhs);
}

} // namespace volnet
