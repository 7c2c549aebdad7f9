#include "volnet/sim.hpp"

#include <cmath>

#include "volnet/errors.hpp"
#include "volnet/rng.hpp"

namespace volnet {

std::vector<std::string> synthetic_dates(Eigen::Index T) {
    std::vector<std::string> dates;
    dates.reserve(static_cast<std::size_t>(T));
    for (Eigen::Index t = 0; t < T; ++t) {
        const Eigen::Index year = 1950 + t / 12;
        const Eigen::Index month = 1 + t % 12;
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%04lld-%02lld", static_cast<long long>(year),
                      static_cast<long long>(month));
        dates.emplace_back(buf);
    }
    return dates;
}

namespace {

double spectral_radius(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<std::string> node_labels(Eigen::Index n) {
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back("node" + std::to_string(i + 1));
    return labels;
}

} // namespace

void NetSimSpec::validate() const {
    if (n < 1 || T < 1) throw ConfigError("network simulation needs n >= 1, T >= 1");
    if (gamma.size() != n || phi0.size() != n || W.rows() != n || W.cols() != n)
        throw ConfigError("network simulation spec dimension mismatch");
    if (burn_in < 100) throw ConfigError("burn_in must be at least 100");
    if (spectral_radius(rho * W) >= 1.0)
        throw NumericalError("explosive spec: spectral radius of rho W is not below 1");
    const Eigen::MatrixXd Ainv =
        (Eigen::MatrixXd::Identity(n, n) - rho * W).partialPivLu().inverse();
    if (spectral_radius(Ainv * gamma.asDiagonal().toDenseMatrix()) >= 1.0)
        throw NumericalError("explosive spec: reduced-form lag matrix is not stable");
    if (law == NetInnovationLaw::gaussian && !(sigma2 > 0.0))
        throw ConfigError("gaussian innovation law needs sigma2 > 0");
}

NetSim simulate_net_logarch(const NetSimSpec& spec) {
    spec.validate();
    const Eigen::Index n = spec.n;
    const Eigen::Index total = spec.T + spec.burn_in;

    Rng rng = make_rng(spec.seed, 0x2e7);
    Rng sign_rng = make_rng(spec.seed, 0x51611);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);

    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - spec.rho * spec.W;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

    Eigen::MatrixXd ystar(total, n);
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < total; ++t) {
        Eigen::VectorXd u(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (spec.law == NetInnovationLaw::gaussian) {
                u[i] = std::sqrt(spec.sigma2) * normal(rng);
            } else {
                const double eps = normal(rng);
                u[i] = std::log(eps * eps); // law of ln eps^2 for standard normal eps
            }
        }
        const Eigen::VectorXd rhs = spec.phi0 + spec.gamma.asDiagonal() * prev + u;
        prev = lu.solve(rhs);
        ystar.row(t) = prev.transpose();
    }

    NetSim sim;
    sim.ystar.ystar = ystar.bottomRows(spec.T);
    sim.ystar.adjust = ZeroAdjust{ZeroAdjustScheme::fixed, 1e-300};
    sim.ystar.applied = Eigen::VectorXd::Constant(n, 1e-300);
    sim.ystar.adjusted_cells = 0;
    sim.ystar.labels = node_labels(n);
    sim.ystar.dates = synthetic_dates(spec.T);

    sim.returns.labels = sim.ystar.labels;
    sim.returns.dates = sim.ystar.dates;
    sim.returns.returns.resize(spec.T, n);
    for (Eigen::Index t = 0; t < spec.T; ++t)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double mag = std::exp(0.5 * sim.ystar.ystar(t, i));
            sim.returns.returns(t, i) = coin(sign_rng) ? mag : -mag;
        }
    return sim;
}

ReturnPanel simulate_dcc(Eigen::Index n, Eigen::Index T, double a, double b,
                         const Eigen::MatrixXd& Rbar, const std::vector<GarchParams>& params,
                         std::uint64_t seed) {
    if (n < 1 || T < 1) throw ConfigError("simulate_dcc needs n >= 1, T >= 1");
    if (a < 0.0 || b < 0.0 || a + b >= 1.0)
        throw ConfigError("simulate_dcc needs a, b >= 0 and a + b < 1");
    if (Rbar.rows() != n || Rbar.cols() != n ||
        (Rbar - Rbar.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
        (Rbar.diagonal().array() - 1.0).abs().maxCoeff() > 1e-12)
        throw DataError("invalid correlation matrix Rbar");
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Rbar);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw DataError("Rbar is not positive semidefinite");
    }
    if (static_cast<Eigen::Index>(params.size()) != n)
        throw ConfigError("simulate_dcc needs one GARCH parameter set per series");
    for (const auto& p : params) p.require_stationary();

    Rng rng = make_rng(seed, 0xdccd);
    std::normal_distribution<double> normal(0.0, 1.0);

    const Eigen::Index burn = 200;
    const Eigen::Index total = T + burn;
    Eigen::MatrixXd y(total, n);
    Eigen::MatrixXd h(total, n);
    Eigen::MatrixXd Q = Rbar;
    Eigen::VectorXd eps_prev = Eigen::VectorXd::Zero(n);

    for (Eigen::Index t = 0; t < total; ++t) {
        if (t > 0) {
            Q = (1.0 - a - b) * Rbar + a * (eps_prev * eps_prev.transpose()) + b * Q;
            Q = 0.5 * (Q + Q.transpose()).eval();
        }
        Eigen::VectorXd inv_sd = Q.diagonal().array().sqrt().inverse();
        Eigen::MatrixXd R = inv_sd.asDiagonal() * Q * inv_sd.asDiagonal();
        for (Eigen::Index i = 0; i < n; ++i) R(i, i) = 1.0;
        Eigen::LLT<Eigen::MatrixXd> llt(R);
        if (llt.info() != Eigen::Success) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
            const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-12);
            R = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
            llt.compute(R);
        }
        Eigen::VectorXd z(n);
        for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);
        const Eigen::VectorXd eps = Eigen::MatrixXd(llt.matrixL()) * z;

        for (Eigen::Index i = 0; i < n; ++i) {
            const auto& p = params[static_cast<std::size_t>(i)];
            const double h0 = p.unconditional_variance();
            double ht = p.omega;
            for (int l = 1; l <= p.alpha.size(); ++l) {
                const double ylag =
                    t - l >= 0 ? y(t - l, i) - p.mu : std::sqrt(h0); // presample: unit shock scale
                ht += p.alpha[l - 1] * ylag * ylag;
            }
            for (int l = 1; l <= p.beta.size(); ++l)
                ht += p.beta[l - 1] * (t - l >= 0 ? h(t - l, i) : h0);
            h(t, i) = ht;
            y(t, i) = p.mu + std::sqrt(ht) * eps[i];
        }
        eps_prev = eps;
    }

    ReturnPanel panel;
    panel.labels = node_labels(n);
    panel.dates = synthetic_dates(T);
    panel.returns = y.bottomRows(T);
    return panel;
}

} // namespace volnet
