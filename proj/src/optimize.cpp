#include "volnet/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace volnet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool usable(double v) { return std::isfinite(v); }
} // namespace

Eigen::VectorXd numerical_gradient_steps(const Objective& f, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& steps) {
    const Eigen::Index n = x.size();
    Eigen::VectorXd g(n);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = steps[i];
        xp[i] = x[i] + h;
        const double fp = f(xp);
        xp[i] = x[i] - h;
        const double fm = f(xp);
        xp[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
    Eigen::VectorXd steps(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        steps[i] = rel_step * std::max(1.0, std::abs(x[i]));
    return numerical_gradient_steps(f, x, steps);
}

Eigen::MatrixXd numerical_hessian_steps(const Objective& f, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& h) {
    const Eigen::Index n = x.size();
    Eigen::MatrixXd hess(n, n);

    const double f0 = f(x);
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            double val;
            if (i == j) {
                xp[i] = x[i] + h[i];
                const double fp = f(xp);
                xp[i] = x[i] - h[i];
                const double fm = f(xp);
                xp[i] = x[i];
                val = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
            } else {
                xp[i] = x[i] + h[i];
                xp[j] = x[j] + h[j];
                const double fpp = f(xp);
                xp[j] = x[j] - h[j];
                const double fpm = f(xp);
                xp[i] = x[i] - h[i];
                xp[j] = x[j] + h[j];
                const double fmp = f(xp);
                xp[j] = x[j] - h[j];
                const double fmm = f(xp);
                xp[i] = x[i];
                xp[j] = x[j];
                val = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            }
            hess(i, j) = val;
            hess(j, i) = val;
        }
    }
    return hess;
}

Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x, double rel_step) {
    Eigen::VectorXd steps(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        steps[i] = rel_step * std::max(1.0, std::abs(x[i]));
    return numerical_hessian_steps(f, x, steps);
}

Eigen::VectorXd newton_polish(const Objective& f, Eigen::VectorXd x,
                              const Eigen::VectorXd& grad_steps,
                              const Eigen::VectorXd& hess_steps, double grad_tol,
                              int max_iterations) {
    double fx = f(x);
    if (!usable(fx)) return x;
    for (int it = 0; it < max_iterations; ++it) {
        const Eigen::VectorXd g = numerical_gradient_steps(f, x, grad_steps);
        if (g.lpNorm<Eigen::Infinity>() < grad_tol) break;
        const Eigen::MatrixXd H = numerical_hessian_steps(f, x, hess_steps);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
        if (ldlt.info() != Eigen::Success) break;
        Eigen::VectorXd step = ldlt.solve(-g);
        if (!step.allFinite()) break;
        if (g.dot(step) >= 0.0) step = -g.cwiseProduct(grad_steps); // indefinite H fallback
        double scale = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            const Eigen::VectorXd cand = x + scale * step;
            const double fc = f(cand);
            if (usable(fc) && fc <= fx) {
                x = cand;
                fx = fc;
                moved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!moved) break;
    }
    return x;
}

OptimResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0, const BfgsOptions& opts) {
    const Eigen::Index n = x0.size();
    OptimResult res;
    res.x = x0;
    res.value = f(x0);
    if (!usable(res.value)) {
        res.converged = false;
        res.grad_norm = kInf;
        return res;
    }

    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd g = numerical_gradient(f, res.x, opts.fd_step);

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter;
        res.grad_norm = g.lpNorm<Eigen::Infinity>();
        if (res.grad_norm < opts.grad_tol) {
            res.converged = true;
            return res;
        }

        Eigen::VectorXd dir = -(hinv * g);
        double slope = g.dot(dir);
        if (!(slope < 0.0)) { // reset on a non-descent direction
            hinv.setIdentity();
            dir = -g;
            slope = g.dot(dir);
        }

        // Backtracking Armijo search.
        double step = 1.0;
        double fnew = kInf;
        Eigen::VectorXd xnew;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            xnew = res.x + step * dir;
            fnew = f(xnew);
            if (usable(fnew) && fnew <= res.value + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = res.grad_norm < 1e2 * opts.grad_tol;
            return res;
        }

        const Eigen::VectorXd gnew = numerical_gradient(f, xnew, opts.fd_step);
        const Eigen::VectorXd s = xnew - res.x;
        const Eigen::VectorXd y = gnew - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
            hinv = (I - rho * s * y.transpose()) * hinv * (I - rho * y * s.transpose()) +
                   rho * s * s.transpose();
        }

        const double step_inf = s.lpNorm<Eigen::Infinity>();
        const double df = res.value - fnew;
        res.x = xnew;
        res.value = fnew;
        g = gnew;
        if (step_inf < opts.step_tol || (df >= 0.0 && df < 1e-14 * (1.0 + std::abs(res.value)))) {
            res.grad_norm = g.lpNorm<Eigen::Infinity>();
            res.converged = res.grad_norm < 1e3 * opts.grad_tol;
            return res;
        }
    }
    res.grad_norm = g.lpNorm<Eigen::Infinity>();
    res.converged = res.grad_norm < opts.grad_tol;
    return res;
}

OptimResult nelder_mead_minimize(const Objective& f, const Eigen::VectorXd& x0,
                                 const NelderMeadOptions& opts) {
    const Eigen::Index n = x0.size();
    const int m = static_cast<int>(n) + 1;
    std::vector<Eigen::VectorXd> pts(m, x0);
    std::vector<double> vals(m);
    for (int i = 1; i < m; ++i) {
        pts[i][i - 1] += opts.initial_step * std::max(1.0, std::abs(x0[i - 1]));
    }
    for (int i = 0; i < m; ++i) vals[i] = f(pts[i]);

    auto order = [&] {
        std::vector<int> idx(m);
        for (int i = 0; i < m; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<Eigen::VectorXd> p2(m);
        std::vector<double> v2(m);
        for (int i = 0; i < m; ++i) {
            p2[i] = pts[idx[i]];
            v2[i] = vals[idx[i]];
        }
        pts.swap(p2);
        vals.swap(v2);
    };

    OptimResult res;
    int iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        order();
        if (usable(vals[0]) && usable(vals[m - 1]) &&
            std::abs(vals[m - 1] - vals[0]) < opts.f_tol * (1.0 + std::abs(vals[0]))) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < m - 1; ++i) centroid += pts[i];
        centroid /= static_cast<double>(m - 1);

        const Eigen::VectorXd xr = centroid + (centroid - pts[m - 1]);
        const double fr = f(xr);
        if (fr < vals[0]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[m - 1]);
            const double fe = f(xe);
            if (fe < fr) {
                pts[m - 1] = xe;
                vals[m - 1] = fe;
            } else {
                pts[m - 1] = xr;
                vals[m - 1] = fr;
            }
        } else if (fr < vals[m - 2]) {
            pts[m - 1] = xr;
            vals[m - 1] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + 0.5 * (pts[m - 1] - centroid);
            const double fc = f(xc);
            if (fc < vals[m - 1]) {
                pts[m - 1] = xc;
                vals[m - 1] = fc;
            } else {
                for (int i = 1; i < m; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    res.x = pts[0];
    res.value = vals[0];
    res.iterations = iter;
    return res;
}

} // namespace volnet
