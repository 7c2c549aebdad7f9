#pragma once

#include <Eigen/Dense>
#include <functional>

namespace volnet {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_norm = 0.0; // infinity norm at the solution
};

struct BfgsOptions {
    int max_iterations = 500;
    double grad_tol = 1e-8;   // infinity norm of the gradient
    double step_tol = 1e-12;  // infinity norm of the step
    double fd_step = 6e-6;    // relative central-difference step
};

Eigen::VectorXd numerical_gradient(const Objective& f, const Eigen::VectorXd& x,
                                   double rel_step = 6e-6);

Eigen::MatrixXd numerical_hessian(const Objective& f, const Eigen::VectorXd& x,
                                  double rel_step = 2e-4);

/// Central differences with caller-chosen per-component steps; needed when
/// parameters live on very different scales.
Eigen::VectorXd numerical_gradient_steps(const Objective& f, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& steps);

Eigen::MatrixXd numerical_hessian_steps(const Objective& f, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& steps);

/// Damped Newton iteration on a smooth objective: numeric Hessian, Armijo
/// backtracking, stops at grad_tol (infinity norm). Returns the improved
/// point; falls back to the input on any numerical trouble.
Eigen::VectorXd newton_polish(const Objective& f, Eigen::VectorXd x,
                              const Eigen::VectorXd& grad_steps,
                              const Eigen::VectorXd& hess_steps, double grad_tol,
                              int max_iterations);

/// BFGS with central-difference gradients and a backtracking Armijo line
/// search. The objective may return +inf outside its domain; the line search
/// treats that as a rejected step.
OptimResult bfgs_minimize(const Objective& f, const Eigen::VectorXd& x0,
                          const BfgsOptions& opts = {});

struct NelderMeadOptions {
    int max_iterations = 2000;
    double f_tol = 1e-10;
    double initial_step = 0.25;
};

OptimResult nelder_mead_minimize(const Objective& f, const Eigen::VectorXd& x0,
                                 const NelderMeadOptions& opts = {});

} // namespace volnet
