// Benchmark of the parallel kernels against the serial reference path.
// Usage: volnet_bench [threads]

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "volnet/forecast_eval.hpp"
#include "volnet/rng.hpp"
#include "volnet/sim.hpp"

using namespace volnet;

namespace {


template <typename F>
double time_of(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

ReturnPanel make_panel(Eigen::Index T, Eigen::Index n) {
    ReturnPanel r;
    r.dates = synthetic_dates(T);
    r.returns.resize(T, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r.labels.push_back("s" + std::to_string(i + 1));
        GarchParams p;
        p.omega = 0.1;
        p.alpha = Eigen::VectorXd::Constant(1, 0.2);
        p.beta = Eigen::VectorXd::Constant(1, 0.6);
        r.returns.col(i) = simulate_garch(p, T, 100 + static_cast<std::uint64_t>(i));
    }
    return r;
}

void report(const std::string& name, double serial, double parallel, int threads) {
    std::cout << name << ": serial " << serial << " s, " << threads << " threads " << parallel
              << " s, speedup " << serial / parallel << "x\n";
}

} // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : 0;
    const ExecPolicy par = ExecPolicy::parallel(threads);
    std::cout << "threads resolved: " << par.resolved_threads() << "\n";

    // Rolling one-step forecasts over a synthetic panel.
    {
        const ReturnPanel panel = make_panel(360, 4);
        RollingConfig cfg;
        cfg.window = 240;
        cfg.roster = {ModelKind::net_euclidean, ModelKind::net_correlation,
                      ModelKind::net_piccolo, ModelKind::std_ccc};
        cfg.garch_spec.innovation = Innovation::gaussian;
        LossPanel out_serial, out_parallel;
        cfg.exec = ExecPolicy::serial();
        const double ts = time_of([&] { out_serial = rolling_forecast(panel, cfg); });
        cfg.exec = par;
        const double tp = time_of([&] { out_parallel = rolling_forecast(panel, cfg); });
        report("rolling_forecast", ts, tp, par.resolved_threads());
        double max_gap = 0.0;
        for (std::size_t m = 0; m < out_serial.errors.size(); ++m)
            max_gap = std::max(max_gap,
                               (out_serial.errors[m] - out_parallel.errors[m]).cwiseAbs().maxCoeff());
        std::cout << "  serial/parallel max abs gap: " << max_gap << "\n";
    }

    // Percentile bootstrap of the accuracy measures.
    {
        Rng rng = make_rng(5);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::MatrixXd e(180, 6);
        for (Eigen::Index t = 0; t < e.rows(); ++t)
            for (Eigen::Index i = 0; i < e.cols(); ++i) e(t, i) = normal(rng);
        BootstrapCi a, b;
        const double ts = time_of([&] { a = bootstrap_ci(e, 20000, 0.95, 3, ExecPolicy::serial()); });
        const double tp = time_of([&] { b = bootstrap_ci(e, 20000, 0.95, 3, par); });
        report("bootstrap_ci", ts, tp, par.resolved_threads());
        std::cout << "  identical intervals: "
                  << (a.rmsfe_lower == b.rmsfe_lower && a.rmsfe_upper == b.rmsfe_upper ? "yes"
                                                                                        : "NO")
                  << "\n";
    }

    // Model confidence set bootstrap.
    {
        Rng rng = make_rng(9);
        std::normal_distribution<double> normal(0.0, 1.0);
        Eigen::MatrixXd losses(180, 9);
        for (Eigen::Index t = 0; t < losses.rows(); ++t)
            for (Eigen::Index m = 0; m < losses.cols(); ++m)
                losses(t, m) = 1.0 + 0.05 * static_cast<double>(m) + 0.3 * normal(rng);
        std::vector<std::string> names;
        for (int m = 0; m < 9; ++m) names.push_back("m" + std::to_string(m));
        McsResult a, b;
        const double ts =
            time_of([&] { a = mcs(losses, names, 0.05, 5000, 7, ExecPolicy::serial()); });
        const double tp = time_of([&] { b = mcs(losses, names, 0.05, 5000, 7, par); });
        report("mcs", ts, tp, par.resolved_threads());
        bool same = true;
        for (std::size_t i = 0; i < a.models.size(); ++i)
            same = same && a.models[i].rank_max == b.models[i].rank_max &&
                   a.models[i].p_max == b.models[i].p_max;
        std::cout << "  identical rankings: " << (same ? "yes" : "NO") << "\n";
    }
    return 0;
}
