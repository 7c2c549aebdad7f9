#include <doctest.h>

#include <cmath>
#include <random>

#include "volnet/errors.hpp"
#include "volnet/mathx.hpp"
#include "volnet/panel.hpp"
#include "volnet/rng.hpp"

using namespace volnet;

namespace {

PricePanel make_panel(const std::vector<std::vector<double>>& rows,
                      std::vector<std::string> labels) {
    PricePanel p;
    p.labels = std::move(labels);
    const Eigen::Index T = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index n = static_cast<Eigen::Index>(rows[0].size());
    p.prices.resize(T, n);
    for (Eigen::Index t = 0; t < T; ++t) {
        const Eigen::Index year = 1990 + t / 12;
        const Eigen::Index month = 1 + t % 12;
        char buf[8];
        std::snprintf(buf, sizeof(buf), "%02d", static_cast<int>(month));
        p.dates.push_back(std::to_string(year) + "-" + buf);
        for (Eigen::Index i = 0; i < n; ++i) p.prices(t, i) = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)];
    }
    return p;
}

} // namespace

TEST_CASE("csv ingestion builds a panel") {
    const std::string csv =
        "date,A,B\n"
        "1990-01,1.0,2.0\n"
        "1990-02,1.1,2.2\n"
        "1990-03,1.2,2.4\n";
    const PricePanel p = parse_prices_csv(csv);
    CHECK(p.labels == std::vector<std::string>{"A", "B"});
    CHECK(p.periods() == 3);
    CHECK(p.prices(2, 1) == doctest::Approx(2.4));
}

TEST_CASE("csv ingestion rejects bad input") {
    CHECK_THROWS_WITH_AS(
        parse_prices_csv("date,A\n1990-01,1.0\n1990-02,0.0\n"),
        doctest::Contains("non-positive price"), DataError);
    CHECK_THROWS_WITH_AS(parse_prices_csv("date,A,B\n1990-01,1.0,2.0\n1990-02,1.0\n"),
                         doctest::Contains("ragged"), DataError);
    CHECK_THROWS_WITH_AS(parse_prices_csv("date,A\nJanuary 1990,1.0\n1990-02,1.0\n"),
                         doctest::Contains("unparsable date"), DataError);
    CHECK_THROWS_AS(parse_prices_csv("date,A\n1990-02,1.0\n1990-01,1.0\n"), DataError);
}

TEST_CASE("log returns of (1, e, e^2) are (1, 1)") {
    const double e = std::exp(1.0);
    const PricePanel p = make_panel({{1.0}, {e}, {e * e}}, {"A"});
    const ReturnPanel r = log_returns(p);
    REQUIRE(r.periods() == 2);
    CHECK(r.returns(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.returns(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("constant prices give zero returns") {
    const PricePanel p = make_panel({{5.0}, {5.0}, {5.0}, {5.0}}, {"A"});
    const ReturnPanel r = log_returns(p);
    CHECK(r.returns.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("prices reconstruct from returns (round trip)") {
    Rng rng = make_rng(7);
    std::normal_distribution<double> step(0.0, 0.1);
    std::vector<std::vector<double>> rows;
    std::vector<double> level{100.0, 50.0, 10.0};
    for (int t = 0; t < 60; ++t) {
        rows.push_back(level);
        for (auto& v : level) v *= std::exp(step(rng));
    }
    const PricePanel p = make_panel(rows, {"A", "B", "C"});
    const ReturnPanel r = log_returns(p);
    for (Eigen::Index i = 0; i < 3; ++i) {
        double logp = std::log(p.prices(0, i));
        for (Eigen::Index t = 0; t < r.periods(); ++t) {
            logp += r.returns(t, i);
            const double rel =
                std::abs(std::exp(logp) - p.prices(t + 1, i)) / p.prices(t + 1, i);
            CHECK(rel < 1e-10);
        }
    }
}

TEST_CASE("describe: symmetric two-point series has zero skewness") {
    Eigen::VectorXd y(10);
    for (int t = 0; t < 10; ++t) y[t] = t % 2 == 0 ? 0.3 : -0.3;
    const DescriptiveStats s = describe(y);
    CHECK(s.skewness == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.minimum == doctest::Approx(-0.3));
    CHECK(s.maximum == doctest::Approx(0.3));
    CHECK(s.minimum <= s.median);
    CHECK(s.median <= s.maximum);
}

TEST_CASE("describe: scale invariance of standardized moments") {
    Rng rng = make_rng(21);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd y(200);
    for (auto& v : y) v = normal(rng) + 0.3 * normal(rng) * normal(rng);
    const DescriptiveStats base = describe(y);
    for (double c : {2.0, 17.5, 0.004}) {
        const DescriptiveStats scaled = describe((c * y.array()).matrix());
        CHECK(scaled.skewness == doctest::Approx(base.skewness).epsilon(1e-8));
        CHECK(scaled.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-8));
        CHECK(scaled.jb_stat == doctest::Approx(base.jb_stat).epsilon(1e-8));
    }
}

TEST_CASE("describe: zero-variance series flags degenerate") {
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 0.42);
    const DescriptiveStats s = describe(y);
    CHECK(s.degenerate);
    CHECK(std::isfinite(s.skewness));
    CHECK_THROWS_AS(describe(Eigen::VectorXd::Constant(7, 1.0)), DataError);
}

TEST_CASE("jarque-bera p-value matches an independent chi-square tail") {
    // Oracle: survival of chi^2(2) is exp(-x/2), evaluated independently via
    // the exponential series.
    auto chi2_2_sf_series = [](double x) {
        double term = 1.0;
        double sum = term;
        for (int k = 1; k < 200; ++k) {
            term *= (-0.5 * x) / k;
            sum += term;
        }
        return sum; // exp(-x/2)
    };
    Rng rng = make_rng(99);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd y(10000);
    for (auto& v : y) v = normal(rng);
    const DescriptiveStats s = describe(y);
    CHECK(s.jb_pvalue == doctest::Approx(chi2_2_sf_series(s.jb_stat)).epsilon(1e-9));
    CHECK(s.jb_pvalue > 1e-4); // normal draws should not reject wildly
    CHECK(s.jb_pvalue <= 1.0);
}

TEST_CASE("correlation matrix properties") {
    Rng rng = make_rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    ReturnPanel r;
    r.labels = {"A", "B", "C", "D"};
    r.returns.resize(120, 4);
    for (Eigen::Index t = 0; t < 120; ++t) {
        const double common = normal(rng);
        for (Eigen::Index i = 0; i < 4; ++i) r.returns(t, i) = common + 0.5 * normal(rng);
    }
    r.dates = std::vector<std::string>(120, "x");
    const Eigen::MatrixXd corr = correlation_matrix(r);
    CHECK((corr - corr.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(corr(i, i) == 1.0);
    CHECK(corr.minCoeff() >= -1.0);
    CHECK(corr.maxCoeff() <= 1.0 + 1e-15);
}

TEST_CASE("correlation: series with itself is 1, orthogonal pair is 0") {
    ReturnPanel r;
    r.labels = {"A", "B"};
    r.returns.resize(4, 2);
    // hand-built orthogonal pair: cov = (1/T) sum x y - mx my = 0
    r.returns.col(0) << 1.0, -1.0, 1.0, -1.0;
    r.returns.col(1) << 1.0, 1.0, -1.0, -1.0;
    const Eigen::MatrixXd corr = correlation_matrix(r);
    CHECK(corr(0, 0) == 1.0);
    CHECK(corr(0, 1) == doctest::Approx(0.0).epsilon(1e-14));

    ReturnPanel dup;
    dup.labels = {"A", "A2"};
    dup.returns.resize(4, 2);
    dup.returns.col(0) << 0.1, -0.2, 0.3, 0.05;
    dup.returns.col(1) = dup.returns.col(0);
    CHECK(correlation_matrix(dup)(0, 1) == doctest::Approx(1.0).epsilon(1e-12));

    ReturnPanel flat;
    flat.labels = {"A", "B"};
    flat.returns.resize(4, 2);
    flat.returns.col(0) << 0.1, -0.2, 0.3, 0.05;
    flat.returns.col(1).setConstant(0.2);
    CHECK_THROWS_WITH_AS(correlation_matrix(flat), doctest::Contains("B"), DataError);
}
