#include "volnet/panel.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "volnet/errors.hpp"
#include "volnet/mathx.hpp"

namespace volnet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

struct DateKey {
    int year = 0, month = 0, day = 0;
    bool operator<(const DateKey& o) const {
        if (year != o.year) return year < o.year;
        if (month != o.month) return month < o.month;
        return day < o.day;
    }
    bool operator==(const DateKey& o) const {
        return year == o.year && month == o.month && day == o.day;
    }
};

DateKey parse_date(const std::string& s, std::size_t row, const std::string& origin) {
    // Accepts YYYY-MM and YYYY-MM-DD.
    auto fail = [&] {
        throw DataError(origin + ": unparsable date '" + s + "' at row " + std::to_string(row));
    };
    DateKey k;
    if (s.size() != 7 && s.size() != 10) fail();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool sep = (i == 4 || i == 7);
        if (sep ? s[i] != '-' : !std::isdigit(static_cast<unsigned char>(s[i]))) fail();
    }
    k.year = std::stoi(s.substr(0, 4));
    k.month = std::stoi(s.substr(5, 2));
    if (s.size() == 10) k.day = std::stoi(s.substr(8, 2));
    if (k.month < 1 || k.month > 12 || k.day < 0 || k.day > 31) fail();
    return k;
}

} // namespace

void PricePanel::validate() const {
    if (labels.empty()) throw DataError("price panel has no series");
    if (static_cast<Eigen::Index>(labels.size()) != prices.cols())
        throw DataError("price panel label/column count mismatch");
    if (static_cast<Eigen::Index>(dates.size()) != prices.rows())
        throw DataError("price panel date/row count mismatch");
    if (prices.rows() < 2) throw DataError("price panel needs at least two rows");
    for (Eigen::Index t = 0; t < prices.rows(); ++t)
        for (Eigen::Index i = 0; i < prices.cols(); ++i)
            if (!(prices(t, i) > 0.0) || !std::isfinite(prices(t, i)))
                throw DataError("non-positive price at row " + std::to_string(t + 1) +
                                ", column '" + labels[static_cast<std::size_t>(i)] + "'");
    DateKey prev{};
    for (std::size_t t = 0; t < dates.size(); ++t) {
        DateKey k = parse_date(dates[t], t + 1, "panel");
        if (t > 0 && !(prev < k))
            throw DataError("dates not strictly increasing at row " + std::to_string(t + 1));
        prev = k;
    }
}

PricePanel parse_prices_csv(const std::string& text, const std::string& origin) {
    std::stringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError(origin + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() < 2) throw DataError(origin + ": header must carry a date column and at least one series");

    PricePanel panel;
    panel.labels.assign(header.begin() + 1, header.end());
    const std::size_t ncols = header.size();

    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    DateKey prev{};
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != ncols)
            throw DataError(origin + ": ragged row " + std::to_string(lineno) + " (" +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(ncols) + ")");
        DateKey k = parse_date(fields[0], lineno, origin);
        if (!rows.empty() && !(prev < k))
            throw DataError(origin + ": dates not strictly increasing at row " +
                            std::to_string(lineno));
        prev = k;
        panel.dates.push_back(fields[0]);
        std::vector<double> row(ncols - 1);
        for (std::size_t i = 1; i < ncols; ++i) {
            double v;
            try {
                std::size_t pos = 0;
                v = std::stod(fields[i], &pos);
                if (pos != fields[i].size()) throw std::invalid_argument("trailing junk");
            } catch (const std::exception&) {
                throw DataError(origin + ": unparsable price '" + fields[i] + "' at row " +
                                std::to_string(lineno) + ", column '" + panel.labels[i - 1] + "'");
            }
            if (!(v > 0.0) || !std::isfinite(v))
                throw DataError(origin + ": non-positive price at row " + std::to_string(lineno) +
                                ", column '" + panel.labels[i - 1] + "'");
            row[i - 1] = v;
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) throw DataError(origin + ": need at least two price rows");

    panel.prices.resize(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(ncols - 1));
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (std::size_t i = 0; i + 1 < ncols; ++i)
            panel.prices(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) = rows[t][i];
    return panel;
}

PricePanel load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open price file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_prices_csv(buf.str(), path);
}

void save_prices_csv(const PricePanel& panel, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write price file: " + path);
    out << "date";
    for (const auto& l : panel.labels) out << ',' << l;
    out << '\n';
    out.precision(17);
    for (Eigen::Index t = 0; t < panel.prices.rows(); ++t) {
        out << panel.dates[static_cast<std::size_t>(t)];
        for (Eigen::Index i = 0; i < panel.prices.cols(); ++i) out << ',' << panel.prices(t, i);
        out << '\n';
    }
}

ReturnPanel log_returns(const PricePanel& panel) {
    panel.validate();
    const Eigen::Index T = panel.prices.rows() - 1;
    const Eigen::Index n = panel.prices.cols();
    ReturnPanel r;
    r.labels = panel.labels;
    r.dates.assign(panel.dates.begin() + 1, panel.dates.end());
    r.returns.resize(T, n);
    for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index i = 0; i < n; ++i)
            r.returns(t, i) = std::log(panel.prices(t + 1, i)) - std::log(panel.prices(t, i));
    return r;
}

DescriptiveStats describe(const Eigen::VectorXd& series, const std::string& label) {
    const Eigen::Index T = series.size();
    if (T < 8) throw DataError("describe needs at least 8 observations");
    DescriptiveStats s;
    s.label = label;
    s.mean = series.mean();
    s.minimum = series.minCoeff();
    s.maximum = series.maxCoeff();
    std::vector<double> vals(series.data(), series.data() + T);
    s.median = median(vals);

    const Eigen::ArrayXd centered = series.array() - s.mean;
    const double m2 = centered.square().mean();
    s.std_dev = std::sqrt(centered.square().sum() / static_cast<double>(T - 1));
    if (m2 <= 0.0 || s.minimum == s.maximum) {
        s.degenerate = true;
        s.skewness = s.kurtosis = s.jb_stat = 0.0;
        s.jb_pvalue = 1.0;
        return s;
    }
    const double m3 = centered.cube().mean();
    const double m4 = centered.square().square().mean();
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
    s.jb_stat = static_cast<double>(T) *
                (s.skewness * s.skewness / 6.0 +
                 (s.kurtosis - 3.0) * (s.kurtosis - 3.0) / 24.0);
    s.jb_pvalue = chi2_sf(s.jb_stat, 2.0);
    return s;
}

std::vector<DescriptiveStats> describe_panel(const ReturnPanel& panel) {
    std::vector<DescriptiveStats> out;
    out.reserve(static_cast<std::size_t>(panel.series_count()));
    for (Eigen::Index i = 0; i < panel.series_count(); ++i)
        out.push_back(describe(panel.series(i), panel.labels[static_cast<std::size_t>(i)]));
    return out;
}

Eigen::MatrixXd correlation_matrix(const ReturnPanel& panel) {
    const Eigen::Index T = panel.periods();
    const Eigen::Index n = panel.series_count();
    if (T < 2) throw DataError("correlation needs at least two periods");
    Eigen::MatrixXd centered = panel.returns;
    for (Eigen::Index i = 0; i < n; ++i) centered.col(i).array() -= centered.col(i).mean();
    Eigen::VectorXd sd(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        sd[i] = std::sqrt(centered.col(i).squaredNorm() / static_cast<double>(T));
        if (!(sd[i] > 0.0))
            throw DataError("zero-variance series '" + panel.labels[static_cast<std::size_t>(i)] +
                            "' in correlation");
    }
    Eigen::MatrixXd corr(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        corr(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double c = centered.col(i).dot(centered.col(j)) / static_cast<double>(T);
            const double rho = c / (sd[i] * sd[j]);
            corr(i, j) = rho;
            corr(j, i) = rho;
        }
    }
    return corr;
}

} // namespace volnet
