#include "eigensurf/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace eigensurf::synth {

std::vector<std::string> row_labels(long m) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(m));
    char buf[32];
    for (long i = 1; i <= m; ++i) {
        std::snprintf(buf, sizeof buf, "g%04ld", i);
        ids.emplace_back(buf);
    }
    return ids;
}

std::vector<std::string> column_labels(long n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (long j = 1; j <= n; ++j)
        labels.push_back("t" + std::to_string(j));
    return labels;
}

ExpressionMatrix diagonal(long m, long n, double scale) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Constant(m, n, scale);
    for (long i = 0; i < std::min(m, n); ++i)
        v(i, i) = 2.0 * scale;
    return {row_labels(m), column_labels(n), std::move(v)};
}

ExpressionMatrix anti_diagonal(long m, long n) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Ones(m, n);
    for (long i = 0; i < std::min(m, n); ++i)
        v(i, n - 1 - i) = 2.0;
    return {row_labels(m), column_labels(n), std::move(v)};
}

PlantedPair planted(long m, long n) {
    if (m < 10 || n < 10)
        throw InputError("planted fixture needs at least 10x10");
    Eigen::MatrixXd base(m, n);
    for (long i = 0; i < m; ++i)
        for (long j = 0; j < n; ++j)
            base(i, j) = 0.1 * static_cast<double>(i + 1) +
                         std::sin(2.0 * std::numbers::pi * static_cast<double>(j) / 25.0 +
                                  0.05 * static_cast<double>(i));

    // 200 x 100 reference layout: rows 90-94, columns 40-60.
    const long first_row = std::lround(90.0 * static_cast<double>(m) / 200.0);
    const long col_lo = std::lround(40.0 * static_cast<double>(n) / 100.0);
    const long col_hi = std::lround(60.0 * static_cast<double>(n) / 100.0);
    const double shift = 5.0;

    Eigen::MatrixXd perturbed = base;
    std::vector<long> rows;
    for (long r = first_row; r < first_row + 5; ++r) {
        rows.push_back(r);
        for (long c = col_lo; c <= col_hi; ++c)
            perturbed(r - 1, c - 1) += shift;
    }
    return {ExpressionMatrix(row_labels(m), column_labels(n), std::move(base)),
            ExpressionMatrix(row_labels(m), column_labels(n), std::move(perturbed)),
            std::move(rows),
            col_lo,
            col_hi,
            shift};
}

} // namespace eigensurf::synth
