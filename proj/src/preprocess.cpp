#include "eigensurf/preprocess.hpp"

#include "eigensurf/finite_difference.hpp"
#include "eigensurf/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace eigensurf {

NaturalCubicSpline::NaturalCubicSpline(const Eigen::VectorXd& samples)
    : values_(samples), curvature_(Eigen::VectorXd::Zero(samples.size())) {
    const long n = samples.size();
    if (n < 2)
        throw InputError("spline needs at least 2 knots");
    if (n == 2)
        return;

    // Unit knot spacing: M[i-1] + 4 M[i] + M[i+1] = 6 (y[i+1] - 2 y[i] + y[i-1]),
    // with M[0] = M[n-1] = 0. Thomas algorithm on the interior system.
    const long m = n - 2;
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(m, 4.0);
    Eigen::VectorXd rhs(m);
    for (long i = 0; i < m; ++i)
        rhs(i) = 6.0 * (samples(i + 2) - 2.0 * samples(i + 1) + samples(i));
    for (long i = 1; i < m; ++i) {
        const double w = 1.0 / diag(i - 1);
        diag(i) -= w;
        rhs(i) -= w * rhs(i - 1);
    }
    curvature_(m) = rhs(m - 1) / diag(m - 1);
    for (long i = m - 2; i >= 0; --i)
        curvature_(i + 1) = (rhs(i) - curvature_(i + 2)) / diag(i);
}

double NaturalCubicSpline::operator()(double x) const {
    const long n = values_.size();
    if (!(x >= 1.0) || !(x <= static_cast<double>(n)))
        throw InputError("spline abscissa out of range [1, n]");
    long i = std::min(static_cast<long>(std::floor(x - 1.0)), n - 2);
    const double t = x - static_cast<double>(i + 1);
    const double s = 1.0 - t;
    return s * values_(i) + t * values_(i + 1) +
           ((s * s * s - s) * curvature_(i) + (t * t * t - t) * curvature_(i + 1)) / 6.0;
}

ExpressionMatrix interpolate_rows(const ExpressionMatrix& matrix, long n_target, WorkerPool* pool) {
    const long n = matrix.cols();
    if (n_target < n)
        throw InputError("interpolation target " + std::to_string(n_target) +
                         " is smaller than the column count " + std::to_string(n));

    std::vector<double> abscissae(static_cast<std::size_t>(n_target));
    for (long j = 0; j < n_target; ++j)
        abscissae[static_cast<std::size_t>(j)] =
            1.0 + static_cast<double>(n - 1) * static_cast<double>(j) /
                      static_cast<double>(n_target - 1);

    Eigen::MatrixXd out(matrix.rows(), n_target);
    parallel_for(pool, static_cast<std::size_t>(matrix.rows()), [&](std::size_t r) {
        const long row = static_cast<long>(r);
        NaturalCubicSpline spline(matrix.values().row(row).transpose());
        for (long j = 0; j < n_target; ++j)
            out(row, j) = spline(abscissae[static_cast<std::size_t>(j)]);
    });

    std::vector<std::string> labels;
    labels.reserve(abscissae.size());
    for (double a : abscissae)
        labels.push_back(format_double(a));
    return {matrix.row_ids(), std::move(labels), std::move(out)};
}

SignalDerivatives signal_derivatives(const Eigen::VectorXd& row, double spacing) {
    return {fd::first_derivative(row, spacing), fd::second_derivative(row, spacing)};
}

SortKey sort_key(const Eigen::VectorXd& row, double spacing) {
    auto d = signal_derivatives(row, spacing);
    SortKey key;
    key.area_f = fd::trapezoid(row, spacing);
    key.area_f1 = fd::trapezoid(d.first, spacing);
    key.area_f2 = fd::trapezoid(d.second, spacing);
    key.g = key.area_f + key.area_f1 + key.area_f2;
    return key;
}

AlignedPair sort_and_align(const ExpressionMatrix& control, const ExpressionMatrix& deformed,
                           double spacing) {
    if (control.cols() != deformed.cols())
        throw InputError("control has " + std::to_string(control.cols()) +
                         " columns but deformed has " + std::to_string(deformed.cols()));
    if (control.rows() != deformed.rows())
        throw InputError("control has " + std::to_string(control.rows()) +
                         " rows but deformed has " + std::to_string(deformed.rows()));

    std::unordered_map<std::string, std::size_t> deformed_index;
    for (std::size_t i = 0; i < deformed.row_ids().size(); ++i)
        deformed_index.emplace(deformed.row_ids()[i], i);

    const std::size_t m = static_cast<std::size_t>(control.rows());
    std::vector<double> keys(m);
    for (std::size_t i = 0; i < m; ++i)
        keys[i] = sort_key(control.values().row(static_cast<long>(i)).transpose(), spacing).g;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    std::vector<std::size_t> deformed_order;
    deformed_order.reserve(m);
    for (std::size_t i : order) {
        const auto& id = control.row_ids()[i];
        auto it = deformed_index.find(id);
        if (it == deformed_index.end())
            throw InputError("row id '" + id + "' is missing from the deformed matrix");
        deformed_order.push_back(it->second);
    }

    std::vector<std::size_t> permutation(m);
    std::transform(order.begin(), order.end(), permutation.begin(),
                   [](std::size_t i) { return i + 1; });
    return {control.reordered(order), deformed.reordered(deformed_order), std::move(permutation)};
}

} // namespace eigensurf
