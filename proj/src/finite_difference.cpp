#include "eigensurf/finite_difference.hpp"

#include "eigensurf/types.hpp"

#include <string>

namespace eigensurf::fd {

namespace {
void require_points(long n) {
    if (n < 3)
        throw InputError("finite differences need at least 3 points, got " + std::to_string(n));
}
void require_spacing(double h) {
    if (!(h > 0) || !std::isfinite(h))
        throw InputError("finite difference spacing must be positive");
}
} // namespace

Eigen::VectorXd first_derivative(const Eigen::VectorXd& f, double spacing) {
    const long n = f.size();
    require_points(n);
    require_spacing(spacing);
    Eigen::VectorXd d(n);
    const double inv = 1.0 / (2.0 * spacing);
    d(0) = (-3.0 * f(0) + 4.0 * f(1) - f(2)) * inv;
    for (long i = 1; i + 1 < n; ++i)
        d(i) = (f(i + 1) - f(i - 1)) * inv;
    d(n - 1) = (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) * inv;
    return d;
}

Eigen::VectorXd second_derivative(const Eigen::VectorXd& f, double spacing) {
    const long n = f.size();
    require_points(n);
    require_spacing(spacing);
    Eigen::VectorXd d(n);
    const double inv = 1.0 / (spacing * spacing);
    for (long i = 1; i + 1 < n; ++i)
        d(i) = (f(i + 1) - 2.0 * f(i) + f(i - 1)) * inv;
    if (n == 3) {
        d(0) = d(1);
        d(2) = d(1);
    } else {
        d(0) = (2.0 * f(0) - 5.0 * f(1) + 4.0 * f(2) - f(3)) * inv;
        d(n - 1) = (2.0 * f(n - 1) - 5.0 * f(n - 2) + 4.0 * f(n - 3) - f(n - 4)) * inv;
    }
    return d;
}

Eigen::MatrixXd first_derivative_rows(const Eigen::MatrixXd& grid, double spacing) {
    Eigen::MatrixXd out(grid.rows(), grid.cols());
    for (long c = 0; c < grid.cols(); ++c)
        out.col(c) = first_derivative(grid.col(c), spacing);
    return out;
}

Eigen::MatrixXd second_derivative_rows(const Eigen::MatrixXd& grid, double spacing) {
    Eigen::MatrixXd out(grid.rows(), grid.cols());
    for (long c = 0; c < grid.cols(); ++c)
        out.col(c) = second_derivative(grid.col(c), spacing);
    return out;
}

Eigen::MatrixXd first_derivative_cols(const Eigen::MatrixXd& grid, double spacing) {
    Eigen::MatrixXd out(grid.rows(), grid.cols());
    for (long r = 0; r < grid.rows(); ++r)
        out.row(r) = first_derivative(grid.row(r).transpose(), spacing).transpose();
    return out;
}

Eigen::MatrixXd second_derivative_cols(const Eigen::MatrixXd& grid, double spacing) {
    Eigen::MatrixXd out(grid.rows(), grid.cols());
    for (long r = 0; r < grid.rows(); ++r)
        out.row(r) = second_derivative(grid.row(r).transpose(), spacing).transpose();
    return out;
}

double trapezoid(const Eigen::VectorXd& f, double spacing) {
    const long n = f.size();
    if (n < 2)
        return 0.0;
    double interior = 0.0;
    for (long i = 1; i + 1 < n; ++i)
        interior += f(i);
    return spacing * (0.5 * (f(0) + f(n - 1)) + interior);
}

} // namespace eigensurf::fd
