#pragma once

#include <Eigen/Dense>

namespace eigensurf::fd {

// Second-order accurate stencils on a uniform grid. Interior points use
// central differences, the two endpoints use one-sided stencils:
//
//   f'  ends: (-3 f0 + 4 f1 - f2) / 2h
//   f'' ends: (2 f0 - 5 f1 + 4 f2 - f3) / h^2   (3-point fallback when n == 3)
//
// All stencils are exact on quadratics.

/// First derivative of a sampled signal; n >= 3.
Eigen::VectorXd first_derivative(const Eigen::VectorXd& f, double spacing = 1.0);

/// Second derivative of a sampled signal; n >= 3.
Eigen::VectorXd second_derivative(const Eigen::VectorXd& f, double spacing = 1.0);

/// Column-wise application (differentiates along the row index).
Eigen::MatrixXd first_derivative_rows(const Eigen::MatrixXd& grid, double spacing = 1.0);
Eigen::MatrixXd second_derivative_rows(const Eigen::MatrixXd& grid, double spacing = 1.0);

/// Row-wise application (differentiates along the column index).
Eigen::MatrixXd first_derivative_cols(const Eigen::MatrixXd& grid, double spacing = 1.0);
Eigen::MatrixXd second_derivative_cols(const Eigen::MatrixXd& grid, double spacing = 1.0);

/// Composite trapezoidal rule over uniformly spaced samples.
double trapezoid(const Eigen::VectorXd& f, double spacing = 1.0);

} // namespace eigensurf::fd
