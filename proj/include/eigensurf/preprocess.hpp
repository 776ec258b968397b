#pragma once

#include "eigensurf/types.hpp"
#include "eigensurf/worker_pool.hpp"

#include <vector>

namespace eigensurf {

/// Natural cubic spline through samples at abscissae 1, 2, ..., n.
class NaturalCubicSpline {
public:
    explicit NaturalCubicSpline(const Eigen::VectorXd& samples);

    /// Evaluates at abscissa x in [1, n]; throws outside that range.
    double operator()(double x) const;

    long knots() const { return values_.size(); }

private:
    Eigen::VectorXd values_;
    Eigen::VectorXd curvature_; // second derivative at each knot
};

/// Resamples every row at n_target uniform abscissae over [1, n]. Time labels
/// become the abscissae.
ExpressionMatrix interpolate_rows(const ExpressionMatrix& matrix, long n_target,
                                  WorkerPool* pool = nullptr);

/// Grid spacing after resampling n columns to n_target.
inline double resampled_spacing(long n, long n_target) {
    return static_cast<double>(n - 1) / static_cast<double>(n_target - 1);
}

struct SignalDerivatives {
    Eigen::VectorXd first;
    Eigen::VectorXd second;
};

SignalDerivatives signal_derivatives(const Eigen::VectorXd& row, double spacing);

/// Shape score of a signal: trapezoidal areas of f, f' and f'', and their sum g.
struct SortKey {
    double g = 0;
    double area_f = 0;
    double area_f1 = 0;
    double area_f2 = 0;
};

SortKey sort_key(const Eigen::VectorXd& row, double spacing);

struct AlignedPair {
    ExpressionMatrix control;
    ExpressionMatrix deformed;
    /// permutation[i] is the 1-based original control row now at position i + 1.
    std::vector<std::size_t> permutation;
};

/// Sorts the control rows ascending by g (stable) and reorders the deformed
/// rows to the same id sequence.
AlignedPair sort_and_align(const ExpressionMatrix& control, const ExpressionMatrix& deformed,
                           double spacing = 1.0);

} // namespace eigensurf
