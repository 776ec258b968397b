#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace eigensurf {

/// Malformed input or invalid usage (bad file, bad shape, bad parameter).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 1-based (row, col) coordinate.
struct GridPoint {
    long row = 1;
    long col = 1;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

/// Row-labeled m x n time-series matrix. Construction validates the invariants:
/// unique non-empty ids, finite values, m >= 2, n >= 3.
class ExpressionMatrix {
public:
    ExpressionMatrix(std::vector<std::string> row_ids, std::vector<std::string> time_labels,
                     Eigen::MatrixXd values);

    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& time_labels() const { return time_labels_; }
    const Eigen::MatrixXd& values() const { return values_; }

    long rows() const { return values_.rows(); }
    long cols() const { return values_.cols(); }

    /// Rows in the given order (0-based source indices).
    ExpressionMatrix reordered(const std::vector<std::size_t>& order) const;

    /// Contiguous sub-block; `origin` is 1-based.
    Eigen::MatrixXd block(GridPoint origin, long height, long width) const;

private:
    std::vector<std::string> row_ids_;
    std::vector<std::string> time_labels_;
    Eigen::MatrixXd values_;
};

/// Dense grid with an origin into its parent frame. window_size is the k that
/// produced it, or 0 for surfaces not tied to a window pass.
class Surface {
public:
    explicit Surface(Eigen::MatrixXd values, GridPoint origin = {}, int window_size = 0);

    const Eigen::MatrixXd& values() const { return values_; }
    GridPoint origin() const { return origin_; }
    int window_size() const { return window_size_; }

    long rows() const { return values_.rows(); }
    long cols() const { return values_.cols(); }

    /// 1-based access.
    double at(long r, long c) const { return values_(r - 1, c - 1); }

    bool same_frame(const Surface& other) const {
        return rows() == other.rows() && cols() == other.cols() && origin_ == other.origin_;
    }

private:
    Eigen::MatrixXd values_;
    GridPoint origin_;
    int window_size_ = 0;
};

} // namespace eigensurf
