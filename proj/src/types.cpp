#include "eigensurf/types.hpp"

#include <cmath>
#include <unordered_set>

namespace eigensurf {

ExpressionMatrix::ExpressionMatrix(std::vector<std::string> row_ids,
                                   std::vector<std::string> time_labels,
                                   Eigen::MatrixXd values)
    : row_ids_(std::move(row_ids)), time_labels_(std::move(time_labels)),
      values_(std::move(values)) {
    if (values_.rows() < 2)
        throw InputError("expression matrix needs at least 2 rows, got " +
                         std::to_string(values_.rows()));
    if (values_.cols() < 3)
        throw InputError("expression matrix needs at least 3 columns, got " +
                         std::to_string(values_.cols()));
    if (static_cast<long>(row_ids_.size()) != values_.rows())
        throw InputError("row id count does not match matrix rows");
    if (static_cast<long>(time_labels_.size()) != values_.cols())
        throw InputError("time label count does not match matrix columns");

    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < row_ids_.size(); ++i) {
        if (row_ids_[i].empty())
            throw InputError("empty row id at row " + std::to_string(i + 1));
        if (!seen.insert(row_ids_[i]).second)
            throw InputError("duplicate row id '" + row_ids_[i] + "' at row " +
                             std::to_string(i + 1));
    }
    for (long r = 0; r < values_.rows(); ++r)
        for (long c = 0; c < values_.cols(); ++c)
            if (!std::isfinite(values_(r, c)))
                throw InputError("non-finite value at row " + std::to_string(r + 1) +
                                 ", column " + std::to_string(c + 1));
}

ExpressionMatrix ExpressionMatrix::reordered(const std::vector<std::size_t>& order) const {
    if (order.size() != row_ids_.size())
        throw InputError("reorder: permutation length does not match row count");
    std::vector<std::string> ids;
    ids.reserve(order.size());
    Eigen::MatrixXd v(values_.rows(), values_.cols());
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= row_ids_.size())
            throw InputError("reorder: index out of range");
        ids.push_back(row_ids_[order[i]]);
        v.row(static_cast<long>(i)) = values_.row(static_cast<long>(order[i]));
    }
    return {std::move(ids), time_labels_, std::move(v)};
}

Eigen::MatrixXd ExpressionMatrix::block(GridPoint origin, long height, long width) const {
    if (origin.row < 1 || origin.col < 1 || origin.row - 1 + height > rows() ||
        origin.col - 1 + width > cols() || height < 1 || width < 1)
        throw InputError("block (" + std::to_string(origin.row) + "," +
                         std::to_string(origin.col) + ") " + std::to_string(height) + "x" +
                         std::to_string(width) + " exceeds matrix bounds");
    return values_.block(origin.row - 1, origin.col - 1, height, width);
}

Surface::Surface(Eigen::MatrixXd values, GridPoint origin, int window_size)
    : values_(std::move(values)), origin_(origin), window_size_(window_size) {
    if (values_.rows() < 1 || values_.cols() < 1)
        throw InputError("surface must have at least one cell");
    if (origin_.row < 1 || origin_.col < 1)
        throw InputError("surface origin must be >= 1");
    if (window_size_ < 0)
        throw InputError("surface window size must be >= 0");
    if (!values_.allFinite())
        throw InputError("surface contains non-finite values");
}

} // namespace eigensurf
