#include "eigensurf/surface_calculus.hpp"

#include "eigensurf/finite_difference.hpp"

#include <algorithm>
#include <string>

namespace eigensurf {

std::string_view to_string(DerivativeAxis axis) {
    switch (axis) {
    case DerivativeAxis::row:
        return "row";
    case DerivativeAxis::col:
        return "col";
    case DerivativeAxis::mixed:
        return "mixed";
    }
    return "mixed";
}

DerivativeAxis derivative_axis_from_string(std::string_view name) {
    if (name == "row")
        return DerivativeAxis::row;
    if (name == "col")
        return DerivativeAxis::col;
    if (name == "mixed")
        return DerivativeAxis::mixed;
    throw InputError("unknown derivative axis '" + std::string(name) + "'");
}

std::string_view to_string(Extremum::Kind kind) {
    return kind == Extremum::Kind::max ? "max" : "min";
}

SurfaceBundle derivative_surfaces(const Surface& eigen, DerivativeAxis axis) {
    const auto& e = eigen.values();
    const bool need_rows = axis != DerivativeAxis::col;
    const bool need_cols = axis != DerivativeAxis::row;
    if ((need_rows && e.rows() < 3) || (need_cols && e.cols() < 3))
        throw InputError("derivative surfaces need at least 3 cells along each differentiated "
                         "axis, got " +
                         std::to_string(e.rows()) + "x" + std::to_string(e.cols()));

    Eigen::MatrixXd d1, d2;
    switch (axis) {
    case DerivativeAxis::row:
        d1 = fd::first_derivative_rows(e);
        d2 = fd::second_derivative_rows(e);
        break;
    case DerivativeAxis::col:
        d1 = fd::first_derivative_cols(e);
        d2 = fd::second_derivative_cols(e);
        break;
    case DerivativeAxis::mixed:
        d1 = fd::first_derivative_cols(fd::first_derivative_rows(e));
        d2 = fd::second_derivative_rows(e) + fd::second_derivative_cols(e);
        break;
    }
    return {eigen, Surface(std::move(d1), eigen.origin(), eigen.window_size()),
            Surface(std::move(d2), eigen.origin(), eigen.window_size()), axis};
}

namespace {
void require_same_frame(const Surface& a, const Surface& b, const char* op) {
    if (!a.same_frame(b))
        throw InputError(std::string(op) + ": surfaces differ in shape or origin (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
}
} // namespace

Surface dist(const Surface& a, const Surface& b) {
    require_same_frame(a, b, "dist");
    return Surface((a.values() - b.values()).cwiseAbs(), a.origin(), a.window_size());
}

Surface freedist(const Surface& a, const Surface& b) {
    require_same_frame(a, b, "freedist");
    const auto& x = a.values();
    const auto& y = b.values();
    Eigen::MatrixXd out(x.rows(), x.cols());
    for (long c = 0; c < x.cols(); ++c)
        for (long r = 0; r < x.rows(); ++r) {
            const double denom = std::abs(x(r, c)) + std::abs(y(r, c));
            out(r, c) = denom == 0.0 ? 0.0 : std::abs(x(r, c) - y(r, c)) / denom;
        }
    return Surface(std::move(out), a.origin(), a.window_size());
}

std::vector<Extremum> local_extrema(const Surface& delta, std::size_t top_k) {
    const auto& v = delta.values();
    if (v.rows() < 3 || v.cols() < 3)
        throw InputError("local extrema need a surface of at least 3x3, got " +
                         std::to_string(v.rows()) + "x" + std::to_string(v.cols()));
    const Eigen::MatrixXd mag = v.cwiseAbs();

    std::vector<Extremum> found;
    for (long r = 1; r + 1 < v.rows(); ++r) {
        for (long c = 1; c + 1 < v.cols(); ++c) {
            const double centre = mag(r, c);
            bool above = true;
            bool below = true;
            for (long dr = -1; dr <= 1; ++dr)
                for (long dc = -1; dc <= 1; ++dc) {
                    if (dr == 0 && dc == 0)
                        continue;
                    const double nb = mag(r + dr, c + dc);
                    above = above && centre > nb;
                    below = below && centre < nb;
                }
            if (above || below)
                found.push_back({{r + 1, c + 1}, v(r, c),
                                 above ? Extremum::Kind::max : Extremum::Kind::min});
        }
    }
    std::sort(found.begin(), found.end(), [](const Extremum& a, const Extremum& b) {
        if (a.magnitude() != b.magnitude())
            return a.magnitude() > b.magnitude();
        return a.position < b.position;
    });
    if (found.size() > top_k)
        found.resize(top_k);
    return found;
}

} // namespace eigensurf
