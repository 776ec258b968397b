#pragma once

#include "eigensurf/types.hpp"

#include <string_view>
#include <vector>

namespace eigensurf {

/// Differentiation direction for derivative surfaces.
///   row, col: D1/D2 are the first/second derivative along that axis.
///   mixed:    D1 is the cross derivative d2E/drds, D2 the Laplacian.
enum class DerivativeAxis { row, col, mixed };

std::string_view to_string(DerivativeAxis axis);
DerivativeAxis derivative_axis_from_string(std::string_view name);

struct SurfaceBundle {
    Surface eigen;
    Surface first;
    Surface second;
    DerivativeAxis axis = DerivativeAxis::mixed;
};

SurfaceBundle derivative_surfaces(const Surface& eigen, DerivativeAxis axis);

/// |A - B| cellwise.
Surface dist(const Surface& a, const Surface& b);

/// |A - B| / (|A| + |B|) cellwise, 0 where both are zero.
Surface freedist(const Surface& a, const Surface& b);

struct Extremum {
    enum class Kind { max, min };

    GridPoint position; ///< 1-based, in the surface's own frame
    double value = 0;   ///< surface value at position
    Kind kind = Kind::max;

    double magnitude() const { return value < 0 ? -value : value; }
};

std::string_view to_string(Extremum::Kind kind);

/// Strict local extrema of |delta| over interior cells (full 8-neighborhood).
/// Sorted by |value| descending, ties by (row, col); at most top_k entries.
std::vector<Extremum> local_extrema(const Surface& delta, std::size_t top_k);

} // namespace eigensurf
