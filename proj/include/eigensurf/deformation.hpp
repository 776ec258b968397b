#pragma once

#include "eigensurf/types.hpp"
#include "eigensurf/worker_pool.hpp"

#include <string_view>

namespace eigensurf {

using PointCloud = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Window points as (row, col, height) triples in the canonical basis. Row and
/// col are 1-based local window coordinates shared by both clouds, so only the
/// height component of the displacement can be nonzero.
struct DeformationField {
    PointCloud control;      ///< X
    PointCloud deformed;     ///< x
    PointCloud displacement; ///< u = x - X
};

DeformationField displacement_field(const Eigen::Ref<const Eigen::MatrixXd>& control_window,
                                    const Eigen::Ref<const Eigen::MatrixXd>& deformed_window);

enum class DeformationClass { less_deformation, crushed, twist };

std::string_view to_string(DeformationClass cls);

/// Band around zero for the "crushed" class.
inline constexpr double crushed_tolerance = 1e-6;

DeformationClass classify_height_coupling(double coupling);

struct DeformationSummary {
    Eigen::Matrix3d gradient = Eigen::Matrix3d::Identity(); ///< fitted J in x ~ J X + b
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();       ///< b
    double trace = 3.0;
    double height_coupling = 1.0; ///< trace - 2
    DeformationClass cls = DeformationClass::less_deformation;
    /// Control heights are affine in (row, col) (e.g. constant), so the height
    /// column of J is not identifiable. Coupling is then defined as 0.
    bool degenerate = false;
};

/// Least-squares affine fit x ~ J X + b over all points of the field.
DeformationSummary estimate_deformation_gradient(const DeformationField& field);

/// Trace of the fitted J for every k x k window pair. Dims (R-k+1) x (C-k+1).
Surface jacobian_surface(const Surface& control, const Surface& deformed, long k,
                         WorkerPool* pool = nullptr);

} // namespace eigensurf
