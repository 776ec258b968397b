#include "eigensurf/deformation.hpp"

#include "eigensurf/eigensurface.hpp"

#include <Eigen/QR>

#include <string>

namespace eigensurf {

std::string_view to_string(DeformationClass cls) {
    switch (cls) {
    case DeformationClass::less_deformation:
        return "less_deformation";
    case DeformationClass::crushed:
        return "crushed";
    case DeformationClass::twist:
        return "twist";
    }
    return "crushed";
}

DeformationClass classify_height_coupling(double coupling) {
    if (coupling > crushed_tolerance)
        return DeformationClass::less_deformation;
    if (coupling < -crushed_tolerance)
        return DeformationClass::twist;
    return DeformationClass::crushed;
}

DeformationField displacement_field(const Eigen::Ref<const Eigen::MatrixXd>& control_window,
                                    const Eigen::Ref<const Eigen::MatrixXd>& deformed_window) {
    if (control_window.rows() != deformed_window.rows() ||
        control_window.cols() != deformed_window.cols())
        throw InputError("displacement field: window shapes differ");
    const long rows = control_window.rows();
    const long cols = control_window.cols();
    DeformationField field;
    field.control.resize(rows * cols, 3);
    field.deformed.resize(rows * cols, 3);
    long p = 0;
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c, ++p) {
            field.control.row(p) << double(r + 1), double(c + 1), control_window(r, c);
            field.deformed.row(p) << double(r + 1), double(c + 1), deformed_window(r, c);
        }
    field.displacement = field.deformed - field.control;
    return field;
}

DeformationSummary estimate_deformation_gradient(const DeformationField& field) {
    const long n = field.control.rows();
    if (field.deformed.rows() != n)
        throw InputError("deformation fit: point clouds differ in size");
    if (n < 4)
        throw InputError("deformation fit needs at least 4 points, got " + std::to_string(n));

    // Centred design [X - mean(X), 1]; centring only moves the offset.
    const Eigen::RowVector3d mean_control = field.control.colwise().mean();
    const Eigen::RowVector3d mean_deformed = field.deformed.colwise().mean();
    Eigen::MatrixXd design(n, 4);
    design.leftCols(3) = field.control.rowwise() - mean_control;
    design.col(3).setOnes();

    // The heights must not be affine in (row, col), otherwise J's height column
    // is not identifiable.
    Eigen::MatrixXd planar(n, 3);
    planar << design.leftCols(2), design.col(3);
    const Eigen::VectorXd heights = design.col(2);
    Eigen::HouseholderQR<Eigen::MatrixXd> planar_qr(planar);
    const Eigen::VectorXd residual = heights - planar * planar_qr.solve(heights);
    const double scale = field.control.col(2).norm();

    DeformationSummary out;
    if (scale == 0.0 || residual.norm() <= 1e-10 * scale) {
        // Planar part is the identity by construction.
        const Eigen::MatrixXd planar_targets = field.deformed.leftCols(2);
        Eigen::MatrixXd w = planar_qr.solve(planar_targets);
        out.gradient.setZero();
        out.gradient.block(0, 0, 2, 2) = w.topRows(2).transpose();
        out.offset = mean_deformed.transpose() - out.gradient * mean_control.transpose();
        out.trace = out.gradient.trace();
        out.height_coupling = 0.0;
        out.cls = DeformationClass::crushed;
        out.degenerate = true;
        return out;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::MatrixXd targets = field.deformed;
    const Eigen::MatrixXd w = qr.solve(targets); // 4 x 3
    if (!w.allFinite())
        throw NumericalError("deformation fit produced non-finite coefficients");

    out.gradient = w.topRows(3).transpose();
    out.offset = w.row(3).transpose() - out.gradient * mean_control.transpose();
    out.trace = out.gradient.trace();
    out.height_coupling = out.trace - 2.0;
    out.cls = classify_height_coupling(out.height_coupling);
    return out;
}

Surface jacobian_surface(const Surface& control, const Surface& deformed, long k,
                         WorkerPool* pool) {
    if (!control.same_frame(deformed))
        throw InputError("jacobian surface: surfaces differ in shape or origin");
    const auto grid = window_grid(control.rows(), control.cols(), k);
    Eigen::MatrixXd out(grid.row_positions, grid.col_positions);
    const auto& x0 = control.values();
    const auto& x1 = deformed.values();
    parallel_for(pool, static_cast<std::size_t>(grid.row_positions), [&](std::size_t ri) {
        const long r = static_cast<long>(ri);
        for (long s = 0; s < grid.col_positions; ++s) {
            auto field = displacement_field(x0.block(r, s, k, k), x1.block(r, s, k, k));
            out(r, s) = estimate_deformation_gradient(field).trace;
        }
    });
    return Surface(std::move(out), control.origin(), static_cast<int>(k));
}

} // namespace eigensurf
