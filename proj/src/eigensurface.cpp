#include "eigensurf/eigensurface.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <complex>
#include <string>

namespace eigensurf {

WindowSpec window_grid(long m, long n, long k) {
    if (k < 2 || k > std::min(m, n))
        throw InputError("window size " + std::to_string(k) + " outside [2, min(" +
                         std::to_string(m) + ", " + std::to_string(n) + ")]");
    return {k, m - k + 1, n - k + 1};
}

std::string_view to_string(SpectralMode mode) {
    return mode == SpectralMode::eigen_sum ? "eigen" : "svd";
}

SpectralMode spectral_mode_from_string(std::string_view name) {
    if (name == "eigen" || name == "eigen_sum")
        return SpectralMode::eigen_sum;
    if (name == "svd" || name == "singular_sum")
        return SpectralMode::singular_sum;
    throw InputError("unknown spectral mode '" + std::string(name) + "'");
}

double window_eigen_sum(const Eigen::Ref<const Eigen::MatrixXd>& window, SpectralMode mode) {
    if (window.rows() != window.cols())
        throw InputError("window must be square, got " + std::to_string(window.rows()) + "x" +
                         std::to_string(window.cols()));
    if (window.size() == 0)
        return 0.0;
    switch (mode) {
    case SpectralMode::eigen_sum:
        // Sum of eigenvalues equals the trace.
        return std::abs(window.trace());
    case SpectralMode::singular_sum: {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(window);
        return svd.singularValues().sum();
    }
    }
    return 0.0;
}

double window_eigen_sum_spectral(const Eigen::Ref<const Eigen::MatrixXd>& window) {
    if (window.rows() != window.cols())
        throw InputError("window must be square");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(window, false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigenvalue decomposition did not converge");
    std::complex<double> total = solver.eigenvalues().sum();
    return std::abs(total);
}

Surface build_eigensurface(const Eigen::MatrixXd& matrix, long k, SpectralMode mode,
                           WorkerPool* pool) {
    const auto grid = window_grid(matrix.rows(), matrix.cols(), k);
    Eigen::MatrixXd e(grid.row_positions, grid.col_positions);
    parallel_for(pool, static_cast<std::size_t>(grid.row_positions), [&](std::size_t ri) {
        const long r = static_cast<long>(ri);
        for (long s = 0; s < grid.col_positions; ++s)
            e(r, s) = window_eigen_sum(matrix.block(r, s, k, k), mode);
    });
    return Surface(std::move(e), {1, 1}, static_cast<int>(k));
}

Surface normalize_surface(const Surface& surface) {
    const auto& v = surface.values();
    const double lo = v.minCoeff();
    const double hi = v.maxCoeff();
    Eigen::MatrixXd out;
    if (hi == lo)
        out = Eigen::MatrixXd::Zero(v.rows(), v.cols());
    else
        out = (v.array() - lo) / (hi - lo);
    return Surface(std::move(out), surface.origin(), surface.window_size());
}

} // namespace eigensurf
