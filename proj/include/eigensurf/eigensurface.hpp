#pragma once

#include "eigensurf/types.hpp"
#include "eigensurf/worker_pool.hpp"

#include <string_view>

namespace eigensurf {

/// Sliding-window grid of one multiscale pass over an m x n matrix. The window
/// at 1-based corner (r, s) covers rows r..r+k-1 and columns s..s+k-1.
struct WindowSpec {
    long k = 0;
    long row_positions = 0; // m - k + 1
    long col_positions = 0; // n - k + 1
};

WindowSpec window_grid(long m, long n, long k);

enum class SpectralMode {
    eigen_sum,   ///< |sum of eigenvalues| (= |trace|)
    singular_sum ///< sum of singular values (nuclear norm)
};

std::string_view to_string(SpectralMode mode);
SpectralMode spectral_mode_from_string(std::string_view name);

double window_eigen_sum(const Eigen::Ref<const Eigen::MatrixXd>& window, SpectralMode mode);

/// |sum of eigenvalues| through a full (complex) eigendecomposition. Used to
/// cross-check the trace route of window_eigen_sum.
double window_eigen_sum_spectral(const Eigen::Ref<const Eigen::MatrixXd>& window);

/// (m-k+1) x (n-k+1) surface of per-window spectral sums, origin (1,1).
Surface build_eigensurface(const Eigen::MatrixXd& matrix, long k, SpectralMode mode,
                           WorkerPool* pool = nullptr);

/// Min-max rescale to [0, 1]; a constant surface maps to all zeros.
Surface normalize_surface(const Surface& surface);

} // namespace eigensurf
