#pragma once

// Test-only helpers and independent oracles. Nothing here calls into the
// library routines it is used to check.

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace testing {

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("eigensurf_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, long rows, long cols,
                                     double lo = -10.0, double hi = 10.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Eigen::MatrixXd m(rows, cols);
    for (long c = 0; c < cols; ++c)
        for (long r = 0; r < rows; ++r)
            m(r, c) = dist(rng);
    return m;
}

/// Naive diagonal sum, independent of Eigen's reductions.
inline double naive_trace(const Eigen::MatrixXd& m) {
    double s = 0;
    for (long i = 0; i < m.rows(); ++i)
        s += m(i, i);
    return s;
}

/// Sum of singular values via eigenvalues of A^T A (square roots).
inline double nuclear_norm_oracle(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
    double s = 0;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
    return s;
}

struct BruteExtremum {
    long row, col;
    double magnitude;
};

/// Exhaustive scan for strict local maxima/minima of |v| over interior cells.
inline std::vector<BruteExtremum> brute_extrema(const Eigen::MatrixXd& v) {
    std::vector<BruteExtremum> out;
    for (long r = 1; r + 1 < v.rows(); ++r)
        for (long c = 1; c + 1 < v.cols(); ++c) {
            int greater = 0, smaller = 0;
            for (long dr = -1; dr <= 1; ++dr)
                for (long dc = -1; dc <= 1; ++dc) {
                    if (!dr && !dc)
                        continue;
                    if (std::abs(v(r, c)) > std::abs(v(r + dr, c + dc)))
                        ++greater;
                    if (std::abs(v(r, c)) < std::abs(v(r + dr, c + dc)))
                        ++smaller;
                }
            if (greater == 8 || smaller == 8)
                out.push_back({r + 1, c + 1, std::abs(v(r, c))});
        }
    return out;
}

/// Closed-form slope of y on x after removing the affine trend in (row, col)
/// from both, for a k x k window pair (Frisch-Waugh-Lovell).
inline double height_slope_oracle(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const long n = x.size();
    Eigen::MatrixXd basis(n, 3);
    Eigen::VectorXd xv(n), yv(n);
    long p = 0;
    for (long r = 0; r < x.rows(); ++r)
        for (long c = 0; c < x.cols(); ++c, ++p) {
            basis.row(p) << 1.0, double(r), double(c);
            xv(p) = x(r, c);
            yv(p) = y(r, c);
        }
    const Eigen::MatrixXd proj = basis * (basis.transpose() * basis).inverse() * basis.transpose();
    const Eigen::VectorXd xr = xv - proj * xv;
    const Eigen::VectorXd yr = yv - proj * yv;
    return xr.dot(yr) / xr.dot(xr);
}

} // namespace testing
