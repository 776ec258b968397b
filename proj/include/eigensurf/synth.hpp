#pragma once

#include "eigensurf/types.hpp"

#include <string_view>
#include <vector>

namespace eigensurf::synth {

/// All ones with 2 on the main diagonal.
ExpressionMatrix diagonal(long m, long n, double scale = 1.0);

/// All ones with 2 on the anti-diagonal, D(i, n - i + 1) = 2.
ExpressionMatrix anti_diagonal(long m, long n);

struct PlantedPair {
    ExpressionMatrix control;
    ExpressionMatrix deformed;
    std::vector<long> rows;  ///< 1-based perturbed rows
    long col_lo = 0;         ///< 1-based inclusive column range
    long col_hi = 0;
    double shift = 0;
};

/// Smooth row-wise sinusoid base; the deformed copy has `shift` added on a
/// block of rows and columns. Defaults reproduce the 200 x 100 fixture
/// (rows 90-94, columns 40-60, +5), scaled proportionally for other dims.
PlantedPair planted(long m = 200, long n = 100);

std::vector<std::string> row_labels(long m);
std::vector<std::string> column_labels(long n);

} // namespace eigensurf::synth
