#pragma once

#include "eigensurf/eigensurface.hpp"
#include "eigensurf/preprocess.hpp"
#include "eigensurf/surface_calculus.hpp"
#include "eigensurf/worker_pool.hpp"

#include "json.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace eigensurf {

struct PipelineConfig {
    long n_target = 100;
    std::vector<long> scale_schedule{40, 20, 10, 5};
    SpectralMode mode = SpectralMode::eigen_sum;
    DerivativeAxis axis = DerivativeAxis::mixed;
    std::size_t top_k = 10;
    bool normalize = true;

    /// Throws InputError unless the schedule is strictly decreasing, every k >= 2,
    /// and every level leaves at least a 3x3 surface for an m x n_target pair.
    void validate(long m) const;
};

/// The seven comparison surfaces of one scale, in report order.
struct ComparisonSurfaces {
    Surface dist_eigen;
    Surface dist_first;
    Surface dist_second;
    Surface freedist_eigen;
    Surface freedist_first;
    Surface freedist_second;
    Surface jacobian;

    std::array<const Surface*, 7> all() const {
        return {&dist_eigen,     &dist_first,      &dist_second, &freedist_eigen,
                &freedist_first, &freedist_second, &jacobian};
    }
};

struct ScaleComparison {
    long k = 0;
    SurfaceBundle control;
    SurfaceBundle deformed;
    ComparisonSurfaces seven;
    Surface delta; ///< |D2_control - D2_deformed|
};

ScaleComparison compare_at_scale(const Eigen::MatrixXd& control, const Eigen::MatrixXd& deformed,
                                 long k, const PipelineConfig& config, WorkerPool* pool = nullptr);

inline ScaleComparison compare_at_scale(const AlignedPair& pair, long k,
                                        const PipelineConfig& config,
                                        WorkerPool* pool = nullptr) {
    return compare_at_scale(pair.control.values(), pair.deformed.values(), k, config, pool);
}

struct DrillStep {
    long scale_k = 0;
    GridPoint parent_origin;         ///< global origin of the analysed sub-matrix
    std::array<long, 2> sub_window_dims{0, 0};
    Extremum chosen;                 ///< in the sub-matrix's Eigensurface frame
    GridPoint global_origin_next;    ///< origin of the next scale_k x scale_k window
};

struct Candidate {
    std::string row_id;
    long global_row = 0;
    std::array<long, 2> global_col_range{0, 0};
    double score = 0;
    bool early_termination = false;
};

struct DrillResult {
    Extremum seed;
    std::vector<DrillStep> steps;
    std::vector<Candidate> candidates;
    bool early_termination = false;
};

/// Coarse-to-fine recursion from a seed extremum of the top-scale delta.
DrillResult drill(const AlignedPair& pair, const Extremum& seed, const PipelineConfig& config,
                  WorkerPool* pool = nullptr);

struct ComparisonReport {
    PipelineConfig config;
    std::string control_source;
    std::string deformed_source;
    std::array<long, 2> input_dims{0, 0};
    std::array<long, 2> analysed_dims{0, 0};
    ScaleComparison top;
    std::vector<Extremum> extrema;
    std::vector<DrillResult> drills;
    std::vector<Candidate> candidates;
};

/// Steps 2 onward on already loaded matrices: interpolate, sort/align, coarse
/// pass, extrema, drill-down, candidate reduction.
ComparisonReport compare_matrices(const ExpressionMatrix& control, const ExpressionMatrix& deformed,
                                  const PipelineConfig& config, WorkerPool* pool = nullptr);

/// Full run from files. Errors carry the failing stage as a "[stage]" prefix.
ComparisonReport run_pipeline(const std::filesystem::path& control_path,
                              const std::filesystem::path& deformed_path,
                              const PipelineConfig& config, WorkerPool* pool = nullptr);

/// File name -> surface for the top-scale outputs, in a fixed order.
std::vector<std::pair<std::string, const Surface*>> surface_files(const ScaleComparison& scale);

nlohmann::json config_to_json(const PipelineConfig& config);
nlohmann::json report_to_json(const ComparisonReport& report);

/// Writes report.json plus every top-scale surface CSV into out_dir.
void write_outputs(const ComparisonReport& report, const std::filesystem::path& out_dir);

} // namespace eigensurf
