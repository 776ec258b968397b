#include "eigensurf/multires.hpp"

#include "eigensurf/deformation.hpp"
#include "eigensurf/matrix_io.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace eigensurf {

namespace fs = std::filesystem;
using nlohmann::json;

void PipelineConfig::validate(long m) const {
    if (n_target < 3)
        throw InputError("n_target must be at least 3");
    if (scale_schedule.empty())
        throw InputError("scale schedule is empty");
    if (top_k == 0)
        throw InputError("top_k must be positive");
    for (std::size_t i = 0; i < scale_schedule.size(); ++i) {
        const long k = scale_schedule[i];
        if (k < 2)
            throw InputError("scale " + std::to_string(k) + " is below the minimum window of 2");
        if (i > 0 && k >= scale_schedule[i - 1])
            throw InputError("scale schedule must be strictly decreasing");
        if (i > 0 && scale_schedule[i - 1] - k + 1 < 3)
            throw InputError("scales " + std::to_string(scale_schedule[i - 1]) + " -> " +
                             std::to_string(k) + " leave a surface smaller than 3x3");
    }
    const long k0 = scale_schedule.front();
    if (k0 > std::min(m, n_target))
        throw InputError("first scale " + std::to_string(k0) + " exceeds min(m, n_target) = " +
                         std::to_string(std::min(m, n_target)));
    if (m - k0 + 1 < 3 || n_target - k0 + 1 < 3)
        throw InputError("first scale " + std::to_string(k0) +
                         " leaves a coarse surface smaller than 3x3");
}

ScaleComparison compare_at_scale(const Eigen::MatrixXd& control, const Eigen::MatrixXd& deformed,
                                 long k, const PipelineConfig& config, WorkerPool* pool) {
    if (control.rows() != deformed.rows() || control.cols() != deformed.cols())
        throw InputError("compare: control and deformed shapes differ");

    auto eigen_control = build_eigensurface(control, k, config.mode, pool);
    auto eigen_deformed = build_eigensurface(deformed, k, config.mode, pool);
    if (config.normalize) {
        eigen_control = normalize_surface(eigen_control);
        eigen_deformed = normalize_surface(eigen_deformed);
    }
    auto bc = derivative_surfaces(eigen_control, config.axis);
    auto bd = derivative_surfaces(eigen_deformed, config.axis);

    // The deformation gradient compares the data surfaces themselves.
    const Surface raw_control(control);
    const Surface raw_deformed(deformed);

    ComparisonSurfaces seven{
        dist(bc.eigen, bd.eigen),         dist(bc.first, bd.first),
        dist(bc.second, bd.second),       freedist(bc.eigen, bd.eigen),
        freedist(bc.first, bd.first),     freedist(bc.second, bd.second),
        jacobian_surface(raw_control, raw_deformed, k, pool),
    };
    Surface delta = seven.dist_second;
    return {k, std::move(bc), std::move(bd), std::move(seven), std::move(delta)};
}

namespace {

GridPoint clamp_origin(GridPoint p, long size, long rows, long cols) {
    return {std::clamp(p.row, 1L, rows - size + 1), std::clamp(p.col, 1L, cols - size + 1)};
}

std::vector<Candidate> window_candidates(const AlignedPair& pair, GridPoint origin, long size,
                                         double score, bool early) {
    std::vector<Candidate> out;
    for (long r = origin.row; r < origin.row + size; ++r)
        out.push_back({pair.control.row_ids()[static_cast<std::size_t>(r - 1)],
                       r,
                       {origin.col, origin.col + size - 1},
                       score,
                       early});
    return out;
}

} // namespace

DrillResult drill(const AlignedPair& pair, const Extremum& seed, const PipelineConfig& config,
                  WorkerPool* pool) {
    const long m = pair.control.rows();
    const long n = pair.control.cols();
    const auto& schedule = config.scale_schedule;
    const long k0 = schedule.front();
    if (seed.position.row < 1 || seed.position.col < 1 || seed.position.row > m - k0 + 1 ||
        seed.position.col > n - k0 + 1)
        throw InputError("drill seed (" + std::to_string(seed.position.row) + "," +
                         std::to_string(seed.position.col) + ") is outside the top-scale surface");

    DrillResult result;
    result.seed = seed;
    GridPoint origin{1, 1};
    GridPoint next = clamp_origin({seed.position.row, seed.position.col}, k0, m, n);
    result.steps.push_back({k0, origin, {m, n}, seed, next});

    for (std::size_t level = 1; level < schedule.size(); ++level) {
        const long outer = schedule[level - 1];
        const long inner = schedule[level];
        origin = next;
        const auto sub_control = pair.control.block(origin, outer, outer);
        const auto sub_deformed = pair.deformed.block(origin, outer, outer);
        auto cmp = compare_at_scale(sub_control, sub_deformed, inner, config, pool);
        auto extrema = local_extrema(cmp.delta, 1);
        if (extrema.empty()) {
            result.early_termination = true;
            result.candidates = window_candidates(pair, origin, outer,
                                                  result.steps.back().chosen.magnitude(), true);
            return result;
        }
        const Extremum& best = extrema.front();
        next = clamp_origin({origin.row + best.position.row - 1, origin.col + best.position.col - 1},
                            inner, m, n);
        result.steps.push_back({inner, origin, {outer, outer}, best, next});
    }

    result.candidates = window_candidates(pair, next, schedule.back(),
                                          result.steps.back().chosen.magnitude(), false);
    return result;
}

ComparisonReport compare_matrices(const ExpressionMatrix& control, const ExpressionMatrix& deformed,
                                  const PipelineConfig& config, WorkerPool* pool) {
    auto stage = [](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const InputError& e) {
            throw InputError(std::string("[") + name + "] " + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError(std::string("[") + name + "] " + e.what());
        }
    };

    stage("config", [&] {
        config.validate(control.rows());
        if (config.n_target < control.cols())
            throw InputError("n_target " + std::to_string(config.n_target) +
                             " is smaller than the input column count " +
                             std::to_string(control.cols()));
        return 0;
    });

    auto interpolated_control =
        stage("interpolate", [&] { return interpolate_rows(control, config.n_target, pool); });
    auto interpolated_deformed =
        stage("interpolate", [&] { return interpolate_rows(deformed, config.n_target, pool); });
    auto pair = stage("align", [&] {
        return sort_and_align(interpolated_control, interpolated_deformed,
                              resampled_spacing(control.cols(), config.n_target));
    });

    const long k0 = config.scale_schedule.front();
    auto top = stage("coarse", [&] { return compare_at_scale(pair, k0, config, pool); });
    auto extrema = stage("extrema", [&] { return local_extrema(top.delta, config.top_k); });

    std::vector<std::optional<DrillResult>> slots(extrema.size());
    stage("drill", [&] {
        parallel_for(pool, extrema.size(),
                     [&](std::size_t i) { slots[i] = drill(pair, extrema[i], config, pool); });
        return 0;
    });
    std::vector<DrillResult> drills;
    drills.reserve(slots.size());
    for (auto& s : slots)
        drills.push_back(std::move(*s));

    // Deduplicate by row id keeping the best score; earlier seeds win ties.
    std::map<std::string, Candidate> best;
    for (const auto& d : drills)
        for (const auto& c : d.candidates) {
            auto [it, inserted] = best.emplace(c.row_id, c);
            if (!inserted && c.score > it->second.score)
                it->second = c;
        }
    std::vector<Candidate> candidates;
    candidates.reserve(best.size());
    for (auto& [id, c] : best)
        candidates.push_back(std::move(c));
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.global_row < b.global_row;
    });

    return ComparisonReport{
        .config = config,
        .control_source = {},
        .deformed_source = {},
        .input_dims = {control.rows(), control.cols()},
        .analysed_dims = {pair.control.rows(), pair.control.cols()},
        .top = std::move(top),
        .extrema = std::move(extrema),
        .drills = std::move(drills),
        .candidates = std::move(candidates),
    };
}

ComparisonReport run_pipeline(const fs::path& control_path, const fs::path& deformed_path,
                              const PipelineConfig& config, WorkerPool* pool) {
    auto load = [](const fs::path& p) {
        try {
            return load_matrix(p);
        } catch (const InputError& e) {
            throw InputError(std::string("[load] ") + e.what());
        }
    };
    auto control = load(control_path);
    auto deformed = load(deformed_path);
    auto report = compare_matrices(control, deformed, config, pool);
    report.control_source = control_path.string();
    report.deformed_source = deformed_path.string();
    return report;
}

std::vector<std::pair<std::string, const Surface*>> surface_files(const ScaleComparison& scale) {
    const std::string suffix = "_k" + std::to_string(scale.k) + ".csv";
    return {
        {"E_control" + suffix, &scale.control.eigen},
        {"E_deformed" + suffix, &scale.deformed.eigen},
        {"D1_control" + suffix, &scale.control.first},
        {"D1_deformed" + suffix, &scale.deformed.first},
        {"D2_control" + suffix, &scale.control.second},
        {"D2_deformed" + suffix, &scale.deformed.second},
        {"dist_E" + suffix, &scale.seven.dist_eigen},
        {"dist_D1" + suffix, &scale.seven.dist_first},
        {"dist_D2" + suffix, &scale.seven.dist_second},
        {"freedist_E" + suffix, &scale.seven.freedist_eigen},
        {"freedist_D1" + suffix, &scale.seven.freedist_first},
        {"freedist_D2" + suffix, &scale.seven.freedist_second},
        {"jacobian" + suffix, &scale.seven.jacobian},
    };
}

namespace {

json point_json(GridPoint p) { return json::array({p.row, p.col}); }

json extremum_json(const Extremum& e) {
    return {{"position", point_json(e.position)},
            {"value", e.value},
            {"kind", std::string(to_string(e.kind))}};
}

json candidate_json(const Candidate& c) {
    return {{"row_id", c.row_id},
            {"global_row", c.global_row},
            {"global_col_range", json::array({c.global_col_range[0], c.global_col_range[1]})},
            {"score", c.score},
            {"early_termination", c.early_termination}};
}

} // namespace

json config_to_json(const PipelineConfig& config) {
    return {{"n_target", config.n_target},
            {"k_schedule", config.scale_schedule},
            {"mode", std::string(to_string(config.mode))},
            {"axis", std::string(to_string(config.axis))},
            {"top_k", config.top_k},
            {"normalize", config.normalize}};
}

json report_to_json(const ComparisonReport& report) {
    json surfaces = json::object();
    for (const auto& [name, surface] : surface_files(report.top))
        surfaces[name.substr(0, name.size() - 4)] = name;

    json extrema = json::array();
    for (const auto& e : report.extrema)
        extrema.push_back(extremum_json(e));

    json drills = json::array();
    for (const auto& d : report.drills) {
        json steps = json::array();
        for (const auto& s : d.steps)
            steps.push_back({{"scale_k", s.scale_k},
                             {"parent_origin", point_json(s.parent_origin)},
                             {"sub_window_dims",
                              json::array({s.sub_window_dims[0], s.sub_window_dims[1]})},
                             {"chosen_extremum", extremum_json(s.chosen)},
                             {"global_origin_next", point_json(s.global_origin_next)}});
        json cands = json::array();
        for (const auto& c : d.candidates)
            cands.push_back(candidate_json(c));
        drills.push_back({{"seed", extremum_json(d.seed)},
                          {"steps", std::move(steps)},
                          {"early_termination", d.early_termination},
                          {"candidates", std::move(cands)}});
    }

    json candidates = json::array();
    for (const auto& c : report.candidates)
        candidates.push_back(candidate_json(c));

    const auto& jac = report.top.seven.jacobian.values();
    std::map<std::string, long> classes;
    for (long i = 0; i < jac.size(); ++i)
        ++classes[std::string(to_string(classify_height_coupling(jac.data()[i] - 2.0)))];

    return {
        {"config", config_to_json(report.config)},
        {"inputs",
         {{"control", report.control_source},
          {"deformed", report.deformed_source},
          {"dims", json::array({report.input_dims[0], report.input_dims[1]})},
          {"analysed_dims", json::array({report.analysed_dims[0], report.analysed_dims[1]})}}},
        {"scales", json::array({{{"k", report.top.k}, {"surfaces", std::move(surfaces)}}})},
        {"deformation",
         {{"method", "per-window least-squares affine fit x = J X + b over (row, col, height) "
                     "points; surface cell = trace(J); height coupling c = trace - 2"},
          {"mean_trace", jac.mean()},
          {"class_counts", classes}}},
        {"extrema", std::move(extrema)},
        {"drills", std::move(drills)},
        {"candidates", std::move(candidates)},
    };
}

void write_outputs(const ComparisonReport& report, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw InputError("cannot create output directory '" + out_dir.string() +
                         "': " + ec.message());
    for (const auto& [name, surface] : surface_files(report.top))
        write_surface(*surface, out_dir / name);
    write_report(report, out_dir / "report.json");
}

} // namespace eigensurf
