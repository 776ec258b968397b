#include "doctest.h"

#include "eigensurf/matrix_io.hpp"
#include "eigensurf/multires.hpp"
#include "eigensurf/synth.hpp"
#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <set>

using namespace eigensurf;

namespace {

ExpressionMatrix random_expression(std::mt19937_64& rng, long m, long n) {
    return ExpressionMatrix(synth::row_labels(m), synth::column_labels(n),
                            testing::random_matrix(rng, m, n, 0.0, 5.0));
}

long planted_hits(const ComparisonReport& report, const synth::PlantedPair& p) {
    std::set<std::string> truth;
    for (long r : p.rows)
        truth.insert(p.control.row_ids()[static_cast<std::size_t>(r - 1)]);
    long hits = 0;
    for (const auto& c : report.candidates)
        hits += truth.count(c.row_id) ? 1 : 0;
    return hits;
}

} // namespace

TEST_SUITE("multires") {

TEST_CASE("config validation") {
    PipelineConfig c;
    CHECK_NOTHROW(c.validate(200));
    CHECK_THROWS_AS(c.validate(41), InputError); // coarse surface 2 rows
    c.scale_schedule = {20, 20, 5};
    CHECK_THROWS_AS(c.validate(200), InputError);
    c.scale_schedule = {20, 10, 1};
    CHECK_THROWS_AS(c.validate(200), InputError);
    c.scale_schedule = {20, 19};
    CHECK_THROWS_AS(c.validate(200), InputError);
    c.scale_schedule = {};
    CHECK_THROWS_AS(c.validate(200), InputError);
    c.scale_schedule = {120, 10};
    CHECK_THROWS_AS(c.validate(200), InputError); // larger than n_target
    c = PipelineConfig{};
    c.top_k = 0;
    CHECK_THROWS_AS(c.validate(200), InputError);
}

TEST_CASE("compare_at_scale on identical inputs") {
    std::mt19937_64 rng(3);
    const auto x = testing::random_matrix(rng, 30, 30);
    PipelineConfig config;
    auto s = compare_at_scale(x, x, 10, config);
    CHECK(s.k == 10);
    for (const Surface* surf : s.seven.all())
        CHECK(surf->rows() == 21);
    CHECK(s.delta.values().cwiseAbs().maxCoeff() == 0.0);
    for (const Surface* surf :
         {&s.seven.dist_eigen, &s.seven.dist_first, &s.seven.freedist_eigen,
          &s.seven.freedist_first, &s.seven.freedist_second})
        CHECK(surf->values().cwiseAbs().maxCoeff() == 0.0);
    CHECK((s.seven.jacobian.values().array() - 3.0).abs().maxCoeff() < 1e-9);
    CHECK(surface_files(s).size() == 13);
    CHECK(surface_files(s).front().first == "E_control_k10.csv");
}

TEST_CASE("identical inputs give no candidates") {
    std::mt19937_64 rng(4);
    auto x = random_expression(rng, 60, 60);
    PipelineConfig config;
    config.n_target = 60;
    config.scale_schedule = {20, 10, 5};
    auto report = compare_matrices(x, x, config);
    CHECK(report.extrema.empty());
    CHECK(report.drills.empty());
    CHECK(report.candidates.empty());
    CHECK(report.top.delta.values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a scaled copy has zero delta; a mirrored ridge does not") {
    PipelineConfig config;
    auto a = synth::diagonal(100, 100);
    auto b = synth::diagonal(100, 100, 2.0);
    auto report = compare_matrices(a, b, config);
    CHECK(report.top.delta.values().cwiseAbs().maxCoeff() <= 1e-9);

    auto d = synth::anti_diagonal(100, 100);
    auto s = compare_at_scale(a.values(), d.values(), 40, config);
    CHECK(s.delta.values().cwiseAbs().maxCoeff() > 0.1);
}

TEST_CASE("planted block is recovered") {
    auto p = synth::planted();
    PipelineConfig config;
    auto report = compare_matrices(p.control, p.deformed, config);
    CHECK(planted_hits(report, p) >= 4);
    REQUIRE_FALSE(report.drills.empty());
    for (const auto& d : report.drills)
        if (!d.early_termination)
            CHECK(d.steps.size() == 4);
}

TEST_CASE("drill coordinates stay inside the analysed matrix") {
    auto p = synth::planted();
    PipelineConfig config;
    auto report = compare_matrices(p.control, p.deformed, config);
    const long m = report.analysed_dims[0];
    const long n = report.analysed_dims[1];
    for (const auto& d : report.drills) {
        REQUIRE_FALSE(d.steps.empty());
        CHECK(d.steps.front().scale_k == 40);
        CHECK(d.steps.front().chosen.position == d.seed.position);
        for (std::size_t i = 0; i < d.steps.size(); ++i) {
            const auto& s = d.steps[i];
            CHECK(s.scale_k == config.scale_schedule[i]);
            CHECK(s.global_origin_next.row >= 1);
            CHECK(s.global_origin_next.col >= 1);
            CHECK(s.global_origin_next.row + s.scale_k - 1 <= m);
            CHECK(s.global_origin_next.col + s.scale_k - 1 <= n);
            if (i > 0) {
                CHECK(s.parent_origin == d.steps[i - 1].global_origin_next);
                CHECK(s.sub_window_dims[0] == config.scale_schedule[i - 1]);
            }
        }
        for (const auto& c : d.candidates) {
            CHECK(c.global_row >= 1);
            CHECK(c.global_row <= m);
            CHECK(c.global_col_range[0] >= 1);
            CHECK(c.global_col_range[1] <= n);
            CHECK(c.early_termination == d.early_termination);
        }
        if (!d.early_termination) {
            REQUIRE(d.candidates.size() == 5);
            // Compose offsets from the trace: each level adds the chosen extremum's frame position.
            GridPoint g{d.seed.position};
            for (std::size_t i = 1; i < d.steps.size(); ++i) {
                const auto& s = d.steps[i];
                g = {std::clamp(s.parent_origin.row + s.chosen.position.row - 1, 1L, m - s.scale_k + 1),
                     std::clamp(s.parent_origin.col + s.chosen.position.col - 1, 1L, n - s.scale_k + 1)};
            }
            for (std::size_t i = 0; i < 5; ++i) {
                CHECK(d.candidates[i].global_row == g.row + long(i));
                CHECK(d.candidates[i].global_col_range[0] == g.col);
                CHECK(d.candidates[i].global_col_range[1] == g.col + 4);
            }
        }
        for (std::size_t i = 1; i < d.steps.size(); ++i)
            CHECK(d.steps[i].sub_window_dims[0] < d.steps[i - 1].sub_window_dims[0]);
    }
    // Reduced list: unique ids, sorted by score.
    std::set<std::string> ids;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        CHECK(ids.insert(report.candidates[i].row_id).second);
        if (i > 0)
            CHECK(report.candidates[i - 1].score >= report.candidates[i].score);
    }
}

TEST_CASE("drill rejects seeds outside the coarse surface") {
    auto a = synth::diagonal(60, 60);
    auto pair = sort_and_align(a, a);
    PipelineConfig config;
    config.scale_schedule = {20, 10, 5};
    Extremum bad{{42, 1}, 1.0, Extremum::Kind::max};
    CHECK_THROWS_AS(drill(pair, bad, config), InputError);
}

TEST_CASE("row order of the inputs does not change the candidates") {
    auto p = synth::planted();
    PipelineConfig config;
    auto base = compare_matrices(p.control, p.deformed, config);

    std::vector<std::size_t> order(static_cast<std::size_t>(p.deformed.rows()));
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(17);
    std::shuffle(order.begin(), order.end(), rng);
    auto shuffled_deformed = compare_matrices(p.control, p.deformed.reordered(order), config);
    auto shuffled_both =
        compare_matrices(p.control.reordered(order), p.deformed.reordered(order), config);

    auto ids = [](const ComparisonReport& r) {
        std::vector<std::string> out;
        for (const auto& c : r.candidates)
            out.push_back(c.row_id);
        return out;
    };
    CHECK(ids(shuffled_deformed) == ids(base));
    CHECK(ids(shuffled_both) == ids(base));
}

TEST_CASE("reports do not depend on the thread count") {
    auto p = synth::planted();
    PipelineConfig config;
    WorkerPool one(1), many(8);
    auto a = report_to_json(compare_matrices(p.control, p.deformed, config, &one)).dump();
    auto b = report_to_json(compare_matrices(p.control, p.deformed, config, &many)).dump();
    CHECK(a == b);
}

TEST_CASE("stage prefixes on errors") {
    auto a = synth::diagonal(60, 60);
    auto short_matrix = synth::diagonal(41, 60); // 2-row coarse surface at k = 40
    PipelineConfig config;
    CHECK_THROWS_WITH_AS(compare_matrices(short_matrix, short_matrix, config),
                         doctest::Contains("[config]"), InputError);
    config.scale_schedule = {20, 10, 5};
    config.n_target = 60;
    auto other = synth::diagonal(59, 60);
    CHECK_THROWS_WITH_AS(compare_matrices(a, other, config), doctest::Contains("[align]"),
                         InputError);
    CHECK_THROWS_WITH_AS(run_pipeline("/nonexistent/a.csv", "/nonexistent/b.csv", config),
                         doctest::Contains("[load]"), InputError);
}

TEST_CASE("write_outputs writes every surface and the report") {
    testing::TempDir dir;
    auto p = synth::planted(60, 40);
    PipelineConfig config;
    config.n_target = 40;
    config.scale_schedule = {20, 10, 5};
    auto report = compare_matrices(p.control, p.deformed, config);
    write_outputs(report, dir.path());
    for (const auto& [name, surface] : surface_files(report.top)) {
        REQUIRE(std::filesystem::exists(dir / name));
        CHECK(read_surface(dir / name).values() == surface->values());
    }
    CHECK(std::filesystem::exists(dir / "report.json"));
}

} // TEST_SUITE
