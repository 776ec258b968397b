#include "cli.hpp"

#include "eigensurf/matrix_io.hpp"
#include "eigensurf/multires.hpp"
#include "eigensurf/synth.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace eigensurf::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConfigFlags {
    std::vector<long> schedule{40, 20, 10, 5};
    long n_target = 100;
    std::string mode = "eigen";
    std::string axis = "mixed";
    std::size_t top_k = 10;
    bool no_normalize = false;

    PipelineConfig to_config() const {
        PipelineConfig c;
        c.scale_schedule = schedule;
        c.n_target = n_target;
        c.mode = spectral_mode_from_string(mode);
        c.axis = derivative_axis_from_string(axis);
        c.top_k = top_k;
        c.normalize = !no_normalize;
        return c;
    }
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
    cmd->add_option("--k-schedule", f.schedule, "Window sizes, coarse to fine")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--n-target", f.n_target, "Columns after row interpolation")
        ->capture_default_str();
    cmd->add_option("--mode", f.mode, "Spectral mode")
        ->check(CLI::IsMember({"eigen", "svd"}))
        ->capture_default_str();
    cmd->add_option("--axis", f.axis, "Derivative axis")
        ->check(CLI::IsMember({"row", "col", "mixed"}))
        ->capture_default_str();
    cmd->add_option("--top-k", f.top_k, "Extrema kept at the coarse scale")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--no-normalize", f.no_normalize, "Skip min-max normalization of Eigensurfaces");
}

void add_threads_flag(CLI::App* cmd, unsigned& threads) {
    cmd->add_option("--threads", threads,
                    "Worker threads (default: $EIGENSURF_THREADS or hardware concurrency)")
        ->check(CLI::PositiveNumber);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

void write_json(const json& doc, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot open '" + path.string() + "' for writing");
    out << doc.dump(2) << '\n';
}

std::pair<long, long> parse_dims(const std::string& text) {
    auto x = text.find('x');
    try {
        if (x == std::string::npos)
            throw std::invalid_argument("missing x");
        std::size_t used_m = 0, used_n = 0;
        long m = std::stol(text.substr(0, x), &used_m);
        long n = std::stol(text.substr(x + 1), &used_n);
        if (used_m != x || used_n != text.size() - x - 1 || m < 1 || n < 1)
            throw std::invalid_argument("bad dims");
        return {m, n};
    } catch (const std::logic_error&) {
        throw InputError("dimensions must look like <rows>x<cols>, got '" + text + "'");
    }
}

GridPoint parse_point(const std::string& text) {
    auto comma = text.find(',');
    try {
        if (comma == std::string::npos)
            throw std::invalid_argument("missing comma");
        return {std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1))};
    } catch (const std::logic_error&) {
        throw InputError("seed must look like <row>,<col>, got '" + text + "'");
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiscale Eigensurface comparison of two time-series matrices"};
    app.name("eigensurf");
    app.require_subcommand(1);

    unsigned threads = 0;
    ConfigFlags flags;

    // compare
    std::string control_path, deformed_path, out_dir;
    auto* compare = app.add_subcommand("compare", "Run the full comparison and drill-down");
    compare->add_option("control", control_path, "Control matrix (csv/tsv)")->required();
    compare->add_option("deformed", deformed_path, "Deformed matrix (csv/tsv)")->required();
    compare->add_option("-o,--out", out_dir, "Output directory")->required();
    add_config_flags(compare, flags);
    add_threads_flag(compare, threads);

    // eigensurface
    std::string matrix_path;
    long window = 0;
    bool normalize = false;
    auto* eigen_cmd = app.add_subcommand("eigensurface", "Write the Eigensurface of one matrix");
    eigen_cmd->add_option("matrix", matrix_path, "Matrix (csv/tsv)")->required();
    eigen_cmd->add_option("-k,--window", window, "Window size")->required();
    eigen_cmd->add_option("--mode", flags.mode, "Spectral mode")
        ->check(CLI::IsMember({"eigen", "svd"}));
    eigen_cmd->add_flag("--normalize", normalize, "Min-max normalize the surface");
    eigen_cmd->add_option("-o,--out", out_dir, "Output directory")->required();
    add_threads_flag(eigen_cmd, threads);

    // drill
    std::string seed_text;
    auto* drill_cmd = app.add_subcommand("drill", "Drill down from one coarse-scale seed");
    drill_cmd->add_option("control", control_path, "Control matrix (csv/tsv)")->required();
    drill_cmd->add_option("deformed", deformed_path, "Deformed matrix (csv/tsv)")->required();
    drill_cmd->add_option("--seed", seed_text, "Seed position <row>,<col> in the coarse surface")
        ->required();
    drill_cmd->add_option("-o,--out", out_dir, "Output directory")->required();
    add_config_flags(drill_cmd, flags);
    add_threads_flag(drill_cmd, threads);

    // synth
    std::string fixture, dims_text;
    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic fixture");
    synth_cmd->add_option("fixture", fixture, "diag | antidiag | scaled | planted")
        ->required()
        ->check(CLI::IsMember({"diag", "antidiag", "scaled", "planted"}));
    synth_cmd->add_option("dims", dims_text, "<rows>x<cols>")->required();
    synth_cmd->add_option("-o,--out", out_dir, "Output directory")->required();

    // validate
    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check that a matrix file loads");
    validate_cmd->add_option("path", validate_path, "Matrix (csv/tsv)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<std::string> echoed(argv + 1, argv + argc);
        if (threads == 0)
            threads = WorkerPool::default_threads();

        if (*compare) {
            auto config = flags.to_config();
            WorkerPool pool(threads);
            auto report = run_pipeline(control_path, deformed_path, config, &pool);
            write_outputs(report, out_dir);
            write_json({{"command", "compare"},
                        {"arguments", echoed},
                        {"control", control_path},
                        {"deformed", deformed_path},
                        {"config", config_to_json(config)},
                        {"threads", threads}},
                       fs::path(out_dir) / "config.json");
            out << "wrote " << (fs::path(out_dir) / "report.json").string() << " ("
                << report.candidates.size() << " candidates)\n";
            return 0;
        }

        if (*eigen_cmd) {
            auto matrix = load_matrix(matrix_path);
            WorkerPool pool(threads);
            auto surface = build_eigensurface(matrix.values(), window,
                                              spectral_mode_from_string(flags.mode), &pool);
            if (normalize)
                surface = normalize_surface(surface);
            ensure_dir(out_dir);
            const auto name = "E_k" + std::to_string(window) + ".csv";
            write_surface(surface, fs::path(out_dir) / name);
            write_json({{"command", "eigensurface"},
                        {"arguments", echoed},
                        {"matrix", matrix_path},
                        {"k", window},
                        {"mode", flags.mode},
                        {"normalize", normalize},
                        {"threads", threads}},
                       fs::path(out_dir) / "config.json");
            out << "wrote " << (fs::path(out_dir) / name).string() << '\n';
            return 0;
        }

        if (*drill_cmd) {
            auto config = flags.to_config();
            const auto seed_pos = parse_point(seed_text);
            auto control = load_matrix(control_path);
            auto deformed = load_matrix(deformed_path);
            config.validate(control.rows());
            WorkerPool pool(threads);
            auto pair = sort_and_align(interpolate_rows(control, config.n_target, &pool),
                                       interpolate_rows(deformed, config.n_target, &pool),
                                       resampled_spacing(control.cols(), config.n_target));
            auto top = compare_at_scale(pair, config.scale_schedule.front(), config, &pool);
            const long rows = top.delta.rows();
            const long cols = top.delta.cols();
            if (seed_pos.row < 1 || seed_pos.col < 1 || seed_pos.row > rows || seed_pos.col > cols)
                throw InputError("seed (" + seed_text + ") is outside the " + std::to_string(rows) +
                                 "x" + std::to_string(cols) + " coarse surface");
            Extremum seed{seed_pos, top.delta.at(seed_pos.row, seed_pos.col), Extremum::Kind::max};
            ComparisonReport report{
                .config = config,
                .control_source = control_path,
                .deformed_source = deformed_path,
                .input_dims = {control.rows(), control.cols()},
                .analysed_dims = {pair.control.rows(), pair.control.cols()},
                .top = std::move(top),
                .extrema = {seed},
                .drills = {},
                .candidates = {},
            };
            auto result = drill(pair, seed, config, &pool);
            report.candidates = result.candidates;
            report.drills.push_back(std::move(result));
            ensure_dir(out_dir);
            write_json(report_to_json(report), fs::path(out_dir) / "drill.json");
            write_json({{"command", "drill"},
                        {"arguments", echoed},
                        {"control", control_path},
                        {"deformed", deformed_path},
                        {"seed", json::array({seed_pos.row, seed_pos.col})},
                        {"config", config_to_json(config)},
                        {"threads", threads}},
                       fs::path(out_dir) / "config.json");
            out << "wrote " << (fs::path(out_dir) / "drill.json").string() << '\n';
            return 0;
        }

        if (*synth_cmd) {
            const auto [m, n] = parse_dims(dims_text);
            ensure_dir(out_dir);
            const fs::path dir(out_dir);
            if (fixture == "diag") {
                write_matrix(synth::diagonal(m, n), dir / "diag.csv");
            } else if (fixture == "antidiag") {
                write_matrix(synth::anti_diagonal(m, n), dir / "antidiag.csv");
            } else if (fixture == "scaled") {
                write_matrix(synth::diagonal(m, n, 1.0), dir / "scaled_control.csv");
                write_matrix(synth::diagonal(m, n, 2.0), dir / "scaled_deformed.csv");
            } else {
                auto p = synth::planted(m, n);
                write_matrix(p.control, dir / "planted_control.csv");
                write_matrix(p.deformed, dir / "planted_deformed.csv");
                std::vector<std::string> ids;
                for (long r : p.rows)
                    ids.push_back(p.control.row_ids()[static_cast<std::size_t>(r - 1)]);
                write_json({{"rows", p.rows},
                            {"row_ids", ids},
                            {"col_range", json::array({p.col_lo, p.col_hi})},
                            {"shift", p.shift}},
                           dir / "planted_truth.json");
            }
            write_json({{"command", "synth"}, {"arguments", echoed}}, dir / "config.json");
            out << "wrote " << fixture << " fixture to " << out_dir << '\n';
            return 0;
        }

        if (*validate_cmd) {
            auto m = load_matrix(validate_path);
            out << validate_path << ": ok (" << m.rows() << " rows, " << m.cols() << " columns)\n";
            return 0;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace eigensurf::cli
