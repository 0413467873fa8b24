#include "objcount/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "objcount/counting.hpp"
#include "objcount/imageio.hpp"
#include "objcount/synthetic.hpp"

namespace objcount::cli {

namespace {

const std::map<std::string, Direction> kDirections{
    {"horizontal", Direction::horizontal}, {"vertical", Direction::vertical}};
const std::map<std::string, SegmentationMethod> kMethods{
    {"otsu", SegmentationMethod::otsu}, {"region-growing", SegmentationMethod::region_growing}};
const std::map<std::string, Polarity> kPolarities{
    {"bright", Polarity::bright_objects}, {"dark", Polarity::dark_objects}};
const std::map<std::string, Placement> kPlacements{
    {"full-inside", Placement::full_inside}, {"anywhere", Placement::anywhere}};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_pipeline_options(CLI::App* cmd, PipelineConfig& cfg) {
    cmd->add_option("--method", cfg.segmentation.method, "Segmentation method")
        ->transform(CLI::CheckedTransformer(kMethods, CLI::ignore_case));
    cmd->add_option("--polarity", cfg.segmentation.polarity, "Whether objects are brighter or darker than background")
        ->transform(CLI::CheckedTransformer(kPolarities, CLI::ignore_case));
    cmd->add_option("--rg-tolerance", cfg.segmentation.rg_tolerance, "Region growing luminance tolerance");
    cmd->add_option("--rg-seed-threshold", cfg.segmentation.rg_seed_threshold, "Region growing seed luminance");
    cmd->add_option("--median-window", cfg.median_window, "Median filter window (odd)");
    cmd->add_option("--smooth-window", cfg.smooth_window, "Histogram mean filter length (odd)");
    cmd->add_option("--direction", cfg.direction, "Scan direction for runs")
        ->transform(CLI::CheckedTransformer(kDirections, CLI::ignore_case));
}

std::pair<std::size_t, std::size_t> parse_size(const std::string& text) {
    std::size_t w = 0;
    std::size_t h = 0;
    char x = 0;
    std::istringstream in(text);
    if (!(in >> w >> x >> h) || (x != 'x' && x != 'X') || !in.eof()) {
        throw ConfigError("--size must look like WIDTHxHEIGHT, got '" + text + "'");
    }
    return {w, h};
}

std::pair<int, int> parse_range(const std::string& text) {
    int lo = 0;
    int hi = 0;
    char sep = 0;
    std::istringstream in(text);
    if (!(in >> lo >> sep >> hi) || (sep != '-' && sep != ':') || !in.eof()) {
        throw ConfigError("--diameter-range must look like MIN-MAX, got '" + text + "'");
    }
    return {lo, hi};
}

// key=value lines become "--key=value" tokens placed before the user's own
// flags; with TakeLast the command line wins.
std::vector<std::string> read_config_tokens(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw Error(ErrorCode::io_error, "cannot open config file '" + path + "'");
    }
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.rfind("--", 0) == 0) {
            key = key.substr(2);
        }
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::optional<std::string> config;
    std::vector<std::string> rest;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw ConfigError("--config requires a file argument");
            }
            config = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (!config || rest.empty()) {
        return rest;
    }
    // Config options belong to the subcommand, which must come first.
    std::vector<std::string> out{rest.front()};
    for (auto& t : read_config_tokens(*config)) {
        out.push_back(std::move(t));
    }
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::io_error:
        case ErrorCode::malformed_header:
        case ErrorCode::unsupported_bit_depth:
        case ErrorCode::unsupported_format:
            return kIoError;
        case ErrorCode::invalid_parameter:
        case ErrorCode::impossible_scene:
            return kConfigError;
        case ErrorCode::degenerate_histogram:
        case ErrorCode::empty_histogram:
            return kPipelineError;
    }
    return kPipelineError;
}

BinaryMask enhanced_mask(const GrayImage& img, const PipelineConfig& cfg) {
    auto seg = segment(img, cfg.segmentation);
    return median_filter(seg.mask, cfg.median_window);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Statistical object counting from run-length histograms", "objcount"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    PipelineConfig count_cfg;
    std::string count_path;
    auto* count_cmd = app.add_subcommand("count", "Count objects in an image; prints JSON");
    count_cmd->add_option("image", count_path, "PGM or PNG image")->required();
    count_cmd->add_option("--alpha", count_cfg.alpha, "Correction coefficient in (0,1)");
    add_pipeline_options(count_cmd, count_cfg);

    PipelineConfig hist_cfg;
    std::string hist_path;
    bool hist_smoothed = false;
    auto* hist_cmd = app.add_subcommand("histogram", "Print the run-length histogram as CSV");
    hist_cmd->add_option("image", hist_path, "PGM or PNG image")->required();
    auto* raw_flag = hist_cmd->add_flag("--raw", "Raw run counts (default)");
    auto* smoothed_flag = hist_cmd->add_flag("--smoothed", hist_smoothed, "Mean-filtered histogram");
    raw_flag->excludes(smoothed_flag);
    add_pipeline_options(hist_cmd, hist_cfg);

    ExperimentConfig bench_cfg;
    bench_cfg.densities = {10, 50, 100, 150};
    bench_cfg.scene.seed = 1;
    int bench_diameter = 100;
    std::string bench_size = "1000x1000";
    auto* bench_cmd = app.add_subcommand("bench", "Diameter-estimate errors per disc density; prints CSV");
    bench_cmd->add_option("--densities", bench_cfg.densities, "Comma-separated disc counts")->delimiter(',');
    bench_cmd->add_option("--trials", bench_cfg.trials, "Scenes per density");
    bench_cmd->add_option("--seed", bench_cfg.scene.seed, "Base RNG seed");
    bench_cmd->add_option("--diameter", bench_diameter, "Disc diameter in pixels");
    bench_cmd->add_option("--size", bench_size, "Scene size WIDTHxHEIGHT");
    bench_cmd->add_option("--alpha", bench_cfg.estimator.alpha, "Correction coefficient in (0,1)");
    bench_cmd->add_option("--smooth-window", bench_cfg.estimator.smooth_window, "Histogram mean filter length");
    bench_cmd->add_option("--direction", bench_cfg.estimator.direction, "Scan direction for runs")
        ->transform(CLI::CheckedTransformer(kDirections, CLI::ignore_case));
    bench_cmd->add_option("--tolerance", bench_cfg.tolerance, "Allowed |estimate - diameter| in pixels");
    bench_cmd->add_option("--placement", bench_cfg.scene.placement, "Disc placement")
        ->transform(CLI::CheckedTransformer(kPlacements, CLI::ignore_case));

    SceneSpec gen_spec;
    int gen_diameter = 100;
    std::string gen_range;
    std::string gen_size = "1000x1000";
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "Write a random disc scene as a PGM mask");
    gen_cmd->add_option("--n", gen_spec.n_discs, "Number of discs");
    auto* gen_d = gen_cmd->add_option("--diameter", gen_diameter, "Disc diameter in pixels");
    auto* gen_r = gen_cmd->add_option("--diameter-range", gen_range, "Uniform integer diameters MIN-MAX");
    gen_d->excludes(gen_r);
    gen_cmd->add_option("--size", gen_size, "Scene size WIDTHxHEIGHT");
    gen_cmd->add_option("--seed", gen_spec.seed, "RNG seed");
    gen_cmd->add_option("--placement", gen_spec.placement, "Disc placement")
        ->transform(CLI::CheckedTransformer(kPlacements, CLI::ignore_case));
    gen_cmd->add_option("--out", gen_out, "Output PGM path")->required();

    try {
        std::vector<std::string> argv = expand_config(args);
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);

        if (*count_cmd) {
            const GrayImage img = load_gray(count_path);
            const CountResult result = run_pipeline(img, count_cfg);
            for (const auto& w : result.warnings) {
                err << "warning: " << w << '\n';
            }
            out << to_json(result).dump() << '\n';
        } else if (*hist_cmd) {
            hist_cfg.validate();
            const GrayImage img = load_gray(hist_path);
            const RunHistogram hist = extract_runs(enhanced_mask(img, hist_cfg), hist_cfg.direction);
            if (hist.total_runs() == 0) {
                out << (hist_smoothed ? "length,value\n" : "length,count\n");
                throw PipelineError(Stage::sizing, Error(ErrorCode::empty_histogram, "empty histogram"));
            }
            if (hist_smoothed) {
                write_csv(smooth(hist, hist_cfg.smooth_window), out);
            } else {
                write_csv(hist, out);
            }
        } else if (*bench_cmd) {
            if (bench_cfg.trials == 0) {
                throw ConfigError("--trials must be at least 1");
            }
            std::tie(bench_cfg.scene.width, bench_cfg.scene.height) = parse_size(bench_size);
            bench_cfg.scene.diameter_min = bench_cfg.scene.diameter_max = bench_diameter;
            write_csv(run_density_experiment(bench_cfg), out);
        } else if (*gen_cmd) {
            std::tie(gen_spec.width, gen_spec.height) = parse_size(gen_size);
            if (!gen_range.empty()) {
                std::tie(gen_spec.diameter_min, gen_spec.diameter_max) = parse_range(gen_range);
            } else {
                gen_spec.diameter_min = gen_spec.diameter_max = gen_diameter;
            }
            const SceneTruth truth = generate_scene(gen_spec);
            save_mask(truth.mask, gen_out);
            nlohmann::ordered_json j;
            j["n_discs"] = truth.n_discs();
            j["white_pixels"] = truth.mask.object_count();
            j["occupancy"] = truth.occupancy;
            j["overlap"] = truth.overlap;
            out << j.dump() << '\n';
        }
        return kOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace objcount::cli
