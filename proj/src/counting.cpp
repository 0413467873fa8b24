#include "objcount/counting.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <algorithm>

namespace objcount {

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::segmentation: return "stage 1 (segmentation)";
        case Stage::enhancement: return "stage 2 (enhancement)";
        case Stage::sizing: return "stage 3 (size estimation)";
        case Stage::counting: return "stage 4 (counting)";
    }
    return "unknown stage";
}

PipelineError::PipelineError(Stage stage, const Error& cause)
    : Error(cause.code(), std::string(to_string(stage)) + ": " + cause.what()), stage_(stage) {}

void PipelineConfig::validate() const {
    segmentation.validate();
    if (median_window == 0 || median_window % 2 == 0) {
        throw Error(ErrorCode::invalid_parameter, "median window must be odd and >= 1");
    }
    estimator().validate();
}

CountResult count_from_area(std::uint64_t white_pixels, const SizeEstimate& est) {
    if (est.diameter == 0) {
        throw Error(ErrorCode::invalid_parameter, "count_objects: diameter must be positive");
    }
    CountResult result;
    result.white_pixels = white_pixels;
    result.diameter = est.diameter;
    const double radius = static_cast<double>(est.diameter) / 2.0;
    result.count_real = static_cast<double>(white_pixels) / (std::numbers::pi * radius * radius);
    result.count_rounded = static_cast<std::uint64_t>(std::floor(result.count_real + 0.5));
    result.alpha = est.alpha;
    result.x_max = est.x_max;
    result.peak = est.peak;
    return result;
}

CountResult count_objects(const BinaryMask& mask, const SizeEstimate& est) {
    return count_from_area(mask.object_count(), est);
}

CountResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg) {
    cfg.validate();
    std::vector<std::string> warnings;

    auto staged = [](Stage stage, auto&& fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const PipelineError&) {
            throw;
        } catch (const Error& e) {
            throw PipelineError(stage, e);
        }
    };

    const std::size_t w = img.width();
    const std::size_t h = img.height();

    // Stage 1 yields either a threshold applied row by row, or (region
    // growing) a full mask.
    std::optional<std::uint8_t> level;
    BinaryMask grown;
    bool all_background = false;
    staged(Stage::segmentation, [&] {
        const SegmentationConfig& seg = cfg.segmentation;
        if (seg.method == SegmentationMethod::region_growing) {
            grown = region_grow(img, seg);
            return;
        }
        try {
            level = otsu_level(img);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_histogram) throw;
            all_background = true;
        }
    });
    if (all_background) {
        warnings.emplace_back("segmentation: constant image has no threshold; treated as all-background");
    }

    std::uint64_t white = 0;
    RunAccumulator runs(w, h, cfg.direction);
    staged(Stage::enhancement, [&] {
        auto pixels = img.pixels();
        auto source = [&](std::size_t y, std::span<Label> row) {
            if (level) {
                threshold_row(pixels.subspan(y * w, w), *level, cfg.segmentation.polarity, row);
            } else if (all_background) {
                std::fill(row.begin(), row.end(), Label::background);
            } else {
                auto labels = grown.labels().subspan(y * w, w);
                std::copy(labels.begin(), labels.end(), row.begin());
            }
        };
        auto sink = [&](std::size_t, std::span<const Label> row) {
            white += static_cast<std::uint64_t>(std::count(row.begin(), row.end(), Label::object));
            runs.add_row(row);
        };
        median_filter_rows(w, h, cfg.median_window, source, sink);
    });

    const RunHistogram hist = std::move(runs).finish();
    SizeEstimate est = staged(Stage::sizing, [&] {
        return estimate_diameter(smooth(hist, cfg.smooth_window), cfg.alpha);
    });
    if (est.crossing_in_padding) {
        warnings.emplace_back("sizing: alpha crossing lies beyond the longest possible run (zero-padded region)");
    }

    CountResult result = staged(Stage::counting, [&] { return count_from_area(white, est); });
    result.total_runs = hist.total_runs();
    result.warnings = std::move(warnings);
    return result;
}

nlohmann::ordered_json to_json(const CountResult& result) {
    nlohmann::ordered_json j;
    j["count"] = result.count_rounded;
    j["count_real"] = result.count_real;
    j["diameter"] = result.diameter;
    j["white_pixels"] = result.white_pixels;
    j["x_max"] = result.x_max;
    j["alpha"] = result.alpha;
    j["warnings"] = result.warnings;
    return j;
}

}  // namespace objcount
