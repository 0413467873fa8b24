#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "objcount/enhance.hpp"
#include "objcount/error.hpp"
#include "objcount/image.hpp"
#include "objcount/segmentation.hpp"
#include "objcount/sizing.hpp"

namespace objcount {

struct CountResult {
    std::uint64_t white_pixels = 0;  ///< S: object pixels in the enhanced mask
    std::size_t diameter = 0;
    double count_real = 0.0;         ///< S / (pi * (d/2)^2)
    std::uint64_t count_rounded = 0; ///< round-half-up of count_real
    double alpha = 0.0;
    std::size_t x_max = 0;
    double peak = 0.0;
    std::uint64_t total_runs = 0;
    std::vector<std::string> warnings;

    friend bool operator==(const CountResult&, const CountResult&) = default;
};

struct PipelineConfig {
    SegmentationConfig segmentation;
    std::size_t median_window = kDefaultMedianWindow;
    std::size_t smooth_window = kDefaultSmoothWindow;
    double alpha = kDefaultAlpha;
    Direction direction = Direction::horizontal;

    EstimatorConfig estimator() const { return {alpha, smooth_window, direction}; }
    void validate() const;
};

enum class Stage { segmentation = 1, enhancement = 2, sizing = 3, counting = 4 };

std::string_view to_string(Stage stage);

/// An Error raised inside run_pipeline, tagged with the stage that failed.
class PipelineError : public Error {
public:
    PipelineError(Stage stage, const Error& cause);

    Stage stage() const noexcept { return stage_; }

private:
    Stage stage_;
};

/// Object count from total object area and estimated diameter.
/// Throws Error(invalid_parameter) if est.diameter is zero.
CountResult count_objects(const BinaryMask& mask, const SizeEstimate& est);
CountResult count_from_area(std::uint64_t white_pixels, const SizeEstimate& est);

/// segmentation -> median filter -> run histogram -> smoothing ->
/// diameter estimate -> count. Invalid configuration throws a plain Error;
/// failures inside a stage throw PipelineError.
///
/// Under Otsu the thresholding, median filter, run extraction and pixel
/// count are fused into one row-streaming pass after the grey-level
/// histogram; the result equals composing the individual stages.
CountResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg);

/// {count, count_real, diameter, white_pixels, x_max, alpha, warnings}
nlohmann::ordered_json to_json(const CountResult& result);

}  // namespace objcount
