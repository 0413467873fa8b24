#pragma once

#include <cstdint>
#include <span>

#include "objcount/image.hpp"

namespace objcount {

enum class SegmentationMethod { otsu, region_growing };
enum class Polarity { bright_objects, dark_objects };

struct SegmentationConfig {
    SegmentationMethod method = SegmentationMethod::otsu;
    Polarity polarity = Polarity::bright_objects;
    int rg_tolerance = 10;        ///< max |luminance - region mean| accepted during growth
    int rg_seed_threshold = 128;  ///< seeds are >= this (bright) or <= this (dark)

    /// Throws Error(invalid_parameter) when a field is out of range.
    void validate() const;
};

/// Otsu's global threshold: the level t maximizing the between-class
/// variance of the split [0, t] | [t + 1, 255]. Ties resolve to the smallest
/// t. Throws Error(degenerate_histogram) when no split has positive
/// variance (a constant image).
std::uint8_t otsu_level(const GrayImage& img);

/// bright_objects: object iff pixel > level. dark_objects: object iff pixel <= level.
BinaryMask apply_threshold(const GrayImage& img, std::uint8_t level, Polarity polarity);

/// apply_threshold for one row; `out` must be as long as `pixels`.
void threshold_row(std::span<const std::uint8_t> pixels, std::uint8_t level, Polarity polarity,
                   std::span<Label> out);

/// Seeded region growing. Every seed pixel starts (or joins) a region; regions
/// grow over 4-neighbours whose luminance is within rg_tolerance of the
/// region's running mean. Seeds are visited in row-major order and the
/// frontier is FIFO, so the result is deterministic.
BinaryMask region_grow(const GrayImage& img, const SegmentationConfig& cfg);

struct SegmentationResult {
    BinaryMask mask;
    bool degenerate = false;  ///< Otsu found a constant image; mask is all-background
};

/// Runs the configured method. A constant image under Otsu has no contrast
/// to split and yields an all-background mask with `degenerate` set.
SegmentationResult segment(const GrayImage& img, const SegmentationConfig& cfg);

}  // namespace objcount
