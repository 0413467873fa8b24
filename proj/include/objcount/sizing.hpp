#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "objcount/image.hpp"

namespace objcount {

enum class Direction { horizontal, vertical };

inline constexpr std::size_t kDefaultSmoothWindow = 11;

/// Number of runs (maximal object segments along one scan line) per length.
/// Index 0 is always zero; lengths above max_length() cannot occur.
class RunHistogram {
public:
    RunHistogram(std::vector<std::uint64_t> counts, Direction direction);

    std::uint64_t count(std::size_t length) const {
        return length < counts_.size() ? counts_[length] : 0;
    }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }
    std::size_t max_length() const noexcept { return counts_.size() - 1; }
    Direction direction() const noexcept { return direction_; }
    std::uint64_t total_runs() const noexcept { return total_; }

private:
    std::vector<std::uint64_t> counts_;
    Direction direction_;
    std::uint64_t total_ = 0;
};

/// Mean-filtered histogram. values()[x] is defined for x in
/// [0, source_max_length + window/2] and is zero beyond.
struct SmoothedHistogram {
    std::vector<double> values;
    std::size_t window = kDefaultSmoothWindow;
    std::size_t source_max_length = 0;  ///< last x of the unsmoothed input
    std::size_t x_max = 0;              ///< smallest argmax
    double peak = 0.0;                  ///< values[x_max]

    double value(std::size_t x) const { return x < values.size() ? values[x] : 0.0; }
};

struct SizeEstimate {
    std::size_t diameter = 0;
    double alpha = 0.0;
    std::size_t x_max = 0;
    double peak = 0.0;
    /// The alpha crossing was found only past the end of the input data,
    /// where the histogram is zero-padded.
    bool crossing_in_padding = false;
};

/// Builds a RunHistogram from mask rows fed top to bottom. Vertical runs are
/// tracked with one open-run counter per column.
class RunAccumulator {
public:
    RunAccumulator(std::size_t width, std::size_t height, Direction direction);

    void add_row(std::span<const Label> row);
    RunHistogram finish() &&;

private:
    std::size_t width_;
    Direction direction_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint32_t> open_;  // vertical only
};

/// Single pass over the mask, linear in pixel count.
RunHistogram extract_runs(const BinaryMask& mask, Direction direction = Direction::horizontal);

/// Chord-length density of a disc of diameter d: x / sqrt(d^2 - x^2) for
/// 0 <= x < d, zero otherwise. Returns nullopt at x == d, where the density
/// diverges. Throws Error(invalid_parameter) if d <= 0.
std::optional<double> analytic_h(double d, double x);

/// Sum of analytic_h(d, x) over integer d in [d_min, d_max]; divergent
/// terms are left out.
double analytic_g(int d_min, int d_max, double x);

/// analytic_g sampled at x = 0, 1, ..., d_max.
std::vector<double> sample_analytic_g(int d_min, int d_max);

/// Zero-padded mean filter with fixed divisor `window`:
///   values[x] = sum(samples[x - r .. x + r]) / window,  r = window / 2.
/// Throws Error(invalid_parameter) for an even or zero window and
/// Error(empty_histogram) when every sample is zero.
SmoothedHistogram smooth(std::span<const double> samples, std::size_t window = kDefaultSmoothWindow);
SmoothedHistogram smooth(const RunHistogram& hist, std::size_t window = kDefaultSmoothWindow);

/// Smallest x > x_max with value(x) <= alpha * peak.
/// Throws Error(invalid_parameter) unless 0 < alpha < 1, and
/// Error(degenerate_histogram) when the peak is zero.
SizeEstimate estimate_diameter(const SmoothedHistogram& sh, double alpha);

/// "length,count" rows for lengths 1..max_length, preceded by a header.
void write_csv(const RunHistogram& hist, std::ostream& out);
/// "length,value" rows with six fractional digits, preceded by a header.
void write_csv(const SmoothedHistogram& sh, std::ostream& out);

}  // namespace objcount

namespace objcount {

inline constexpr double kDefaultAlpha = 0.8;

/// Parameters of the run-histogram size estimator.
struct EstimatorConfig {
    double alpha = kDefaultAlpha;
    std::size_t smooth_window = kDefaultSmoothWindow;
    Direction direction = Direction::horizontal;

    void validate() const;
};

/// extract_runs -> smooth -> estimate_diameter.
SizeEstimate estimate_size(const BinaryMask& mask, const EstimatorConfig& cfg);

}  // namespace objcount
