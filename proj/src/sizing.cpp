#include "objcount/sizing.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>

#include "objcount/error.hpp"

namespace objcount {

namespace {

void check_window(std::size_t window) {
    if (window == 0 || window % 2 == 0) {
        throw Error(ErrorCode::invalid_parameter,
                    "smoothing window must be odd and >= 1, got " + std::to_string(window));
    }
}

template <typename T, typename Acc>
SmoothedHistogram smooth_impl(std::span<const T> samples, std::size_t window) {
    check_window(window);
    if (samples.empty()) {
        throw Error(ErrorCode::empty_histogram, "empty histogram");
    }
    const std::size_t r = window / 2;
    const std::size_t n = samples.size();

    SmoothedHistogram out;
    out.window = window;
    out.source_max_length = n - 1;
    out.values.resize(n + r);
    for (std::size_t x = 0; x < out.values.size(); ++x) {
        const std::size_t lo = x >= r ? x - r : 0;
        const std::size_t hi = std::min(x + r, n - 1);
        Acc sum{};
        for (std::size_t i = lo; i <= hi; ++i) {
            sum += samples[i];
        }
        out.values[x] = static_cast<double>(sum) / static_cast<double>(window);
    }
    for (std::size_t x = 0; x < out.values.size(); ++x) {
        if (out.values[x] > out.peak) {
            out.peak = out.values[x];
            out.x_max = x;
        }
    }
    if (out.peak <= 0.0) {
        throw Error(ErrorCode::empty_histogram, "empty histogram");
    }
    return out;
}

}  // namespace

RunHistogram::RunHistogram(std::vector<std::uint64_t> counts, Direction direction)
    : counts_(std::move(counts)), direction_(direction) {
    if (counts_.empty()) {
        counts_.push_back(0);
    }
    if (counts_[0] != 0) {
        throw Error(ErrorCode::invalid_parameter, "run histogram: runs of length 0 are not allowed");
    }
    total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

RunAccumulator::RunAccumulator(std::size_t width, std::size_t height, Direction direction)
    : width_(width),
      direction_(direction),
      counts_((direction == Direction::horizontal ? width : height) + 1, 0),
      open_(direction == Direction::vertical ? width : 0, 0) {}

void RunAccumulator::add_row(std::span<const Label> row) {
    if (direction_ == Direction::horizontal) {
        std::size_t run = 0;
        for (Label l : row) {
            if (l == Label::object) {
                ++run;
            } else if (run != 0) {
                ++counts_[run];
                run = 0;
            }
        }
        if (run != 0) {
            ++counts_[run];
        }
        return;
    }
    for (std::size_t x = 0; x < width_; ++x) {
        if (row[x] == Label::object) {
            ++open_[x];
        } else if (open_[x] != 0) {
            ++counts_[open_[x]];
            open_[x] = 0;
        }
    }
}

RunHistogram RunAccumulator::finish() && {
    for (std::uint32_t run : open_) {
        if (run != 0) {
            ++counts_[run];
        }
    }
    return RunHistogram(std::move(counts_), direction_);
}

RunHistogram extract_runs(const BinaryMask& mask, Direction direction) {
    RunAccumulator acc(mask.width(), mask.height(), direction);
    auto labels = mask.labels();
    for (std::size_t y = 0; y < mask.height(); ++y) {
        acc.add_row(labels.subspan(y * mask.width(), mask.width()));
    }
    return std::move(acc).finish();
}

std::optional<double> analytic_h(double d, double x) {
    if (!(d > 0.0)) {
        throw Error(ErrorCode::invalid_parameter, "analytic_h: diameter must be positive");
    }
    if (x == d) {
        return std::nullopt;
    }
    if (x < 0.0 || x > d) {
        return 0.0;
    }
    return x / std::sqrt(d * d - x * x);
}

double analytic_g(int d_min, int d_max, double x) {
    if (d_min > d_max) {
        throw Error(ErrorCode::invalid_parameter, "analytic_g: d_min must not exceed d_max");
    }
    double sum = 0.0;
    for (int d = d_min; d <= d_max; ++d) {
        if (auto term = analytic_h(d, x)) {
            sum += *term;
        }
    }
    return sum;
}

std::vector<double> sample_analytic_g(int d_min, int d_max) {
    if (d_min <= 0 || d_min > d_max) {
        throw Error(ErrorCode::invalid_parameter, "sample_analytic_g: need 0 < d_min <= d_max");
    }
    std::vector<double> samples(static_cast<std::size_t>(d_max) + 1);
    for (std::size_t x = 0; x < samples.size(); ++x) {
        samples[x] = analytic_g(d_min, d_max, static_cast<double>(x));
    }
    return samples;
}

SmoothedHistogram smooth(std::span<const double> samples, std::size_t window) {
    for (double s : samples) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
            throw Error(ErrorCode::invalid_parameter, "smooth: samples must be finite and non-negative");
        }
    }
    return smooth_impl<double, double>(samples, window);
}

SmoothedHistogram smooth(const RunHistogram& hist, std::size_t window) {
    // Integer window sums keep the result exact up to the final division.
    return smooth_impl<std::uint64_t, std::uint64_t>(hist.counts(), window);
}

SizeEstimate estimate_diameter(const SmoothedHistogram& sh, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::invalid_parameter, "alpha must be in (0,1)");
    }
    if (!(sh.peak > 0.0)) {
        throw Error(ErrorCode::degenerate_histogram, "estimate_diameter: histogram peak is zero");
    }
    const double limit = alpha * sh.peak;
    std::size_t x = sh.x_max + 1;
    // value(x) is zero from values.size() on, so this terminates there at the latest.
    while (sh.value(x) > limit) {
        ++x;
    }
    SizeEstimate est;
    est.diameter = x;
    est.alpha = alpha;
    est.x_max = sh.x_max;
    est.peak = sh.peak;
    est.crossing_in_padding = x > sh.source_max_length;
    return est;
}

void write_csv(const RunHistogram& hist, std::ostream& out) {
    out << "length,count\n";
    for (std::size_t x = 1; x <= hist.max_length(); ++x) {
        out << x << ',' << hist.count(x) << '\n';
    }
}

void write_csv(const SmoothedHistogram& sh, std::ostream& out) {
    out << "length,value\n";
    char buf[64];
    for (std::size_t x = 0; x < sh.values.size(); ++x) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f\n", x, sh.values[x]);
        out << buf;
    }
}

}  // namespace objcount

namespace objcount {

void EstimatorConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::invalid_parameter, "alpha must be in (0,1)");
    }
    check_window(smooth_window);
}

SizeEstimate estimate_size(const BinaryMask& mask, const EstimatorConfig& cfg) {
    cfg.validate();
    return estimate_diameter(smooth(extract_runs(mask, cfg.direction), cfg.smooth_window), cfg.alpha);
}

}  // namespace objcount
