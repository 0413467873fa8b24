#include "objcount/segmentation.hpp"

#include <array>
#include <cstdlib>
#include <deque>
#include <string>

#include "objcount/error.hpp"

namespace objcount {

void SegmentationConfig::validate() const {
    if (rg_tolerance < 0 || rg_tolerance > 255) {
        throw Error(ErrorCode::invalid_parameter, "rg_tolerance must be in [0,255]");
    }
    if (rg_seed_threshold < 0 || rg_seed_threshold > 255) {
        throw Error(ErrorCode::invalid_parameter, "rg_seed_threshold must be in [0,255]");
    }
}

std::uint8_t otsu_level(const GrayImage& img) {
    if (img.empty()) {
        throw Error(ErrorCode::invalid_parameter, "otsu_level: empty image");
    }
    // Four interleaved partial histograms; images dominated by one grey
    // level would otherwise serialise on a single counter.
    std::array<std::array<std::uint32_t, 256>, 4> partial{};
    auto pixels = img.pixels();
    std::size_t i = 0;
    for (; i + 4 <= pixels.size(); i += 4) {
        ++partial[0][pixels[i]];
        ++partial[1][pixels[i + 1]];
        ++partial[2][pixels[i + 2]];
        ++partial[3][pixels[i + 3]];
    }
    for (; i < pixels.size(); ++i) {
        ++partial[0][pixels[i]];
    }
    std::array<std::uint64_t, 256> hist{};
    for (const auto& p : partial) {
        for (std::size_t v = 0; v < 256; ++v) {
            hist[v] += p[v];
        }
    }
    const std::uint64_t total = img.size();
    std::uint64_t total_sum = 0;
    for (std::size_t v = 0; v < 256; ++v) {
        total_sum += v * hist[v];
    }

    // Class counts and sums are accumulated exactly in integers, so equal
    // class splits always produce bit-identical variances.
    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    double best = 0.0;
    int best_level = -1;
    for (std::size_t t = 0; t < 255; ++t) {
        n0 += hist[t];
        s0 += t * hist[t];
        const std::uint64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) {
            continue;
        }
        const double w0 = static_cast<double>(n0) / static_cast<double>(total);
        const double w1 = static_cast<double>(n1) / static_cast<double>(total);
        const double mu0 = static_cast<double>(s0) / static_cast<double>(n0);
        const double mu1 = static_cast<double>(total_sum - s0) / static_cast<double>(n1);
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best) {
            best = between;
            best_level = static_cast<int>(t);
        }
    }
    if (best_level < 0) {
        throw Error(ErrorCode::degenerate_histogram, "otsu_level: degenerate histogram (constant image)");
    }
    return static_cast<std::uint8_t>(best_level);
}

void threshold_row(std::span<const std::uint8_t> pixels, std::uint8_t level, Polarity polarity,
                   std::span<Label> out) {
    const bool bright = polarity == Polarity::bright_objects;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        out[i] = ((pixels[i] > level) == bright) ? Label::object : Label::background;
    }
}

BinaryMask apply_threshold(const GrayImage& img, std::uint8_t level, Polarity polarity) {
    BinaryMask out(img.width(), img.height());
    threshold_row(img.pixels(), level, polarity, out.labels());
    return out;
}

BinaryMask region_grow(const GrayImage& img, const SegmentationConfig& cfg) {
    cfg.validate();
    const std::size_t w = img.width();
    const std::size_t h = img.height();
    auto px = img.pixels();
    const bool bright = cfg.polarity == Polarity::bright_objects;
    auto is_seed = [&](std::uint8_t v) {
        return bright ? v >= cfg.rg_seed_threshold : v <= cfg.rg_seed_threshold;
    };

    BinaryMask mask(w, h);
    auto labels = mask.labels();
    std::deque<std::size_t> frontier;

    for (std::size_t start = 0; start < px.size(); ++start) {
        if (labels[start] == Label::object || !is_seed(px[start])) {
            continue;
        }
        labels[start] = Label::object;
        frontier.push_back(start);
        std::uint64_t region_sum = px[start];
        std::uint64_t region_size = 1;

        while (!frontier.empty()) {
            const std::size_t idx = frontier.front();
            frontier.pop_front();
            const std::size_t x = idx % w;
            const std::size_t y = idx / w;
            const std::array<bool, 4> valid{x > 0, x + 1 < w, y > 0, y + 1 < h};
            const std::array<std::size_t, 4> neighbours{idx - 1, idx + 1, idx - w, idx + w};
            for (std::size_t k = 0; k < 4; ++k) {
                if (!valid[k]) {
                    continue;
                }
                const std::size_t n = neighbours[k];
                if (labels[n] == Label::object) {
                    continue;
                }
                const double mean = static_cast<double>(region_sum) / static_cast<double>(region_size);
                if (std::abs(static_cast<double>(px[n]) - mean) <= cfg.rg_tolerance) {
                    labels[n] = Label::object;
                    region_sum += px[n];
                    ++region_size;
                    frontier.push_back(n);
                }
            }
        }
    }
    return mask;
}

SegmentationResult segment(const GrayImage& img, const SegmentationConfig& cfg) {
    cfg.validate();
    if (cfg.method == SegmentationMethod::region_growing) {
        return {region_grow(img, cfg), false};
    }
    try {
        return {apply_threshold(img, otsu_level(img), cfg.polarity), false};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::degenerate_histogram) {
            throw;
        }
        return {BinaryMask(img.width(), img.height()), true};
    }
}

}  // namespace objcount
