#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "objcount/image.hpp"

namespace objcount {

inline constexpr std::size_t kDefaultMedianWindow = 5;

/// Throws Error(invalid_parameter) unless window is odd and
/// 1 <= window <= min(width, height).
void check_median_window(std::size_t window, std::size_t width, std::size_t height);

/// Binary median (majority vote) over a window x window neighbourhood.
/// Pixels outside the image count as background. Linear in pixel count
/// regardless of window size.
BinaryMask median_filter(const BinaryMask& mask, std::size_t window = kDefaultMedianWindow);

/// Streaming form of median_filter. `source(y, row)` fills input row y;
/// each input row is requested twice, once entering and once leaving the
/// window. `sink(y, row)` receives output rows in order. Working memory is
/// three rows, so a whole pipeline can run without materialising a mask.
template <typename RowSource, typename RowSink>
void median_filter_rows(std::size_t width, std::size_t height, std::size_t window, RowSource&& source,
                        RowSink&& sink) {
    check_median_window(window, width, height);
    const std::size_t r = window / 2;
    const std::size_t majority = window * window / 2;  // object iff count > majority
    std::vector<std::uint32_t> running(width + 2 * r, 0);  // column counts, r cells of padding per side
    std::vector<Label> in(width);
    std::vector<Label> out(width);
    std::uint32_t* col = running.data() + r;

    auto add_row = [&](std::size_t y, int sign) {
        source(y, std::span<Label>(in));
        for (std::size_t x = 0; x < width; ++x) {
            col[x] += static_cast<std::uint32_t>(sign * (in[x] == Label::object));
        }
    };
    for (std::size_t y = 0; y < std::min(r, height); ++y) {
        add_row(y, 1);
    }
    for (std::size_t y = 0; y < height; ++y) {
        if (y + r < height) add_row(y + r, 1);
        if (y > r) add_row(y - r - 1, -1);
        // Padding columns stay zero, so the window sum needs no bounds checks.
        std::uint32_t sum = 0;
        for (std::size_t k = 0; k < 2 * r; ++k) {
            sum += running[k];
        }
        for (std::size_t x = 0; x < width; ++x) {
            sum += running[x + 2 * r];
            out[x] = sum > majority ? Label::object : Label::background;
            sum -= running[x];
        }
        sink(y, std::span<const Label>(out));
    }
}

}  // namespace objcount
