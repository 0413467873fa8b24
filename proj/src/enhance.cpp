#include "objcount/enhance.hpp"

#include <string>

#include "objcount/error.hpp"

namespace objcount {

void check_median_window(std::size_t window, std::size_t width, std::size_t height) {
    if (window == 0 || window % 2 == 0) {
        throw Error(ErrorCode::invalid_parameter,
                    "median window must be odd and >= 1, got " + std::to_string(window));
    }
    if (window > std::min(width, height)) {
        throw Error(ErrorCode::invalid_parameter,
                    "median window " + std::to_string(window) + " exceeds image size");
    }
}

BinaryMask median_filter(const BinaryMask& mask, std::size_t window) {
    const std::size_t w = mask.width();
    BinaryMask out(w, mask.height());
    auto in = mask.labels();
    auto dst = out.labels();
    median_filter_rows(
        w, mask.height(), window,
        [&](std::size_t y, std::span<Label> row) { std::copy_n(in.begin() + y * w, w, row.begin()); },
        [&](std::size_t y, std::span<const Label> row) { std::copy(row.begin(), row.end(), dst.begin() + y * w); });
    return out;
}

}  // namespace objcount
