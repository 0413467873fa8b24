#include "objcount/image.hpp"

#include <algorithm>
#include <string>

#include "objcount/error.hpp"

namespace objcount {

namespace {

void check_dims(std::size_t width, std::size_t height, std::size_t data_size) {
    if (width == 0 || height == 0) {
        throw Error(ErrorCode::invalid_parameter, "image dimensions must be at least 1x1");
    }
    if (width > kMaxImageSide || height > kMaxImageSide) {
        throw Error(ErrorCode::invalid_parameter,
                    "image dimension exceeds " + std::to_string(kMaxImageSide));
    }
    if (data_size != width * height) {
        throw Error(ErrorCode::invalid_parameter, "pixel buffer size does not match width*height");
    }
}

}  // namespace

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::io_error: return "I/O error";
        case ErrorCode::malformed_header: return "malformed header";
        case ErrorCode::unsupported_bit_depth: return "unsupported bit depth";
        case ErrorCode::unsupported_format: return "unsupported format";
        case ErrorCode::invalid_parameter: return "invalid parameter";
        case ErrorCode::degenerate_histogram: return "degenerate histogram";
        case ErrorCode::empty_histogram: return "empty histogram";
        case ErrorCode::impossible_scene: return "impossible scene";
    }
    return "unknown error";
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : GrayImage(width, height, std::vector<std::uint8_t>(width * height, fill)) {}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width_, height_, data_.size());
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, Label fill)
    : BinaryMask(width, height, std::vector<Label>(width * height, fill)) {}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<Label> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width_, height_, data_.size());
}

std::size_t BinaryMask::object_count() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), Label::object));
}

BinaryMask BinaryMask::inverted() const {
    BinaryMask out = *this;
    for (Label& l : out.data_) {
        l = (l == Label::object) ? Label::background : Label::object;
    }
    return out;
}

}  // namespace objcount
