#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace objcount {

inline constexpr std::size_t kMaxImageSide = 65535;

/// 8-bit grayscale raster, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0);
    GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    std::uint8_t& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> data_;
};

enum class Label : std::uint8_t { background = 0, object = 1 };

/// Segmented image. Stored as one byte per pixel holding a Label.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(std::size_t width, std::size_t height, Label fill = Label::background);
    BinaryMask(std::size_t width, std::size_t height, std::vector<Label> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    Label at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    Label& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
    bool is_object(std::size_t x, std::size_t y) const { return at(x, y) == Label::object; }

    std::span<const Label> labels() const noexcept { return data_; }
    std::span<Label> labels() noexcept { return data_; }

    /// Number of object pixels.
    std::size_t object_count() const noexcept;

    BinaryMask inverted() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Label> data_;
};

}  // namespace objcount
