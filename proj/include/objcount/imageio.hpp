#pragma once

#include <filesystem>
#include <iosfwd>

#include "objcount/image.hpp"

namespace objcount {

/// Loads a PGM (P2 or P5, maxval <= 255) or an 8-bit grayscale/RGB PNG.
/// Pixel values are returned exactly as stored; RGB is reduced with integer
/// luma (299R + 587G + 114B + 500) / 1000. Alpha channels are ignored.
GrayImage load_gray(const std::filesystem::path& path);

/// Same as load_gray for PGM content already in memory or on a stream.
GrayImage read_pgm(std::istream& in);

/// Writes a binary P5 PGM with maxval 255.
void save_gray(const GrayImage& img, const std::filesystem::path& path);
void write_pgm(const GrayImage& img, std::ostream& out);

/// Writes a P5 PGM with object = 255, background = 0.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Renders a mask as {0, 255} grayscale.
GrayImage mask_to_gray(const BinaryMask& mask);

}  // namespace objcount
