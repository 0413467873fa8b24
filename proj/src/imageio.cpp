#include "objcount/imageio.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "objcount/error.hpp"

namespace objcount {

namespace {

constexpr std::array<unsigned char, 8> kPngSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Skips whitespace and '#' comments between header tokens.
void skip_separators(std::istream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (c != EOF && std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

std::size_t read_header_number(std::istream& in, const char* field) {
    skip_separators(in);
    std::string token;
    while (std::isdigit(in.peek())) {
        token.push_back(static_cast<char>(in.get()));
        if (token.size() > 9) {
            fail(ErrorCode::malformed_header, std::string("PGM ") + field + " is too large");
        }
    }
    if (token.empty()) {
        fail(ErrorCode::malformed_header, std::string("PGM header: missing or invalid ") + field);
    }
    return std::stoul(token);
}

std::uint8_t luma(unsigned r, unsigned g, unsigned b) {
    return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

std::uint32_t be32(const unsigned char* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

GrayImage decode_png(const std::vector<unsigned char>& bytes) {
    // IHDR is mandated to be the first chunk; its fields sit at fixed offsets.
    if (bytes.size() < 33 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
        fail(ErrorCode::malformed_header, "PNG: missing IHDR chunk");
    }
    const std::uint32_t width = be32(bytes.data() + 16);
    const std::uint32_t height = be32(bytes.data() + 20);
    const unsigned bit_depth = bytes[24];
    const unsigned color_type = bytes[25];
    if (width == 0 || height == 0) {
        fail(ErrorCode::malformed_header, "PNG: zero image dimension");
    }
    if (width > kMaxImageSide || height > kMaxImageSide) {
        fail(ErrorCode::malformed_header, "PNG: image dimension exceeds 65535");
    }
    if (bit_depth != 8) {
        fail(ErrorCode::unsupported_bit_depth,
             "PNG: bit depth " + std::to_string(bit_depth) + " (only 8-bit is supported)");
    }

    std::uint32_t format = 0;
    std::size_t channels = 0;
    switch (color_type) {
        case PNG_COLOR_TYPE_GRAY: format = PNG_FORMAT_GRAY; channels = 1; break;
        case PNG_COLOR_TYPE_GRAY_ALPHA: format = PNG_FORMAT_GA; channels = 2; break;
        case PNG_COLOR_TYPE_RGB: format = PNG_FORMAT_RGB; channels = 3; break;
        case PNG_COLOR_TYPE_RGB_ALPHA: format = PNG_FORMAT_RGBA; channels = 4; break;
        default:
            fail(ErrorCode::unsupported_format,
                 "PNG: color type " + std::to_string(color_type) + " is not grayscale or RGB");
    }

    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        std::string msg = image.message;
        png_image_free(&image);
        fail(ErrorCode::malformed_header, "PNG: " + msg);
    }
    image.format = format;
    std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        std::string msg = image.message;
        png_image_free(&image);
        fail(ErrorCode::malformed_header, "PNG: " + msg);
    }

    std::vector<std::uint8_t> gray(std::size_t{width} * height);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        const unsigned char* px = buffer.data() + i * channels;
        gray[i] = channels >= 3 ? luma(px[0], px[1], px[2]) : px[0];
    }
    return GrayImage(width, height, std::move(gray));
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
    char magic[2] = {0, 0};
    if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
        fail(ErrorCode::malformed_header, "PGM: expected magic P2 or P5");
    }
    const bool binary = magic[1] == '5';
    if (!std::isspace(in.peek()) && in.peek() != '#') {
        fail(ErrorCode::malformed_header, "PGM: missing separator after magic number");
    }
    const std::size_t width = read_header_number(in, "width");
    const std::size_t height = read_header_number(in, "height");
    const std::size_t maxval = read_header_number(in, "maxval");
    if (width == 0 || height == 0) {
        fail(ErrorCode::malformed_header, "PGM: zero image dimension");
    }
    if (width > kMaxImageSide || height > kMaxImageSide) {
        fail(ErrorCode::malformed_header, "PGM: image dimension exceeds 65535");
    }
    if (maxval == 0) {
        fail(ErrorCode::malformed_header, "PGM: maxval must be positive");
    }
    if (maxval > 255) {
        fail(ErrorCode::unsupported_bit_depth,
             "PGM: maxval " + std::to_string(maxval) + " needs 16-bit samples (only 8-bit is supported)");
    }

    std::vector<std::uint8_t> data(width * height);
    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (!std::isspace(in.get())) {
            fail(ErrorCode::malformed_header, "PGM: missing separator before raster");
        }
        in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
        if (static_cast<std::size_t>(in.gcount()) != data.size()) {
            fail(ErrorCode::io_error, "PGM: raster is truncated");
        }
    } else {
        for (auto& px : data) {
            skip_separators(in);
            std::size_t value = 0;
            if (!(in >> value)) {
                fail(ErrorCode::io_error, "PGM: raster is truncated or contains a non-numeric sample");
            }
            px = static_cast<std::uint8_t>(value);
            if (value > maxval) {
                fail(ErrorCode::malformed_header, "PGM: sample exceeds maxval");
            }
        }
    }
    for (auto px : data) {
        if (px > maxval) {
            fail(ErrorCode::malformed_header, "PGM: sample exceeds maxval");
        }
    }
    return GrayImage(width, height, std::move(data));
}

GrayImage load_gray(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        fail(ErrorCode::io_error, "cannot open '" + path.string() + "' for reading");
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    if (file.bad()) {
        fail(ErrorCode::io_error, "error while reading '" + path.string() + "'");
    }
    if (bytes.size() >= kPngSignature.size() &&
        std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
        return decode_png(bytes);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
        std::string text(bytes.begin(), bytes.end());
        std::istringstream in(std::move(text));
        return read_pgm(in);
    }
    fail(ErrorCode::unsupported_format, "'" + path.string() + "' is neither PGM (P2/P5) nor PNG");
}

void write_pgm(const GrayImage& img, std::ostream& out) {
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.size()));
}

void save_gray(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        fail(ErrorCode::io_error, "cannot open '" + path.string() + "' for writing");
    }
    write_pgm(img, file);
    file.flush();
    if (!file) {
        fail(ErrorCode::io_error, "error while writing '" + path.string() + "'");
    }
}

GrayImage mask_to_gray(const BinaryMask& mask) {
    std::vector<std::uint8_t> data(mask.size());
    auto labels = mask.labels();
    for (std::size_t i = 0; i < data.size(); ++i) {
        data[i] = labels[i] == Label::object ? 255 : 0;
    }
    return GrayImage(mask.width(), mask.height(), std::move(data));
}

void save_mask(const BinaryMask& mask, const std::filesystem::path& path) {
    save_gray(mask_to_gray(mask), path);
}

}  // namespace objcount
