#include <random>

#include "doctest.h"
#include "objcount/error.hpp"
#include "objcount/segmentation.hpp"
#include "oracles.hpp"

using namespace objcount;

TEST_CASE("otsu: extreme bimodal image resolves to the smallest level") {
    GrayImage img(2, 2, std::vector<std::uint8_t>{0, 255, 0, 255});
    CHECK(otsu_level(img) == 0);
}

TEST_CASE("otsu: two clusters match the exhaustive search") {
    std::vector<std::uint8_t> px(200, 50);
    std::fill(px.begin() + 100, px.end(), 200);
    GrayImage img(20, 10, px);
    const int level = otsu_level(img);
    CHECK(level == oracle::otsu(img));
    CHECK(level == 50);
}

TEST_CASE("otsu: constant image is degenerate") {
    try {
        otsu_level(GrayImage(4, 4, 7));
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_histogram);
    }
}

TEST_CASE("apply_threshold polarity and partition") {
    GrayImage img(2, 1, std::vector<std::uint8_t>{0, 255});
    const BinaryMask bright = apply_threshold(img, 0, Polarity::bright_objects);
    const BinaryMask dark = apply_threshold(img, 0, Polarity::dark_objects);
    CHECK(bright.at(0, 0) == Label::background);
    CHECK(bright.at(1, 0) == Label::object);
    CHECK(dark.at(0, 0) == Label::object);
    CHECK(dark.at(1, 0) == Label::background);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const GrayImage r = oracle::random_image(13, 7, rng);
        const auto level = static_cast<std::uint8_t>(rng() % 256);
        CHECK(apply_threshold(r, level, Polarity::bright_objects).object_count() +
                  apply_threshold(r, level, Polarity::dark_objects).object_count() ==
              r.size());
    }
}

TEST_CASE("property: raising the level never adds bright objects") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
        const GrayImage r = oracle::random_image(16, 16, rng);
        BinaryMask prev = apply_threshold(r, 0, Polarity::bright_objects);
        for (int level = 1; level < 256; ++level) {
            BinaryMask cur = apply_threshold(r, static_cast<std::uint8_t>(level), Polarity::bright_objects);
            for (std::size_t k = 0; k < cur.size(); ++k) {
                if (cur.labels()[k] == Label::object) REQUIRE(prev.labels()[k] == Label::object);
            }
            prev = std::move(cur);
        }
    }
}

TEST_CASE("otsu equals exhaustive search on random images") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const GrayImage img = oracle::random_image(1 + rng() % 30, 1 + rng() % 30, rng);
        const int expected = oracle::otsu(img);
        if (expected < 0) {
            CHECK_THROWS_AS(otsu_level(img), Error);
        } else {
            CHECK(otsu_level(img) == expected);
        }
    }
}

TEST_CASE("region growing basics") {
    SegmentationConfig cfg;
    cfg.method = SegmentationMethod::region_growing;
    cfg.rg_seed_threshold = 180;
    cfg.rg_tolerance = 0;

    CHECK(region_grow(GrayImage(5, 4, 200), cfg).object_count() == 20);
    CHECK(region_grow(GrayImage(5, 4, 100), cfg).object_count() == 0);
}

TEST_CASE("region growing: two plateaus") {
    // Left 3x6 block at 200, right 3x6 block at 50.
    GrayImage img(6, 6, 50);
    for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 3; ++x) img.at(x, y) = 200;
    SegmentationConfig cfg;
    cfg.method = SegmentationMethod::region_growing;
    cfg.rg_seed_threshold = 180;
    cfg.rg_tolerance = 10;
    const BinaryMask m = region_grow(img, cfg);
    for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 6; ++x) CHECK(m.is_object(x, y) == (x < 3));
}

TEST_CASE("region growing follows a gradient within tolerance of the running mean") {
    // 1x5 ramp: seed 200, then 195, 190, 185, 120. Means stay within 10 of
    // the next value until the drop to 120.
    GrayImage img(5, 1, std::vector<std::uint8_t>{200, 195, 190, 185, 120});
    SegmentationConfig cfg;
    cfg.method = SegmentationMethod::region_growing;
    cfg.rg_seed_threshold = 200;
    cfg.rg_tolerance = 10;
    const BinaryMask m = region_grow(img, cfg);
    CHECK(m.is_object(0, 0));
    CHECK(m.is_object(1, 0));  // |195 - 200| = 5
    CHECK(m.is_object(2, 0));  // |190 - 197.5| = 7.5
    CHECK(m.is_object(3, 0));  // |185 - 195| = 10
    CHECK_FALSE(m.is_object(4, 0));
}

TEST_CASE("region growing dark polarity") {
    GrayImage img(3, 1, std::vector<std::uint8_t>{10, 15, 200});
    SegmentationConfig cfg;
    cfg.method = SegmentationMethod::region_growing;
    cfg.polarity = Polarity::dark_objects;
    cfg.rg_seed_threshold = 10;
    cfg.rg_tolerance = 5;
    const BinaryMask m = region_grow(img, cfg);
    CHECK(m.is_object(0, 0));
    CHECK(m.is_object(1, 0));
    CHECK_FALSE(m.is_object(2, 0));
}

TEST_CASE("property: region growing is translation invariant") {
    std::mt19937_64 rng(8);
    SegmentationConfig cfg;
    cfg.method = SegmentationMethod::region_growing;
    cfg.rg_seed_threshold = 180;
    cfg.rg_tolerance = 10;
    std::uniform_int_distribution<int> val(150, 255);
    for (int i = 0; i < 30; ++i) {
        const std::size_t w = 5 + rng() % 20, h = 5 + rng() % 20;
        GrayImage img(w, h);
        for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(val(rng));
        const std::size_t ox = rng() % 7, oy = rng() % 7;
        // Padding value 0 can never join a region whose pixels are all >= 150.
        GrayImage padded(w + ox + 3, h + oy + 2, 0);
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) padded.at(x + ox, y + oy) = img.at(x, y);
        const BinaryMask a = region_grow(img, cfg);
        const BinaryMask b = region_grow(padded, cfg);
        CHECK(b.object_count() == a.object_count());
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x) REQUIRE(b.at(x + ox, y + oy) == a.at(x, y));
    }
}

TEST_CASE("config validation") {
    SegmentationConfig cfg;
    cfg.rg_tolerance = 300;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.rg_tolerance = 0;
    cfg.rg_seed_threshold = -1;
    CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("segment falls back to all-background on a constant image") {
    const SegmentationResult r = segment(GrayImage(3, 3, 90), SegmentationConfig{});
    CHECK(r.degenerate);
    CHECK(r.mask.object_count() == 0);
}
