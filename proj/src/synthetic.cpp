#include "objcount/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "objcount/error.hpp"

namespace objcount {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t density, std::uint64_t trial) {
    return splitmix64(splitmix64(splitmix64(seed) ^ density) ^ trial);
}

void SceneSpec::validate() const {
    if (width == 0 || height == 0 || width > kMaxImageSide || height > kMaxImageSide) {
        throw Error(ErrorCode::impossible_scene, "scene size must be within 1..65535 per side");
    }
    if (diameter_min < 1 || diameter_min > diameter_max) {
        throw Error(ErrorCode::impossible_scene, "disc diameters must satisfy 1 <= min <= max");
    }
    if (placement == Placement::full_inside &&
        static_cast<std::size_t>(diameter_max) > std::min(width, height)) {
        throw Error(ErrorCode::impossible_scene,
                    "disc diameter " + std::to_string(diameter_max) + " does not fit inside a " +
                        std::to_string(width) + "x" + std::to_string(height) + " frame");
    }
}

std::uint64_t rasterize_disc(const Disc& disc, BinaryMask* mask, std::size_t width, std::size_t height) {
    const double r = disc.diameter / 2.0;
    const double r2 = r * r;
    auto inside = [&](long px, double dy2) {
        const double dx = static_cast<double>(px) + 0.5 - disc.cx;
        return dx * dx + dy2 <= r2;
    };
    const long w = static_cast<long>(width);
    const long h = static_cast<long>(height);
    const long y0 = std::max(0L, static_cast<long>(std::floor(disc.cy - r - 0.5)));
    const long y1 = std::min(h - 1, static_cast<long>(std::ceil(disc.cy + r - 0.5)));

    std::uint64_t area = 0;
    for (long py = y0; py <= y1; ++py) {
        const double dy = static_cast<double>(py) + 0.5 - disc.cy;
        const double dy2 = dy * dy;
        if (dy2 > r2) {
            continue;
        }
        // The sqrt gives the span up to rounding; the endpoints are then
        // settled with the exact membership test.
        const double half = std::sqrt(r2 - dy2);
        long lo = static_cast<long>(std::ceil(disc.cx - half - 0.5));
        long hi = static_cast<long>(std::floor(disc.cx + half - 0.5));
        while (inside(lo - 1, dy2)) --lo;
        while (lo <= hi && !inside(lo, dy2)) ++lo;
        while (inside(hi + 1, dy2)) ++hi;
        while (hi >= lo && !inside(hi, dy2)) --hi;
        lo = std::max(lo, 0L);
        hi = std::min(hi, w - 1);
        if (lo > hi) {
            continue;
        }
        area += static_cast<std::uint64_t>(hi - lo + 1);
        if (mask != nullptr) {
            for (long px = lo; px <= hi; ++px) {
                mask->at(static_cast<std::size_t>(px), static_cast<std::size_t>(py)) = Label::object;
            }
        }
    }
    return area;
}

SceneTruth generate_scene(const SceneSpec& spec) {
    spec.validate();
    SceneRng rng(spec.seed);
    SceneTruth truth;
    truth.mask = BinaryMask(spec.width, spec.height);
    truth.discs.reserve(spec.n_discs);

    const double w = static_cast<double>(spec.width);
    const double h = static_cast<double>(spec.height);
    for (std::size_t i = 0; i < spec.n_discs; ++i) {
        Disc disc;
        disc.diameter = spec.diameter_min == spec.diameter_max
                            ? spec.diameter_min
                            : rng.uniform_int(spec.diameter_min, spec.diameter_max);
        const double r = disc.diameter / 2.0;
        if (spec.placement == Placement::full_inside) {
            disc.cx = rng.uniform(r, w - r);
            disc.cy = rng.uniform(r, h - r);
        } else {
            disc.cx = rng.uniform(0.0, w);
            disc.cy = rng.uniform(0.0, h);
        }
        truth.individual_area += rasterize_disc(disc, &truth.mask, spec.width, spec.height);
        truth.discs.push_back(disc);
    }

    const auto union_area = static_cast<double>(truth.mask.object_count());
    truth.occupancy = union_area / static_cast<double>(truth.mask.size());
    truth.overlap = truth.individual_area ? 1.0 - union_area / static_cast<double>(truth.individual_area) : 0.0;
    return truth;
}

ExperimentResult run_density_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials == 0) {
        throw Error(ErrorCode::invalid_parameter, "trials must be at least 1");
    }
    cfg.estimator.validate();
    cfg.scene.validate();
    const double truth = cfg.scene.mean_diameter();

    ExperimentResult result;
    result.tolerance = cfg.tolerance;
    for (std::size_t density : cfg.densities) {
        DensityResult row;
        row.density = density;
        row.trials = cfg.trials;
        row.estimates.reserve(cfg.trials);
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            SceneSpec spec = cfg.scene;
            spec.n_discs = density;
            spec.seed = derive_seed(cfg.scene.seed, density, trial);
            const SceneTruth scene = generate_scene(spec);
            std::size_t estimate = 0;
            try {
                estimate = estimate_size(scene.mask, cfg.estimator).diameter;
            } catch (const Error& e) {
                // A scene with no discs has no size to estimate; it counts as a miss.
                if (e.code() != ErrorCode::empty_histogram) {
                    throw;
                }
            }
            row.estimates.push_back(estimate);
            if (std::abs(static_cast<double>(estimate) - truth) > cfg.tolerance) {
                ++row.errors;
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

void write_csv(const ExperimentResult& result, std::ostream& out) {
    out << "density,trials,errors,error_rate\n";
    char buf[128];
    for (const auto& row : result.rows) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%.6f\n", row.density, row.trials, row.errors, row.error_rate());
        out << buf;
    }
}

}  // namespace objcount
