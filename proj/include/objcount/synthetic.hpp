#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "objcount/image.hpp"
#include "objcount/sizing.hpp"

namespace objcount {

/// Platform-independent random source for scene generation.
///
/// Raw numbers come from std::mt19937_64 (its output sequence is fixed by
/// the standard). Reals are built from the top 53 bits, integers by
/// modulo reduction, so no implementation-defined distribution is involved.
class SceneRng {
public:
    explicit SceneRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next() % span);
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for one (density, trial) cell of an experiment:
/// splitmix64(splitmix64(splitmix64(seed) ^ density) ^ trial).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t density, std::uint64_t trial);

enum class Placement {
    full_inside,  ///< every disc lies entirely within the frame
    anywhere,     ///< centres anywhere in the frame; discs may be clipped
};

struct SceneSpec {
    std::size_t width = 1000;
    std::size_t height = 1000;
    int diameter_min = 100;  ///< per-disc diameter is uniform over [diameter_min, diameter_max]
    int diameter_max = 100;
    std::size_t n_discs = 0;
    std::uint64_t seed = 0;
    Placement placement = Placement::full_inside;

    /// Throws Error(impossible_scene) when the spec cannot be realised.
    void validate() const;
    double mean_diameter() const { return (diameter_min + diameter_max) / 2.0; }
};

struct Disc {
    double cx = 0.0;
    double cy = 0.0;
    int diameter = 0;
};

struct SceneTruth {
    BinaryMask mask;
    std::vector<Disc> discs;
    std::uint64_t individual_area = 0;  ///< sum of each disc's own rasterized pixel count
    double occupancy = 0.0;             ///< object pixels / all pixels
    double overlap = 0.0;               ///< 1 - union / individual_area

    std::size_t n_discs() const noexcept { return discs.size(); }
};

/// Pixel (px, py) is object iff (px + 0.5 - cx)^2 + (py + 0.5 - cy)^2 <= r^2
/// for some disc.
SceneTruth generate_scene(const SceneSpec& spec);

/// Number of pixels a single disc covers under the scene rasterization rule,
/// clipped to a width x height frame.
std::uint64_t rasterize_disc(const Disc& disc, BinaryMask* mask, std::size_t width, std::size_t height);

struct ExperimentConfig {
    std::vector<std::size_t> densities;
    std::size_t trials = 100;
    SceneSpec scene;  ///< template; n_discs and seed are overridden per trial
    EstimatorConfig estimator;
    double tolerance = 3.0;  ///< an estimate off by more than this is an error
};

struct DensityResult {
    std::size_t density = 0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    std::vector<std::size_t> estimates;  ///< per trial, in trial order

    double error_rate() const { return trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0; }
};

struct ExperimentResult {
    std::vector<DensityResult> rows;
    double tolerance = 3.0;
};

/// For each density, generates `trials` scenes (seeded by derive_seed) and
/// runs the size estimator directly on the generated masks.
ExperimentResult run_density_experiment(const ExperimentConfig& cfg);

/// "density,trials,errors,error_rate" with a header row.
void write_csv(const ExperimentResult& result, std::ostream& out);

}  // namespace objcount
