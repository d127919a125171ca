#pragma once

#include "slipkit/core.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace slipkit {

enum class ShapeKind { Bar, Ellipse, Superellipse };

std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> parse_shape(std::string_view name);

struct ShapeSpec {
    ShapeKind kind = ShapeKind::Bar;
    // Bar: full length and width. Ellipse/superellipse: semi-axes.
    double major = 40.0;
    double minor = 10.0;
    double cx = 0.0;
    double cy = 0.0;
    double angle = 0.0;     // degrees, screen-CCW from +x
    double exponent = 4.0;  // superellipse only: |u/a|^p + |v/b|^p <= 1

    double aspect() const { return major / minor; }
    // Farthest boundary point from the center, pixels.
    double circumradius() const;
};

struct NoiseSpec {
    double boundary_jitter_px = 0.0;  // RMS radial boundary displacement
    double speckle_rate = 0.0;        // per-pixel flip probability
    double size_drift = 0.0;          // max fractional area change per frame
    std::uint64_t seed = 0;

    bool is_clean() const { return boundary_jitter_px == 0.0 && speckle_rate == 0.0 && size_drift == 0.0; }
};

// Deterministic random source: std::mt19937_64 (fully specified by the
// standard) with the uniform and normal transforms implemented here, since
// the standard distributions differ between library vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Box-Muller, one variate per call.
    double normal();

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer; derives independent per-frame seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

struct SynthMask {
    BinaryMask mask;
    double true_angle = 0.0;    // spec.angle in [0, 180)
    bool angle_defined = true;  // false for isotropic shapes
};

// Rasterizes the rotated shape at pixel centers, then applies noise in the
// order size drift, boundary jitter, speckle. Throws InvalidArgument when
// the shape (plus drift and jitter margin) leaves the grid.
SynthMask gen_mask(const ShapeSpec& spec, int width, int height, const NoiseSpec& noise = {});

struct SynthFrame {
    BinaryMask mask;
    double ground_truth = 0.0;  // rotation relative to frame 0, degrees
};

// Renders spec rotated by each trajectory offset about its center. Frame i
// uses the sub-seed mix_seed(noise.seed, i). Offsets must lie in [0, 30]
// unless allow_wide is set.
std::vector<SynthFrame> gen_lift(const ShapeSpec& spec, const std::vector<double>& trajectory, int width,
                                 int height, const NoiseSpec& noise = {}, bool allow_wide = false);

struct LiftSpec {
    std::string id;
    ShapeSpec shape;
    std::vector<double> trajectory;
    NoiseSpec noise;
};

struct SuiteConfig {
    int width = 160;
    int height = 120;
    int frames = 31;
    std::uint64_t seed = 20230601;
    // Noise level of the standard suite.
    double boundary_jitter_px = 0.6;
    double speckle_rate = 0.0001;
    double size_drift = 0.04;
};

// Nine contact shapes times five slip trajectories (45 lifts).
std::vector<LiftSpec> standard_suite(const SuiteConfig& config = {});

// Trajectory profiles used by the standard suite, each spanning `frames`
// samples inside [0, 30].
std::vector<double> trajectory_profile(int profile, int frames);

}  // namespace slipkit
