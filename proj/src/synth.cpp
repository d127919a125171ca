#include "slipkit/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

namespace slipkit {

std::string_view to_string(ShapeKind kind) {
    switch (kind) {
        case ShapeKind::Bar: return "bar";
        case ShapeKind::Ellipse: return "ellipse";
        case ShapeKind::Superellipse: return "superellipse";
    }
    return "?";
}

std::optional<ShapeKind> parse_shape(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "bar") return ShapeKind::Bar;
    if (lower == "ellipse") return ShapeKind::Ellipse;
    if (lower == "superellipse") return ShapeKind::Superellipse;
    return std::nullopt;
}

double ShapeSpec::circumradius() const {
    if (kind == ShapeKind::Bar) return std::hypot(major / 2.0, minor / 2.0);
    return std::max(major, minor);
}

double Rng::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

constexpr int kFirstHarmonic = 2;
constexpr int kLastHarmonic = 6;
constexpr int kHarmonics = kLastHarmonic - kFirstHarmonic + 1;

// Distance-like gauge: 1 on the boundary, homogeneous of degree one.
double gauge(const ShapeSpec& s, double u, double v) {
    switch (s.kind) {
        case ShapeKind::Bar: return std::max(std::abs(u) / (s.major / 2.0), std::abs(v) / (s.minor / 2.0));
        case ShapeKind::Ellipse: return std::hypot(u / s.major, v / s.minor);
        case ShapeKind::Superellipse:
            return std::pow(std::pow(std::abs(u / s.major), s.exponent) + std::pow(std::abs(v / s.minor), s.exponent),
                            1.0 / s.exponent);
    }
    return 0.0;
}

void validate(const ShapeSpec& spec) {
    if (!(spec.major > 0.0) || !(spec.minor > 0.0)) throw InvalidArgument("shape axes must be positive");
    if (spec.major < spec.minor) throw InvalidArgument("shape major axis must not be shorter than its minor axis");
    if (spec.kind == ShapeKind::Superellipse && !(spec.exponent > 0.0))
        throw InvalidArgument("superellipse exponent must be positive");
}

void validate(const NoiseSpec& noise) {
    if (noise.boundary_jitter_px < 0.0) throw InvalidArgument("boundary jitter must be non-negative");
    if (noise.speckle_rate < 0.0 || noise.speckle_rate > 1.0) throw InvalidArgument("speckle rate must lie in [0, 1]");
    if (noise.size_drift < 0.0 || noise.size_drift >= 1.0) throw InvalidArgument("size drift must lie in [0, 1)");
}

}  // namespace

SynthMask gen_mask(const ShapeSpec& spec, int width, int height, const NoiseSpec& noise) {
    validate(spec);
    validate(noise);
    if (width < 1 || height < 1) throw InvalidArgument("image dimensions must be positive");

    const double extent = spec.circumradius() * std::sqrt(1.0 + noise.size_drift) + noise.boundary_jitter_px;
    if (spec.cx - extent < 0.0 || spec.cy - extent < 0.0 || spec.cx + extent > width - 1 ||
        spec.cy + extent > height - 1)
        throw InvalidArgument("shape does not fit inside " + std::to_string(width) + "x" + std::to_string(height));

    Rng rng(noise.seed);

    // Size drift: isotropic scale giving an area change in [-drift, drift].
    double scale = 1.0;
    if (noise.size_drift > 0.0) scale = std::sqrt(1.0 + noise.size_drift * rng.uniform(-1.0, 1.0));

    // Boundary jitter: random low-order harmonics of the radial boundary
    // offset, with expected RMS equal to boundary_jitter_px.
    std::array<double, kHarmonics> cos_coef{}, sin_coef{};
    if (noise.boundary_jitter_px > 0.0) {
        const double sigma = noise.boundary_jitter_px / std::sqrt(static_cast<double>(kHarmonics));
        for (int k = 0; k < kHarmonics; ++k) {
            cos_coef[static_cast<std::size_t>(k)] = sigma * rng.normal();
            sin_coef[static_cast<std::size_t>(k)] = sigma * rng.normal();
        }
    }

    const double t = deg2rad(spec.angle);
    const double ct = std::cos(t), st = std::sin(t);
    BinaryMask mask = BinaryMask::Zero(height, width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double dx = x - spec.cx, dy = y - spec.cy;
            // Shape frame: u along the major axis (screen-CCW angle), v across it.
            const double u = (dx * ct - dy * st) / scale;
            const double v = (dx * st + dy * ct) / scale;
            const double f = gauge(spec, u, v);
            if (noise.boundary_jitter_px == 0.0) {
                mask(y, x) = f <= 1.0;
                continue;
            }
            const double r = std::hypot(u, v);
            if (r == 0.0) {
                mask(y, x) = true;
                continue;
            }
            const double phi = std::atan2(v, u);
            double offset = 0.0;
            for (int k = 0; k < kHarmonics; ++k) {
                const double kk = k + kFirstHarmonic;
                offset += cos_coef[static_cast<std::size_t>(k)] * std::cos(kk * phi) +
                          sin_coef[static_cast<std::size_t>(k)] * std::sin(kk * phi);
            }
            // Boundary radius along this ray, in image pixels.
            const double boundary = scale * r / f + offset;
            mask(y, x) = scale * r <= boundary;
        }
    }

    if (noise.speckle_rate > 0.0) {
        for (Eigen::Index i = 0; i < mask.size(); ++i)
            if (rng.uniform() < noise.speckle_rate) mask.data()[i] = !mask.data()[i];
    }

    SynthMask out;
    out.mask = std::move(mask);
    out.true_angle = canonical_axis(spec.angle);
    out.angle_defined = spec.major != spec.minor;
    return out;
}

std::vector<SynthFrame> gen_lift(const ShapeSpec& spec, const std::vector<double>& trajectory, int width, int height,
                                 const NoiseSpec& noise, bool allow_wide) {
    if (trajectory.empty()) throw InvalidArgument("trajectory has no frames");
    for (double a : trajectory) {
        if (!std::isfinite(a)) throw InvalidArgument("trajectory contains a non-finite angle");
        if (!allow_wide && (a < 0.0 || a > 30.0))
            throw InvalidArgument("trajectory angle " + std::to_string(a) + " outside [0, 30]");
    }
    std::vector<SynthFrame> frames;
    frames.reserve(trajectory.size());
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        ShapeSpec s = spec;
        s.angle = spec.angle + trajectory[i];
        NoiseSpec n = noise;
        n.seed = mix_seed(noise.seed, i);
        frames.push_back({gen_mask(s, width, height, n).mask, trajectory[i] - trajectory.front()});
    }
    return frames;
}

std::vector<double> trajectory_profile(int profile, int frames) {
    if (frames < 1) throw InvalidArgument("trajectory needs at least one frame");
    std::vector<double> out(static_cast<std::size_t>(frames));
    auto logistic = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
    for (int i = 0; i < frames; ++i) {
        const double t = frames == 1 ? 0.0 : static_cast<double>(i) / (frames - 1);
        double a = 0.0;
        switch (profile) {
            case 0: a = 30.0 * t; break;      // steady slip over the whole lift
            case 1: a = 25.0 * t * t; break;  // accelerating slip
            case 2: {                         // sudden slip mid-lift
                const double lo = logistic(-6.0), hi = logistic(6.0);
                a = 20.0 * (logistic(12.0 * (t - 0.5)) - lo) / (hi - lo);
                break;
            }
            case 3:  // stick, slip, stick
                a = t < 0.3 ? 0.0 : (t < 0.6 ? 18.0 * (t - 0.3) / 0.3 : 18.0);
                break;
            case 4: a = 12.0 * t; break;  // slow creep
            default: throw InvalidArgument("unknown trajectory profile " + std::to_string(profile));
        }
        out[static_cast<std::size_t>(i)] = a;
    }
    return out;
}

std::vector<LiftSpec> standard_suite(const SuiteConfig& config) {
    const double cx = (config.width - 1) / 2.0, cy = (config.height - 1) / 2.0;
    struct Shape {
        ShapeKind kind;
        double major, minor, angle, exponent;
    };
    const std::array<Shape, 9> shapes{{
        {ShapeKind::Bar, 40.0, 10.0, 0.0, 0.0},
        {ShapeKind::Bar, 50.0, 14.0, 35.0, 0.0},
        {ShapeKind::Bar, 36.0, 12.0, 120.0, 0.0},
        {ShapeKind::Ellipse, 22.0, 9.0, 70.0, 0.0},
        {ShapeKind::Ellipse, 26.0, 12.0, 150.0, 0.0},
        {ShapeKind::Ellipse, 18.0, 8.0, 100.0, 0.0},
        {ShapeKind::Superellipse, 24.0, 10.0, 15.0, 4.0},
        {ShapeKind::Superellipse, 20.0, 9.0, 55.0, 3.0},
        {ShapeKind::Superellipse, 28.0, 13.0, 165.0, 6.0},
    }};

    std::vector<LiftSpec> suite;
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        for (int p = 0; p < 5; ++p) {
            LiftSpec lift;
            lift.id = "obj" + std::to_string(s + 1) + "_lift" + std::to_string(p + 1);
            lift.shape = {shapes[s].kind, shapes[s].major, shapes[s].minor, cx, cy, shapes[s].angle,
                          shapes[s].exponent > 0.0 ? shapes[s].exponent : 4.0};
            lift.trajectory = trajectory_profile(p, config.frames);
            lift.noise = {config.boundary_jitter_px, config.speckle_rate, config.size_drift,
                          mix_seed(config.seed, suite.size())};
            suite.push_back(std::move(lift));
        }
    }
    return suite;
}

}  // namespace slipkit
