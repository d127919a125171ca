#include "slipkit/estimators.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <vector>

namespace slipkit {

std::string_view to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Skeleton: return "skeleton";
        case EstimatorKind::PCA: return "pca";
        case EstimatorKind::Ellipse: return "ellipse";
    }
    return "?";
}

std::optional<EstimatorKind> parse_estimator(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "skeleton") return EstimatorKind::Skeleton;
    if (lower == "pca") return EstimatorKind::PCA;
    if (lower == "ellipse") return EstimatorKind::Ellipse;
    return std::nullopt;
}

BinaryMask skeletonize(const BinaryMask& mask) {
    if (!mask.any()) throw NoContact("cannot skeletonize an empty mask");

    const Eigen::Index rows = mask.rows(), cols = mask.cols();
    // One-pixel background border so the neighborhood reads need no checks.
    Grid<std::uint8_t> img = Grid<std::uint8_t>::Zero(rows + 2, cols + 2);
    img.block(1, 1, rows, cols) = mask.cast<std::uint8_t>();

    std::vector<std::pair<Eigen::Index, Eigen::Index>> marked;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int pass = 0; pass < 2; ++pass) {
            marked.clear();
            for (Eigen::Index y = 1; y <= rows; ++y) {
                for (Eigen::Index x = 1; x <= cols; ++x) {
                    if (!img(y, x)) continue;
                    // p2..p9 clockwise from north.
                    const std::array<int, 8> p{img(y - 1, x),     img(y - 1, x + 1), img(y, x + 1),
                                               img(y + 1, x + 1), img(y + 1, x),     img(y + 1, x - 1),
                                               img(y, x - 1),     img(y - 1, x - 1)};
                    int neighbors = 0, transitions = 0;
                    for (int i = 0; i < 8; ++i) {
                        neighbors += p[static_cast<std::size_t>(i)];
                        transitions += (p[static_cast<std::size_t>(i)] == 0 && p[static_cast<std::size_t>((i + 1) % 8)] == 1);
                    }
                    if (neighbors < 2 || neighbors > 6 || transitions != 1) continue;
                    const int n = p[0], e = p[2], s = p[4], w = p[6];
                    const bool remove = pass == 0 ? (n * e * s == 0 && e * s * w == 0)
                                                  : (n * e * w == 0 && n * s * w == 0);
                    if (remove) marked.emplace_back(y, x);
                }
            }
            for (const auto& [y, x] : marked) img(y, x) = 0;
            changed = changed || !marked.empty();
        }
    }
    return img.block(1, 1, rows, cols) != std::uint8_t{0};
}

double axis_angle_from_skeleton(const BinaryMask& skeleton) {
    if (skeleton.count() < 2) throw DegenerateSkeleton("skeleton has fewer than 2 pixels");
    return principal_axis(mask_points(skeleton)).angle();
}

AxisEstimate pca_angle(const BinaryMask& mask, const EstimatorOptions& opts) {
    if (!mask.any()) throw NoContact("empty mask");
    const auto axis = principal_axis(mask_points(mask));
    const double elong = axis.elongation();
    return {axis.angle(), elong, elong >= opts.elongation_min};
}

AxisEstimate ellipse_angle(const BinaryMask& mask, const EstimatorOptions& opts) {
    const Contour contour = predominant_contour(mask, opts.min_area);
    const EllipseParams e = fit_ellipse(to_points(contour.points));
    return {e.theta, e.aspect(), e.aspect() >= opts.elongation_min};
}

AxisEstimate skeleton_angle(const BinaryMask& mask, const EstimatorOptions& opts) {
    BinaryMask region;
    double elong = 0.0;
    if (opts.skeleton_on_denoised) {
        auto denoised = ellipse_denoise_ex(mask, {.min_area = opts.min_area});
        region = std::move(denoised.mask);
        elong = denoised.ellipse.aspect();
    } else {
        const auto comps = connected_components(mask);
        if (comps.empty() || comps.front().area() < opts.min_area) throw NoContact("no contact region");
        region = component_mask(comps.front(), mask.rows(), mask.cols());
        elong = principal_axis(mask_points(region)).elongation();
    }
    const double angle = axis_angle_from_skeleton(skeletonize(region));
    return {angle, elong, elong >= opts.elongation_min};
}

AxisEstimate estimate_axis(const BinaryMask& mask, EstimatorKind kind, const EstimatorOptions& opts) {
    switch (kind) {
        case EstimatorKind::Skeleton: return skeleton_angle(mask, opts);
        case EstimatorKind::PCA: return pca_angle(mask, opts);
        case EstimatorKind::Ellipse: return ellipse_angle(mask, opts);
    }
    throw InvalidArgument("unknown estimator");
}

double relative_angle(double current_axis, double initial_axis) {
    double d = std::fmod(current_axis - initial_axis, 180.0);
    if (d > 90.0) d -= 180.0;
    if (d < -90.0) d += 180.0;
    return d;
}

WindowFilter::WindowFilter(int n) : n_(n) {
    if (n < 1) throw InvalidArgument("window size must be at least 1");
}

double WindowFilter::push(double value) {
    buffer_.push_back(value);
    if (buffer_.size() > static_cast<std::size_t>(n_)) buffer_.pop_front();
    double sum = 0.0;
    for (double v : buffer_) sum += v;
    return sum / static_cast<double>(buffer_.size());
}

std::vector<FrameEstimate> estimate_frames(std::span<const BinaryMask> masks, EstimatorKind kind,
                                           const EstimatorOptions& opts) {
    std::vector<FrameEstimate> out;
    out.reserve(masks.size());
    for (const auto& mask : masks) {
        FrameEstimate fe;
        try {
            fe.axis = estimate_axis(mask, kind, opts);
        } catch (const NoContact& e) {
            fe.failure = e.what();
        } catch (const DegenerateFit& e) {
            fe.failure = e.what();
        } catch (const DegenerateSkeleton& e) {
            fe.failure = e.what();
        }
        out.push_back(std::move(fe));
    }
    return out;
}

std::vector<AngleSample> filter_frames(std::span<const FrameEstimate> frames, int window) {
    if (frames.empty()) throw InvalidArgument("empty frame sequence");
    const FrameEstimate& first = frames.front();
    if (!first.axis) throw InitialContactUnreliable("first frame: " + first.failure);
    if (!first.axis->reliable)
        throw InitialContactUnreliable("first frame: contact is nearly isotropic (axis ratio " +
                                       std::to_string(first.axis->elongation) + ")");

    WindowFilter filter(window);
    const double initial = first.axis->angle;
    std::vector<AngleSample> samples;
    samples.reserve(frames.size());
    double last_raw = 0.0, last_filtered = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& f = frames[i];
        AngleSample s;
        s.frame_index = static_cast<int>(i);
        if (f.axis && f.axis->reliable) {
            s.raw_angle = relative_angle(f.axis->angle, initial);
            s.filtered_angle = filter.push(s.raw_angle);
            s.reliable = true;
            last_raw = s.raw_angle;
            last_filtered = s.filtered_angle;
        } else {
            s.raw_angle = f.axis ? relative_angle(f.axis->angle, initial) : last_raw;
            s.filtered_angle = last_filtered;
            s.reliable = false;
        }
        samples.push_back(s);
    }
    return samples;
}

std::vector<AngleSample> track_lift(std::span<const BinaryMask> masks, EstimatorKind kind, int window,
                                    const EstimatorOptions& opts) {
    if (masks.empty()) throw InvalidArgument("empty mask sequence");
    if (window < 1) throw InvalidArgument("window size must be at least 1");
    const auto frames = estimate_frames(masks, kind, opts);
    return filter_frames(frames, window);
}

}  // namespace slipkit
