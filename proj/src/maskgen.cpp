#include "slipkit/maskgen.hpp"

#include "slipkit/contour.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slipkit {

ProbabilityMap sigmoid_map(const Grid<double>& logits) {
    ProbabilityMap out(logits.rows(), logits.cols());
    const double* src = logits.data();
    double* dst = out.data();
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
        const double v = src[i];
        if (!std::isfinite(v)) {
            throw InvalidArgument("non-finite logit at index " + std::to_string(i) + " (row " +
                                  std::to_string(i / logits.cols()) + ", col " + std::to_string(i % logits.cols()) +
                                  ")");
        }
        // Split on sign so exp never overflows.
        dst[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
    }
    return out;
}

BinaryMask binarize(const ProbabilityMap& map, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidArgument("threshold must lie in (0, 1), got " + std::to_string(threshold));
    return map >= threshold;
}

GrayImage to_eight_bit(const BinaryMask& mask) {
    return mask.select(GrayImage::Constant(mask.rows(), mask.cols(), 255),
                       GrayImage::Zero(mask.rows(), mask.cols()));
}

BinaryMask from_eight_bit(const GrayImage& image) { return image != std::uint8_t{0}; }

DiffSegmentResult diff_segment(const GrayImage& contact, const GrayImage& reference, int delta) {
    if (contact.rows() != reference.rows() || contact.cols() != reference.cols())
        throw DimensionMismatch("contact and reference images differ in size");
    if (delta < 0) throw InvalidArgument("delta must be non-negative");

    const Grid<int> diff = (contact.cast<int>() - reference.cast<int>()).abs();
    const BinaryMask raw = diff >= delta;

    DiffSegmentResult result{BinaryMask::Zero(raw.rows(), raw.cols()), delta == 0};
    const auto comps = connected_components(raw);
    if (!comps.empty()) result.mask = component_mask(comps.front(), raw.rows(), raw.cols());
    return result;
}

namespace {

constexpr double kEdgeEps = 1e-9;

void set_if_inside(BinaryMask& mask, long x, long y) {
    if (x >= 0 && y >= 0 && x < mask.cols() && y < mask.rows()) mask(y, x) = true;
}

}  // namespace

BinaryMask rasterize_polygon(const PolygonAnnotation& ann, int width, int height) {
    const auto& v = ann.points;
    if (v.size() < 3) throw InvalidArgument("polygon '" + ann.label + "' has fewer than 3 vertices");
    if (width < 1 || height < 1) throw InvalidArgument("raster dimensions must be positive");

    double twice_area = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& [x0, y0] = v[i];
        const auto& [x1, y1] = v[(i + 1) % v.size()];
        twice_area += x0 * y1 - x1 * y0;
    }
    if (std::abs(twice_area) < kEdgeEps) throw InvalidArgument("polygon '" + ann.label + "' has zero area");

    BinaryMask mask = BinaryMask::Zero(height, width);
    std::vector<double> xs;

    // Interior: even-odd scanline fill through pixel-center rows. Edges are
    // half-open in y so shared vertices are counted once.
    for (int y = 0; y < height; ++y) {
        xs.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            auto [x0, y0] = v[i];
            auto [x1, y1] = v[(i + 1) % v.size()];
            if (y0 == y1) continue;
            if (y0 > y1) {
                std::swap(x0, x1);
                std::swap(y0, y1);
            }
            if (y < y0 || y >= y1) continue;
            xs.push_back(x0 + (y - y0) * (x1 - x0) / (y1 - y0));
        }
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const long first = std::max(0L, static_cast<long>(std::ceil(xs[k] - kEdgeEps)));
            const long last = std::min<long>(width - 1, static_cast<long>(std::floor(xs[k + 1] + kEdgeEps)));
            for (long x = first; x <= last; ++x) mask(y, x) = true;
        }
    }

    // Boundary: pixel centers lying exactly on an edge.
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto [x0, y0] = v[i];
        auto [x1, y1] = v[(i + 1) % v.size()];
        if (std::abs(y1 - y0) < kEdgeEps) {
            const double yr = std::round(y0);
            if (std::abs(y0 - yr) > kEdgeEps) continue;
            const long first = static_cast<long>(std::ceil(std::min(x0, x1) - kEdgeEps));
            const long last = static_cast<long>(std::floor(std::max(x0, x1) + kEdgeEps));
            for (long x = first; x <= last; ++x) set_if_inside(mask, x, static_cast<long>(yr));
            continue;
        }
        const long first = static_cast<long>(std::ceil(std::min(y0, y1) - kEdgeEps));
        const long last = static_cast<long>(std::floor(std::max(y0, y1) + kEdgeEps));
        for (long y = first; y <= last; ++y) {
            const double x = x0 + (static_cast<double>(y) - y0) * (x1 - x0) / (y1 - y0);
            const double xr = std::round(x);
            if (std::abs(x - xr) <= kEdgeEps) set_if_inside(mask, static_cast<long>(xr), y);
        }
    }
    return mask;
}

BinaryMask rasterize_annotations(const std::vector<PolygonAnnotation>& shapes, int width, int height) {
    BinaryMask mask = BinaryMask::Zero(height, width);
    for (const auto& s : shapes) mask = mask || rasterize_polygon(s, width, height);
    return mask;
}

}  // namespace slipkit
