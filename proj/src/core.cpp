#include "slipkit/core.hpp"

#include <algorithm>

namespace slipkit {

PointMatrix<double> mask_points(const BinaryMask& mask) {
    PointMatrix<double> pts(mask.count(), 2);
    Eigen::Index k = 0;
    for (Eigen::Index y = 0; y < mask.rows(); ++y) {
        for (Eigen::Index x = 0; x < mask.cols(); ++x) {
            if (!mask(y, x)) continue;
            pts(k, 0) = static_cast<double>(x);
            pts(k, 1) = static_cast<double>(y);
            ++k;
        }
    }
    return pts;
}

EllipseParams EllipseParams::make(double cx, double cy, double a, double b, double theta_deg) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidArgument("ellipse axes must be positive");
    if (a < b) {
        std::swap(a, b);
        theta_deg += 90.0;
    }
    return {cx, cy, a, b, canonical_axis(theta_deg)};
}

GrayImage luminance(const RgbImage& image) {
    if (image.width < 1 || image.height < 1) throw InvalidArgument("luminance of an empty image");
    if (image.data.size() != 3u * static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height))
        throw DimensionMismatch("RGB buffer size does not match dimensions");
    GrayImage out(image.height, image.width);
    auto* dst = out.data();
    for (std::size_t i = 0; i < static_cast<std::size_t>(out.size()); ++i) {
        const double y = 0.299 * image.data[3 * i] + 0.587 * image.data[3 * i + 1] + 0.114 * image.data[3 * i + 2];
        dst[i] = static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
    }
    return out;
}

}  // namespace slipkit
