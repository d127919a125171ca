#pragma once

// Independent reference implementations and mask helpers shared by the test
// binaries. Nothing here calls into the library except for type aliases.

#include "slipkit/core.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace slipkit::test {

inline BinaryMask random_mask(std::mt19937_64& rng, int rows, int cols, double density) {
    std::bernoulli_distribution on(density);
    BinaryMask m(rows, cols);
    for (int y = 0; y < rows; ++y)
        for (int x = 0; x < cols; ++x) m(y, x) = on(rng);
    return m;
}

struct PixelCounts {
    long inter = 0, pred = 0, truth = 0, uni = 0;
};

inline PixelCounts count_pixels(const BinaryMask& p, const BinaryMask& t) {
    PixelCounts c;
    for (Eigen::Index y = 0; y < p.rows(); ++y) {
        for (Eigen::Index x = 0; x < p.cols(); ++x) {
            const bool a = p(y, x), b = t(y, x);
            if (a) ++c.pred;
            if (b) ++c.truth;
            if (a && b) ++c.inter;
            if (a || b) ++c.uni;
        }
    }
    return c;
}

// Crossing-number point-in-polygon test; points on an edge count as inside.
inline bool point_in_polygon(double px, double py, const std::vector<std::pair<double, double>>& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x1, y1] = poly[i];
        const auto [x2, y2] = poly[(i + 1) % n];
        const double cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1);
        if (std::abs(cross) < 1e-12 && px >= std::min(x1, x2) - 1e-12 && px <= std::max(x1, x2) + 1e-12 &&
            py >= std::min(y1, y2) - 1e-12 && py <= std::max(y1, y2) + 1e-12)
            return true;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const auto [xi, yi] = poly[i];
        const auto [xj, yj] = poly[j];
        if ((yi > py) != (yj > py) && px < (xj - xi) * (py - yi) / (yj - yi) + xi) inside = !inside;
    }
    return inside;
}

// Textbook two-subiteration Zhang-Suen thinning on a nested vector image.
// Written separately from the library version: neighbors are read through a
// bounds-checked accessor and deletion uses a copy of the image per pass.
inline std::vector<std::vector<int>> reference_thinning(std::vector<std::vector<int>> img) {
    const int rows = static_cast<int>(img.size());
    const int cols = rows ? static_cast<int>(img[0].size()) : 0;
    auto at = [&](const std::vector<std::vector<int>>& g, int y, int x) {
        return (y < 0 || y >= rows || x < 0 || x >= cols) ? 0 : g[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
    };
    for (;;) {
        int removed = 0;
        for (int step = 1; step <= 2; ++step) {
            const auto snapshot = img;
            for (int y = 0; y < rows; ++y) {
                for (int x = 0; x < cols; ++x) {
                    if (!at(snapshot, y, x)) continue;
                    const int P2 = at(snapshot, y - 1, x), P3 = at(snapshot, y - 1, x + 1);
                    const int P4 = at(snapshot, y, x + 1), P5 = at(snapshot, y + 1, x + 1);
                    const int P6 = at(snapshot, y + 1, x), P7 = at(snapshot, y + 1, x - 1);
                    const int P8 = at(snapshot, y, x - 1), P9 = at(snapshot, y - 1, x - 1);
                    const int B = P2 + P3 + P4 + P5 + P6 + P7 + P8 + P9;
                    const int A = (!P2 && P3) + (!P3 && P4) + (!P4 && P5) + (!P5 && P6) + (!P6 && P7) +
                                  (!P7 && P8) + (!P8 && P9) + (!P9 && P2);
                    bool c3, c4;
                    if (step == 1) {
                        c3 = P2 * P4 * P6 == 0;
                        c4 = P4 * P6 * P8 == 0;
                    } else {
                        c3 = P2 * P4 * P8 == 0;
                        c4 = P2 * P6 * P8 == 0;
                    }
                    if (B >= 2 && B <= 6 && A == 1 && c3 && c4) {
                        img[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = 0;
                        ++removed;
                    }
                }
            }
        }
        if (removed == 0) return img;
    }
}

inline std::vector<std::vector<int>> to_nested(const BinaryMask& m) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(m.rows()), std::vector<int>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index y = 0; y < m.rows(); ++y)
        for (Eigen::Index x = 0; x < m.cols(); ++x) out[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = m(y, x);
    return out;
}

inline BinaryMask from_nested(const std::vector<std::vector<int>>& g) {
    BinaryMask m(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.empty() ? 0 : g[0].size()));
    for (Eigen::Index y = 0; y < m.rows(); ++y)
        for (Eigen::Index x = 0; x < m.cols(); ++x) m(y, x) = g[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] != 0;
    return m;
}

// Integer shift with zero fill.
inline BinaryMask shift_mask(const BinaryMask& m, int dx, int dy) {
    BinaryMask out = BinaryMask::Constant(m.rows(), m.cols(), false);
    for (Eigen::Index y = 0; y < m.rows(); ++y) {
        for (Eigen::Index x = 0; x < m.cols(); ++x) {
            const Eigen::Index sy = y - dy, sx = x - dx;
            if (sy >= 0 && sy < m.rows() && sx >= 0 && sx < m.cols()) out(y, x) = m(sy, sx);
        }
    }
    return out;
}

// Each pixel becomes a 2x2 block.
inline BinaryMask upscale2(const BinaryMask& m) {
    BinaryMask out(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index y = 0; y < out.rows(); ++y)
        for (Eigen::Index x = 0; x < out.cols(); ++x) out(y, x) = m(y / 2, x / 2);
    return out;
}

// Nearest-neighbor rotation by deg (screen-CCW) about (cx, cy).
inline BinaryMask rotate_mask(const BinaryMask& m, double deg, double cx, double cy) {
    const double t = deg * 3.14159265358979323846 / 180.0;
    const double c = std::cos(t), s = std::sin(t);
    BinaryMask out = BinaryMask::Constant(m.rows(), m.cols(), false);
    for (Eigen::Index y = 0; y < m.rows(); ++y) {
        for (Eigen::Index x = 0; x < m.cols(); ++x) {
            // Inverse map: rotate the destination point by -deg. With y down,
            // a screen-CCW rotation by t maps (u, v) to (u c + v s, -u s + v c).
            const double u = static_cast<double>(x) - cx, v = static_cast<double>(y) - cy;
            const double su = u * c - v * s, sv = u * s + v * c;
            const long sx = std::lround(su + cx), sy = std::lround(sv + cy);
            if (sy >= 0 && sy < m.rows() && sx >= 0 && sx < m.cols()) out(y, x) = m(sy, sx);
        }
    }
    return out;
}

// Smallest difference between two unoriented axes, degrees in [0, 90].
inline double axis_diff(double a, double b) {
    double d = std::fmod(std::abs(a - b), 180.0);
    return d > 90.0 ? 180.0 - d : d;
}

}  // namespace slipkit::test
