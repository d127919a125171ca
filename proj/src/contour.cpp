#include "slipkit/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

namespace slipkit {

namespace {

// Clockwise on screen (y down), starting west.
constexpr std::array<PixelPoint, 8> kMoore{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

bool is_set(const BinaryMask& mask, int x, int y) {
    return x >= 0 && y >= 0 && x < mask.cols() && y < mask.rows() && mask(y, x);
}

int direction_index(PixelPoint from, PixelPoint to) {
    const PixelPoint d{to.x - from.x, to.y - from.y};
    for (int i = 0; i < 8; ++i)
        if (kMoore[static_cast<std::size_t>(i)] == d) return i;
    return -1;
}

}  // namespace

std::vector<Component> connected_components(const BinaryMask& mask) {
    const auto rows = static_cast<int>(mask.rows());
    const auto cols = static_cast<int>(mask.cols());
    Grid<std::uint8_t> seen = Grid<std::uint8_t>::Zero(rows, cols);
    std::vector<Component> comps;
    std::vector<PixelPoint> stack;

    for (int y = 0; y < rows; ++y) {
        for (int x = 0; x < cols; ++x) {
            if (!mask(y, x) || seen(y, x)) continue;
            Component comp;
            seen(y, x) = 1;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const PixelPoint p = stack.back();
                stack.pop_back();
                comp.pixels.push_back(p);
                for (const auto& d : kMoore) {
                    const int nx = p.x + d.x, ny = p.y + d.y;
                    if (is_set(mask, nx, ny) && !seen(ny, nx)) {
                        seen(ny, nx) = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
            std::sort(comp.pixels.begin(), comp.pixels.end(),
                      [](PixelPoint a, PixelPoint b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
            comps.push_back(std::move(comp));
        }
    }
    // Seeds were discovered in scan order, so a stable sort keeps the tie-break.
    std::stable_sort(comps.begin(), comps.end(),
                     [](const Component& a, const Component& b) { return a.area() > b.area(); });
    return comps;
}

BinaryMask component_mask(const Component& component, Eigen::Index rows, Eigen::Index cols) {
    BinaryMask out = BinaryMask::Zero(rows, cols);
    for (const auto& p : component.pixels) out(p.y, p.x) = true;
    return out;
}

Contour trace_boundary(const BinaryMask& mask, PixelPoint start) {
    Contour contour;
    contour.points.push_back(start);

    // The start is the first pixel of its component in scan order, so its
    // west neighbor is background.
    PixelPoint current = start;
    int backtrack = 0;
    std::optional<PixelPoint> first_step;

    // Each boundary pixel is visited at most a few times; the bound only
    // guards against a malformed mask.
    const std::size_t limit = 4 * static_cast<std::size_t>(mask.size()) + 8;
    for (std::size_t iter = 0; iter < limit; ++iter) {
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int idx = (backtrack + k) % 8;
            const auto& d = kMoore[static_cast<std::size_t>(idx)];
            if (is_set(mask, current.x + d.x, current.y + d.y)) {
                found = idx;
                break;
            }
        }
        if (found < 0) break;  // isolated pixel

        const auto& d = kMoore[static_cast<std::size_t>(found)];
        const PixelPoint next{current.x + d.x, current.y + d.y};
        if (current == start && first_step && next == *first_step) break;
        if (!first_step) first_step = next;

        // The neighbor examined just before `next` is background; seen from
        // `next` it becomes the new backtrack direction.
        const auto& prev = kMoore[static_cast<std::size_t>((found + 7) % 8)];
        const PixelPoint back{current.x + prev.x, current.y + prev.y};
        backtrack = direction_index(next, back);
        current = next;
        contour.points.push_back(current);
    }
    if (contour.points.size() > 1 && contour.points.back() == start) contour.points.pop_back();
    return contour;
}

Contour predominant_contour(const BinaryMask& mask, int min_area) {
    const auto comps = connected_components(mask);
    if (comps.empty() || comps.front().area() < min_area) throw NoContact("no contact region of at least " +
                                                                          std::to_string(min_area) + " px");
    return trace_boundary(mask, comps.front().pixels.front());
}

EllipseParams conic_to_ellipse(const Eigen::Matrix<double, 6, 1>& conic_in) {
    Eigen::Matrix<double, 6, 1> c = conic_in;
    if (c(0) + c(2) < 0.0) c = -c;
    const double A = c(0), B = c(1), C = c(2), D = c(3), E = c(4), F = c(5);

    if (!(4.0 * A * C - B * B > 0.0)) throw DegenerateFit("conic is not an ellipse");

    Eigen::Matrix2d q;
    q << A, B / 2.0, B / 2.0, C;
    const Eigen::Vector2d center = (2.0 * q).ldlt().solve(Eigen::Vector2d(-D, -E));
    const double f0 = F + (D * center(0) + E * center(1)) / 2.0;
    if (!(f0 < 0.0)) throw DegenerateFit("conic has no real points");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(q);
    const Eigen::Vector2d lambda = solver.eigenvalues();  // ascending
    if (!(lambda(0) > 0.0)) throw DegenerateFit("conic is not an ellipse");

    // Smallest eigenvalue <-> longest axis.
    const double a = std::sqrt(-f0 / lambda(0));
    const double b = std::sqrt(-f0 / lambda(1));
    const Eigen::Vector2d major = solver.eigenvectors().col(0);
    return EllipseParams::make(center(0), center(1), a, b, axis_angle_of(major(0), major(1)));
}

BinaryMask fill_ellipse(const EllipseParams& e, Eigen::Index rows, Eigen::Index cols) {
    BinaryMask out = BinaryMask::Zero(rows, cols);
    const double t = deg2rad(e.theta);
    const double ux = std::cos(t), uy = -std::sin(t);  // major axis in pixel coordinates
    const double r = e.a + 1.0;
    const auto y0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::floor(e.cy - r)));
    const auto y1 = std::min<Eigen::Index>(rows - 1, static_cast<Eigen::Index>(std::ceil(e.cy + r)));
    const auto x0 = std::max<Eigen::Index>(0, static_cast<Eigen::Index>(std::floor(e.cx - r)));
    const auto x1 = std::min<Eigen::Index>(cols - 1, static_cast<Eigen::Index>(std::ceil(e.cx + r)));
    for (Eigen::Index y = y0; y <= y1; ++y) {
        for (Eigen::Index x = x0; x <= x1; ++x) {
            const double dx = static_cast<double>(x) - e.cx;
            const double dy = static_cast<double>(y) - e.cy;
            const double u = (dx * ux + dy * uy) / e.a;
            const double v = (-dx * uy + dy * ux) / e.b;
            if (u * u + v * v <= 1.0) out(y, x) = true;
        }
    }
    return out;
}

DenoiseResult ellipse_denoise_ex(const BinaryMask& mask, const DenoiseOptions& opts) {
    const Contour contour = predominant_contour(mask, opts.min_area);
    const EllipseParams e = fit_ellipse(to_points(contour.points));
    EllipseParams grown = e;
    grown.a += opts.edge_offset;
    grown.b += opts.edge_offset;
    BinaryMask filled = fill_ellipse(grown, mask.rows(), mask.cols());
    if (!filled.any()) throw NoContact("fitted ellipse covers no pixel");
    return {std::move(filled), e};
}

}  // namespace slipkit
