#pragma once

#include "slipkit/core.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

namespace slipkit {

inline constexpr int kDefaultMinArea = 25;

struct Component {
    std::vector<PixelPoint> pixels;  // row-major scan order; pixels.front() is the seed
    int area() const { return static_cast<int>(pixels.size()); }
};

// 8-connected components, largest first. Equal areas are ordered by seed
// pixel (smallest y, then smallest x).
std::vector<Component> connected_components(const BinaryMask& mask);

// Mask holding only the given component.
BinaryMask component_mask(const Component& component, Eigen::Index rows, Eigen::Index cols);

// Clockwise Moore-neighbor trace of the outer boundary of the largest
// component. Throws NoContact when no component reaches min_area.
Contour predominant_contour(const BinaryMask& mask, int min_area = kDefaultMinArea);

// Moore trace of one component's outer boundary, starting at its seed pixel.
Contour trace_boundary(const BinaryMask& mask, PixelPoint start);

// Conic A x^2 + B xy + C y^2 + D x + E y + F = 0 -> canonical parameters.
// Throws DegenerateFit unless the conic is a real ellipse.
EllipseParams conic_to_ellipse(const Eigen::Matrix<double, 6, 1>& conic);

// Direct least-squares ellipse fit under the 4AC - B^2 = 1 constraint.
//
// The 6x6 generalized eigenproblem is reduced to a 3x3 ordinary one by
// eliminating the linear terms (Halir & Flusser). Points are centered and
// scaled before fitting so the scatter matrices stay well conditioned; the
// result is mapped back to the input frame. Throws DegenerateFit for fewer
// than five points, collinear input, or a non-elliptic solution.
template <typename Scalar>
EllipseParams fit_ellipse(const PointMatrix<Scalar>& points) {
    using Mat3 = Eigen::Matrix3d;
    using Vec3 = Eigen::Vector3d;

    const Eigen::Index n = points.rows();
    if (n < 5) throw DegenerateFit("ellipse fit needs at least 5 points");

    const PointMatrix<double> p = points.template cast<double>();
    const Eigen::RowVector2d mean = p.colwise().mean();
    const PointMatrix<double> centered = p.rowwise() - mean;
    const double scale = std::sqrt(centered.rowwise().squaredNorm().mean() / 2.0);
    if (!(scale > 0.0)) throw DegenerateFit("ellipse fit on coincident points");
    const PointMatrix<double> q = centered / scale;

    Eigen::Matrix<double, Eigen::Dynamic, 3> quad(n, 3), lin(n, 3);
    quad.col(0) = q.col(0).array().square();
    quad.col(1) = q.col(0).array() * q.col(1).array();
    quad.col(2) = q.col(1).array().square();
    lin.col(0) = q.col(0);
    lin.col(1) = q.col(1);
    lin.col(2).setOnes();

    const Mat3 s1 = quad.transpose() * quad;
    const Mat3 s2 = quad.transpose() * lin;
    const Mat3 s3 = lin.transpose() * lin;

    // Collinear points make the linear scatter singular.
    Eigen::FullPivLU<Mat3> s3_lu(s3);
    s3_lu.setThreshold(1e-10);
    if (s3_lu.rank() < 3) throw DegenerateFit("ellipse fit on collinear points");

    const Mat3 elim = -s3_lu.solve(s2.transpose());
    const Mat3 reduced = s1 + s2 * elim;

    // Inverse of the constraint block [[0,0,2],[0,-1,0],[2,0,0]].
    Mat3 constraint_inv;
    constraint_inv << 0.0, 0.0, 0.5,
                      0.0, -1.0, 0.0,
                      0.5, 0.0, 0.0;
    const Mat3 m = constraint_inv * reduced;

    Eigen::EigenSolver<Mat3> solver(m);
    const Eigen::Matrix3cd vecs = solver.eigenvectors();
    const Eigen::Vector3cd vals = solver.eigenvalues();

    int best = -1;
    double best_val = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 v = vecs.col(i).real();
        if (std::abs(vals(i).imag()) > 1e-9 * (1.0 + std::abs(vals(i).real()))) continue;
        const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
        if (cond <= 0.0) continue;
        // Exactly one eigenvector satisfies the constraint in exact
        // arithmetic; with noise pick the smallest non-negative eigenvalue.
        if (best < 0 || vals(i).real() < best_val) {
            best = i;
            best_val = vals(i).real();
        }
    }
    if (best < 0) throw DegenerateFit("no elliptic solution");

    Vec3 quad_coef = vecs.col(best).real();
    quad_coef /= std::sqrt(4.0 * quad_coef(0) * quad_coef(2) - quad_coef(1) * quad_coef(1));
    const Vec3 lin_coef = elim * quad_coef;

    Eigen::Matrix<double, 6, 1> conic;
    conic << quad_coef, lin_coef;
    EllipseParams e = conic_to_ellipse(conic);
    return EllipseParams::make(e.cx * scale + mean(0), e.cy * scale + mean(1),
                               e.a * scale, e.b * scale, e.theta);
}

struct DenoiseOptions {
    int min_area = kDefaultMinArea;
    // Contour pixels are boundary pixel centers, half a pixel inside the
    // region edge; the fitted axes are grown by this much before filling.
    double edge_offset = 0.5;
};

// Filled pixel-center rasterization of an ellipse, clipped to the grid.
BinaryMask fill_ellipse(const EllipseParams& e, Eigen::Index rows, Eigen::Index cols);

struct DenoiseResult {
    BinaryMask mask;
    EllipseParams ellipse;  // fit to the predominant contour (before edge_offset)
};

// Replaces the mask by the filled ellipse fitted to its predominant contour.
// Propagates NoContact and DegenerateFit.
DenoiseResult ellipse_denoise_ex(const BinaryMask& mask, const DenoiseOptions& opts = {});

inline BinaryMask ellipse_denoise(const BinaryMask& mask, const DenoiseOptions& opts = {}) {
    return ellipse_denoise_ex(mask, opts).mask;
}

}  // namespace slipkit
