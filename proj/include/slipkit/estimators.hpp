#pragma once

#include "slipkit/contour.hpp"
#include "slipkit/core.hpp"

#include <Eigen/Eigenvalues>

#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slipkit {

enum class EstimatorKind { Skeleton, PCA, Ellipse };

std::string_view to_string(EstimatorKind kind);
// Accepts "skeleton", "pca", "ellipse" (case-insensitive).
std::optional<EstimatorKind> parse_estimator(std::string_view name);

inline constexpr double kDefaultElongationMin = 1.2;

struct EstimatorOptions {
    // Regions whose axis ratio falls below this are flagged unreliable.
    double elongation_min = kDefaultElongationMin;
    int min_area = kDefaultMinArea;
    // Skeletonize the ellipse-denoised region (default) or the raw mask.
    bool skeleton_on_denoised = true;
};

struct AxisEstimate {
    double angle = 0.0;       // axis orientation, degrees in [0, 180)
    double elongation = 0.0;  // major/minor axis ratio of the region used
    bool reliable = false;
};

// Principal axis of a 2-D point set: centroid, unit direction of largest
// spread and the two population variances (major >= minor). This is the
// orthogonal least-squares line through the points.
template <typename Scalar>
struct PrincipalAxis {
    Eigen::Matrix<Scalar, 2, 1> centroid;
    Eigen::Matrix<Scalar, 2, 1> direction;
    Scalar major_variance;
    Scalar minor_variance;

    double angle() const { return axis_angle_of(direction(0), direction(1)); }

    // Axis ratio of a uniform ellipse with these second moments.
    double elongation() const {
        if (minor_variance <= Scalar(0)) return std::numeric_limits<double>::infinity();
        return std::sqrt(static_cast<double>(major_variance / minor_variance));
    }
};

template <typename Scalar>
PrincipalAxis<Scalar> principal_axis(const PointMatrix<Scalar>& points) {
    using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
    using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
    const Eigen::Index n = points.rows();
    if (n < 2) throw DegenerateFit("principal axis needs at least 2 points");

    const Vec2 centroid = points.colwise().mean().transpose();
    const PointMatrix<Scalar> centered = points.rowwise() - centroid.transpose();
    const Mat2 cov = (centered.transpose() * centered) / static_cast<Scalar>(n);
    if (cov.trace() <= Scalar(0)) throw DegenerateFit("principal axis of coincident points");

    Eigen::SelfAdjointEigenSolver<Mat2> solver(cov);
    // Eigenvalues come back in increasing order.
    return {centroid, solver.eigenvectors().col(1), std::max(solver.eigenvalues()(1), Scalar(0)),
            std::max(solver.eigenvalues()(0), Scalar(0))};
}

// Zhang-Suen thinning to a fixpoint. Pixels outside the grid count as
// background. Throws NoContact on an empty mask.
BinaryMask skeletonize(const BinaryMask& mask);

// Orientation of the total-least-squares line through the skeleton pixels.
// Throws DegenerateSkeleton with fewer than 2 pixels.
double axis_angle_from_skeleton(const BinaryMask& skeleton);

// Major eigenvector of the set-pixel covariance.
AxisEstimate pca_angle(const BinaryMask& mask, const EstimatorOptions& opts = {});

// Major-axis orientation of the ellipse fitted to the predominant contour.
AxisEstimate ellipse_angle(const BinaryMask& mask, const EstimatorOptions& opts = {});

// contour -> ellipse denoise -> skeleton -> line fit.
AxisEstimate skeleton_angle(const BinaryMask& mask, const EstimatorOptions& opts = {});

AxisEstimate estimate_axis(const BinaryMask& mask, EstimatorKind kind, const EstimatorOptions& opts = {});

// current - initial reduced modulo 180 into [-90, 90]; the representative
// with the smallest magnitude wins.
double relative_angle(double current_axis, double initial_axis);

// Running mean over the last n samples. Before n samples have arrived the
// mean of what is available is returned.
class WindowFilter {
public:
    explicit WindowFilter(int n);

    double push(double value);
    int size() const { return n_; }
    std::size_t count() const { return buffer_.size(); }
    void reset() { buffer_.clear(); }

private:
    int n_;
    std::deque<double> buffer_;
};

// Per-frame axis estimates of a lift, before any filtering.
struct FrameEstimate {
    std::optional<AxisEstimate> axis;  // empty when the estimator threw
    std::string failure;               // reason when axis is empty
};

std::vector<FrameEstimate> estimate_frames(std::span<const BinaryMask> masks, EstimatorKind kind,
                                           const EstimatorOptions& opts = {});

// Turns per-frame estimates into relative, window-filtered samples.
//
// The first frame sets the reference axis and must be reliable, otherwise
// InitialContactUnreliable is thrown. A later frame that fails or is flagged
// unreliable is not fed to the filter: it repeats the previous filtered
// angle and carries reliable = false. Its raw_angle is the frame's own
// relative angle when one was computed, else the previous raw angle.
std::vector<AngleSample> filter_frames(std::span<const FrameEstimate> frames, int window);

std::vector<AngleSample> track_lift(std::span<const BinaryMask> masks, EstimatorKind kind, int window,
                                    const EstimatorOptions& opts = {});

}  // namespace slipkit
