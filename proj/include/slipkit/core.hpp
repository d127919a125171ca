#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace slipkit {

// Row-major pixel grid: rows() is the image height, cols() the width.
// Indexing is grid(y, x) with y growing downward.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using GrayImage = Grid<std::uint8_t>;
using ProbabilityMap = Grid<double>;
using BinaryMask = Grid<bool>;

// Interleaved 8-bit RGB, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;  // size 3 * width * height
};

// Error hierarchy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument or configuration (threshold out of range, too few vertices, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// No connected component large enough to count as contact.
class NoContact : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class DegenerateSkeleton : public Error {
public:
    using Error::Error;
};

// The first frame of a lift did not give a reliable reference axis.
class InitialContactUnreliable : public Error {
public:
    using Error::Error;
};

struct PixelPoint {
    int x = 0;
    int y = 0;
    friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

struct Contour {
    std::vector<PixelPoint> points;

    std::size_t size() const { return points.size(); }
};

// Point set as an N x 2 matrix of (x, y) rows.
template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

template <typename Scalar = double>
PointMatrix<Scalar> to_points(const std::vector<PixelPoint>& pixels) {
    PointMatrix<Scalar> pts(static_cast<Eigen::Index>(pixels.size()), 2);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
        pts(i, 0) = static_cast<Scalar>(pixels[static_cast<std::size_t>(i)].x);
        pts(i, 1) = static_cast<Scalar>(pixels[static_cast<std::size_t>(i)].y);
    }
    return pts;
}

// Centers of all set pixels, in row-major scan order.
PointMatrix<double> mask_points(const BinaryMask& mask);

// ---------------------------------------------------------------------------
// Angle conventions
//
// x grows rightward and y downward. Angles are measured counterclockwise as
// seen on screen, i.e. a direction (dx, dy) in pixel coordinates has angle
// atan2(-dy, dx). Unoriented axes live in [0, 180).

inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

// Reduce an axis angle into [0, 180).
inline double canonical_axis(double deg) {
    double r = std::fmod(deg, 180.0);
    if (r < 0.0) r += 180.0;
    if (r >= 180.0) r -= 180.0;
    return r;
}

// Screen-CCW angle of a pixel-space direction, as an axis in [0, 180).
template <typename Scalar>
double axis_angle_of(Scalar dx, Scalar dy) {
    return canonical_axis(rad2deg(std::atan2(-static_cast<double>(dy), static_cast<double>(dx))));
}

struct EllipseParams {
    double cx = 0.0;
    double cy = 0.0;
    double a = 0.0;      // semi-major
    double b = 0.0;      // semi-minor
    double theta = 0.0;  // major-axis orientation, degrees in [0, 180)

    // Builds canonical parameters: axes are swapped (and theta turned by 90)
    // when a < b. Throws InvalidArgument on non-positive axes.
    static EllipseParams make(double cx, double cy, double a, double b, double theta_deg);

    double aspect() const { return a / b; }
    double area() const { return kPi * a * b; }
};

struct AngleSample {
    int frame_index = 0;
    double raw_angle = 0.0;       // relative to the first frame, degrees
    double filtered_angle = 0.0;  // window-filtered relative angle
    bool reliable = true;
};

struct LiftTrace {
    std::string object_id;
    std::vector<AngleSample> samples;
    std::vector<double> ground_truth;  // degrees, same length as samples
};

// Vector joining two marker centers, pixels.
struct MarkerVector {
    double dx = 0.0;
    double dy = 0.0;

    double norm() const { return std::hypot(dx, dy); }
};

// Rec.601 luma, rounded to nearest.
GrayImage luminance(const RgbImage& image);

}  // namespace slipkit
