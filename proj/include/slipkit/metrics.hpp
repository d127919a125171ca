#pragma once

#include "slipkit/core.hpp"
#include "slipkit/estimators.hpp"

#include <span>
#include <vector>

namespace slipkit {

struct SegScore {
    double dice = 0.0;
    double iou = 0.0;
};

// 2|P & Y| / (|P| + |Y|). Two empty masks score 1.
double dice(const BinaryMask& pred, const BinaryMask& truth);

// |P & Y| / |P | Y|. Two empty masks score 1.
double iou(const BinaryMask& pred, const BinaryMask& truth);

SegScore seg_score(const BinaryMask& pred, const BinaryMask& truth);

// Unsigned angle between the current and initial marker vectors, degrees in
// [0, 180]. Throws InvalidArgument on a zero-length vector.
double ground_truth_angle(const MarkerVector& current, const MarkerVector& initial);

inline double rotational_error(double predicted, double ground_truth) {
    return std::abs(predicted - ground_truth);
}

// Per-frame |filtered - gt| for one lift. Sizes must match.
std::vector<double> lift_errors(std::span<const AngleSample> samples, std::span<const double> ground_truth);

struct MareReport {
    std::vector<double> per_lift_mean_re;
    std::vector<double> per_lift_std;  // population standard deviation
    double mare = 0.0;
    double mare_std = 0.0;  // mean of the per-lift standard deviations
};

// Throws InvalidArgument on an empty lift list or an empty lift.
MareReport mare(std::span<const std::vector<double>> lifts);

struct Lift {
    std::string id;
    std::vector<BinaryMask> masks;
    std::vector<double> ground_truth;
};

struct SweepRow {
    EstimatorKind kind;
    int window;
    MareReport report;
};

inline const std::vector<int> kDefaultWindowSizes{2, 4, 6, 8, 10};

// MARE per window size for one estimator. The per-frame axes are computed
// once per lift and re-filtered for each size, which is equivalent to
// calling track_lift per size.
std::vector<SweepRow> window_sweep(std::span<const Lift> lifts, EstimatorKind kind,
                                   std::span<const int> sizes = kDefaultWindowSizes,
                                   const EstimatorOptions& opts = {});

}  // namespace slipkit
