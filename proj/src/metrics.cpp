#include "slipkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slipkit {

namespace {

struct Counts {
    double inter;
    double pred;
    double truth;
};

Counts overlap_counts(const BinaryMask& pred, const BinaryMask& truth) {
    if (pred.rows() != truth.rows() || pred.cols() != truth.cols())
        throw DimensionMismatch("masks differ in size");
    return {static_cast<double>((pred && truth).count()), static_cast<double>(pred.count()),
            static_cast<double>(truth.count())};
}

}  // namespace

double dice(const BinaryMask& pred, const BinaryMask& truth) {
    const auto c = overlap_counts(pred, truth);
    if (c.pred + c.truth == 0.0) return 1.0;
    return 2.0 * c.inter / (c.pred + c.truth);
}

double iou(const BinaryMask& pred, const BinaryMask& truth) {
    const auto c = overlap_counts(pred, truth);
    const double uni = c.pred + c.truth - c.inter;
    if (uni == 0.0) return 1.0;
    return c.inter / uni;
}

SegScore seg_score(const BinaryMask& pred, const BinaryMask& truth) { return {dice(pred, truth), iou(pred, truth)}; }

double ground_truth_angle(const MarkerVector& current, const MarkerVector& initial) {
    const double np = current.norm(), nq = initial.norm();
    if (!(np > 0.0) || !(nq > 0.0)) throw InvalidArgument("marker vector has zero length");
    // Equal to acos(p.q / (|p| |q|)).
    const double dot = current.dx * initial.dx + current.dy * initial.dy;
    const double cross = current.dx * initial.dy - current.dy * initial.dx;
    return rad2deg(std::atan2(std::abs(cross), dot));
}

std::vector<double> lift_errors(std::span<const AngleSample> samples, std::span<const double> ground_truth) {
    if (samples.size() != ground_truth.size())
        throw DimensionMismatch("trace has " + std::to_string(samples.size()) + " samples but " +
                                std::to_string(ground_truth.size()) + " ground-truth angles");
    std::vector<double> re(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        re[i] = rotational_error(samples[i].filtered_angle, ground_truth[i]);
    return re;
}

MareReport mare(std::span<const std::vector<double>> lifts) {
    if (lifts.empty()) throw InvalidArgument("MARE of zero lifts");
    MareReport r;
    for (const auto& re : lifts) {
        if (re.empty()) throw InvalidArgument("lift without frames");
        const Eigen::Map<const Eigen::ArrayXd> a(re.data(), static_cast<Eigen::Index>(re.size()));
        const double mean = a.mean();
        r.per_lift_mean_re.push_back(mean);
        r.per_lift_std.push_back(std::sqrt((a - mean).square().mean()));
    }
    const double n = static_cast<double>(lifts.size());
    r.mare = std::accumulate(r.per_lift_mean_re.begin(), r.per_lift_mean_re.end(), 0.0) / n;
    r.mare_std = std::accumulate(r.per_lift_std.begin(), r.per_lift_std.end(), 0.0) / n;
    return r;
}

std::vector<SweepRow> window_sweep(std::span<const Lift> lifts, EstimatorKind kind, std::span<const int> sizes,
                                   const EstimatorOptions& opts) {
    if (sizes.empty()) throw InvalidArgument("no window sizes given");
    if (lifts.empty()) throw InvalidArgument("no lifts given");

    std::vector<std::vector<FrameEstimate>> frames;
    frames.reserve(lifts.size());
    for (const auto& lift : lifts) {
        if (lift.masks.size() != lift.ground_truth.size())
            throw DimensionMismatch("lift " + lift.id + ": mask and ground-truth counts differ");
        frames.push_back(estimate_frames(lift.masks, kind, opts));
    }

    std::vector<SweepRow> rows;
    for (int n : sizes) {
        std::vector<std::vector<double>> errors;
        errors.reserve(lifts.size());
        for (std::size_t i = 0; i < lifts.size(); ++i) {
            std::vector<AngleSample> samples;
            try {
                samples = filter_frames(frames[i], n);
            } catch (const InitialContactUnreliable& e) {
                throw InitialContactUnreliable("lift " + lifts[i].id + ": " + e.what());
            }
            errors.push_back(lift_errors(samples, lifts[i].ground_truth));
        }
        rows.push_back({kind, n, mare(errors)});
    }
    return rows;
}

}  // namespace slipkit
