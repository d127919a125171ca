#pragma once

#include "slipkit/core.hpp"

#include <string>
#include <utility>
#include <vector>

namespace slipkit {

inline constexpr double kDefaultThreshold = 0.7;

struct PolygonAnnotation {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y) vertices
};

// Elementwise logistic function. Throws InvalidArgument naming the first
// non-finite entry (row-major index).
ProbabilityMap sigmoid_map(const Grid<double>& logits);

// pixel >= threshold -> contact. threshold must lie in (0, 1).
BinaryMask binarize(const ProbabilityMap& map, double threshold = kDefaultThreshold);

// 0 -> 0, 1 -> 255.
GrayImage to_eight_bit(const BinaryMask& mask);

// Inverse of to_eight_bit for stored masks: any nonzero intensity is contact.
BinaryMask from_eight_bit(const GrayImage& image);

struct DiffSegmentResult {
    BinaryMask mask;
    bool degenerate = false;  // delta == 0 made every pixel "contact"
};

// Baseline segmenter: |contact - reference| >= delta, then keep only the
// largest 8-connected component. An empty result is valid (no contact).
DiffSegmentResult diff_segment(const GrayImage& contact, const GrayImage& reference, int delta);

// Even-odd fill sampled at pixel centers, which sit at integer (x, y). Centers
// lying exactly on an edge count as inside, so the rectangle (2,2)-(7,5)
// covers 6 x 4 pixels. Throws InvalidArgument for fewer than three vertices
// or a zero-area polygon.
BinaryMask rasterize_polygon(const PolygonAnnotation& ann, int width, int height);

// Union of all polygons of an annotation file.
BinaryMask rasterize_annotations(const std::vector<PolygonAnnotation>& shapes, int width, int height);

}  // namespace slipkit
