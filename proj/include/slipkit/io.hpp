#pragma once

#include "slipkit/core.hpp"
#include "slipkit/maskgen.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace slipkit::io {

namespace fs = std::filesystem;

class IoError : public Error {
public:
    using Error::Error;
};

// Reads binary PGM (P5), binary PPM (P6) or 8-bit PNG. Color inputs are
// reduced with luminance().
GrayImage read_gray(const fs::path& path);

// Nonzero pixels become contact.
BinaryMask read_mask(const fs::path& path);

void write_pgm(const fs::path& path, const GrayImage& image);
void write_mask(const fs::path& path, const BinaryMask& mask);

// Logit grids. Binary layout: uint32 width, uint32 height (little endian)
// followed by width*height little-endian float32 in row-major order. CSV
// layout: one image row per line, comma separated.
Grid<double> read_logits(const fs::path& path);
void write_logits_bin(const fs::path& path, const Grid<double>& logits);

struct LabelMeFile {
    int width = 0;
    int height = 0;
    std::vector<PolygonAnnotation> shapes;
};

// Reads imageWidth, imageHeight and shapes[].{label, points}.
LabelMeFile read_labelme(const fs::path& path);

// Locale-independent shortest round-trip formatting.
std::string format_double(double v);
// Fixed-point with the given number of decimals, '.' separator.
std::string format_fixed(double v, int decimals);

// Ground-truth sidecar: header "frame,gt_angle" then one row per frame.
std::vector<double> read_ground_truth_csv(const fs::path& path);
void write_ground_truth_csv(const fs::path& path, const std::vector<double>& gt);

// Writes to a temporary sibling then renames over the target.
void write_file_atomic(const fs::path& path, const std::string& contents);

// Regular files in dir whose extension is in exts (lowercase, with dot),
// sorted by filename.
std::vector<fs::path> list_files(const fs::path& dir, const std::vector<std::string>& exts);

inline const std::vector<std::string> kImageExtensions{".pgm", ".ppm", ".png"};

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace slipkit::io
