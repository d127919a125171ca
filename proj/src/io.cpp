#include "slipkit/io.hpp"

#include <json.hpp>
#include <png.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace slipkit::io {

namespace {

std::string read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string lower_ext(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// Netpbm header token reader; skips whitespace and '#' comments.
class PnmHeader {
public:
    PnmHeader(const std::string& bytes, const fs::path& path) : bytes_(bytes), path_(path) {}

    std::string token() {
        for (;;) {
            while (pos_ < bytes_.size() && std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
            if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
                continue;
            }
            break;
        }
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
        if (start == pos_) throw IoError(path_.string() + ": truncated header");
        return bytes_.substr(start, pos_ - start);
    }

    int integer() {
        const std::string t = token();
        int v = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || v < 1)
            throw IoError(path_.string() + ": bad header field '" + t + "'");
        return v;
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_offset() const { return pos_ + 1; }

private:
    const std::string& bytes_;
    const fs::path& path_;
    std::size_t pos_ = 0;
};

GrayImage read_pnm(const fs::path& path) {
    const std::string bytes = read_all(path);
    PnmHeader h(bytes, path);
    const std::string magic = h.token();
    if (magic != "P5" && magic != "P6") throw IoError(path.string() + ": only binary P5/P6 supported");
    const int width = h.integer(), height = h.integer(), maxval = h.integer();
    if (maxval > 255) throw IoError(path.string() + ": only 8-bit images supported");
    const std::size_t channels = magic == "P6" ? 3 : 1;
    const std::size_t need = channels * static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t off = h.raster_offset();
    if (bytes.size() < off + need) throw IoError(path.string() + ": truncated raster");

    if (channels == 1) {
        GrayImage img(height, width);
        std::memcpy(img.data(), bytes.data() + off, need);
        return img;
    }
    RgbImage rgb{width, height, std::vector<std::uint8_t>(bytes.begin() + static_cast<std::ptrdiff_t>(off),
                                                          bytes.begin() + static_cast<std::ptrdiff_t>(off + need))};
    return luminance(rgb);
}

GrayImage read_png(const fs::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.string().c_str()))
        throw IoError(path.string() + ": " + image.message);

    const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError(path.string() + ": " + msg);
    }
    const int width = static_cast<int>(image.width), height = static_cast<int>(image.height);
    if (color) return luminance(RgbImage{width, height, std::move(buffer)});
    GrayImage img(height, width);
    std::memcpy(img.data(), buffer.data(), buffer.size());
    return img;
}

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u32_le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

double parse_double(std::string_view s, const fs::path& path) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw IoError(path.string() + ": not a number: '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::move(line));
    }
    return out;
}

}  // namespace

GrayImage read_gray(const fs::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".png") return read_png(path);
    if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") return read_pnm(path);
    throw IoError(path.string() + ": unsupported image extension");
}

BinaryMask read_mask(const fs::path& path) { return from_eight_bit(read_gray(path)); }

void write_pgm(const fs::path& path, const GrayImage& image) {
    std::string out = "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.data()), static_cast<std::size_t>(image.size()));
    write_file_atomic(path, out);
}

void write_mask(const fs::path& path, const BinaryMask& mask) { write_pgm(path, to_eight_bit(mask)); }

Grid<double> read_logits(const fs::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".csv") {
        const auto rows = lines_of(read_all(path));
        if (rows.empty()) throw IoError(path.string() + ": empty logit CSV");
        const auto width = split(rows.front(), ',').size();
        Grid<double> g(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
        for (std::size_t y = 0; y < rows.size(); ++y) {
            const auto cells = split(rows[y], ',');
            if (cells.size() != width) throw IoError(path.string() + ": ragged row " + std::to_string(y + 1));
            for (std::size_t x = 0; x < width; ++x)
                g(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = parse_double(cells[x], path);
        }
        return g;
    }

    const std::string bytes = read_all(path);
    if (bytes.size() < 8) throw IoError(path.string() + ": missing logit header");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint32_t width = read_u32_le(p), height = read_u32_le(p + 4);
    if (width == 0 || height == 0) throw IoError(path.string() + ": zero logit dimensions");
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (bytes.size() != 8 + 4 * n) throw IoError(path.string() + ": logit payload size does not match header");
    Grid<double> g(height, width);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t bits = read_u32_le(p + 8 + 4 * i);
        g.data()[i] = static_cast<double>(std::bit_cast<float>(bits));
    }
    return g;
}

void write_logits_bin(const fs::path& path, const Grid<double>& logits) {
    std::string out;
    out.reserve(8 + 4 * static_cast<std::size_t>(logits.size()));
    put_u32_le(out, static_cast<std::uint32_t>(logits.cols()));
    put_u32_le(out, static_cast<std::uint32_t>(logits.rows()));
    for (Eigen::Index i = 0; i < logits.size(); ++i)
        put_u32_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(logits.data()[i])));
    write_file_atomic(path, out);
}

LabelMeFile read_labelme(const fs::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_all(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    LabelMeFile f;
    try {
        f.width = j.at("imageWidth").get<int>();
        f.height = j.at("imageHeight").get<int>();
        for (const auto& s : j.at("shapes")) {
            PolygonAnnotation ann;
            ann.label = s.value("label", std::string{});
            for (const auto& pt : s.at("points")) ann.points.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
            f.shapes.push_back(std::move(ann));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
    if (f.width < 1 || f.height < 1) throw IoError(path.string() + ": bad image dimensions");
    return f;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_fixed(double v, int decimals) {
    std::array<char, 64> buf{};
    if (v == 0.0) v = 0.0;  // no "-0.000"
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    std::string s(buf.data(), ptr);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::vector<double> read_ground_truth_csv(const fs::path& path) {
    const auto rows = lines_of(read_all(path));
    std::vector<double> gt;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto cells = split(rows[i], ',');
        if (i == 0 && !cells.empty()) {
            // Header row, if present.
            double probe = 0.0;
            const auto c = cells.front();
            if (std::from_chars(c.data(), c.data() + c.size(), probe).ec != std::errc{}) continue;
        }
        if (cells.size() < 2) throw IoError(path.string() + ": expected frame,gt_angle on line " + std::to_string(i + 1));
        gt.push_back(parse_double(cells[1], path));
    }
    return gt;
}

void write_ground_truth_csv(const fs::path& path, const std::vector<double>& gt) {
    std::string out = "frame,gt_angle\n";
    for (std::size_t i = 0; i < gt.size(); ++i) out += std::to_string(i) + "," + format_double(gt[i]) + "\n";
    write_file_atomic(path, out);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::vector<fs::path> list_files(const fs::path& dir, const std::vector<std::string>& exts) {
    if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (std::find(exts.begin(), exts.end(), lower_ext(entry.path())) != exts.end()) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return out;
}

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace slipkit::io
