#include "slipkit/cli.hpp"

#include "slipkit/contour.hpp"
#include "slipkit/estimators.hpp"
#include "slipkit/io.hpp"
#include "slipkit/maskgen.hpp"
#include "slipkit/metrics.hpp"
#include "slipkit/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace slipkit::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using io::format_fixed;

constexpr const char* kVersion = "0.1.0";

// Thrown by subcommands to leave with a specific exit code.
struct Exit {
    int code;
    std::string message;
};

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Pulls `--config <path>` out of args and appends `--key=value` for every
// key of the file that is not already given on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw Exit{kUsage, "cannot read config file " + path};
    std::set<std::string> given;
    for (const auto& a : args) {
        if (a.rfind("--", 0) != 0) continue;
        given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    }
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Exit{kUsage, path + ":" + std::to_string(lineno) + ": expected key=value"};
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw Exit{kUsage, path + ":" + std::to_string(lineno) + ": empty key"};
        if (!given.count(key)) args.push_back("--" + key + "=" + value);
    }
    return args;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-")
        out << text;
    else
        io::write_file_atomic(path, text);
}

std::string hex64(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------------------
// segment

struct SegmentArgs {
    std::string logits;
    std::string contact;
    std::string reference;
    std::string out;
    double threshold = kDefaultThreshold;
    int delta = 20;
};

int cmd_segment(const SegmentArgs& a, std::ostream& out, std::ostream& err) {
    const bool logit_mode = !a.logits.empty();
    const bool diff_mode = !a.contact.empty() || !a.reference.empty();
    if (logit_mode == diff_mode)
        throw Exit{kUsage, "give either --logits <dir> or --contact <dir> --reference <img>"};
    if (diff_mode && (a.contact.empty() || a.reference.empty()))
        throw Exit{kUsage, "baseline mode needs both --contact and --reference"};
    if (!(a.threshold > 0.0 && a.threshold < 1.0))
        throw Exit{kUsage, "--threshold must lie in (0, 1), got " + io::format_double(a.threshold)};
    if (a.delta < 0 || a.delta > 255) throw Exit{kUsage, "--delta must lie in [0, 255]"};

    fs::create_directories(a.out);
    if (logit_mode) {
        const auto files = io::list_files(a.logits, {".bin", ".csv"});
        if (files.empty()) throw Exit{kDataMismatch, "no .bin or .csv logit files in " + a.logits};
        for (const auto& f : files) {
            const BinaryMask mask = binarize(sigmoid_map(io::read_logits(f)), a.threshold);
            const fs::path target = fs::path(a.out) / (f.stem().string() + ".pgm");
            io::write_mask(target, mask);
            out << f.filename().string() << ": " << mask.count() << " contact px -> " << target.string() << "\n";
        }
        return kOk;
    }

    const GrayImage reference = io::read_gray(a.reference);
    const auto files = io::list_files(a.contact, io::kImageExtensions);
    if (files.empty()) throw Exit{kDataMismatch, "no images in " + a.contact};
    if (a.delta == 0) err << "warning: --delta 0 marks every pixel as contact\n";
    for (const auto& f : files) {
        const GrayImage contact = io::read_gray(f);
        if (contact.rows() != reference.rows() || contact.cols() != reference.cols())
            throw Exit{kDataMismatch, f.string() + ": size differs from the reference image"};
        const auto result = diff_segment(contact, reference, a.delta);
        const fs::path target = fs::path(a.out) / (f.stem().string() + ".pgm");
        io::write_mask(target, result.mask);
        if (!result.mask.any()) err << "warning: " << f.filename().string() << ": no contact found\n";
        out << f.filename().string() << ": " << result.mask.count() << " contact px -> " << target.string() << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// angle

struct AngleArgs {
    std::string masks;
    std::string estimator = "skeleton";
    int window = 2;
    std::string gt;
    std::string out;
    bool raw_skeleton = false;
    double elongation_min = kDefaultElongationMin;
    int min_area = kDefaultMinArea;
};

EstimatorKind parse_kind(const std::string& name) {
    const auto k = parse_estimator(name);
    if (!k) throw Exit{kUsage, "unknown estimator '" + name + "' (skeleton, pca, ellipse)"};
    return *k;
}

EstimatorOptions make_options(double elongation_min, int min_area, bool raw_skeleton) {
    if (!(elongation_min >= 1.0)) throw Exit{kUsage, "--elongation-min must be >= 1"};
    if (min_area < 1) throw Exit{kUsage, "--min-area must be >= 1"};
    EstimatorOptions o;
    o.elongation_min = elongation_min;
    o.min_area = min_area;
    o.skeleton_on_denoised = !raw_skeleton;
    return o;
}

std::vector<BinaryMask> load_masks(const fs::path& dir) {
    const auto files = io::list_files(dir, io::kImageExtensions);
    std::vector<BinaryMask> masks;
    masks.reserve(files.size());
    for (const auto& f : files) masks.push_back(io::read_mask(f));
    return masks;
}

int cmd_angle(const AngleArgs& a, std::ostream& out, std::ostream& err) {
    const EstimatorKind kind = parse_kind(a.estimator);
    if (a.window < 1) throw Exit{kUsage, "--window must be >= 1"};
    const EstimatorOptions opts = make_options(a.elongation_min, a.min_area, a.raw_skeleton);

    const auto masks = load_masks(a.masks);
    if (masks.empty()) throw Exit{kDataMismatch, "no mask images in " + a.masks};

    std::vector<double> gt;
    if (!a.gt.empty()) {
        gt = io::read_ground_truth_csv(a.gt);
        if (gt.size() != masks.size())
            throw Exit{kDataMismatch, "ground truth has " + std::to_string(gt.size()) + " rows for " +
                                          std::to_string(masks.size()) + " masks"};
    }

    for (std::size_t i = 0; i < masks.size(); ++i) {
        const auto comps = connected_components(masks[i]);
        if (comps.size() > 1 && comps[1].area() >= opts.min_area)
            err << "warning: frame " << i << ": " << comps.size()
                << " contact regions, only the largest is used\n";
    }

    std::vector<AngleSample> samples;
    try {
        samples = track_lift(masks, kind, a.window, opts);
    } catch (const InitialContactUnreliable& e) {
        throw Exit{kDegenerate, std::string(e.what()) +
                                    "; near-circular contacts have no stable axis (skeleton collapses to a point)"};
    }

    std::ostringstream csv;
    csv << "frame,raw_angle,filtered_angle,reliable" << (gt.empty() ? "" : ",gt,re") << "\n";
    double re_sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        csv << s.frame_index << "," << format_fixed(s.raw_angle, 6) << "," << format_fixed(s.filtered_angle, 6) << ","
            << (s.reliable ? 1 : 0);
        if (!gt.empty()) {
            const double re = rotational_error(s.filtered_angle, gt[i]);
            re_sum += re;
            csv << "," << format_fixed(gt[i], 6) << "," << format_fixed(re, 6);
        }
        csv << "\n";
    }
    write_text(a.out, csv.str(), out);
    if (!gt.empty())
        err << "mean RE " << format_fixed(re_sum / static_cast<double>(samples.size()), 4) << " deg over "
            << samples.size() << " frames\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// eval-seg

struct EvalArgs {
    std::string pred;
    std::string gt;
    std::string csv;
    std::string json_path;
};

BinaryMask load_truth(const fs::path& path, Eigen::Index rows, Eigen::Index cols) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext != ".json") return io::read_mask(path);
    const auto ann = io::read_labelme(path);
    if (ann.height != rows || ann.width != cols)
        throw Exit{kDataMismatch, path.string() + ": annotation size differs from prediction"};
    return rasterize_annotations(ann.shapes, ann.width, ann.height);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double pop_std(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

int cmd_eval_seg(const EvalArgs& a, std::ostream& out, std::ostream& err) {
    std::map<std::string, fs::path> preds, truths;
    for (const auto& f : io::list_files(a.pred, io::kImageExtensions)) preds[f.stem().string()] = f;
    auto truth_exts = io::kImageExtensions;
    truth_exts.push_back(".json");
    for (const auto& f : io::list_files(a.gt, truth_exts)) {
        const auto [it, inserted] = truths.emplace(f.stem().string(), f);
        if (!inserted) throw Exit{kDataMismatch, "two ground-truth files share the stem " + f.stem().string()};
    }
    if (truths.empty()) throw Exit{kDataMismatch, "no ground-truth files in " + a.gt};

    std::vector<std::string> unmatched;
    for (const auto& [stem, p] : preds)
        if (!truths.count(stem)) unmatched.push_back("prediction without ground truth: " + p.filename().string());
    for (const auto& [stem, p] : truths)
        if (!preds.count(stem)) unmatched.push_back("ground truth without prediction: " + p.filename().string());
    if (!unmatched.empty()) {
        for (const auto& u : unmatched) err << u << "\n";
        throw Exit{kDataMismatch, std::to_string(unmatched.size()) + " unmatched file(s)"};
    }

    std::vector<double> dices, ious;
    json files = json::array();
    std::ostringstream csv;
    csv << "file,dice,iou\n";
    for (const auto& [stem, ppath] : preds) {
        const BinaryMask pred = io::read_mask(ppath);
        const BinaryMask truth = load_truth(truths.at(stem), pred.rows(), pred.cols());
        if (truth.rows() != pred.rows() || truth.cols() != pred.cols())
            throw Exit{kDataMismatch, stem + ": prediction and ground truth differ in size"};
        const SegScore s = seg_score(pred, truth);
        dices.push_back(s.dice);
        ious.push_back(s.iou);
        csv << stem << "," << format_fixed(s.dice, 6) << "," << format_fixed(s.iou, 6) << "\n";
        files.push_back({{"file", stem}, {"dice", s.dice}, {"iou", s.iou}});
    }
    csv << "mean," << format_fixed(mean_of(dices), 6) << "," << format_fixed(mean_of(ious), 6) << "\n";
    csv << "std," << format_fixed(pop_std(dices), 6) << "," << format_fixed(pop_std(ious), 6) << "\n";
    write_text(a.csv, csv.str(), out);

    if (!a.json_path.empty()) {
        const json report{{"files", files},
                          {"mean", {{"dice", mean_of(dices)}, {"iou", mean_of(ious)}}},
                          {"std", {{"dice", pop_std(dices)}, {"iou", pop_std(ious)}}},
                          {"std_kind", "population"}};
        io::write_file_atomic(a.json_path, report.dump(2) + "\n");
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    std::string dataset;
    std::string estimators = "skeleton,pca,ellipse";
    std::string windows = "2,4,6,8,10";
    std::string csv;
    std::string json_path;
    bool raw_skeleton = false;
    double elongation_min = kDefaultElongationMin;
    int min_area = kDefaultMinArea;
};

std::vector<Lift> load_dataset(const fs::path& root) {
    if (!fs::is_directory(root)) throw Exit{kDataMismatch, root.string() + " is not a directory"};
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory()) dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());

    std::vector<Lift> lifts;
    for (const auto& d : dirs) {
        if (!fs::exists(d / "gt.csv")) continue;
        Lift lift;
        lift.id = d.filename().string();
        lift.masks = load_masks(d);
        lift.ground_truth = io::read_ground_truth_csv(d / "gt.csv");
        if (lift.masks.empty()) throw Exit{kDataMismatch, lift.id + ": no mask images"};
        if (lift.masks.size() != lift.ground_truth.size())
            throw Exit{kDataMismatch, lift.id + ": " + std::to_string(lift.masks.size()) + " masks but " +
                                          std::to_string(lift.ground_truth.size()) + " ground-truth rows"};
        lifts.push_back(std::move(lift));
    }
    if (lifts.empty()) throw Exit{kDataMismatch, "no lift directories with gt.csv under " + root.string()};
    return lifts;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    std::vector<EstimatorKind> kinds;
    for (const auto& name : split_list(a.estimators)) kinds.push_back(parse_kind(name));
    if (kinds.empty()) throw Exit{kUsage, "--estimators is empty"};
    std::vector<int> sizes;
    for (const auto& s : split_list(a.windows)) {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw Exit{kUsage, "bad window size '" + s + "'"};
        }
        if (n < 1) throw Exit{kUsage, "window sizes must be >= 1"};
        sizes.push_back(n);
    }
    if (sizes.empty()) throw Exit{kUsage, "--windows is empty"};
    const EstimatorOptions opts = make_options(a.elongation_min, a.min_area, a.raw_skeleton);

    const auto lifts = load_dataset(a.dataset);
    err << "sweep: " << lifts.size() << " lifts, " << kinds.size() << " estimators, " << sizes.size()
        << " window sizes\n";

    std::ostringstream csv;
    csv << "estimator";
    for (int n : sizes) csv << ",w" << n << "_mare,w" << n << "_std";
    csv << "\n";
    json rows = json::array();
    for (EstimatorKind k : kinds) {
        std::vector<SweepRow> result;
        try {
            result = window_sweep(lifts, k, sizes, opts);
        } catch (const InitialContactUnreliable& e) {
            throw Exit{kDegenerate, std::string(to_string(k)) + ": " + e.what()};
        }
        csv << to_string(k);
        for (const auto& r : result) {
            csv << "," << format_fixed(r.report.mare, 4) << "," << format_fixed(r.report.mare_std, 4);
            rows.push_back({{"estimator", to_string(k)},
                            {"window", r.window},
                            {"mare", r.report.mare},
                            {"mare_std", r.report.mare_std},
                            {"per_lift_mean_re", r.report.per_lift_mean_re},
                            {"per_lift_std", r.report.per_lift_std}});
        }
        csv << "\n";
    }
    write_text(a.csv, csv.str(), out);
    if (!a.json_path.empty()) {
        json lift_ids = json::array();
        for (const auto& l : lifts) lift_ids.push_back(l.id);
        const json report{{"lifts", lift_ids}, {"rows", rows}, {"std_kind", "population"}};
        io::write_file_atomic(a.json_path, report.dump(2) + "\n");
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string out;
    std::uint64_t seed = SuiteConfig{}.seed;
    int frames = SuiteConfig{}.frames;
    int width = SuiteConfig{}.width;
    int height = SuiteConfig{}.height;
    double jitter = SuiteConfig{}.boundary_jitter_px;
    double speckle = SuiteConfig{}.speckle_rate;
    double drift = SuiteConfig{}.size_drift;
    std::string shape;
    double major = 40.0;
    double minor = 10.0;
    double angle = 0.0;
    double exponent = 4.0;
    std::string trajectory;
    bool allow_wide = false;
};

json shape_json(const ShapeSpec& s) {
    return {{"kind", to_string(s.kind)}, {"major", s.major}, {"minor", s.minor}, {"cx", s.cx},
            {"cy", s.cy},                {"angle", s.angle}, {"exponent", s.exponent}};
}

json noise_json(const NoiseSpec& n) {
    return {{"boundary_jitter_px", n.boundary_jitter_px},
            {"speckle_rate", n.speckle_rate},
            {"size_drift", n.size_drift},
            {"seed", n.seed}};
}

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream&) {
    if (a.frames < 1) throw Exit{kUsage, "--frames must be >= 1"};
    if (a.width < 8 || a.height < 8) throw Exit{kUsage, "image must be at least 8x8"};

    std::vector<LiftSpec> lifts;
    const bool custom = !a.shape.empty() || !a.trajectory.empty();
    if (custom) {
        LiftSpec lift;
        lift.id = "lift_001";
        const auto kind = parse_shape(a.shape.empty() ? "bar" : a.shape);
        if (!kind) throw Exit{kUsage, "unknown shape '" + a.shape + "' (bar, ellipse, superellipse)"};
        lift.shape = {*kind, a.major, a.minor, (a.width - 1) / 2.0, (a.height - 1) / 2.0, a.angle, a.exponent};
        if (!a.trajectory.empty()) {
            for (const auto& s : split_list(a.trajectory)) {
                try {
                    lift.trajectory.push_back(std::stod(s));
                } catch (const std::exception&) {
                    throw Exit{kUsage, "bad trajectory value '" + s + "'"};
                }
            }
            if (lift.trajectory.empty()) throw Exit{kUsage, "trajectory has no frames"};
        } else {
            lift.trajectory = trajectory_profile(0, a.frames);
        }
        lift.noise = {a.jitter, a.speckle, a.drift, a.seed};
        lifts.push_back(std::move(lift));
    } else {
        SuiteConfig cfg;
        cfg.width = a.width;
        cfg.height = a.height;
        cfg.frames = a.frames;
        cfg.seed = a.seed;
        cfg.boundary_jitter_px = a.jitter;
        cfg.speckle_rate = a.speckle;
        cfg.size_drift = a.drift;
        lifts = standard_suite(cfg);
    }

    // Validate every lift before touching the output directory.
    std::vector<std::vector<SynthFrame>> rendered;
    rendered.reserve(lifts.size());
    for (const auto& l : lifts) {
        try {
            rendered.push_back(gen_lift(l.shape, l.trajectory, a.width, a.height, l.noise, a.allow_wide));
        } catch (const InvalidArgument& e) {
            throw Exit{kUsage, l.id + ": " + e.what()};
        }
    }

    const fs::path root(a.out);
    fs::create_directories(root);
    json manifest_lifts = json::array();
    std::uint64_t dataset_hash = io::fnv1a("");
    for (std::size_t i = 0; i < lifts.size(); ++i) {
        const auto& l = lifts[i];
        const fs::path dir = root / l.id;
        fs::create_directories(dir);
        std::uint64_t h = io::fnv1a("");
        std::vector<double> gt;
        for (std::size_t f = 0; f < rendered[i].size(); ++f) {
            const GrayImage img = to_eight_bit(rendered[i][f].mask);
            char name[32];
            std::snprintf(name, sizeof name, "frame_%04zu.pgm", f);
            io::write_pgm(dir / name, img);
            h = io::fnv1a(std::string(reinterpret_cast<const char*>(img.data()), static_cast<std::size_t>(img.size())), h);
            gt.push_back(rendered[i][f].ground_truth);
        }
        io::write_ground_truth_csv(dir / "gt.csv", gt);
        dataset_hash = io::fnv1a(hex64(h), dataset_hash);
        manifest_lifts.push_back({{"id", l.id},
                                  {"shape", shape_json(l.shape)},
                                  {"noise", noise_json(l.noise)},
                                  {"trajectory", l.trajectory},
                                  {"frames", rendered[i].size()},
                                  {"mask_hash", hex64(h)}});
    }
    const json manifest{{"generator", "slipkit synth"},
                        {"version", kVersion},
                        {"seed", a.seed},
                        {"width", a.width},
                        {"height", a.height},
                        {"rng", "mt19937_64 with splitmix64 sub-seeds"},
                        {"lifts", manifest_lifts},
                        {"dataset_hash", hex64(dataset_hash)}};
    io::write_file_atomic(root / "manifest.json", manifest.dump(2) + "\n");
    out << "wrote " << lifts.size() << " lift(s) to " << root.string() << " (dataset hash " << hex64(dataset_hash)
        << ")\n";
    return kOk;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SLIPKIT_SEED")) {
        try {
            std::size_t used = 0;
            const std::string s(env);
            const auto v = std::stoull(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw Exit{kUsage, "SLIPKIT_SEED is not an unsigned integer"};
    }
    return SuiteConfig{}.seed;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    try {
        const auto args = apply_config(raw_args);

        CLI::App app{"Rotational slip estimation from tactile contact masks", "slipkit"};
        app.require_subcommand(1);
        app.set_version_flag("--version", kVersion);

        SegmentArgs seg;
        auto* segment = app.add_subcommand("segment", "Turn logit maps or contact/reference images into masks");
        segment->add_option("--logits", seg.logits, "Directory of logit maps (.bin or .csv)");
        segment->add_option("--contact", seg.contact, "Directory of contact images (baseline mode)");
        segment->add_option("--reference", seg.reference, "Non-contact reference image (baseline mode)");
        segment->add_option("--out", seg.out, "Output directory for PGM masks")->required();
        segment->add_option("--threshold", seg.threshold, "Probability threshold in (0, 1)")->capture_default_str();
        segment->add_option("--delta", seg.delta, "Baseline intensity difference threshold")->capture_default_str();

        AngleArgs ang;
        auto* angle = app.add_subcommand("angle", "Estimate the rotation trace of one lift");
        angle->add_option("--masks", ang.masks, "Directory of mask frames, read in filename order")->required();
        angle->add_option("--estimator", ang.estimator, "skeleton, pca or ellipse")->capture_default_str();
        angle->add_option("--window", ang.window, "Window filter size")->capture_default_str();
        angle->add_option("--gt", ang.gt, "Ground-truth CSV (frame,gt_angle)");
        angle->add_option("--out", ang.out, "Output CSV (default stdout)");
        angle->add_flag("--raw-skeleton", ang.raw_skeleton, "Skeletonize the raw mask instead of the fitted ellipse");
        angle->add_option("--elongation-min", ang.elongation_min, "Minimum axis ratio for a reliable angle")
            ->capture_default_str();
        angle->add_option("--min-area", ang.min_area, "Minimum contact area in pixels")->capture_default_str();

        EvalArgs ev;
        auto* eval = app.add_subcommand("eval-seg", "Dice/IoU of predicted masks against ground truth");
        eval->add_option("--pred", ev.pred, "Directory of predicted masks")->required();
        eval->add_option("--gt", ev.gt, "Directory of ground-truth masks or LabelMe JSON")->required();
        eval->add_option("--csv", ev.csv, "Output CSV (default stdout)");
        eval->add_option("--json", ev.json_path, "Output JSON report");

        SweepArgs sw;
        auto* sweep = app.add_subcommand("sweep", "MARE table over estimators and window sizes");
        sweep->add_option("--dataset", sw.dataset, "Dataset root: one sub-directory per lift with gt.csv")->required();
        sweep->add_option("--estimators", sw.estimators, "Comma-separated estimators")->capture_default_str();
        sweep->add_option("--windows", sw.windows, "Comma-separated window sizes")->capture_default_str();
        sweep->add_option("--csv", sw.csv, "Output CSV (default stdout)");
        sweep->add_option("--json", sw.json_path, "Output JSON report");
        sweep->add_flag("--raw-skeleton", sw.raw_skeleton, "Skeletonize the raw mask instead of the fitted ellipse");
        sweep->add_option("--elongation-min", sw.elongation_min, "Minimum axis ratio for a reliable angle")
            ->capture_default_str();
        sweep->add_option("--min-area", sw.min_area, "Minimum contact area in pixels")->capture_default_str();

        SynthArgs sy;
        sy.seed = default_seed();
        auto* synth = app.add_subcommand("synth", "Generate a synthetic lift dataset");
        synth->add_option("--out", sy.out, "Output directory")->required();
        synth->add_option("--seed", sy.seed, "Random seed (default from SLIPKIT_SEED)")->capture_default_str();
        synth->add_option("--frames", sy.frames, "Frames per lift")->capture_default_str();
        synth->add_option("--width", sy.width, "Image width")->capture_default_str();
        synth->add_option("--height", sy.height, "Image height")->capture_default_str();
        synth->add_option("--jitter", sy.jitter, "RMS boundary jitter, pixels")->capture_default_str();
        synth->add_option("--speckle", sy.speckle, "Per-pixel flip probability")->capture_default_str();
        synth->add_option("--drift", sy.drift, "Max fractional area change per frame")->capture_default_str();
        synth->add_option("--shape", sy.shape, "Single-lift mode: bar, ellipse or superellipse");
        synth->add_option("--major", sy.major, "Bar length or semi-major axis")->capture_default_str();
        synth->add_option("--minor", sy.minor, "Bar width or semi-minor axis")->capture_default_str();
        synth->add_option("--angle", sy.angle, "Initial orientation, degrees")->capture_default_str();
        synth->add_option("--exponent", sy.exponent, "Superellipse exponent")->capture_default_str();
        synth->add_option("--trajectory", sy.trajectory, "Single-lift mode: comma-separated rotation offsets");
        synth->add_flag("--allow-wide", sy.allow_wide, "Allow offsets outside [0, 30]");

        std::vector<const char*> argv;
        argv.reserve(args.size());
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kOk : kUsage;
        }

        if (segment->parsed()) return cmd_segment(seg, out, err);
        if (angle->parsed()) return cmd_angle(ang, out, err);
        if (eval->parsed()) return cmd_eval_seg(ev, out, err);
        if (sweep->parsed()) return cmd_sweep(sw, out, err);
        if (synth->parsed()) return cmd_synth(sy, out, err);
        return kUsage;
    } catch (const Exit& e) {
        if (!e.message.empty()) err << "slipkit: " << e.message << "\n";
        return e.code;
    } catch (const InvalidArgument& e) {
        err << "slipkit: " << e.what() << "\n";
        return kUsage;
    } catch (const InitialContactUnreliable& e) {
        err << "slipkit: " << e.what() << "\n";
        return kDegenerate;
    } catch (const DimensionMismatch& e) {
        err << "slipkit: " << e.what() << "\n";
        return kDataMismatch;
    } catch (const io::IoError& e) {
        err << "slipkit: " << e.what() << "\n";
        return kDataMismatch;
    } catch (const std::exception& e) {
        err << "slipkit: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace slipkit::cli
