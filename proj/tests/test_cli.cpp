#include <doctest.h>

#include "slipkit/cli.hpp"
#include "slipkit/io.hpp"
#include "slipkit/synth.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace slipkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("slipkit_cli_" + std::to_string(::getpid()) + "_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& s) const { return (path / s).string(); }
};

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "slipkit");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

void write_lift(const fs::path& dir, const ShapeSpec& shape, const std::vector<double>& traj, int w, int h,
                const NoiseSpec& noise = {}) {
    fs::create_directories(dir);
    const auto frames = gen_lift(shape, traj, w, h, noise);
    std::vector<double> gt;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.pgm", i);
        io::write_mask(dir / name, frames[i].mask);
        gt.push_back(frames[i].ground_truth);
    }
    io::write_ground_truth_csv(dir / "gt.csv", gt);
}

std::vector<double> ramp(int n, double to) {
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(to * i / (n - 1));
    return r;
}

}  // namespace

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"angle"}).code == cli::kUsage);
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({"angle", "--masks", "x", "--estimator", "hough"}).code == cli::kUsage);
}

TEST_CASE("segment from logits") {
    TempDir dir("seg");
    fs::create_directories(dir.path / "logits");
    for (int i = 0; i < 10; ++i) {
        Grid<double> l = Grid<double>::Constant(12, 16, -3.0);
        l.block(2, 3, 5, 2 + i) = 2.0;
        io::write_logits_bin(dir.path / "logits" / ("f" + std::to_string(i) + ".bin"), l);
    }
    const auto r = run({"segment", "--logits", dir / "logits", "--out", dir / "masks"});
    REQUIRE(r.code == cli::kOk);
    const auto masks = io::list_files(dir.path / "masks", io::kImageExtensions);
    REQUIRE(masks.size() == 10);
    CHECK(io::read_mask(masks[3]).count() == 5 * 5);

    const auto bad = run({"segment", "--logits", dir / "logits", "--out", dir / "m2", "--threshold", "1.5"});
    CHECK(bad.code == cli::kUsage);
    CHECK(bad.err.find("threshold") != std::string::npos);
}

TEST_CASE("segment baseline on identical images warns and writes empty masks") {
    TempDir dir("base");
    fs::create_directories(dir.path / "contact");
    const GrayImage ref = GrayImage::Constant(20, 30, 90);
    io::write_pgm(dir.path / "ref.pgm", ref);
    io::write_pgm(dir.path / "contact" / "a.pgm", ref);
    const auto r = run({"segment", "--contact", dir / "contact", "--reference", dir / "ref.pgm", "--out", dir / "out"});
    CHECK(r.code == cli::kOk);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(!io::read_mask(dir.path / "out" / "a.pgm").any());
}

TEST_CASE("angle on a synthetic ramp") {
    TempDir dir("angle");
    write_lift(dir.path / "lift", {ShapeKind::Bar, 40, 10, 59.5, 49.5, 25, 4}, ramp(31, 30), 120, 100);
    const auto r = run({"angle", "--masks", dir / "lift", "--gt", dir / "lift/gt.csv"});
    REQUIRE(r.code == cli::kOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 32);
    CHECK(rows[0] == std::vector<std::string>{"frame", "raw_angle", "filtered_angle", "reliable", "gt", "re"});
    CHECK(std::abs(std::stod(rows.back()[2]) - 30.0) <= 3.0);

    const auto e = run({"angle", "--masks", dir / "lift", "--estimator", "ellipse"});
    REQUIRE(e.code == cli::kOk);
    CHECK(std::abs(std::stod(parse_csv(e.out).back()[2]) - 30.0) <= 1.5);

    const auto w1 = run({"angle", "--masks", dir / "lift", "--window", "1", "--estimator", "pca", "--out",
                         dir / "trace.csv"});
    REQUIRE(w1.code == cli::kOk);
    const auto t = parse_csv(slurp(dir.path / "trace.csv"));
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i][1] == t[i][2]);

    fs::remove(dir.path / "lift" / "frame_0030.pgm");
    CHECK(run({"angle", "--masks", dir / "lift", "--gt", dir / "lift/gt.csv"}).code == cli::kDataMismatch);
}

TEST_CASE("angle on a circular contact exits 3") {
    TempDir dir("circle");
    write_lift(dir.path / "lift", {ShapeKind::Ellipse, 15, 15, 39.5, 39.5, 0, 4}, ramp(6, 10), 80, 80);
    const auto r = run({"angle", "--masks", dir / "lift"});
    CHECK(r.code == cli::kDegenerate);
    CHECK(!r.err.empty());
}

TEST_CASE("angle warns about several large regions") {
    TempDir dir("multi");
    fs::create_directories(dir.path / "lift");
    BinaryMask m = BinaryMask::Constant(60, 80, false);
    m.block(5, 5, 8, 30) = true;
    m.block(40, 40, 8, 30) = true;
    io::write_mask(dir.path / "lift" / "f0.pgm", m);
    const auto r = run({"angle", "--masks", dir / "lift", "--estimator", "pca"});
    CHECK(r.code == cli::kOk);
    CHECK(r.err.find("largest") != std::string::npos);
}

TEST_CASE("eval-seg") {
    TempDir dir("eval");
    fs::create_directories(dir.path / "pred");
    fs::create_directories(dir.path / "gt");
    BinaryMask a = BinaryMask::Constant(4, 4, false), b = a;
    a.block(0, 0, 2, 2) = true;
    b.block(0, 1, 2, 2) = true;
    io::write_mask(dir.path / "pred" / "x.pgm", a);
    io::write_mask(dir.path / "gt" / "x.pgm", b);
    io::write_mask(dir.path / "pred" / "y.pgm", a);
    std::ofstream(dir.path / "gt" / "y.json")
        << R"({"imageWidth": 4, "imageHeight": 4, "shapes": [{"label": "c", "points": [[0,0],[1,0],[1,1],[0,1]]}]})";

    const auto r = run({"eval-seg", "--pred", dir / "pred", "--gt", dir / "gt", "--json", dir / "r.json"});
    REQUIRE(r.code == cli::kOk);
    const auto rows = parse_csv(r.out);
    CHECK(rows[1] == std::vector<std::string>{"x", "0.500000", "0.333333"});
    CHECK(rows[2] == std::vector<std::string>{"y", "1.000000", "1.000000"});
    const auto j = nlohmann::json::parse(slurp(dir.path / "r.json"));
    CHECK(j["mean"]["dice"].get<double>() == doctest::Approx(0.75));

    TempDir empty("eval_empty");
    CHECK(run({"eval-seg", "--pred", dir / "pred", "--gt", empty.path.string()}).code == cli::kDataMismatch);
    io::write_mask(dir.path / "pred" / "z.pgm", a);
    CHECK(run({"eval-seg", "--pred", dir / "pred", "--gt", dir / "gt"}).code == cli::kDataMismatch);
}

TEST_CASE("sweep on a single lift matches its mean RE") {
    TempDir dir("sweep");
    write_lift(dir.path / "lift_a", {ShapeKind::Ellipse, 22, 9, 59.5, 49.5, 70, 4}, ramp(16, 15), 120, 100,
               {0.5, 0.0, 0.02, 3});
    const auto r = run({"sweep", "--dataset", dir.path.string(), "--estimators", "ellipse", "--windows", "1,2",
                        "--json", dir / "s.json"});
    REQUIRE(r.code == cli::kOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"estimator", "w1_mare", "w1_std", "w2_mare", "w2_std"});

    const auto t = run({"angle", "--masks", dir / "lift_a", "--estimator", "ellipse", "--gt", dir / "lift_a/gt.csv",
                        "--window", "2"});
    const auto trace = parse_csv(t.out);
    double sum = 0.0;
    for (std::size_t i = 1; i < trace.size(); ++i) sum += std::stod(trace[i][5]);
    CHECK(std::stod(rows[1][3]) == doctest::Approx(sum / 16).epsilon(1e-3));

    CHECK(run({"sweep", "--dataset", dir.path.string(), "--windows", "0"}).code == cli::kUsage);
    TempDir none("sweep_none");
    CHECK(run({"sweep", "--dataset", none.path.string()}).code == cli::kDataMismatch);
}

TEST_CASE("synth custom lift, config file and seed variable") {
    TempDir dir("synth");
    auto r = run({"synth", "--out", dir / "one", "--shape", "ellipse", "--major", "20", "--minor", "8", "--trajectory",
                  "0,5,10", "--width", "80", "--height", "64"});
    REQUIRE(r.code == cli::kOk);
    CHECK(io::list_files(dir.path / "one" / "lift_001", io::kImageExtensions).size() == 3);
    CHECK(io::read_ground_truth_csv(dir.path / "one" / "lift_001" / "gt.csv") == std::vector<double>{0, 5, 10});
    const auto manifest = nlohmann::json::parse(slurp(dir.path / "one" / "manifest.json"));
    CHECK(manifest["lifts"][0]["shape"]["kind"] == "ellipse");
    CHECK(manifest.contains("dataset_hash"));

    CHECK(run({"synth", "--out", dir / "zero", "--frames", "0"}).code == cli::kUsage);
    CHECK(run({"synth", "--out", dir / "e", "--shape", "bar", "--trajectory", ","}).code == cli::kUsage);
    CHECK(run({"synth", "--out", dir / "wide", "--shape", "bar", "--trajectory", "0,40"}).code == cli::kUsage);
    CHECK(run({"synth", "--out", dir / "big", "--shape", "bar", "--major", "500"}).code == cli::kUsage);

    std::ofstream(dir.path / "cfg.txt") << "# lift\nshape = bar\nmajor=30\nminor=8\ntrajectory=0,1,2,3\nwidth=70\n";
    r = run({"synth", "--config", dir / "cfg.txt", "--out", dir / "cfg", "--minor", "6", "--height", "50"});
    REQUIRE(r.code == cli::kOk);
    const auto m2 = nlohmann::json::parse(slurp(dir.path / "cfg" / "manifest.json"));
    CHECK(m2["lifts"][0]["shape"]["major"] == 30.0);
    CHECK(m2["lifts"][0]["shape"]["minor"] == 6.0);
    CHECK(m2["width"] == 70);
    std::ofstream(dir.path / "bad.txt") << "colour=blue\n";
    CHECK(run({"synth", "--config", dir / "bad.txt", "--out", dir / "bad"}).code == cli::kUsage);
    CHECK(run({"synth", "--config", dir / "missing.txt", "--out", dir / "bad"}).code == cli::kUsage);

    ::setenv("SLIPKIT_SEED", "99", 1);
    r = run({"synth", "--out", dir / "env", "--shape", "bar", "--trajectory", "0,1"});
    ::unsetenv("SLIPKIT_SEED");
    REQUIRE(r.code == cli::kOk);
    CHECK(nlohmann::json::parse(slurp(dir.path / "env" / "manifest.json"))["seed"] == 99);
}

TEST_CASE("synth is reproducible") {
    TempDir dir("repro");
    const std::vector<std::string> common{"--shape", "superellipse", "--major", "24", "--minor", "10", "--seed", "5",
                                          "--jitter", "0.8", "--speckle", "0.001", "--drift", "0.05"};
    auto a = common, b = common;
    a.insert(a.begin(), {"synth", "--out", dir / "a"});
    b.insert(b.begin(), {"synth", "--out", dir / "b"});
    REQUIRE(run(a).code == cli::kOk);
    REQUIRE(run(b).code == cli::kOk);
    CHECK(slurp(dir.path / "a" / "manifest.json") == slurp(dir.path / "b" / "manifest.json"));
    CHECK(slurp(dir.path / "a" / "lift_001" / "frame_0010.pgm") == slurp(dir.path / "b" / "lift_001" / "frame_0010.pgm"));
}
