#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "objcount/cli.hpp"
#include "objcount/imageio.hpp"
#include "objcount/synthetic.hpp"
#include "test_util.hpp"

using namespace objcount;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "objcount");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// (length, value) of the largest CSV row; the first row wins ties.
std::pair<std::size_t, double> csv_argmax(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    std::pair<std::size_t, double> best{0, -1.0};
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        const std::size_t x = std::stoul(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        if (v > best.second) best = {x, v};
    }
    return best;
}

}  // namespace

TEST_CASE("count prints JSON for a generated scene") {
    TempDir dir;
    const std::string path = (dir / "scene.pgm").string();
    const Run gen = run_cli({"generate", "--n", "50", "--diameter", "100", "--size", "1000x1000", "--seed", "3",
                             "--out", path});
    REQUIRE(gen.code == 0);
    const auto truth = nlohmann::json::parse(gen.out);

    const Run r = run_cli({"count", path, "--alpha", "0.8"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"count", "count_real", "diameter", "white_pixels", "x_max", "alpha", "warnings"}) {
        CHECK(j.contains(key));
    }
    const double equivalent = 50.0 * (1.0 - truth["overlap"].get<double>());
    CHECK(std::abs(j["count"].get<double>() - equivalent) <= 0.1 * equivalent);
    CHECK(j["alpha"].get<double>() == 0.8);
}

TEST_CASE("count error exit codes") {
    TempDir dir;
    const Run missing = run_cli({"count", (dir / "missing.pgm").string()});
    CHECK(missing.code == cli::kIoError);
    CHECK(missing.out.empty());

    save_gray(GrayImage(20, 20, 0), dir / "black.pgm");
    const Run alpha = run_cli({"count", (dir / "black.pgm").string(), "--alpha", "1.5"});
    CHECK(alpha.code == cli::kConfigError);
    CHECK(alpha.err.find("alpha must be in (0,1)") != std::string::npos);

    const Run empty = run_cli({"count", (dir / "black.pgm").string()});
    CHECK(empty.code == cli::kPipelineError);
    CHECK(empty.err.find("stage 3") != std::string::npos);

    CHECK(run_cli({"count", (dir / "black.pgm").string(), "--direction", "diagonal"}).code == cli::kConfigError);
    CHECK(run_cli({"count"}).code == cli::kConfigError);
    CHECK(run_cli({}).code == cli::kConfigError);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("histogram command") {
    TempDir dir;
    const std::string single = (dir / "single.pgm").string();
    REQUIRE(run_cli({"generate", "--n", "1", "--diameter", "80", "--size", "200x200", "--seed", "4", "--out", single})
                .code == 0);
    const Run raw = run_cli({"histogram", single, "--raw"});
    REQUIRE(raw.code == 0);
    CHECK(raw.out.rfind("length,count\n", 0) == 0);
    const auto [x, v] = csv_argmax(raw.out);
    CHECK(x <= 80);
    CHECK(x >= 78);

    const std::string mixed = (dir / "mixed.pgm").string();
    REQUIRE(run_cli({"generate", "--n", "20", "--diameter-range", "61-80", "--size", "1000x1000", "--seed", "5",
                     "--out", mixed})
                .code == 0);
    const Run smoothed = run_cli({"histogram", mixed, "--smoothed"});
    REQUIRE(smoothed.code == 0);
    CHECK(smoothed.out.rfind("length,value\n", 0) == 0);
    const auto peak = csv_argmax(smoothed.out).first;
    // A 20-disc draw only approximates the ideal 61..80 mix whose model peak is 63.
    CHECK(peak >= 57);
    CHECK(peak <= 69);

    save_gray(GrayImage(20, 20, 0), dir / "black.pgm");
    const Run empty = run_cli({"histogram", (dir / "black.pgm").string()});
    CHECK(empty.code == cli::kPipelineError);
    CHECK(empty.out == "length,count\n");

    CHECK(run_cli({"histogram", single, "--raw", "--smoothed"}).code == cli::kConfigError);
}

TEST_CASE("bench command") {
    const Run a = run_cli({"bench", "--densities", "1,20", "--trials", "5", "--seed", "1"});
    REQUIRE(a.code == 0);
    std::istringstream in(a.out);
    std::string header, row1, row2, extra;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(header == "density,trials,errors,error_rate");
    CHECK(row1 == "1,5,0,0.000000");
    CHECK(row2.rfind("20,5,", 0) == 0);
    CHECK_FALSE(std::getline(in, extra));

    const Run b = run_cli({"bench", "--densities", "1,20", "--trials", "5", "--seed", "1"});
    CHECK(b.out == a.out);

    CHECK(run_cli({"bench", "--trials", "0"}).code == cli::kConfigError);
    CHECK(run_cli({"bench", "--size", "10by10"}).code == cli::kConfigError);
    CHECK(run_cli({"bench", "--diameter", "2000", "--trials", "1"}).code == cli::kConfigError);
}

TEST_CASE("generate command") {
    TempDir dir;
    const std::string empty = (dir / "empty.pgm").string();
    REQUIRE(run_cli({"generate", "--n", "0", "--diameter", "10", "--size", "64x32", "--out", empty}).code == 0);
    const GrayImage e = load_gray(empty);
    CHECK(e == GrayImage(64, 32, 0));

    const std::string a = (dir / "a.pgm").string();
    const std::string b = (dir / "b.pgm").string();
    const Run ga = run_cli({"generate", "--n", "150", "--diameter", "100", "--size", "1000x1000", "--seed", "7", "--out", a});
    REQUIRE(ga.code == 0);
    REQUIRE(run_cli({"generate", "--n", "150", "--diameter", "100", "--size", "1000x1000", "--seed", "7", "--out", b})
                .code == 0);
    CHECK(read_file(a) == read_file(b));

    const GrayImage img = load_gray(a);
    std::size_t white = 0;
    for (auto px : img.pixels()) white += px == 255;
    const double occupancy = static_cast<double>(white) / 1e6;
    CHECK(std::abs(occupancy - 0.65) <= 0.05);
    CHECK(nlohmann::json::parse(ga.out)["occupancy"].get<double>() == occupancy);

    CHECK(run_cli({"generate", "--n", "1", "--diameter", "100", "--diameter-range", "1-2", "--out", a}).code ==
          cli::kConfigError);
    CHECK(run_cli({"generate", "--n", "1", "--diameter", "100"}).code == cli::kConfigError);
    CHECK(run_cli({"generate", "--n", "1", "--out", (dir / "nodir" / "x.pgm").string()}).code == cli::kIoError);
}

TEST_CASE("config file supplies defaults that flags override") {
    TempDir dir;
    save_gray(GrayImage(20, 20, 0), dir / "black.pgm");
    write_file(dir / "bad.cfg", "# settings\nalpha = 1.5\n");
    const Run bad = run_cli({"count", (dir / "black.pgm").string(), "--config", (dir / "bad.cfg").string()});
    CHECK(bad.code == cli::kConfigError);

    const Run overridden =
        run_cli({"count", (dir / "black.pgm").string(), "--config", (dir / "bad.cfg").string(), "--alpha", "0.7"});
    CHECK(overridden.code == cli::kPipelineError);  // config accepted, image is empty

    write_file(dir / "broken.cfg", "alpha\n");
    CHECK(run_cli({"count", (dir / "black.pgm").string(), "--config", (dir / "broken.cfg").string()}).code ==
          cli::kConfigError);
    CHECK(run_cli({"count", (dir / "black.pgm").string(), "--config", (dir / "none.cfg").string()}).code ==
          cli::kIoError);
}
