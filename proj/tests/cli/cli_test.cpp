#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "ae/forward_map.hpp"
#include "ae/io.hpp"
#include "ae/synthesis.hpp"
#include "fixtures.hpp"

using namespace ae;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(AEVAL_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) result.output.append(buf.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("aeval-cli-test-" + std::to_string(static_cast<unsigned>(std::rand())));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_reference_sketch(const fs::path& target) {
    Sketch sketch;
    sketch.by_label = fixtures::reference_truth();
    sketch.counts = project(*sketch.by_label);
    write_file_atomic(target, sketch_to_json(sketch).dump(2));
}

}  // namespace

TEST_CASE("evaluate reproduces the reference report and alarm code") {
    TempDir tmp;
    write_reference_sketch(tmp.path / "sketch.json");
    const RunResult r = run("evaluate --input " + tmp.str("sketch.json") + " --output-dir " +
                            tmp.str("out"));
    CHECK(r.exit_code == 10);
    CHECK(r.output.find("irrational_real") != std::string::npos);
    CHECK(r.output.find("0.088745250126076172") != std::string::npos);
    CHECK(r.output.find("3003") != std::string::npos);
    CHECK(r.output.find("1720") != std::string::npos);

    const auto doc = nlohmann::json::parse(slurp(tmp.path / "out" / "report.json"));
    CHECK(doc["gt"]["errors"]["total"] == 1720);
    CHECK(doc["mv"]["errors"]["total"] == 3003);
    CHECK(doc["ae"]["solution"]["alarm"]["exit_code"] == 10);
}

TEST_CASE("evaluate of a counts-only file omits ground truth") {
    TempDir tmp;
    Sketch sketch;
    sketch.counts = fixtures::reference_counts();
    write_file_atomic(tmp.path / "counts.json", sketch_to_json(sketch).dump(2));
    const RunResult r = run("evaluate --format counts --input " + tmp.str("counts.json"));
    CHECK(r.exit_code == 10);
    CHECK(r.output.find("decision errors vs truth") == std::string::npos);
    CHECK(r.output.find("mv") != std::string::npos);
}

TEST_CASE("evaluate exits clean on an exactly solvable sketch") {
    TempDir tmp;
    // Exact forward image of a rational point: q = 2000 with tenths coordinates.
    const auto freqs = pattern_frequencies(fixtures::roundtrip_point());
    Sketch sketch;
    for (int code = 0; code < 8; ++code)
        sketch.counts.n[code] = (Rational(2000) * freqs.f[code]).convert_to<std::uint64_t>();
    sketch.counts.q = 2000;
    write_file_atomic(tmp.path / "clean.json", sketch_to_json(sketch).dump(2));
    const RunResult r = run("evaluate --input " + tmp.str("clean.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("clean_rational") != std::string::npos);
}

TEST_CASE("evaluate rejects malformed input with the schema") {
    TempDir tmp;
    write_file_atomic(tmp.path / "bad.json", "{\"nope\": 1}");
    const RunResult r = run("evaluate --input " + tmp.str("bad.json"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("expected sketch schema") != std::string::npos);

    const RunResult missing = run("evaluate --input " + tmp.str("absent.json"));
    CHECK(missing.exit_code == 2);
}

TEST_CASE("decide labels items and grades against truth") {
    TempDir tmp;
    const SampleResult sample = sample_independent(fixtures::roundtrip_point(), 400, 5, true);
    write_file_atomic(tmp.path / "records.csv",
                      records_to_csv(sample.records, {"1", "2", "3"}, true));

    const RunResult mv = run("decide --method mv --input " + tmp.str("records.csv") +
                             " --output-dir " + tmp.str("out"));
    CHECK(mv.exit_code == 0);
    CHECK(mv.output.find("errors vs truth") != std::string::npos);
    const std::string labels = slurp(tmp.path / "out" / "labels_1_2_3.csv");
    CHECK(labels.rfind("item_id,label\n", 0) == 0);
    CHECK(std::count(labels.begin(), labels.end(), '\n') == 401);

    const RunResult gt = run("decide --method gt --input " + tmp.str("records.csv") +
                             " --output-dir " + tmp.str("out"));
    CHECK(gt.exit_code == 0);

    const RunResult ae = run("decide --method ae --input " + tmp.str("records.csv") +
                             " --output-dir " + tmp.str("out"));
    CHECK((ae.exit_code == 0 || ae.exit_code == 10));
    CHECK(ae.output.find("labels written") != std::string::npos);
}

TEST_CASE("decide without truth rejects method gt") {
    TempDir tmp;
    const SampleResult sample = sample_independent(fixtures::roundtrip_point(), 50, 6, true);
    write_file_atomic(tmp.path / "records.csv",
                      records_to_csv(sample.records, {"1", "2", "3"}, false));
    const RunResult r = run("decide --method gt --input " + tmp.str("records.csv"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("true labels") != std::string::npos);
}

TEST_CASE("four classifiers produce one block per trio") {
    TempDir tmp;
    const SampleResult sample = sample_independent(fixtures::roundtrip_point(), 120, 8, true);
    // Widen to four classifiers by duplicating the third column under a new id.
    std::vector<DecisionRecord> records = sample.records;
    for (DecisionRecord& rec : records) rec.decisions.emplace_back("4", rec.decisions[2].second);
    write_file_atomic(tmp.path / "records.csv", records_to_csv(records, {"1", "2", "3", "4"}, true));

    const RunResult r = run("decide --method mv --input " + tmp.str("records.csv") +
                            " --output-dir " + tmp.str("out"));
    CHECK(r.exit_code == 0);
    for (const char* name : {"labels_1_2_3.csv", "labels_1_2_4.csv", "labels_1_3_4.csv",
                             "labels_2_3_4.csv"})
        CHECK(fs::exists(tmp.path / "out" / name));
}

TEST_CASE("simulate emits sketches that evaluate and decide accept unchanged") {
    TempDir tmp;
    const RunResult sim = run("simulate --trials 2 --q 500 --seed 3 --records --output-dir " +
                              tmp.str("sim"));
    CHECK(sim.exit_code == 0);
    CHECK(fs::exists(tmp.path / "sim" / "sketch_0001.json"));
    CHECK(fs::exists(tmp.path / "sim" / "sketch_0002.json"));
    CHECK(fs::exists(tmp.path / "sim" / "records_0001.csv"));

    const RunResult eval = run("evaluate --input " + tmp.str("sim/sketch_0001.json"));
    CHECK((eval.exit_code == 0 || eval.exit_code == 10 || eval.exit_code == 11 ||
           eval.exit_code == 12 || eval.exit_code == 13));

    const RunResult dec = run("decide --method gt --input " + tmp.str("sim/records_0001.csv") +
                              " --output-dir " + tmp.str("out"));
    CHECK(dec.exit_code == 0);
}

TEST_CASE("simulate reports target and measured pair covariance") {
    TempDir tmp;
    const RunResult r = run("simulate --q 2000 --seed 1 --rho 1,2:1/2 --output-dir " +
                            tmp.str("sim"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("gamma_a target") != std::string::npos);
    CHECK(r.output.find("measured") != std::string::npos);

    // Full coupling of two 0.6-accurate slots: covariance 0.6 - 0.36 = 0.24.
    const RunResult full = run(
        "simulate --q 1000 --seed 1 --point 1/2,3/5,3/5,3/5,3/5,3/5,3/5 --rho 1,2:1 "
        "--output-dir " +
        tmp.str("sim2"));
    CHECK(full.exit_code == 0);
    CHECK(full.output.find("0.24") != std::string::npos);

    const RunResult bad = run("simulate --rho 1,1:1/2 --output-dir " + tmp.str("sim3"));
    CHECK(bad.exit_code == 2);
}

TEST_CASE("unknown flags and subcommands exit with the input-error code") {
    const RunResult r = run("evaluate --no-such-flag");
    CHECK(r.exit_code == 2);
    const RunResult help = run("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("evaluate") != std::string::npos);
}
