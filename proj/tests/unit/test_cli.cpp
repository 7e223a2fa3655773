#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"
#include "lorentzseq/hyperboloid.hpp"
#include "lorentzseq/kernel_io.hpp"

namespace fs = std::filesystem;
using namespace lorentzseq;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("lorentzseq-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) { std::ofstream(path) << content; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

nlohmann::json read_json(const std::string& path) { return nlohmann::json::parse(read_file(path)); }

}  // namespace

TEST_CASE("cli spectrum on a tiny dataset") {
    TempDir dir;
    write_file(dir / "tiny.fasta", ">a\nACGTAC\n>b\nTTGA\n");
    write_file(dir / "labels.csv", "id,label\na,x\nb,y\n");
    const int code = cli::run({"spectrum", "--fasta", dir / "tiny.fasta", "--labels", dir / "labels.csv", "--k", "2",
                               "--out", dir / "out"});
    REQUIRE(code == cli::kExitOk);
    const auto tsv = read_file(dir / "out/spectrum.tsv");
    CHECK(count_lines(tsv) == 3);
    std::istringstream header(tsv.substr(0, tsv.find('\n')));
    std::size_t fields = 0;
    for (std::string f; std::getline(header, f, '\t');) ++fields;
    CHECK(fields == 17);
    const auto m = read_json(dir / "out/manifest.json");
    CHECK(m["dataset"]["sequences"] == 2);
    CHECK(fs::exists(dir / "out/spectrum.hsm"));
}

TEST_CASE("cli usage and validation errors exit 2") {
    TempDir dir;
    write_file(dir / "tiny.fasta", ">a\nACGT\n");
    CHECK(cli::run({"spectrum", "--fasta", dir / "tiny.fasta", "--labels", dir / "missing.csv", "--out", dir / "o"}) ==
          cli::kExitUsage);
    CHECK(cli::run({"spectrum", "--fasta", dir / "tiny.fasta", "--k", "0", "--out", dir / "o"}) == cli::kExitUsage);
    CHECK_FALSE(fs::exists(dir / "o"));
    CHECK(cli::run({"spectrum", "--fasta", dir / "tiny.fasta", "--k", "12", "--out", dir / "o"}) == cli::kExitUsage);
    CHECK(cli::run({"pipeline", "--fasta", dir / "tiny.fasta", "--out", dir / "o"}) == cli::kExitUsage);
    CHECK(cli::run({"frobnicate"}) == cli::kExitUsage);

    write_file(dir / "bad.fasta", "ACGT\n");
    CHECK(cli::run({"spectrum", "--fasta", dir / "bad.fasta", "--out", dir / "o"}) == cli::kExitUsage);
    write_file(dir / "amb.fasta", ">a\nACNT\n");
    CHECK(cli::run({"spectrum", "--fasta", dir / "amb.fasta", "--ambiguity", "reject", "--out", dir / "o"}) ==
          cli::kExitUsage);
    CHECK_FALSE(fs::exists(dir / "o/spectrum.tsv"));
}

TEST_CASE("cli kernel outputs") {
    TempDir dir;
    write_file(dir / "three.fasta", ">a\nACGTACGTAA\n>b\nTTGACCAGTA\n>c\nGGGGCCCCAT\n");
    REQUIRE(cli::run({"kernel", "--fasta", dir / "three.fasta", "--k", "2", "--psd", "none", "--out", dir / "h"}) == 0);
    std::ifstream hin(dir / "h/kernel.hkm", std::ios::binary);
    const auto h = read_kernel_binary(hin);
    CHECK(h.size() == 3);
    CHECK(h.data == h.data.transpose());
    CHECK(h.data.diagonal().isZero(0.0));

    REQUIRE(cli::run({"kernel", "--fasta", dir / "three.fasta", "--k", "2", "--psd", "none", "--kernel", "euclidean",
                      "--csv", "--out", dir / "e"}) == 0);
    std::ifstream ein(dir / "e/kernel.hkm", std::ios::binary);
    const auto e = read_kernel_binary(ein);
    CHECK(e.size() == 3);
    CHECK(e.data != h.data);
    CHECK(e.kind == KernelKind::EuclideanDistance);
    CHECK(count_lines(read_file(dir / "e/kernel.csv")) == 3);

    REQUIRE(cli::run({"kernel", "--fasta", dir / "three.fasta", "--k", "2", "--psd", "shift", "--out", dir / "s"}) == 0);
    const auto m = read_json(dir / "s/manifest.json");
    CHECK(m["kernel"]["lambda_min_raw"].get<double>() < 0.0);
    CHECK(m["kernel"]["diag_shift"].get<double>() > 0.0);

    REQUIRE(cli::run({"embed", "--kernel-in", dir / "s/kernel.hkm", "--fasta", dir / "three.fasta", "--components",
                      "2", "--out", dir / "emb"}) == 0);
    CHECK(read_file(dir / "emb/embedding.tsv").rfind("id\tc1", 0) == 0);
}

TEST_CASE("cli gen and pipeline artifacts, byte-identical rerun") {
    TempDir dir;
    REQUIRE(cli::run({"gen", "--n", "60", "--length", "100", "--clades", "3", "--subclades", "2", "--seed", "4",
                      "--out", dir / "data"}) == 0);
    CHECK(fs::exists(dir / "data/sequences.fasta"));
    CHECK(fs::exists(dir / "data/labels.csv"));

    const std::vector<std::string> base{"pipeline", "--fasta", dir / "data/sequences.fasta", "--labels",
                                        dir / "data/labels.csv", "--components", "10", "--runs", "3"};
    auto args = base;
    args.insert(args.end(), {"--out", dir / "p1"});
    REQUIRE(cli::run(args) == 0);
    for (const char* f : {"report.json", "embedding.tsv", "eigenvalues.csv", "heatmap.csv", "manifest.json",
                          "runs.tsv", "timings.json", "kernel.hkm"}) {
        CHECK_MESSAGE(fs::exists(dir / (std::string("p1/") + f)), f);
    }
    const auto report = read_json(dir / "p1/report.json");
    CHECK(report["per_run"].size() == 3);

    args = base;
    args.insert(args.end(), {"--out", dir / "p2", "--threads", "3"});
    REQUIRE(cli::run(args) == 0);
    CHECK(read_file(dir / "p1/report.json") == read_file(dir / "p2/report.json"));
    CHECK(read_file(dir / "p1/kernel.hkm") == read_file(dir / "p2/kernel.hkm"));

    args = base;
    args.insert(args.end(), {"--out", dir / "p3", "--kernel", "euclidean"});
    REQUIRE(cli::run(args) == 0);
    CHECK(read_file(dir / "p1/report.json") != read_file(dir / "p3/report.json"));

    args = base;
    args.insert(args.end(), {"--out", dir / "p4", "--no-mds-fallback"});
    CHECK(cli::run(args) == cli::kExitComputation);
    CHECK_FALSE(fs::exists(dir / "p4/report.json"));
}

TEST_CASE("cli selfcheck") {
    TempDir dir;
    CHECK(cli::run({"selfcheck", "--points", "200", "--out", dir / "sc"}) == 0);
    CHECK(read_json(dir / "sc/manifest.json")["budget_seconds"] == 60);
#if LORENTZSEQ_FAULT_INJECTION
    CHECK(cli::run({"selfcheck", "--points", "200", "--inject-fault", "metric_axioms"}) == cli::kExitComputation);
#endif
}
