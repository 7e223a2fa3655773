#include <doctest.h>

#include <set>
#include <sstream>

#include "lorentzseq/error.hpp"
#include "lorentzseq/experiment.hpp"
#include "lorentzseq/selfcheck.hpp"
#include "lorentzseq/synth.hpp"

using namespace lorentzseq;

namespace {

std::vector<SequenceRecord> small_dataset(std::uint64_t seed = 5) {
    SynthConfig cfg;
    cfg.sequences = 60;
    cfg.length = 120;
    cfg.clades = 3;
    cfg.subclades = 2;
    cfg.seed = seed;
    return generate_mutation_tree(cfg, Alphabet::dna());
}

}  // namespace

TEST_CASE("generate_mutation_tree") {
    const auto recs = small_dataset();
    REQUIRE(recs.size() == 60);
    CHECK(recs[0].id == "seq0001");
    std::set<std::string> labels;
    for (const auto& r : recs) {
        CHECK(r.residues.size() == 120);
        CHECK(r.residues.find_first_not_of("ACGT") == std::string::npos);
        REQUIRE(r.label.has_value());
        labels.insert(*r.label);
    }
    CHECK(labels == std::set<std::string>{"clade1", "clade2", "clade3"});

    const auto again = small_dataset();
    for (std::size_t i = 0; i < recs.size(); ++i) CHECK(again[i].residues == recs[i].residues);
    CHECK(small_dataset(6)[0].residues != recs[0].residues);
}

TEST_CASE("run_experiment produces a complete report") {
    ExperimentConfig cfg;
    cfg.kpca.components = 10;
    const auto result = run_experiment(small_dataset(), cfg);
    const auto& rep = result.report;
    REQUIRE(rep.per_run.size() == 5);
    for (const auto& run : rep.per_run) {
        CHECK(run.train_size + run.test_size == 60);
        CHECK(run.metrics.accuracy >= 0.0);
        CHECK(run.metrics.accuracy <= 1.0);
    }
    CHECK(rep.embedding.fell_back);
    CHECK(rep.embedding.used == KpcaTransform::Mds);
    CHECK(rep.summary(&MetricBlock::accuracy).count == 5);
    CHECK(rep.summary(&MetricBlock::accuracy).sd >= 0.0);
    CHECK(result.kernel.size() == 60);
    CHECK(result.embedding.rows() == 60);

    const auto j = report_to_json(rep);
    CHECK(j["format"] == "lorentzseq-report/1");
    CHECK(j["per_run"].size() == 5);
    CHECK(j.contains("summary"));
}

TEST_CASE("runs = 1 gives sd = 0") {
    ExperimentConfig cfg;
    cfg.kpca.components = 5;
    cfg.split.runs = 1;
    const auto rep = run_experiment(small_dataset(), cfg).report;
    CHECK(rep.per_run.size() == 1);
    CHECK(rep.summary(&MetricBlock::accuracy).sd == 0.0);
}

TEST_CASE("run_experiment is deterministic and thread independent") {
    ExperimentConfig cfg;
    cfg.kpca.components = 8;
    cfg.kernel.threads = 1;
    const auto recs = small_dataset();
    const auto a = report_to_json(run_experiment(recs, cfg).report).dump(2);
    cfg.kernel.threads = 4;
    const auto b = report_to_json(run_experiment(recs, cfg).report).dump(2);
    CHECK(a == b);

    std::ostringstream ta, tb;
    write_runs_tsv(ta, run_experiment(recs, cfg).report);
    write_runs_tsv(tb, run_experiment(recs, cfg).report);
    CHECK(ta.str() == tb.str());
}

TEST_CASE("run_experiment variants") {
    const auto recs = small_dataset();
    ExperimentConfig cfg;
    cfg.kpca.components = 6;

    cfg.kernel.kind = KernelKind::EuclideanDistance;
    CHECK(run_experiment(recs, cfg).report.per_run.size() == 5);

    cfg.kernel.kind = KernelKind::HyperboloidDistance;
    cfg.classifier = ClassifierKind::Centroid;
    CHECK(run_experiment(recs, cfg).report.per_run.size() == 5);

    cfg.classifier = ClassifierKind::Knn;
    cfg.psd = PsdMode::Shift;
    const auto shifted = run_experiment(recs, cfg);
    CHECK(shifted.kernel.diag_shift > 0.0);
    CHECK(shifted.report.embedding.diag_shift == shifted.kernel.diag_shift);

    cfg.psd = PsdMode::Clip;
    cfg.mds_fallback = false;
    CHECK_THROWS_AS(run_experiment(recs, cfg), Error);

    CHECK_THROWS_AS(run_experiment({}, ExperimentConfig{}), Error);
}

TEST_CASE("selfcheck passes and detects injected faults") {
    SelfcheckOptions opts;
    opts.points = 200;
    const auto results = run_selfcheck(opts);
    CHECK(results.size() == selfcheck_properties().size());
    for (const auto& r : results) CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);

    for (const auto& name : selfcheck_properties()) {
        opts.inject_fault = name;
        const auto faulty = run_selfcheck(opts);
        for (const auto& r : faulty) CHECK(r.passed == (r.name != name));
    }
}
