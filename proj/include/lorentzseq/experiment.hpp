#ifndef LORENTZSEQ_EXPERIMENT_HPP
#define LORENTZSEQ_EXPERIMENT_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lorentzseq/alphabet.hpp"
#include "lorentzseq/classifiers.hpp"
#include "lorentzseq/heatmap.hpp"
#include "lorentzseq/hyperboloid.hpp"
#include "lorentzseq/kernel_pca.hpp"
#include "lorentzseq/metrics.hpp"
#include "lorentzseq/sequences.hpp"
#include "lorentzseq/spectrum.hpp"
#include "lorentzseq/split.hpp"
#include "lorentzseq/stats.hpp"

namespace lorentzseq {

struct ExperimentConfig {
    Alphabet alphabet = Alphabet::dna();
    SpectrumOptions spectrum;
    KernelOptions kernel;
    PsdMode psd = PsdMode::Clip;
    KpcaOptions kpca;
    bool mds_fallback = true;  // retry with classical scaling when raw is degenerate
    ClassifierKind classifier = ClassifierKind::Knn;
    std::size_t neighbors = 5;
    SplitSpec split;
};

struct RunResult {
    std::size_t run = 0;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t neighbors_used = 0;
    MetricBlock metrics;
    double train_time_sec = 0.0;     // classifier fit + predict
    double pipeline_time_sec = 0.0;  // kernel + kernel PCA + classifier
};

struct EmbeddingInfo {
    KpcaTransform requested = KpcaTransform::Raw;
    KpcaTransform used = KpcaTransform::Raw;
    bool fell_back = false;
    std::size_t components = 0;
    std::size_t dropped_negative = 0;
    double diag_shift = 0.0;
};

struct EvalReport {
    ExperimentConfig config;
    DatasetStats dataset;
    EmbeddingInfo embedding;
    std::vector<RunResult> per_run;
    std::vector<std::string> warnings;
    double kernel_time_sec = 0.0;
    double kpca_time_sec = 0.0;

    Summary summary(double MetricBlock::*field) const;
};

struct ExperimentResult {
    EvalReport report;
    SpectrumMatrix spectra;
    KernelMatrix kernel;  // after PSD adjustment
    Embedding embedding;
    Heatmap heatmap;
};

/// Spectra, kernel and kernel PCA are computed once over all records (the
/// kernel is transductive and the split does not change it); each run then
/// draws its own split and trains/evaluates the classifier.
/// Records must be labelled. Errors inside a run carry the run index.
ExperimentResult run_experiment(const std::vector<SequenceRecord>& records, const ExperimentConfig& config);

/// Report without timing fields, so identical inputs give identical bytes.
nlohmann::ordered_json report_to_json(const EvalReport& report);
nlohmann::ordered_json timings_to_json(const EvalReport& report);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

/// One row per run: run, sizes and every metric.
void write_runs_tsv(std::ostream& out, const EvalReport& report);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_EXPERIMENT_HPP
