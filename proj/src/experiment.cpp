#include "lorentzseq/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct MetricField {
    const char* name;
    double MetricBlock::*field;
};

constexpr MetricField kMetrics[] = {
    {"accuracy", &MetricBlock::accuracy},
    {"precision_weighted", &MetricBlock::precision_weighted},
    {"recall_weighted", &MetricBlock::recall_weighted},
    {"f1_weighted", &MetricBlock::f1_weighted},
    {"f1_macro", &MetricBlock::f1_macro},
    {"roc_auc_ovr", &MetricBlock::roc_auc_ovr},
};

nlohmann::ordered_json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(Eigen::Index(r)) = m.row(Eigen::Index(rows[r]));
    return out;
}

template <typename T>
std::vector<T> take(const std::vector<T>& v, const std::vector<std::size_t>& idx) {
    std::vector<T> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(v[i]);
    return out;
}

}  // namespace

Summary EvalReport::summary(double MetricBlock::*field) const {
    std::vector<double> values;
    for (const auto& run : per_run) values.push_back(run.metrics.*field);
    return summarize(values);
}

ExperimentResult run_experiment(const std::vector<SequenceRecord>& records, const ExperimentConfig& config) {
    if (config.split.runs == 0) throw Error(ErrorCode::InvalidArgument, "runs must be positive");
    std::vector<std::string> labels;
    std::vector<std::string> warnings;
    for (const auto& r : records) {
        if (!r.label) throw Error(ErrorCode::MissingLabel, "record '" + r.id + "' has no label");
        labels.push_back(*r.label);
    }
    if (records.size() < 2) throw Error(ErrorCode::SplitInfeasible, "need at least two records");

    ExperimentResult result;
    EvalReport& report = result.report;
    report.config = config;
    report.dataset = dataset_stats(records, config.spectrum.k, config.alphabet);
    if (report.dataset.shorter_than_k > 0) {
        warnings.push_back(std::to_string(report.dataset.shorter_than_k) +
                           " sequences shorter than k have all-zero spectra");
    }

    const auto kernel_start = Clock::now();
    result.spectra = spectrum_matrix(records, config.alphabet, config.spectrum, config.kernel.threads);
    result.kernel = psd_adjust(kernel_matrix(result.spectra.values, config.kernel), config.psd);
    report.kernel_time_sec = seconds_since(kernel_start);

    const auto kpca_start = Clock::now();
    KpcaOptions kpca = config.kpca;
    kpca.components = std::clamp<std::size_t>(kpca.components, 1, records.size() - 1);
    result.embedding = project(result.kernel, kpca);
    report.embedding.requested = kpca.transform;
    if (result.embedding.degenerate && config.mds_fallback && kpca.transform == KpcaTransform::Raw) {
        warnings.push_back("raw kernel has no positive centered eigenvalues; fell back to mds transform");
        kpca.transform = KpcaTransform::Mds;
        result.embedding = project(result.kernel, kpca);
        report.embedding.fell_back = true;
    }
    if (result.embedding.degenerate) {
        throw Error(ErrorCode::NumericalError, "kernel PCA found no positive eigenvalue");
    }
    report.kpca_time_sec = seconds_since(kpca_start);
    report.embedding.used = result.embedding.transform;
    report.embedding.components = result.embedding.components();
    report.embedding.dropped_negative = result.embedding.dropped_negative;
    report.embedding.diag_shift = result.kernel.diag_shift;

    const Eigen::MatrixXd& coords = result.embedding.coords;
    for (std::size_t run = 0; run < config.split.runs; ++run) {
        try {
            const Split split = stratified_split(labels, config.split, run);
            if (run == 0) warnings.insert(warnings.end(), split.warnings.begin(), split.warnings.end());

            RunResult rr;
            rr.run = run;
            rr.train_size = split.train.size();
            rr.test_size = split.test.size();
            const Eigen::MatrixXd train = take_rows(coords, split.train);
            const Eigen::MatrixXd test = take_rows(coords, split.test);
            const auto train_labels = take(labels, split.train);
            const auto test_labels = take(labels, split.test);

            const auto fit_start = Clock::now();
            Classification cls;
            if (config.classifier == ClassifierKind::Knn) {
                rr.neighbors_used = std::min(config.neighbors, split.train.size());
                cls = knn_classify(train, train_labels, test, rr.neighbors_used);
            } else {
                cls = nearest_centroid_classify(train, train_labels, test);
            }
            rr.train_time_sec = seconds_since(fit_start);
            rr.pipeline_time_sec = report.kernel_time_sec + report.kpca_time_sec + rr.train_time_sec;
            rr.metrics = evaluate(cls.predictions, cls.scores, cls.classes, test_labels);
            report.per_run.push_back(rr);
        } catch (const Error& e) {
            throw Error(e.code(), "run " + std::to_string(run) + ": " + e.what());
        }
    }

    result.heatmap = class_heatmap(coords, labels);
    warnings.insert(warnings.end(), result.heatmap.warnings.begin(), result.heatmap.warnings.end());
    report.warnings = std::move(warnings);
    return result;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["alphabet"] = config.alphabet.name();
    j["k"] = config.spectrum.k;
    j["normalize"] = config.spectrum.normalize;
    j["ambiguity"] = config.spectrum.policy == AmbiguityPolicy::Reject ? "reject" : "mask";
    j["kernel"] = std::string(to_string(config.kernel.kind));
    j["lift_scale"] = config.kernel.lift_scale;
    j["psd"] = std::string(to_string(config.psd));
    j["kpca_transform"] = std::string(to_string(config.kpca.transform));
    j["components"] = config.kpca.components;
    j["mds_fallback"] = config.mds_fallback;
    j["classifier"] = std::string(to_string(config.classifier));
    j["neighbors"] = config.neighbors;
    j["test_fraction"] = config.split.test_fraction;
    j["runs"] = config.split.runs;
    j["seed"] = config.split.base_seed;
    j["stratified"] = config.split.stratified;
    return j;
}

nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["format"] = "lorentzseq-report/1";
    j["config"] = config_to_json(report.config);

    const auto& d = report.dataset;
    j["dataset"] = {{"sequences", d.sequences},       {"classes", d.classes},
                    {"min_length", d.min_length},     {"max_length", d.max_length},
                    {"mean_length", d.mean_length},   {"shorter_than_k", d.shorter_than_k},
                    {"ambiguous_residues", d.ambiguous_residues}};

    const auto& e = report.embedding;
    j["embedding"] = {{"transform_requested", std::string(to_string(e.requested))},
                      {"transform_used", std::string(to_string(e.used))},
                      {"fell_back", e.fell_back},
                      {"components", e.components},
                      {"dropped_negative", e.dropped_negative},
                      {"diag_shift", e.diag_shift}};

    auto& runs = j["per_run"] = nlohmann::ordered_json::array();
    for (const auto& r : report.per_run) {
        nlohmann::ordered_json row;
        row["run"] = r.run;
        row["train_size"] = r.train_size;
        row["test_size"] = r.test_size;
        if (report.config.classifier == ClassifierKind::Knn) row["neighbors"] = r.neighbors_used;
        for (const auto& m : kMetrics) row[m.name] = number_or_null(r.metrics.*(m.field));
        runs.push_back(std::move(row));
    }

    auto& summary = j["summary"];
    for (const auto& m : kMetrics) {
        const Summary s = report.summary(m.field);
        summary[m.name] = {{"mean", number_or_null(s.mean)}, {"sd", number_or_null(s.sd)}, {"n", s.count}};
    }
    j["warnings"] = report.warnings;
    return j;
}

nlohmann::ordered_json timings_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["kernel_sec"] = report.kernel_time_sec;
    j["kpca_sec"] = report.kpca_time_sec;
    auto& runs = j["per_run"] = nlohmann::ordered_json::array();
    for (const auto& r : report.per_run) {
        runs.push_back({{"run", r.run},
                        {"train_time_sec", r.train_time_sec},
                        {"pipeline_time_sec", r.pipeline_time_sec}});
    }
    return j;
}

void write_runs_tsv(std::ostream& out, const EvalReport& report) {
    out << "run\ttrain_size\ttest_size";
    for (const auto& m : kMetrics) out << '\t' << m.name;
    out << '\n';
    char buf[32];
    for (const auto& r : report.per_run) {
        out << r.run << '\t' << r.train_size << '\t' << r.test_size;
        for (const auto& m : kMetrics) {
            std::snprintf(buf, sizeof buf, "%.17g", r.metrics.*(m.field));
            out << '\t' << buf;
        }
        out << '\n';
    }
}

}  // namespace lorentzseq
