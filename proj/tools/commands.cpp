#include "commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorentzseq/error.hpp"
#include "lorentzseq/experiment.hpp"
#include "lorentzseq/kernel_io.hpp"
#include "lorentzseq/parallel.hpp"
#include "lorentzseq/selfcheck.hpp"
#include "lorentzseq/synth.hpp"

namespace lorentzseq::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Files written by one command. Unless commit() is called, everything
// written so far is removed again when the object goes out of scope.
class Artifacts {
public:
    explicit Artifacts(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create output directory " + dir_.string());
    }
    Artifacts(const Artifacts&) = delete;
    Artifacts& operator=(const Artifacts&) = delete;

    ~Artifacts() {
        if (committed_) return;
        for (const auto& p : written_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& fill) {
        const fs::path path = dir_ / name;
        written_.push_back(path);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
        fill(out);
        out.flush();
        if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
        names_.push_back(name);
    }

    void write_json(const std::string& name, const json& j) {
        write(name, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
    }

    const std::vector<std::string>& names() const { return names_; }
    void commit() { committed_ = true; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    std::vector<std::string> names_;
    bool committed_ = false;
};

struct InputArgs {
    std::string fasta;
    std::string labels;
    std::string alphabet = "dna";
    std::size_t k = 3;
    bool normalize = true;
    std::string ambiguity = "mask";
    bool allow_large_k = false;
};

struct KernelArgs {
    std::string kernel = "hyperboloid";
    double lift_scale = 1.0;
    std::string psd = "clip";
};

struct KpcaArgs {
    std::size_t components = 100;
    std::string transform = "raw";
    bool no_fallback = false;
};

struct Settings {
    InputArgs input;
    KernelArgs kernel;
    KpcaArgs kpca;
    std::string classifier = "knn";
    std::size_t neighbors = 5;
    double test_fraction = 0.3;
    std::size_t runs = 5;
    std::uint64_t seed = 1;
    bool unstratified = false;
    unsigned threads = 0;
    std::string out = ".";
    bool kernel_csv = false;
    std::string kernel_in;

    SynthConfig synth;

    std::uint64_t selfcheck_seed = SelfcheckOptions{}.seed;
    std::size_t selfcheck_points = SelfcheckOptions{}.points;
    std::string inject_fault;
};

AmbiguityPolicy parse_policy(const std::string& name) {
    if (name == "mask") return AmbiguityPolicy::MaskKmers;
    if (name == "reject") return AmbiguityPolicy::Reject;
    throw Error(ErrorCode::InvalidArgument, "unknown ambiguity policy '" + name + "'");
}

SpectrumOptions spectrum_options(const InputArgs& in) {
    return {in.k, parse_policy(in.ambiguity), in.normalize};
}

// Default memory guard on the spectrum dimension.
void check_k(const InputArgs& in, const Alphabet& alphabet) {
    if (in.k == 0) throw Error(ErrorCode::InvalidArgument, "--k must be at least 1");
    if (in.allow_large_k) return;
    std::size_t limit_k = 0;
    if (alphabet.name() == "dna") limit_k = 8;
    else if (alphabet.name() == "protein") limit_k = 4;
    if (limit_k > 0 && in.k > limit_k) {
        throw Error(ErrorCode::InvalidArgument, "--k " + std::to_string(in.k) + " exceeds the limit of " +
                                                    std::to_string(limit_k) + " for " + alphabet.name() +
                                                    " (use --allow-large-k)");
    }
    if (limit_k == 0 && spectrum_dimension(alphabet.size(), in.k) > (std::size_t{1} << 20)) {
        throw Error(ErrorCode::InvalidArgument, "spectrum dimension above 2^20 (use --allow-large-k)");
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return in;
}

template <typename Fn>
auto with_file_context(const std::string& path, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

struct Dataset {
    std::vector<SequenceRecord> records;
    Alphabet alphabet;
};

Dataset load_dataset(const InputArgs& in, bool labels_required) {
    Dataset ds{{}, Alphabet::parse(in.alphabet)};
    const auto policy = parse_policy(in.ambiguity);
    auto records = with_file_context(in.fasta, [&] {
        auto stream = open_input(in.fasta);
        return parse_fasta(stream);
    });
    if (in.labels.empty()) {
        if (labels_required) throw Error(ErrorCode::InvalidArgument, "--labels is required");
        LabelMap placeholder;
        for (const auto& r : records) placeholder.emplace(r.id, "");
        ds.records = with_file_context(in.fasta, [&] {
            return validate_records(records, placeholder, ds.alphabet, policy);
        });
        for (auto& r : ds.records) r.label.reset();
        return ds;
    }
    const LabelMap labels = with_file_context(in.labels, [&] {
        auto stream = open_input(in.labels);
        return load_labels(stream);
    });
    ds.records = with_file_context(in.fasta, [&] { return validate_records(records, labels, ds.alphabet, policy); });
    return ds;
}

json stats_to_json(const DatasetStats& d) {
    return {{"sequences", d.sequences},     {"classes", d.classes},
            {"min_length", d.min_length},   {"max_length", d.max_length},
            {"mean_length", d.mean_length}, {"shorter_than_k", d.shorter_than_k},
            {"ambiguous_residues", d.ambiguous_residues}};
}

json input_to_json(const InputArgs& in) {
    return {{"fasta", in.fasta},         {"labels", in.labels}, {"alphabet", in.alphabet},
            {"k", in.k},                 {"normalize", in.normalize},
            {"ambiguity", in.ambiguity}, {"allow_large_k", in.allow_large_k}};
}

json manifest(const std::string& command, const std::vector<std::string>& argv, unsigned threads) {
    json m;
    m["tool"] = "lorentzseq";
    m["version"] = kVersion;
    m["command"] = command;
    m["argv"] = argv;
    m["threads"] = threads;
    return m;
}

std::vector<std::string> ids_of(const std::vector<SequenceRecord>& records) {
    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (const auto& r : records) ids.push_back(r.id);
    return ids;
}

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------- commands

int cmd_gen(const Settings& s, const std::vector<std::string>& argv) {
    const Alphabet alphabet = Alphabet::parse(s.input.alphabet);
    SynthConfig config = s.synth;
    config.seed = s.seed;
    const auto records = generate_mutation_tree(config, alphabet);

    Artifacts out(s.out);
    out.write("sequences.fasta", [&](std::ostream& os) { write_fasta(os, records); });
    out.write("labels.csv", [&](std::ostream& os) {
        os << "id,label\n";
        for (const auto& r : records) os << r.id << ',' << *r.label << '\n';
    });
    json m = manifest("gen", argv, 1);
    m["generator"] = {{"sequences", config.sequences},   {"length", config.length},
                      {"clades", config.clades},         {"subclades", config.subclades},
                      {"mu_within", config.mu_within},   {"mu_between", config.mu_between},
                      {"seed", config.seed},             {"alphabet", alphabet.name()}};
    m["dataset"] = stats_to_json(dataset_stats(records, 1, alphabet));
    m["outputs"] = out.names();
    out.write_json("manifest.json", m);
    out.commit();
    std::cout << "wrote " << records.size() << " sequences to " << s.out << '\n';
    return kExitOk;
}

int cmd_spectrum(const Settings& s, const std::vector<std::string>& argv) {
    const unsigned threads = resolve_threads(s.threads);
    const auto ds = load_dataset(s.input, false);
    const auto start = std::chrono::steady_clock::now();
    const auto spectra = spectrum_matrix(ds.records, ds.alphabet, spectrum_options(s.input), threads);

    Artifacts out(s.out);
    out.write("spectrum.tsv", [&](std::ostream& os) { write_spectrum_tsv(os, spectra, ids_of(ds.records), ds.alphabet); });
    out.write("spectrum.hsm", [&](std::ostream& os) { write_spectrum_binary(os, spectra); });
    json m = manifest("spectrum", argv, threads);
    m["input"] = input_to_json(s.input);
    m["dataset"] = stats_to_json(dataset_stats(ds.records, s.input.k, ds.alphabet));
    m["dimension"] = spectra.values.cols();
    m["seconds"] = elapsed(start);
    m["outputs"] = out.names();
    out.write_json("manifest.json", m);
    out.commit();
    std::cout << "spectrum " << spectra.values.rows() << " x " << spectra.values.cols() << '\n';
    return kExitOk;
}

int cmd_kernel(const Settings& s, const std::vector<std::string>& argv) {
    const unsigned threads = resolve_threads(s.threads);
    const auto ds = load_dataset(s.input, false);
    const KernelOptions kopts{parse_kernel_kind(s.kernel.kernel), s.kernel.lift_scale, threads};
    const PsdMode psd = parse_psd_mode(s.kernel.psd);

    const auto start = std::chrono::steady_clock::now();
    const auto spectra = spectrum_matrix(ds.records, ds.alphabet, spectrum_options(s.input), threads);
    const auto raw = kernel_matrix(spectra.values, kopts);
    const double lambda_min = raw.size() > 0 ? min_eigenvalue(raw.data) : 0.0;
    const auto kernel = psd_adjust(raw, psd);

    Artifacts out(s.out);
    out.write("kernel.hkm", [&](std::ostream& os) { write_kernel_binary(os, kernel); });
    if (s.kernel_csv) out.write("kernel.csv", [&](std::ostream& os) { write_kernel_csv(os, kernel); });
    json m = manifest("kernel", argv, threads);
    m["input"] = input_to_json(s.input);
    m["kernel"] = {{"kind", std::string(to_string(kopts.kind))},
                   {"lift_scale", kopts.lift_scale},
                   {"psd", std::string(to_string(psd))},
                   {"lambda_min_raw", lambda_min},
                   {"diag_shift", kernel.diag_shift},
                   {"kind_code", kernel.kind_code()},
                   {"n", kernel.size()}};
    m["dataset"] = stats_to_json(dataset_stats(ds.records, s.input.k, ds.alphabet));
    m["seconds"] = elapsed(start);
    m["outputs"] = out.names();
    out.write_json("manifest.json", m);
    out.commit();
    std::cout << "kernel " << kernel.size() << " x " << kernel.size() << ", diag_shift " << kernel.diag_shift
              << '\n';
    return kExitOk;
}

int cmd_embed(const Settings& s, const std::vector<std::string>& argv) {
    KernelMatrix kernel = with_file_context(s.kernel_in, [&] {
        auto stream = open_input(s.kernel_in);
        return read_kernel_binary(stream);
    });
    if (kernel.size() < 2) throw Error(ErrorCode::InvalidArgument, "embedding needs at least two samples");
    std::vector<std::string> ids;
    if (!s.input.fasta.empty()) {
        ids = ids_of(with_file_context(s.input.fasta, [&] {
            auto stream = open_input(s.input.fasta);
            return parse_fasta(stream);
        }));
        if (ids.size() != kernel.size()) {
            throw Error(ErrorCode::DimensionMismatch, "FASTA has " + std::to_string(ids.size()) +
                                                          " records but the kernel has " +
                                                          std::to_string(kernel.size()) + " rows");
        }
    } else {
        for (std::size_t i = 0; i < kernel.size(); ++i) ids.push_back("row" + std::to_string(i + 1));
    }

    if (kernel.adjustment == PsdMode::None) kernel = psd_adjust(std::move(kernel), parse_psd_mode(s.kernel.psd));
    KpcaOptions kpca{std::min(s.kpca.components, kernel.size() - 1), parse_kpca_transform(s.kpca.transform)};
    auto embedding = project(kernel, kpca);
    bool fell_back = false;
    if (embedding.degenerate && !s.kpca.no_fallback && kpca.transform == KpcaTransform::Raw) {
        kpca.transform = KpcaTransform::Mds;
        embedding = project(kernel, kpca);
        fell_back = true;
    }
    if (embedding.degenerate) throw Error(ErrorCode::NumericalError, "kernel PCA found no positive eigenvalue");

    Artifacts out(s.out);
    out.write("embedding.tsv", [&](std::ostream& os) { write_embedding_tsv(os, embedding, ids); });
    out.write("eigenvalues.csv", [&](std::ostream& os) { write_eigenvalues_csv(os, embedding); });
    json m = manifest("embed", argv, 1);
    m["kernel_in"] = s.kernel_in;
    m["embedding"] = {{"transform_requested", s.kpca.transform},
                      {"transform_used", std::string(to_string(embedding.transform))},
                      {"fell_back", fell_back},
                      {"components", embedding.components()},
                      {"dropped_negative", embedding.dropped_negative},
                      {"psd", std::string(to_string(kernel.adjustment))},
                      {"diag_shift", kernel.diag_shift}};
    m["outputs"] = out.names();
    out.write_json("manifest.json", m);
    out.commit();
    std::cout << "embedding " << embedding.rows() << " x " << embedding.components() << " ("
              << to_string(embedding.transform) << ")\n";
    return kExitOk;
}

ExperimentConfig experiment_config(const Settings& s, const Alphabet& alphabet, unsigned threads) {
    ExperimentConfig c;
    c.alphabet = alphabet;
    c.spectrum = spectrum_options(s.input);
    c.kernel = {parse_kernel_kind(s.kernel.kernel), s.kernel.lift_scale, threads};
    c.psd = parse_psd_mode(s.kernel.psd);
    c.kpca = {s.kpca.components, parse_kpca_transform(s.kpca.transform)};
    c.mds_fallback = !s.kpca.no_fallback;
    c.classifier = parse_classifier(s.classifier);
    c.neighbors = s.neighbors;
    c.split = {s.test_fraction, s.runs, s.seed, !s.unstratified};
    return c;
}

int cmd_pipeline(const Settings& s, const std::vector<std::string>& argv) {
    const unsigned threads = resolve_threads(s.threads);
    const auto ds = load_dataset(s.input, true);
    const ExperimentConfig config = experiment_config(s, ds.alphabet, threads);

    const auto start = std::chrono::steady_clock::now();
    const auto result = run_experiment(ds.records, config);
    const auto ids = ids_of(ds.records);

    Artifacts out(s.out);
    out.write_json("report.json", report_to_json(result.report));
    out.write("runs.tsv", [&](std::ostream& os) { write_runs_tsv(os, result.report); });
    out.write_json("timings.json", timings_to_json(result.report));
    out.write("embedding.tsv", [&](std::ostream& os) { write_embedding_tsv(os, result.embedding, ids); });
    out.write("eigenvalues.csv", [&](std::ostream& os) { write_eigenvalues_csv(os, result.embedding); });
    out.write("heatmap.csv", [&](std::ostream& os) { write_heatmap_csv(os, result.heatmap); });
    out.write("kernel.hkm", [&](std::ostream& os) { write_kernel_binary(os, result.kernel); });
    json m = manifest("pipeline", argv, threads);
    m["input"] = input_to_json(s.input);
    m["config"] = config_to_json(config);
    m["dataset"] = stats_to_json(result.report.dataset);
    m["seconds"] = elapsed(start);
    m["outputs"] = out.names();
    out.write_json("manifest.json", m);
    out.commit();

    const Summary acc = result.report.summary(&MetricBlock::accuracy);
    const Summary f1 = result.report.summary(&MetricBlock::f1_macro);
    std::cout << "accuracy " << acc.mean << " (sd " << acc.sd << "), macro F1 " << f1.mean << " (sd " << f1.sd
              << ") over " << result.report.per_run.size() << " runs; embedding "
              << to_string(result.embedding.transform) << " with " << result.embedding.components()
              << " components\n";
    for (const auto& w : result.report.warnings) std::cerr << "warning: " << w << '\n';
    return kExitOk;
}

int cmd_selfcheck(const Settings& s, const std::vector<std::string>& argv, bool write_manifest) {
    SelfcheckOptions options;
    options.seed = s.selfcheck_seed;
    options.points = s.selfcheck_points;
    options.threads = resolve_threads(s.threads);
    options.inject_fault = s.inject_fault;

    const auto start = std::chrono::steady_clock::now();
    const auto results = run_selfcheck(options);
    const double total = elapsed(start);

    bool all = true;
    json props = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.seconds << " s): " << r.detail << '\n';
        props.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    }
    std::cout << (all ? "all properties hold" : "selfcheck FAILED") << " in " << total << " s\n";

    if (write_manifest) {
        Artifacts out(s.out);
        json m = manifest("selfcheck", argv, options.threads);
        m["seed"] = options.seed;
        m["points"] = options.points;
        m["budget_seconds"] = 60;
        m["seconds"] = total;
        m["properties"] = props;
        m["passed"] = all;
        out.write_json("manifest.json", m);
        out.commit();
    }
    return all ? kExitOk : kExitComputation;
}

// ---------------------------------------------------------------- parsing

void add_input_options(CLI::App* cmd, Settings& s, bool labels_required) {
    cmd->add_option("--fasta", s.input.fasta, "FASTA file")->required()->check(CLI::ExistingFile);
    auto* labels = cmd->add_option("--labels", s.input.labels, "CSV of id,label")->check(CLI::ExistingFile);
    if (labels_required) labels->required();
    cmd->add_option("--alphabet", s.input.alphabet, "dna | protein | custom:<chars>")->capture_default_str();
    cmd->add_option("--k", s.input.k, "k-mer length")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_flag("--normalize,!--raw-counts", s.input.normalize,
                  "L1-normalized frequencies (default) or raw counts");
    cmd->add_option("--ambiguity", s.input.ambiguity, "mask | reject")
        ->check(CLI::IsMember({"mask", "reject"}))
        ->capture_default_str();
    cmd->add_flag("--allow-large-k", s.input.allow_large_k, "lift the default spectrum size guard");
}

void add_psd_option(CLI::App* cmd, Settings& s) {
    cmd->add_option("--psd", s.kernel.psd, "clip | shift | none")
        ->check(CLI::IsMember({"clip", "shift", "none"}))
        ->capture_default_str();
}

void add_kernel_options(CLI::App* cmd, Settings& s) {
    cmd->add_option("--kernel", s.kernel.kernel, "hyperboloid | euclidean")
        ->check(CLI::IsMember({"hyperboloid", "euclidean"}))
        ->capture_default_str();
    cmd->add_option("--lift-scale", s.kernel.lift_scale, "spectra are scaled by this before lifting")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_psd_option(cmd, s);
}

void add_kpca_options(CLI::App* cmd, Settings& s) {
    cmd->add_option("--components", s.kpca.components, "kernel PCA components (capped at n-1)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--kpca-transform", s.kpca.transform, "raw | mds")
        ->check(CLI::IsMember({"raw", "mds"}))
        ->capture_default_str();
    cmd->add_flag("--no-mds-fallback", s.kpca.no_fallback, "fail instead of falling back to mds on a degenerate raw kernel");
}

void add_common(CLI::App* cmd, Settings& s) {
    cmd->add_option("--out", s.out, "output directory")->capture_default_str();
    cmd->add_option("--threads", s.threads, "worker threads (0: LORENTZSEQ_THREADS or all cores)")
        ->capture_default_str();
}

int dispatch(int argc, const char* const* argv) {
    Settings s;
    std::vector<std::string> args(argv + 1, argv + argc);

    CLI::App app{"Hyperboloid-distance kernels for k-mer spectra of biological sequences", "lorentzseq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    auto* gen = app.add_subcommand("gen", "generate a labelled mutation-tree dataset");
    gen->add_option("--n", s.synth.sequences, "number of sequences")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--length", s.synth.length, "sequence length")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--clades", s.synth.clades, "top-level clades (labels)")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--subclades", s.synth.subclades, "subclades per clade")->check(CLI::PositiveNumber)->capture_default_str();
    gen->add_option("--mu-within", s.synth.mu_within, "per-site substitution rate inside a clade")
        ->check(CLI::Range(0.0, 1.0))->capture_default_str();
    gen->add_option("--mu-between", s.synth.mu_between, "per-site substitution rate root -> clade")
        ->check(CLI::Range(0.0, 1.0))->capture_default_str();
    gen->add_option("--alphabet", s.input.alphabet, "dna | protein | custom:<chars>")->capture_default_str();
    gen->add_option("--seed", s.seed, "random seed")->capture_default_str();
    gen->add_option("--out", s.out, "output directory")->capture_default_str();

    auto* spectrum = app.add_subcommand("spectrum", "k-mer spectrum matrix");
    add_input_options(spectrum, s, false);
    add_common(spectrum, s);

    auto* kernel = app.add_subcommand("kernel", "pairwise kernel matrix");
    add_input_options(kernel, s, false);
    add_kernel_options(kernel, s);
    kernel->add_flag("--csv", s.kernel_csv, "also write kernel.csv");
    add_common(kernel, s);

    auto* embed = app.add_subcommand("embed", "kernel PCA of a saved kernel matrix");
    embed->add_option("--kernel-in", s.kernel_in, "HKM1 kernel file")->required()->check(CLI::ExistingFile);
    embed->add_option("--fasta", s.input.fasta, "FASTA whose record ids label the rows")->check(CLI::ExistingFile);
    add_psd_option(embed, s);
    add_kpca_options(embed, s);
    add_common(embed, s);

    auto* pipeline = app.add_subcommand("pipeline", "spectra, kernel, kernel PCA, classification and evaluation");
    add_input_options(pipeline, s, true);
    add_kernel_options(pipeline, s);
    add_kpca_options(pipeline, s);
    pipeline->add_option("--classifier", s.classifier, "knn | centroid")
        ->check(CLI::IsMember({"knn", "centroid"}))
        ->capture_default_str();
    pipeline->add_option("--neighbors", s.neighbors, "kNN neighbors")->check(CLI::PositiveNumber)->capture_default_str();
    pipeline->add_option("--test-fraction", s.test_fraction, "held-out fraction per run")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    pipeline->add_option("--runs", s.runs, "independent splits")->check(CLI::PositiveNumber)->capture_default_str();
    pipeline->add_option("--seed", s.seed, "base seed of the splits")->capture_default_str();
    pipeline->add_flag("--unstratified", s.unstratified, "plain random split");
    add_common(pipeline, s);

    auto* selfcheck = app.add_subcommand("selfcheck", "run the built-in invariant suite");
    selfcheck->add_option("--seed", s.selfcheck_seed, "random seed")->capture_default_str();
    selfcheck->add_option("--points", s.selfcheck_points, "random samples per geometry property")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* selfcheck_out = selfcheck->add_option("--out", s.out, "write manifest.json here");
    selfcheck->add_option("--threads", s.threads, "worker threads");
#ifdef LORENTZSEQ_FAULT_INJECTION
    selfcheck->add_option("--inject-fault", s.inject_fault, "perturb one property (test builds only)")
        ->check(CLI::IsMember(selfcheck_properties()));
#endif

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*gen) return cmd_gen(s, args);
    if (*selfcheck) return cmd_selfcheck(s, args, selfcheck_out->count() > 0);
    if (*embed) return cmd_embed(s, args);

    // Input-level checks happen before any file is read.
    check_k(s.input, Alphabet::parse(s.input.alphabet));
    parse_kernel_kind(s.kernel.kernel);
    if (s.test_fraction <= 0.0 || s.test_fraction >= 1.0) {
        throw Error(ErrorCode::InvalidArgument, "--test-fraction must lie strictly between 0 and 1");
    }
    if (*spectrum) return cmd_spectrum(s, args);
    if (*kernel) return cmd_kernel(s, args);
    return cmd_pipeline(s, args);
}

}  // namespace

int run(int argc, const char* const* argv) {
    try {
        return dispatch(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return is_validation_error(e.code()) ? kExitUsage : kExitComputation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
}

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"lorentzseq"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace lorentzseq::cli
