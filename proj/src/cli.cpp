#include "hullknn/cli.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "hullknn/dataset.hpp"
#include "hullknn/eval.hpp"
#include "hullknn/geometry.hpp"
#include "hullknn/report.hpp"

namespace hullknn::cli {

namespace {

constexpr std::array kPresets{
    Preset{"haberman-optimal", "haberman", 15, 1.75, 1e-3},
    Preset{"banknote-optimal", "banknote", 1, 23.0, 1e-3},
    Preset{"iris-optimal", "iris", 10, 21.0, 0.25},
    Preset{"seeds-optimal", "seeds", 5, 35.0, 0.143},
    Preset{"haberman-poor", "haberman", 15, 2.5, 1e-3},
    Preset{"banknote-poor", "banknote", 1, 12.0, 1e-3},
    Preset{"iris-poor", "iris", 10, 15.0, 0.25},
    Preset{"seeds-poor", "seeds", 5, 20.0, 0.143},
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string dataset;
    std::string format;
    std::string algo = "hull-knn,knn,svm";
    std::optional<std::size_t> k;
    std::optional<double> threshold;
    std::optional<double> gamma;
    double C = 1.0;
    std::size_t points = 0;
    std::uint32_t seed = Mt19937::kDefaultSeed;
    double test_fraction = 0.1;
    std::size_t trials = 1;
    bool ensure_enclosure = false;
    bool hull_only = false;
    bool scale = false;
    bool per_dimension_box = false;
    bool non_stratified = false;
    std::string preset;
    std::string output = "markdown";
    std::string out_path;
    unsigned threads = 1;
    // tune
    std::vector<std::size_t> k_grid;
    std::vector<double> t_grid;
    double validation_fraction = 0.2;
};

std::vector<ClassifierKind> parse_algos(const std::string& list) {
    std::vector<ClassifierKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        ClassifierKind kind;
        if (item == "hull-knn")
            kind = ClassifierKind::hull_knn;
        else if (item == "knn")
            kind = ClassifierKind::knn;
        else if (item == "svm")
            kind = ClassifierKind::svm;
        else
            throw UsageError("unknown algorithm '" + item + "' (expected hull-knn, knn, svm)");
        if (std::find(out.begin(), out.end(), kind) == out.end()) out.push_back(kind);
    }
    if (out.empty()) throw UsageError("--algo must name at least one algorithm");
    // Rows follow the published table order.
    std::sort(out.begin(), out.end());
    return out;
}

void apply_preset(Options& o) {
    if (o.preset.empty()) return;
    const auto p = find_preset(o.preset);
    if (!p) throw UsageError("unknown preset '" + o.preset + "'");
    if (o.format.empty()) o.format = std::string(p->format);
    if (!o.k) o.k = p->k;
    if (!o.threshold) o.threshold = p->threshold;
    if (!o.gamma) o.gamma = p->gamma;
}

std::vector<ClassifierSpec> build_specs(const Options& o, const std::vector<ClassifierKind>& kinds) {
    std::vector<ClassifierSpec> specs;
    for (ClassifierKind kind : kinds) {
        ClassifierSpec s;
        s.kind = kind;
        if (kind != ClassifierKind::svm) {
            if (!o.k) throw UsageError(std::string(classifier_id(kind)) + " requires --k");
            s.knn.k = *o.k;
            s.knn.hull_only = o.hull_only;
            s.knn.hull.point_count = o.points;
            s.knn.hull.ensure_enclosure = o.ensure_enclosure;
            s.knn.hull.per_dimension_box = o.per_dimension_box;
            s.knn.base_seed = o.seed;
            s.knn.threads = o.threads;
        }
        if (kind == ClassifierKind::hull_knn) {
            if (!o.threshold) throw UsageError("hull-knn requires --threshold");
            if (*o.threshold < 0.0) throw UsageError("--threshold must be non-negative");
            s.knn.threshold = *o.threshold;
        }
        if (kind == ClassifierKind::svm) {
            if (!o.gamma) throw UsageError("svm requires --gamma");
            if (*o.gamma < 0.0) throw UsageError("--gamma must be non-negative");
            if (!(o.C > 0.0)) throw UsageError("--c must be positive");
            s.svm.gamma = *o.gamma;
            s.svm.C = o.C;
            s.svm.seed = o.seed;
            s.svm.threads = o.threads;
        }
        specs.push_back(s);
    }
    return specs;
}

RunMetadata metadata_for(const Options& o, const Dataset& ds, const std::vector<ClassifierKind>& kinds) {
    RunMetadata m;
    m.dataset = ds.name();
    m.dataset_path = o.dataset;
    m.format = o.format;
    m.preset = o.preset;
    m.seed = o.seed;
    m.test_fraction = o.test_fraction;
    m.trials = o.trials;
    m.stratified = !o.non_stratified;
    m.scale = o.scale;
    m.ensure_enclosure = o.ensure_enclosure;
    m.hull_only = o.hull_only;
    if (std::find(kinds.begin(), kinds.end(), ClassifierKind::svm) != kinds.end()) {
        m.assumptions.push_back("SVM kernel is RBF exp(-gamma |a-b|^2)");
        m.assumptions.push_back("SVM C = " + format_number(o.C) + ", tol = 0.001, max passes = 100, one-vs-one");
    }
    if (std::find(kinds.begin(), kinds.end(), ClassifierKind::hull_knn) != kinds.end()) {
        m.assumptions.push_back("hyperstructure points = " +
                                (o.points == 0 ? std::string("4n-1") : std::to_string(o.points)) +
                                (o.per_dimension_box ? ", per-dimension box" : ", one scalar box for all dimensions"));
        m.assumptions.push_back(o.hull_only ? "vote restricted to in-hull neighbors (classic fallback)"
                                            : "unreachable neighbors fill the k list and vote");
    }
    return m;
}

void write_artifact(const Options& o, const std::string& text, std::ostream& out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file '" + o.out_path + "'");
    f << text;
}

int execute(const Options& opts, bool tune, std::ostream& out) {
    Options o = opts;
    apply_preset(o);
    if (o.dataset.empty()) throw UsageError("--dataset is required");
    if (o.format.empty()) throw UsageError("--format is required (or use --preset)");
    if (!(o.test_fraction > 0.0 && o.test_fraction < 1.0)) throw UsageError("--test-fraction must lie in (0, 1)");
    if (o.trials < 1) throw UsageError("--trials must be at least 1");
    const OutputFormat fmt = [&] {
        try {
            return parse_output_format(o.output);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    DataFormat data_format;
    try {
        data_format = parse_data_format(o.format);
    } catch (const DataError& e) {
        throw UsageError(e.what());
    }
    const auto kinds = tune ? std::vector<ClassifierKind>{ClassifierKind::hull_knn} : parse_algos(o.algo);
    if (tune) {
        if (o.k_grid.empty() || o.t_grid.empty()) throw UsageError("tune requires --k-grid and --t-grid");
        if (!(o.validation_fraction > 0.0 && o.validation_fraction < 1.0))
            throw UsageError("--validation-fraction must lie in (0, 1)");
        if (!o.k) o.k = o.k_grid.front();
        if (!o.threshold) o.threshold = o.t_grid.front();
    }
    // Validate flag combinations before touching the file system.
    const auto specs = build_specs(o, kinds);

    const Dataset ds = load_dataset(o.dataset, data_format);
    const RunMetadata meta = metadata_for(o, ds, kinds);

    BenchmarkOptions bench;
    bench.trials = o.trials;
    bench.test_fraction = o.test_fraction;
    bench.base_seed = o.seed;
    bench.stratified = !o.non_stratified;
    bench.scale = o.scale;
    bench.threads = o.threads;

    if (!tune) {
        write_artifact(o, emit_table(run_benchmark(ds, specs, bench), fmt, meta), out);
        return kOk;
    }

    // Holdout tuning: test split, then a validation split carved from the training side.
    Split outer = split(ds, o.test_fraction, o.seed, !o.non_stratified);
    if (o.scale) outer = scale_minmax(outer);
    const Split inner = split(outer.train, o.validation_fraction, child_seed(o.seed, 1), !o.non_stratified);
    const GridResult grid = grid_search(inner.train, inner.test, o.k_grid, o.t_grid, o.seed, specs.front());

    Options best = o;
    best.k = grid.best_k;
    best.threshold = grid.best_threshold;
    BenchmarkOptions single = bench;
    single.trials = 1;
    RunMetadata best_meta = meta;
    best_meta.trials = 1;
    const auto best_reports =
        run_benchmark(ds, build_specs(best, {ClassifierKind::hull_knn, ClassifierKind::knn}), single);
    write_artifact(o, emit_grid(grid, fmt, best_meta, best_reports), out);
    return kOk;
}

}  // namespace

std::optional<Preset> find_preset(std::string_view name) {
    for (const Preset& p : kPresets)
        if (p.name == name) return p;
    return std::nullopt;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hull-gated k-NN benchmark: hull k-NN, classic k-NN and RBF SVM on UCI datasets"};
    app.name("hullknn");
    Options o;
    app.add_option("--dataset", o.dataset, "Dataset file");
    app.add_option("--format", o.format, "haberman | banknote | iris | seeds | generic-csv");
    app.add_option("--algo", o.algo, "Comma-separated subset of hull-knn,knn,svm")->capture_default_str();
    app.add_option("--k", o.k, "Neighbors for both k-NN variants");
    app.add_option("--threshold", o.threshold, "Hyperstructure box expansion (hull-knn)");
    app.add_option("--gamma", o.gamma, "RBF kernel width (svm)");
    app.add_option("--c", o.C, "SVM box constraint")->capture_default_str();
    app.add_option("--points", o.points, "Hyperstructure point count (0 = 4n-1)")->capture_default_str();
    app.add_option("--seed", o.seed, "Base seed")->capture_default_str();
    app.add_option("--test-fraction", o.test_fraction, "Held-out fraction per trial")->capture_default_str();
    app.add_option("--trials", o.trials, "Seeded split repetitions")->capture_default_str();
    app.add_flag("--ensure-enclosure", o.ensure_enclosure, "Resample hyperstructures until they enclose the instance");
    app.add_flag("--hull-only", o.hull_only, "Vote only on in-hull neighbors");
    app.add_flag("--scale", o.scale, "Min-max scale features using training ranges");
    app.add_flag("--per-dimension-box", o.per_dimension_box, "Experimental: per-dimension sampling box");
    app.add_flag("--no-stratify", o.non_stratified, "Plain random split instead of stratified");
    app.add_option("--preset", o.preset, "haberman|banknote|iris|seeds followed by -optimal or -poor");
    app.add_option("--output", o.output, "markdown | csv | json")->capture_default_str();
    app.add_option("--out", o.out_path, "Write the report here instead of stdout");
    app.add_option("--threads", o.threads, "Worker threads (0 = all cores); output does not depend on it")
        ->capture_default_str();

    CLI::App* tune = app.add_subcommand("tune", "Grid search over k and threshold on a holdout validation split");
    tune->fallthrough();
    tune->add_option("--k-grid", o.k_grid, "k values")->delimiter(',');
    tune->add_option("--t-grid", o.t_grid, "threshold values")->delimiter(',');
    tune->add_option("--validation-fraction", o.validation_fraction, "Fraction of training rows held for validation")
        ->capture_default_str();
    app.require_subcommand(0, 1);

    std::vector<std::string> storage{"hullknn"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        return execute(o, tune->parsed(), out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << "\n";
        return kRuntime;
    }
}

}  // namespace hullknn::cli
