#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "encoding.hpp"
#include "io.hpp"

namespace bovw {

namespace {

std::string alpha_tag(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

} // namespace

ExperimentConfig ExperimentConfig::from_config(const Config& cfg) {
    ExperimentConfig ec;
    ec.out_dir = cfg.get_string("out_dir", "out");

    for (const auto& name : cfg.get_list("strategies"))
        ec.strategies.push_back(strategy_from_name(name));
    if (ec.strategies.empty())
        ec.strategies = {Strategy::random, Strategy::random_km, Strategy::model,
                         Strategy::filt_model};

    for (auto v : cfg.get_int_list("vocab_sizes")) {
        if (v < 1)
            throw std::runtime_error("config: vocab_sizes entries must be >= 1");
        ec.vocab_sizes.push_back(static_cast<std::size_t>(v));
    }
    if (ec.vocab_sizes.empty())
        throw std::runtime_error("config: vocab_sizes is required");
    if (!std::is_sorted(ec.vocab_sizes.begin(), ec.vocab_sizes.end()))
        throw std::runtime_error("config: vocab_sizes must be ascending");

    for (const auto& name : cfg.get_list("protocols"))
        ec.protocols.push_back(protocol_from_name(name));
    if (ec.protocols.empty())
        ec.protocols = {Protocol::holdout_clustering, Protocol::class_balanced_svm};

    ec.root_seed = Seed{cfg.get_u64("seed", 42)};

    ec.filter.alpha = cfg.get_double("alpha", 1.0);
    ec.filter.max_files = static_cast<std::size_t>(cfg.get_int("max_files", 20));
    ec.filter.validate();

    ec.kmeans.max_iterations = static_cast<std::size_t>(cfg.get_int("kmeans_max_iterations", 100));
    ec.kmeans.convergence_tol = cfg.get_double("kmeans_tol", -1.0);
    ec.kmeans.validate();

    ec.holdout.protocol = Protocol::holdout_clustering;
    ec.holdout.learn_fraction = cfg.get_double("learn_fraction", 0.67);
    ec.holdout.labeled_fraction_of_learn = cfg.get_double("labeled_fraction_of_learn", 0.5);
    ec.svm.protocol = Protocol::class_balanced_svm;
    ec.svm.per_class_learn = static_cast<std::size_t>(cfg.get_int("per_class_learn", 30));
    ec.svm.per_class_labeled = static_cast<std::size_t>(cfg.get_int("per_class_labeled", 15));

    ec.construction_repeats = static_cast<std::size_t>(cfg.get_int("repetitions", 3));
    if (ec.construction_repeats < 1)
        throw std::runtime_error("config: repetitions must be >= 1");
    ec.holdout.repetitions = ec.construction_repeats;
    ec.svm.repetitions = ec.construction_repeats;
    ec.holdout.validate();
    ec.svm.validate();

    for (auto v : cfg.get_int_list("nc_values")) {
        if (v < 1)
            throw std::runtime_error("config: nc_values entries must be >= 1");
        ec.nc_values.push_back(static_cast<std::size_t>(v));
    }
    if (ec.nc_values.empty())
        ec.nc_values = {50,  100, 150, 200, 250, 300, 350, 400, 450, 500,
                        550, 600, 650, 700, 750, 800, 850, 900, 950, 1000};
    if (!std::is_sorted(ec.nc_values.begin(), ec.nc_values.end()))
        throw std::runtime_error("config: nc_values must be ascending");

    ec.clustering_repeats = static_cast<std::size_t>(cfg.get_int("clustering_repeats", 25));
    if (ec.clustering_repeats < 1)
        throw std::runtime_error("config: clustering_repeats must be >= 1");

    ec.linear.lambda = cfg.get_double("svm_lambda", 1e-4);
    ec.linear.epochs = static_cast<std::size_t>(cfg.get_int("svm_epochs", 300));
    ec.linear.eta0 = cfg.get_double("svm_eta0", 1.0);

    if (cfg.get_bool("alpha_sweep", false)) {
        ec.alpha_sweep = cfg.get_double_list("alpha_sweep_values");
        if (ec.alpha_sweep.empty())
            ec.alpha_sweep = {0.8, 1.0, 1.25, 1.5};
    }

    ec.workers = static_cast<std::size_t>(cfg.get_int("workers", 1));
    if (ec.workers < 1)
        throw std::runtime_error("config: workers must be >= 1");

    // Keys that do not influence the numbers stay out of the hash so reruns
    // with different worker counts or output paths compare byte-identical.
    Config semantic;
    for (const auto& [k, v] : cfg.values())
        if (k != "workers" && k != "out_dir")
            semantic.set(k, v);
    ec.config_hash = semantic.hash();
    return ec;
}

namespace {

struct CellSpec {
    Strategy strategy = Strategy::random;
    std::size_t m = 0;
    std::size_t rep = 0;
    double alpha = 1.0;
    bool sweep = false;

    std::string tag() const {
        std::string t = std::string(strategy_name(strategy)) + "_m" + std::to_string(m) + "_r" +
                        std::to_string(rep);
        if (sweep)
            t += "_a" + alpha_tag(alpha);
        return t;
    }
};

struct CellResult {
    std::vector<ResultRow> rows;
    std::vector<PerClassRow> per_class;
    std::string error;
};

std::string f17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Shared, lazily-built filtered datasets, one per (alpha, repetition).
class FilterCache {
public:
    FilterCache(const LabeledDataset& dataset, const ExperimentConfig& cfg)
        : dataset_(dataset), cfg_(cfg) {}

    std::shared_ptr<const LabeledDataset> get(double alpha, std::size_t rep) {
        const Key key{std::bit_cast<std::uint64_t>(alpha), rep};
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        FilterParams params = cfg_.filter;
        params.alpha = alpha;
        params.seed = cfg_.root_seed.derive("filter/rep", rep);
        auto filtered = filter_dataset(dataset_, params);
        write_report(filtered, alpha, rep);
        auto ptr = std::make_shared<const LabeledDataset>(std::move(filtered.dataset));
        cache_.emplace(key, ptr);
        return ptr;
    }

private:
    using Key = std::pair<std::uint64_t, std::size_t>;

    void write_report(const FilterDatasetResult& filtered, double alpha, std::size_t rep) const {
        const auto path = cfg_.out_dir / ("filter_report_a" + alpha_tag(alpha) + "_r" +
                                          std::to_string(rep) + ".csv");
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            return;
        out << "# config_hash=" << cfg_.config_hash << " root_seed=" << cfg_.root_seed.value
            << '\n';
        out << "image_id,total_features,kept_features,kp_size,kn_size\n";
        for (const auto& row : filtered.report)
            out << row.image_id << ',' << row.total_features << ',' << row.kept_features << ','
                << row.kp_size << ',' << row.kn_size << '\n';
    }

    const LabeledDataset& dataset_;
    const ExperimentConfig& cfg_;
    std::mutex mu_;
    std::map<Key, std::shared_ptr<const LabeledDataset>> cache_;
};

void eval_protocols(const LabeledDataset& dataset, const std::vector<int>& classes,
                    const ExperimentConfig& cfg, const std::vector<BoFVector>& encodings,
                    const std::string& strategy_label, std::size_t m, std::size_t rep,
                    CellResult& result) {
    const std::size_t k = dataset.label_count();
    for (Protocol protocol : cfg.protocols) {
        SplitSpec spec = protocol == Protocol::holdout_clustering ? cfg.holdout : cfg.svm;
        spec.seed = cfg.root_seed.derive("split").derive(protocol_name(protocol));
        const Split split = make_split(dataset, spec, rep);

        std::vector<BoFVector> learn_vecs, test_vecs;
        std::vector<int> learn_true, test_true;
        for (std::size_t i : split.learn) {
            learn_vecs.push_back(encodings[i]);
            learn_true.push_back(classes[i]);
        }
        for (std::size_t i : split.test) {
            test_vecs.push_back(encodings[i]);
            test_true.push_back(classes[i]);
        }

        if (protocol == Protocol::holdout_clustering) {
            std::vector<int> supervision(split.learn.size(), -1);
            for (std::size_t j = 0; j < split.learn.size(); ++j)
                if (std::find(split.labeled.begin(), split.labeled.end(), split.learn[j]) !=
                    split.labeled.end())
                    supervision[j] = classes[split.learn[j]];

            for (std::size_t nc : cfg.nc_values) {
                ResultRow row{strategy_label, m, protocol_name(protocol), rep, nc, 0, 0, 0, 0, 0};
                std::vector<double> cls_p(k, 0), cls_r(k, 0), cls_f(k, 0), cls_tpr(k, 0), cls_fpr(k, 0);
                for (std::size_t cr = 0; cr < cfg.clustering_repeats; ++cr) {
                    const Seed seed = cfg.root_seed.derive("cluster")
                                          .derive(strategy_label)
                                          .derive("m", m)
                                          .derive("rep", rep)
                                          .derive("nc", nc)
                                          .derive("cr", cr);
                    const auto model =
                        cluster_classifier_fit(learn_vecs, supervision, nc, seed, cfg.kmeans);
                    const auto pred = cluster_classifier_predict(model, test_vecs);
                    const auto metrics = compute_metrics(test_true, pred, k);
                    row.macro_precision += metrics.macro_precision;
                    row.macro_recall += metrics.macro_recall;
                    row.macro_f += metrics.macro_f;
                    row.macro_tpr += metrics.macro_tpr;
                    row.macro_fpr += metrics.macro_fpr;
                    for (std::size_t c = 0; c < k; ++c) {
                        cls_p[c] += metrics.precision[c];
                        cls_r[c] += metrics.recall[c];
                        cls_f[c] += metrics.f_measure[c];
                        cls_tpr[c] += metrics.tpr[c];
                        cls_fpr[c] += metrics.fpr[c];
                    }
                }
                const double reps = static_cast<double>(cfg.clustering_repeats);
                row.macro_precision /= reps;
                row.macro_recall /= reps;
                row.macro_f /= reps;
                row.macro_tpr /= reps;
                row.macro_fpr /= reps;
                result.rows.push_back(row);
                for (std::size_t c = 0; c < k; ++c)
                    result.per_class.push_back({strategy_label, m, row.protocol, rep, nc,
                                                dataset.label_vocab.labels[c], cls_p[c] / reps,
                                                cls_r[c] / reps, cls_f[c] / reps, cls_tpr[c] / reps,
                                                cls_fpr[c] / reps});
            }
        } else {
            const auto model = linear_ovr_fit(learn_vecs, learn_true, k, cfg.linear);
            const auto pred = linear_ovr_predict(model, test_vecs);
            const auto metrics = compute_metrics(test_true, pred, k);
            result.rows.push_back({strategy_label, m, protocol_name(protocol), rep, 0,
                                   metrics.macro_precision, metrics.macro_recall, metrics.macro_f,
                                   metrics.macro_tpr, metrics.macro_fpr});
            for (std::size_t c = 0; c < k; ++c)
                result.per_class.push_back({strategy_label, m, protocol_name(protocol), rep, 0,
                                            dataset.label_vocab.labels[c], metrics.precision[c],
                                            metrics.recall[c], metrics.f_measure[c], metrics.tpr[c],
                                            metrics.fpr[c]});
        }
    }
}

CellResult run_cell(const LabeledDataset& dataset, const std::vector<int>& classes,
                    const ExperimentConfig& cfg, const CellSpec& cell, FilterCache& filters) {
    CellResult result;

    KMeansParams vocab_params = cfg.kmeans;
    vocab_params.seed = cfg.root_seed.derive("vocab")
                            .derive(strategy_name(cell.strategy))
                            .derive("m", cell.m)
                            .derive("rep", cell.rep);

    VisualVocabulary vocab;
    if (cell.strategy == Strategy::filt_model) {
        FilterParams fp = cfg.filter;
        fp.alpha = cell.alpha;
        const auto filtered = filters.get(cell.alpha, cell.rep);
        vocab = build_dedicated(cell.m, *filtered, vocab_params);
        vocab.strategy = Strategy::filt_model;
    } else {
        vocab = build_vocabulary(cell.strategy, cell.m, dataset, cfg.filter, vocab_params);
    }

    // Classification always encodes the original, unfiltered features.
    const auto encodings = encode_dataset(dataset, vocab);
    eval_protocols(dataset, classes, cfg, encodings, strategy_name(cell.strategy), cell.m,
                   cell.rep, result);
    return result;
}

void write_cell_file(const std::filesystem::path& path, const std::string& config_hash,
                     const CellResult& result) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("experiment: cannot write cell file '" + path.string() + "'");
    out << "# config_hash=" << config_hash << '\n';
    for (const auto& r : result.rows)
        out << "row," << r.strategy << ',' << r.vocab_size << ',' << r.protocol << ','
            << r.repetition << ',' << r.nc << ',' << f17(r.macro_precision) << ','
            << f17(r.macro_recall) << ',' << f17(r.macro_f) << ',' << f17(r.macro_tpr) << ','
            << f17(r.macro_fpr) << '\n';
    for (const auto& r : result.per_class)
        out << "class," << r.strategy << ',' << r.vocab_size << ',' << r.protocol << ','
            << r.repetition << ',' << r.nc << ',' << r.class_name << ',' << f17(r.precision) << ','
            << f17(r.recall) << ',' << f17(r.f_measure) << ',' << f17(r.tpr) << ','
            << f17(r.fpr) << '\n';
}

bool read_cell_file(const std::filesystem::path& path, const std::string& config_hash,
                    CellResult& result) {
    std::ifstream in(path);
    if (!in)
        return false;
    std::string line;
    if (!std::getline(in, line) || line != "# config_hash=" + config_hash)
        return false;
    result = CellResult{};
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                comma = line.size();
            parts.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        try {
            if (parts.size() == 11 && parts[0] == "row") {
                ResultRow r;
                r.strategy = parts[1];
                r.vocab_size = std::stoull(parts[2]);
                r.protocol = parts[3];
                r.repetition = std::stoull(parts[4]);
                r.nc = std::stoull(parts[5]);
                r.macro_precision = std::stod(parts[6]);
                r.macro_recall = std::stod(parts[7]);
                r.macro_f = std::stod(parts[8]);
                r.macro_tpr = std::stod(parts[9]);
                r.macro_fpr = std::stod(parts[10]);
                result.rows.push_back(std::move(r));
            } else if (parts.size() == 12 && parts[0] == "class") {
                PerClassRow r;
                r.strategy = parts[1];
                r.vocab_size = std::stoull(parts[2]);
                r.protocol = parts[3];
                r.repetition = std::stoull(parts[4]);
                r.nc = std::stoull(parts[5]);
                r.class_name = parts[6];
                r.precision = std::stod(parts[7]);
                r.recall = std::stod(parts[8]);
                r.f_measure = std::stod(parts[9]);
                r.tpr = std::stod(parts[10]);
                r.fpr = std::stod(parts[11]);
                result.per_class.push_back(std::move(r));
            } else {
                return false;
            }
        } catch (...) {
            return false;
        }
    }
    return !result.rows.empty();
}

} // namespace

ExperimentResult run_experiment(const LabeledDataset& dataset, const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::filesystem::create_directories(cfg.out_dir / "cells");

    const auto classes = single_class_of_images(dataset);
    FilterCache filters(dataset, cfg);

    std::vector<CellSpec> cells;
    for (Strategy s : cfg.strategies)
        for (std::size_t m : cfg.vocab_sizes)
            for (std::size_t rep = 0; rep < cfg.construction_repeats; ++rep)
                cells.push_back({s, m, rep, cfg.filter.alpha, false});
    for (double alpha : cfg.alpha_sweep)
        for (std::size_t m : cfg.vocab_sizes)
            for (std::size_t rep = 0; rep < cfg.construction_repeats; ++rep)
                cells.push_back({Strategy::filt_model, m, rep, alpha, true});

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mu;

    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size())
                break;
            const auto& cell = cells[i];
            const auto cell_path = cfg.out_dir / "cells" / (cell.tag() + ".csv");
            if (read_cell_file(cell_path, cfg.config_hash, results[i])) {
                std::lock_guard<std::mutex> lock(log_mu);
                std::fprintf(stderr, "[experiment] cell %s reused\n", cell.tag().c_str());
                continue;
            }
            try {
                results[i] = run_cell(dataset, classes, cfg, cell, filters);
                write_cell_file(cell_path, cfg.config_hash, results[i]);
                std::lock_guard<std::mutex> lock(log_mu);
                std::fprintf(stderr, "[experiment] cell %s done\n", cell.tag().c_str());
            } catch (const std::exception& e) {
                results[i] = CellResult{};
                results[i].error = e.what();
                std::lock_guard<std::mutex> lock(log_mu);
                std::fprintf(stderr, "[experiment] cell %s FAILED: %s\n", cell.tag().c_str(),
                             e.what());
            }
        }
    };

    const std::size_t n_workers = std::min(cfg.workers, cells.size());
    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < n_workers; ++t)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }

    ExperimentResult out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!results[i].error.empty()) {
            out.failures.push_back({cells[i].tag(), results[i].error});
            continue;
        }
        if (cells[i].sweep) {
            for (const auto& r : results[i].rows)
                out.alpha_rows.emplace_back(cells[i].alpha, r);
        } else {
            out.rows.insert(out.rows.end(), results[i].rows.begin(), results[i].rows.end());
            out.per_class.insert(out.per_class.end(), results[i].per_class.begin(),
                                 results[i].per_class.end());
        }
    }

    const std::string header =
        "# config_hash=" + cfg.config_hash + " root_seed=" + std::to_string(cfg.root_seed.value);

    {
        std::ofstream csv(cfg.out_dir / "results.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "strategy,vocab_size,protocol,repetition,nc,macro_precision,macro_recall,macro_f,"
               "macro_tpr,macro_fpr\n";
        for (const auto& r : out.rows)
            csv << r.strategy << ',' << r.vocab_size << ',' << r.protocol << ',' << r.repetition
                << ',' << r.nc << ',' << format_double(r.macro_precision) << ','
                << format_double(r.macro_recall) << ',' << format_double(r.macro_f) << ','
                << format_double(r.macro_tpr) << ',' << format_double(r.macro_fpr) << '\n';
    }
    {
        std::ofstream csv(cfg.out_dir / "per_class.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "strategy,vocab_size,protocol,repetition,nc,class,precision,recall,f_measure,tpr,"
               "fpr\n";
        for (const auto& r : out.per_class)
            csv << r.strategy << ',' << r.vocab_size << ',' << r.protocol << ',' << r.repetition
                << ',' << r.nc << ',' << r.class_name << ',' << format_double(r.precision) << ','
                << format_double(r.recall) << ',' << format_double(r.f_measure) << ','
                << format_double(r.tpr) << ',' << format_double(r.fpr) << '\n';
    }

    // Curve files: aggregated F per vocabulary size (clustering protocol),
    // TPR per size (svm protocol), macro ROC points per size.
    struct Acc {
        double f = 0, tpr = 0, fpr = 0;
        std::size_t n = 0;
    };
    std::map<std::pair<std::string, std::size_t>, Acc> agg_cluster, agg_svm;
    std::vector<std::pair<std::string, std::size_t>> order_cluster, order_svm;
    for (const auto& r : out.rows) {
        const auto key = std::make_pair(r.strategy, r.vocab_size);
        if (r.protocol == protocol_name(Protocol::holdout_clustering)) {
            if (!agg_cluster.count(key))
                order_cluster.push_back(key);
            auto& a = agg_cluster[key];
            a.f += r.macro_f;
            a.tpr += r.macro_tpr;
            a.fpr += r.macro_fpr;
            ++a.n;
        } else {
            if (!agg_svm.count(key))
                order_svm.push_back(key);
            auto& a = agg_svm[key];
            a.tpr += r.macro_tpr;
            ++a.n;
        }
    }
    {
        std::ofstream csv(cfg.out_dir / "curve_aggregated_f.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "strategy,vocab_size,aggregated_f\n";
        for (const auto& key : order_cluster) {
            const auto& a = agg_cluster[key];
            csv << key.first << ',' << key.second << ','
                << format_double(a.f / static_cast<double>(a.n)) << '\n';
        }
    }
    {
        std::ofstream csv(cfg.out_dir / "curve_tpr.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "strategy,vocab_size,macro_tpr\n";
        for (const auto& key : order_svm) {
            const auto& a = agg_svm[key];
            csv << key.first << ',' << key.second << ','
                << format_double(a.tpr / static_cast<double>(a.n)) << '\n';
        }
    }
    {
        std::ofstream csv(cfg.out_dir / "roc.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "strategy,vocab_size,macro_fpr,macro_tpr,smallest\n";
        for (Strategy s : cfg.strategies) {
            std::vector<std::pair<std::size_t, MetricsReport>> pts;
            for (const auto& key : order_cluster) {
                if (key.first != strategy_name(s))
                    continue;
                const auto& a = agg_cluster[key];
                MetricsReport m;
                m.macro_fpr = a.fpr / static_cast<double>(a.n);
                m.macro_tpr = a.tpr / static_cast<double>(a.n);
                pts.emplace_back(key.second, m);
            }
            for (const auto& p : roc_points(pts))
                csv << strategy_name(s) << ',' << p.vocab_size << ',' << format_double(p.macro_fpr)
                    << ',' << format_double(p.macro_tpr) << ',' << (p.smallest ? 1 : 0) << '\n';
        }
    }
    if (!cfg.alpha_sweep.empty()) {
        std::ofstream csv(cfg.out_dir / "alpha_sweep.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "alpha,strategy,vocab_size,protocol,repetition,nc,macro_precision,macro_recall,"
               "macro_f,macro_tpr,macro_fpr\n";
        for (const auto& [alpha, r] : out.alpha_rows)
            csv << format_double(alpha) << ',' << r.strategy << ',' << r.vocab_size << ','
                << r.protocol << ',' << r.repetition << ',' << r.nc << ','
                << format_double(r.macro_precision) << ',' << format_double(r.macro_recall) << ','
                << format_double(r.macro_f) << ',' << format_double(r.macro_tpr) << ','
                << format_double(r.macro_fpr) << '\n';
    }
    if (!out.failures.empty()) {
        std::ofstream csv(cfg.out_dir / "failures.csv", std::ios::trunc);
        csv << header << '\n';
        csv << "cell,message\n";
        for (const auto& f : out.failures) {
            std::string msg = f.message;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            csv << f.cell << ',' << msg << '\n';
        }
    }
    return out;
}

ExperimentResult evaluate_encodings(const LabeledDataset& dataset,
                                    const std::vector<BoFVector>& encodings,
                                    const ExperimentConfig& cfg,
                                    const std::string& strategy_label) {
    if (encodings.size() != dataset.image_count())
        throw std::invalid_argument("eval: encoding has " + std::to_string(encodings.size()) +
                                    " rows for " + std::to_string(dataset.image_count()) +
                                    " images");
    const auto classes = single_class_of_images(dataset);
    const std::size_t m = encodings.empty() ? 0 : encodings[0].weights.size();
    ExperimentResult out;
    for (std::size_t rep = 0; rep < cfg.construction_repeats; ++rep) {
        CellResult cell;
        eval_protocols(dataset, classes, cfg, encodings, strategy_label, m, rep, cell);
        out.rows.insert(out.rows.end(), cell.rows.begin(), cell.rows.end());
        out.per_class.insert(out.per_class.end(), cell.per_class.begin(), cell.per_class.end());
    }
    return out;
}

} // namespace bovw
