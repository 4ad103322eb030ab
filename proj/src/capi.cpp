#include "bovw.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

#include "config.hpp"
#include "core.hpp"
#include "encoding.hpp"
#include "experiment.hpp"
#include "features.hpp"
#include "filtering.hpp"
#include "io.hpp"
#include "synthgen.hpp"
#include "vocabulary.hpp"

// Opaque handle definitions; each wraps the C++ object it stands for.
struct bovw_config {
    bovw::Config rep;
    mutable std::string scratch;
};

struct bovw_dataset {
    bovw::LabeledDataset rep;
};

struct bovw_vocabulary {
    bovw::VisualVocabulary rep;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename F>
int guard(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        set_error(e.what());
        return BOVW_ERROR;
    } catch (...) {
        set_error("unknown error");
        return BOVW_ERROR;
    }
}

template <typename T, typename F>
T* guard_ptr(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    } catch (...) {
        set_error("unknown error");
        return nullptr;
    }
}

bovw::Config config_or_default(const bovw_config* cfg) {
    return cfg ? cfg->rep : bovw::Config{};
}

bovw::KMeansParams kmeans_from_config(const bovw::Config& cfg) {
    bovw::KMeansParams p;
    p.max_iterations = static_cast<std::size_t>(cfg.get_int("kmeans_max_iterations", 100));
    p.convergence_tol = cfg.get_double("kmeans_tol", -1.0);
    p.validate();
    return p;
}

bovw::FilterParams filter_from_config(const bovw::Config& cfg) {
    bovw::FilterParams p;
    p.alpha = cfg.get_double("alpha", 1.0);
    p.max_files = static_cast<std::size_t>(cfg.get_int("max_files", 20));
    p.validate();
    return p;
}

bovw::SamplingConfig sampling_from_config(const bovw::Config& cfg) {
    bovw::SamplingConfig s;
    s.grid_step = static_cast<std::size_t>(cfg.get_int("grid_step", 16));
    s.patch_size = static_cast<std::size_t>(cfg.get_int("patch_size", 16));
    s.min_image_side = static_cast<std::size_t>(cfg.get_int("min_image_side", 16));
    s.validate();
    return s;
}

std::string output_header_comment(const bovw::Config& cfg) {
    bovw::Config semantic;
    for (const auto& [k, v] : cfg.values())
        if (k != "workers" && k != "out_dir")
            semantic.set(k, v);
    return "config_hash=" + semantic.hash() + " root_seed=" + std::to_string(cfg.get_u64("seed", 42));
}

bovw::LabeledDataset open_from_config(const bovw::Config& cfg, bool need_labels) {
    const std::string features_dir = cfg.require_string("features_dir");
    std::string labels = cfg.get_string("labels_csv", "");
    if (need_labels && labels.empty())
        throw std::runtime_error("config: missing required key 'labels_csv'");
    return bovw::open_dataset(features_dir, labels);
}

} // namespace

extern "C" {

const char* bovw_version(void) { return "0.1.0"; }

const char* bovw_last_error(void) { return g_last_error.c_str(); }

bovw_config* bovw_config_new(void) {
    return new bovw_config{};
}

bovw_config* bovw_config_load(const char* path) {
    if (!path) {
        set_error("config path is null");
        return nullptr;
    }
    return guard_ptr<bovw_config>([&] { return new bovw_config{bovw::Config::load_file(path), {}}; });
}

int bovw_config_set(bovw_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) {
        set_error("config/key/value is null");
        return BOVW_ERROR;
    }
    cfg->rep.set(key, value);
    return BOVW_OK;
}

const char* bovw_config_get(const bovw_config* cfg, const char* key) {
    if (!cfg || !key)
        return nullptr;
    const auto v = cfg->rep.get(key);
    if (!v)
        return nullptr;
    cfg->scratch = *v;
    return cfg->scratch.c_str();
}

void bovw_config_free(bovw_config* cfg) { delete cfg; }

bovw_dataset* bovw_dataset_open(const char* features_dir, const char* labels_csv) {
    if (!features_dir) {
        set_error("features_dir is null");
        return nullptr;
    }
    return guard_ptr<bovw_dataset>([&] {
        return new bovw_dataset{
            bovw::open_dataset(features_dir, labels_csv ? labels_csv : "")};
    });
}

void bovw_dataset_free(bovw_dataset* dataset) { delete dataset; }

int64_t bovw_dataset_image_count(const bovw_dataset* d) {
    return d ? static_cast<int64_t>(d->rep.image_count()) : -1;
}

int64_t bovw_dataset_labeled_count(const bovw_dataset* d) {
    return d ? static_cast<int64_t>(d->rep.labeled_count()) : -1;
}

int64_t bovw_dataset_label_count(const bovw_dataset* d) {
    return d ? static_cast<int64_t>(d->rep.label_count()) : -1;
}

int64_t bovw_dataset_feature_dim(const bovw_dataset* d) {
    return d ? static_cast<int64_t>(d->rep.feature_dim()) : -1;
}

int64_t bovw_dataset_feature_count(const bovw_dataset* d, int64_t image) {
    if (!d || image < 0 || image >= static_cast<int64_t>(d->rep.image_count()))
        return -1;
    return static_cast<int64_t>(d->rep.images[static_cast<std::size_t>(image)].count());
}

const char* bovw_dataset_image_id(const bovw_dataset* d, int64_t image) {
    if (!d || image < 0 || image >= static_cast<int64_t>(d->rep.image_count()))
        return nullptr;
    return d->rep.images[static_cast<std::size_t>(image)].image_id.c_str();
}

bovw_vocabulary* bovw_vocab_build(const bovw_dataset* dataset, const char* strategy, uint32_t size,
                                  const bovw_config* cfg, uint64_t seed) {
    if (!dataset || !strategy) {
        set_error("dataset/strategy is null");
        return nullptr;
    }
    return guard_ptr<bovw_vocabulary>([&] {
        const auto config = config_or_default(cfg);
        auto kmeans = kmeans_from_config(config);
        kmeans.seed = bovw::Seed{seed};
        auto filter = filter_from_config(config);
        filter.seed = bovw::Seed{seed}.derive("filter");
        const auto s = bovw::strategy_from_name(strategy);
        return new bovw_vocabulary{
            bovw::build_vocabulary(s, size, dataset->rep, filter, kmeans)};
    });
}

bovw_vocabulary* bovw_vocab_read(const char* path) {
    if (!path) {
        set_error("path is null");
        return nullptr;
    }
    return guard_ptr<bovw_vocabulary>(
        [&] { return new bovw_vocabulary{bovw::read_vocabulary_file(path)}; });
}

int bovw_vocab_write(const bovw_vocabulary* vocab, const char* path) {
    if (!vocab || !path) {
        set_error("vocab/path is null");
        return BOVW_ERROR;
    }
    return guard(
        [&] { bovw::write_vocabulary_file(vocab->rep, path); return BOVW_OK; });
}

void bovw_vocab_free(bovw_vocabulary* vocab) { delete vocab; }

uint32_t bovw_vocab_size(const bovw_vocabulary* v) {
    return v ? static_cast<uint32_t>(v->rep.size()) : 0;
}

uint32_t bovw_vocab_dim(const bovw_vocabulary* v) {
    return v ? static_cast<uint32_t>(v->rep.dim()) : 0;
}

const char* bovw_vocab_strategy(const bovw_vocabulary* v) {
    return v ? bovw::strategy_name(v->rep.strategy) : nullptr;
}

int32_t bovw_vocab_provenance(const bovw_vocabulary* v, uint32_t word) {
    if (!v || word >= v->rep.size())
        return -1;
    return v->rep.provenance[word];
}

int bovw_encode_image(const bovw_dataset* dataset, int64_t image, const bovw_vocabulary* vocab,
                      double* weights) {
    if (!dataset || !vocab || !weights) {
        set_error("dataset/vocab/weights is null");
        return BOVW_ERROR;
    }
    if (image < 0 || image >= static_cast<int64_t>(dataset->rep.image_count())) {
        set_error("image index out of range");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto enc =
            bovw::encode_image(dataset->rep.images[static_cast<std::size_t>(image)], vocab->rep);
        std::copy(enc.weights.begin(), enc.weights.end(), weights);
        return BOVW_OK;
    });
}

int bovw_encode_csv(const bovw_dataset* dataset, const bovw_vocabulary* vocab,
                    const char* out_csv) {
    if (!dataset || !vocab || !out_csv) {
        set_error("dataset/vocab/out_csv is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto encodings = bovw::encode_dataset(dataset->rep, vocab->rep);
        bovw::write_encoding_csv(encodings, out_csv);
        return BOVW_OK;
    });
}

int bovw_cmd_extract(const bovw_config* cfg) {
    if (!cfg) {
        set_error("config is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto& config = cfg->rep;
        const std::filesystem::path images_dir = config.require_string("images_dir");
        const std::filesystem::path out_dir = config.require_string("out_dir");
        const auto sampling = sampling_from_config(config);
        if (!std::filesystem::is_directory(images_dir))
            throw std::runtime_error("extract: '" + images_dir.string() + "' is not a directory");

        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(images_dir)) {
            const auto ext = entry.path().extension();
            if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm"))
                files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty())
            throw std::runtime_error("extract: no .pgm/.ppm images in '" + images_dir.string() + "'");

        std::filesystem::create_directories(out_dir);
        std::size_t total_features = 0;
        for (const auto& file : files) {
            const auto img = bovw::read_pnm(file);
            const auto res = bovw::extract_features(img, file.stem().string(), sampling);
            for (const auto& w : res.warnings)
                std::fprintf(stderr, "[extract] warning: %s\n", w.c_str());
            bovw::write_feature_file(res.image, out_dir / (res.image.image_id + ".boff"));
            total_features += res.image.count();
            std::fprintf(stderr, "[extract] %s: %zu features\n", res.image.image_id.c_str(),
                         res.image.count());
        }
        std::fprintf(stderr, "[extract] %zu images, %zu features\n", files.size(), total_features);
        return BOVW_OK;
    });
}

int bovw_cmd_synth(const bovw_config* cfg) {
    if (!cfg) {
        set_error("config is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto& config = cfg->rep;
        const std::filesystem::path out_dir = config.require_string("out_dir");
        bovw::SynthConfig sc;
        sc.labels = static_cast<std::size_t>(config.get_int("synth_labels", 5));
        sc.images_per_label = static_cast<std::size_t>(config.get_int("synth_images_per_label", 40));
        sc.features_per_image =
            static_cast<std::size_t>(config.get_int("synth_features_per_image", 200));
        sc.background_fraction = config.get_double("synth_background_fraction", 0.6);
        sc.words_per_label = static_cast<std::size_t>(config.get_int("synth_words_per_label", 4));
        sc.background_centers =
            static_cast<std::size_t>(config.get_int("synth_background_centers", 20));
        sc.dim = static_cast<std::size_t>(config.get_int("synth_dim", 16));
        sc.center_spread = config.get_double("synth_center_spread", 10.0);
        sc.within_spread = config.get_double("synth_within_spread", 0.5);
        sc.labeled_fraction = config.get_double("synth_labeled_fraction", 1.0);
        sc.second_label_fraction = config.get_double("synth_second_label_fraction", 0.0);
        sc.seed = bovw::Seed{config.get_u64("seed", 42)};

        const auto result = bovw::generate(sc);
        bovw::save_dataset(result.dataset, out_dir / "features", out_dir / "labels.csv");
        bovw::write_ground_truth_csv(result.ground_truth, out_dir / "ground_truth.csv");
        std::fprintf(stderr, "[synth] %zu images, %zu labels -> %s\n",
                     result.dataset.image_count(), result.dataset.label_count(),
                     out_dir.string().c_str());
        return BOVW_OK;
    });
}

int bovw_cmd_vocab(const bovw_config* cfg) {
    if (!cfg) {
        set_error("config is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto& config = cfg->rep;
        const auto strategy = bovw::strategy_from_name(config.require_string("strategy"));
        const auto m = static_cast<std::size_t>(config.get_int("vocab_size", 0));
        if (m < 1)
            throw std::runtime_error("config: vocab_size must be >= 1");
        const auto dataset = open_from_config(config, true);

        auto kmeans = kmeans_from_config(config);
        kmeans.seed = bovw::Seed{config.get_u64("seed", 42)};
        auto filter = filter_from_config(config);
        filter.seed = kmeans.seed.derive("filter");

        const auto vocab = bovw::build_vocabulary(strategy, m, dataset, filter, kmeans);
        std::filesystem::path out = config.get_string("vocab_file", "");
        if (out.empty()) {
            const std::filesystem::path out_dir = config.get_string("out_dir", ".");
            std::filesystem::create_directories(out_dir);
            out = out_dir / ("vocab_" + std::string(bovw::strategy_name(strategy)) + "_m" +
                             std::to_string(m) + ".bofv");
        }
        bovw::write_vocabulary_file(vocab, out);
        std::fprintf(stderr, "[vocab] %s m=%zu h=%zu -> %s\n", bovw::strategy_name(strategy), m,
                     vocab.dim(), out.string().c_str());
        return BOVW_OK;
    });
}

int bovw_cmd_encode(const bovw_config* cfg) {
    if (!cfg) {
        set_error("config is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto& config = cfg->rep;
        const auto dataset = open_from_config(config, false);
        const auto vocab = bovw::read_vocabulary_file(config.require_string("vocab_file"));
        std::filesystem::path out = config.get_string("encoding_csv", "");
        if (out.empty()) {
            const std::filesystem::path out_dir = config.get_string("out_dir", ".");
            std::filesystem::create_directories(out_dir);
            out = out_dir / "encoding.csv";
        }
        const auto encodings = bovw::encode_dataset(dataset, vocab);
        bovw::write_encoding_csv(encodings, out, {output_header_comment(config)});
        std::fprintf(stderr, "[encode] %zu images x %zu words -> %s\n", encodings.size(),
                     vocab.size(), out.string().c_str());
        return BOVW_OK;
    });
}

int bovw_cmd_eval(const bovw_config* cfg) {
    if (!cfg) {
        set_error("config is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto& config = cfg->rep;
        const auto dataset = open_from_config(config, true);
        const auto raw = bovw::read_encoding_csv(config.require_string("encoding_csv"));

        // Reorder the CSV rows to dataset order.
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < raw.size(); ++i)
            pos[raw[i].image_id] = i;
        std::vector<bovw::BoFVector> encodings;
        encodings.reserve(dataset.image_count());
        for (const auto& img : dataset.images) {
            const auto it = pos.find(img.image_id);
            if (it == pos.end())
                throw std::runtime_error("eval: encoding misses image '" + img.image_id + "'");
            encodings.push_back(raw[it->second]);
        }

        auto ec = bovw::ExperimentConfig::from_config(config);
        const std::filesystem::path out_dir = ec.out_dir;
        std::filesystem::create_directories(out_dir);
        const auto result = bovw::evaluate_encodings(dataset, encodings, ec, "imported");

        const std::string header = "# " + output_header_comment(config);
        {
            std::ofstream csv(out_dir / "eval_results.csv", std::ios::trunc);
            csv << header << '\n';
            csv << "strategy,vocab_size,protocol,repetition,nc,macro_precision,macro_recall,"
                   "macro_f,macro_tpr,macro_fpr\n";
            for (const auto& r : result.rows)
                csv << r.strategy << ',' << r.vocab_size << ',' << r.protocol << ','
                    << r.repetition << ',' << r.nc << ',' << bovw::format_double(r.macro_precision)
                    << ',' << bovw::format_double(r.macro_recall) << ','
                    << bovw::format_double(r.macro_f) << ',' << bovw::format_double(r.macro_tpr)
                    << ',' << bovw::format_double(r.macro_fpr) << '\n';
        }
        {
            std::ofstream csv(out_dir / "eval_per_class.csv", std::ios::trunc);
            csv << header << '\n';
            csv << "strategy,vocab_size,protocol,repetition,nc,class,precision,recall,f_measure,"
                   "tpr,fpr\n";
            for (const auto& r : result.per_class)
                csv << r.strategy << ',' << r.vocab_size << ',' << r.protocol << ','
                    << r.repetition << ',' << r.nc << ',' << r.class_name << ','
                    << bovw::format_double(r.precision) << ',' << bovw::format_double(r.recall)
                    << ',' << bovw::format_double(r.f_measure) << ','
                    << bovw::format_double(r.tpr) << ',' << bovw::format_double(r.fpr) << '\n';
        }
        std::fprintf(stderr, "[eval] %zu rows -> %s\n", result.rows.size(),
                     (out_dir / "eval_results.csv").string().c_str());
        return BOVW_OK;
    });
}

int bovw_cmd_experiment(const bovw_config* cfg) {
    if (!cfg) {
        set_error("config is null");
        return BOVW_ERROR;
    }
    return guard([&] {
        const auto& config = cfg->rep;
        const auto dataset = open_from_config(config, true);
        const auto ec = bovw::ExperimentConfig::from_config(config);
        const auto result = bovw::run_experiment(dataset, ec);
        if (result.partial()) {
            set_error(std::to_string(result.failures.size()) + " cell(s) failed; see failures.csv");
            return BOVW_PARTIAL;
        }
        return BOVW_OK;
    });
}

} // extern "C"
