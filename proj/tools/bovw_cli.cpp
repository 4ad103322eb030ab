// Command line front end. Talks to the library exclusively through the C
// API in bovw.h; flags are overlaid onto the key=value config.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bovw.h"

namespace {

struct ConfigDeleter {
    void operator()(bovw_config* cfg) const { bovw_config_free(cfg); }
};
using ConfigHandle = std::unique_ptr<bovw_config, ConfigDeleter>;

struct CommonArgs {
    std::string config_path;
    std::string seed;
    std::string out_dir;
    std::string strategy;
    std::string vocab_size;
    std::string alpha;
    std::string max_files;
    std::string workers;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "key=value config file");
    cmd->add_option("--seed", args.seed, "root seed (unsigned 64-bit)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--strategy", args.strategy,
                    "vocabulary strategy: random, random_km, model, filt_model");
    cmd->add_option("--vocab-size", args.vocab_size, "vocabulary size m");
    cmd->add_option("--alpha", args.alpha, "filtering threshold scale");
    cmd->add_option("--max-files", args.max_files, "cap on known positive/negative image sets");
    cmd->add_option("--workers", args.workers, "worker threads for experiment cells");
    cmd->add_option("--set", args.sets, "extra config override, key=value")->take_all();
}

ConfigHandle build_config(const CommonArgs& args) {
    ConfigHandle cfg(args.config_path.empty() ? bovw_config_new()
                                              : bovw_config_load(args.config_path.c_str()));
    if (!cfg) {
        std::fprintf(stderr, "error: %s\n", bovw_last_error());
        return nullptr;
    }
    auto apply = [&](const char* key, const std::string& value) {
        if (!value.empty())
            bovw_config_set(cfg.get(), key, value.c_str());
    };
    apply("seed", args.seed);
    apply("out_dir", args.out_dir);
    apply("strategy", args.strategy);
    apply("vocab_size", args.vocab_size);
    apply("alpha", args.alpha);
    apply("max_files", args.max_files);
    apply("workers", args.workers);
    for (const auto& kv : args.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
            return nullptr;
        }
        bovw_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    }
    return cfg;
}

int finish(int status) {
    if (status == BOVW_OK)
        return 0;
    std::fprintf(stderr, "error: %s\n", bovw_last_error());
    return status == BOVW_PARTIAL ? 2 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bag-of-features vocabulary construction and evaluation"};
    app.require_subcommand(1);

    CommonArgs extract_args, synth_args, vocab_args, encode_args, eval_args, experiment_args;
    std::string images_dir, features_dir, labels_csv, vocab_file, encoding_csv;

    auto* extract = app.add_subcommand("extract", "extract dense features from raster images");
    extract->add_option("--images-dir", images_dir, "directory of .pgm/.ppm images")->required();
    add_common(extract, extract_args);

    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled feature dataset");
    add_common(synth, synth_args);

    auto* vocab = app.add_subcommand("vocab", "build a visual vocabulary");
    vocab->add_option("--features-dir", features_dir, "directory of .boff feature files");
    vocab->add_option("--labels", labels_csv, "label table CSV");
    vocab->add_option("--vocab-file", vocab_file, "output vocabulary path");
    add_common(vocab, vocab_args);

    auto* encode = app.add_subcommand("encode", "encode a dataset against a vocabulary");
    encode->add_option("--features-dir", features_dir, "directory of .boff feature files");
    encode->add_option("--vocab-file", vocab_file, "vocabulary path");
    encode->add_option("--encoding", encoding_csv, "output encoding CSV");
    add_common(encode, encode_args);

    auto* eval = app.add_subcommand("eval", "run the classification protocols on an encoding");
    eval->add_option("--features-dir", features_dir, "directory of .boff feature files");
    eval->add_option("--labels", labels_csv, "label table CSV");
    eval->add_option("--encoding", encoding_csv, "encoding CSV to evaluate");
    add_common(eval, eval_args);

    auto* experiment =
        app.add_subcommand("experiment", "full strategy x size x repetition sweep");
    experiment->add_option("--features-dir", features_dir, "directory of .boff feature files");
    experiment->add_option("--labels", labels_csv, "label table CSV");
    add_common(experiment, experiment_args);

    CLI11_PARSE(app, argc, argv);

    const CommonArgs* args = nullptr;
    if (extract->parsed()) args = &extract_args;
    else if (synth->parsed()) args = &synth_args;
    else if (vocab->parsed()) args = &vocab_args;
    else if (encode->parsed()) args = &encode_args;
    else if (eval->parsed()) args = &eval_args;
    else args = &experiment_args;

    ConfigHandle cfg = build_config(*args);
    if (!cfg)
        return 1;
    auto apply = [&](const char* key, const std::string& value) {
        if (!value.empty())
            bovw_config_set(cfg.get(), key, value.c_str());
    };
    apply("images_dir", images_dir);
    apply("features_dir", features_dir);
    apply("labels_csv", labels_csv);
    apply("vocab_file", vocab_file);
    apply("encoding_csv", encoding_csv);

    if (extract->parsed())
        return finish(bovw_cmd_extract(cfg.get()));
    if (synth->parsed())
        return finish(bovw_cmd_synth(cfg.get()));
    if (vocab->parsed())
        return finish(bovw_cmd_vocab(cfg.get()));
    if (encode->parsed())
        return finish(bovw_cmd_encode(cfg.get()));
    if (eval->parsed())
        return finish(bovw_cmd_eval(cfg.get()));
    return finish(bovw_cmd_experiment(cfg.get()));
}
