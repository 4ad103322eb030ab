#ifndef BOVW_EXPERIMENT_HPP
#define BOVW_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "core.hpp"
#include "eval.hpp"
#include "filtering.hpp"
#include "vocabulary.hpp"

namespace bovw {

struct ExperimentConfig {
    std::filesystem::path out_dir;
    std::vector<Strategy> strategies;
    std::vector<std::size_t> vocab_sizes;
    std::vector<Protocol> protocols;

    FilterParams filter;
    KMeansParams kmeans;
    SplitSpec holdout;
    SplitSpec svm;
    LinearOvrParams linear;

    std::vector<std::size_t> nc_values;
    std::size_t clustering_repeats = 25;
    std::size_t construction_repeats = 3;

    // Non-empty only when an alpha sweep is requested; applies to filt_model.
    std::vector<double> alpha_sweep;

    Seed root_seed;
    std::size_t workers = 1;
    std::string config_hash;

    // Parses and validates the flat config. Does not touch the dataset keys;
    // callers open the dataset themselves.
    static ExperimentConfig from_config(const Config& cfg);
};

struct ResultRow {
    std::string strategy;
    std::size_t vocab_size = 0;
    std::string protocol;
    std::size_t repetition = 0;
    std::size_t nc = 0; // 0 for the svm protocol
    double macro_precision = 0, macro_recall = 0, macro_f = 0, macro_tpr = 0, macro_fpr = 0;
};

struct PerClassRow {
    std::string strategy;
    std::size_t vocab_size = 0;
    std::string protocol;
    std::size_t repetition = 0;
    std::size_t nc = 0;
    std::string class_name;
    double precision = 0, recall = 0, f_measure = 0, tpr = 0, fpr = 0;
};

struct CellFailure {
    std::string cell;
    std::string message;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<PerClassRow> per_class;
    std::vector<CellFailure> failures;
    // Sweep rows carry the alpha value; empty when no sweep was requested.
    std::vector<std::pair<double, ResultRow>> alpha_rows;

    bool partial() const { return !failures.empty(); }
};

// Full sweep: strategy x vocabulary size x construction repetition, each
// cell building a vocabulary, encoding every image against it and running
// the enabled protocols. Cells are persisted individually under
// out_dir/cells and reused on rerun; failed cells are recorded and the
// sweep continues.
ExperimentResult run_experiment(const LabeledDataset& dataset, const ExperimentConfig& cfg);

// Runs the configured protocols over a fixed encoding (the eval command):
// one block of rows per construction repetition.
ExperimentResult evaluate_encodings(const LabeledDataset& dataset,
                                    const std::vector<BoFVector>& encodings,
                                    const ExperimentConfig& cfg, const std::string& strategy_label);

} // namespace bovw

#endif
