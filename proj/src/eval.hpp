#ifndef BOVW_EVAL_HPP
#define BOVW_EVAL_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "clustering.hpp"
#include "core.hpp"
#include "encoding.hpp"

namespace bovw {

enum class Protocol {
    holdout_clustering,
    class_balanced_svm,
};

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

struct SplitSpec {
    Protocol protocol = Protocol::holdout_clustering;
    double learn_fraction = 0.67;
    double labeled_fraction_of_learn = 0.5;
    std::size_t per_class_learn = 30;
    std::size_t per_class_labeled = 15;
    std::size_t repetitions = 3;
    Seed seed;

    void validate() const;
};

// Indices into dataset.images. labeled is a subset of learn.
struct Split {
    std::vector<std::size_t> learn;
    std::vector<std::size_t> labeled;
    std::vector<std::size_t> test;
};

// Single class index per image; classification protocols require every
// image to carry exactly one label.
std::vector<int> single_class_of_images(const LabeledDataset& dataset);

// Stratified per-class split, deterministic per (seed, repetition).
Split make_split(const LabeledDataset& dataset, const SplitSpec& spec, std::size_t repetition);

struct ClusterClassifierModel {
    std::vector<FeatureVector> centroids;
    std::vector<int> cluster_labels;
    std::vector<std::string> warnings;
};

// K-means over all learn vectors; each cluster takes the majority label of
// its labeled members (ties to the lower label index); clusters without
// labeled members take the globally most frequent label of the labeled
// subset. learn_class is -1 for members outside the labeled subset.
ClusterClassifierModel cluster_classifier_fit(const std::vector<BoFVector>& learn,
                                              const std::vector<int>& learn_class,
                                              std::size_t nc, Seed seed,
                                              const KMeansParams& kmeans);

std::vector<int> cluster_classifier_predict(const ClusterClassifierModel& model,
                                            const std::vector<BoFVector>& test);

struct LinearOvrParams {
    double lambda = 1e-4;
    std::size_t epochs = 300;
    double eta0 = 1.0;
};

struct LinearOvrModel {
    std::vector<std::vector<double>> weights; // one row per class
    std::vector<double> bias;
};

// One-vs-rest L2-regularized hinge classifiers trained by full-batch
// subgradient descent with a fixed schedule; fully deterministic.
LinearOvrModel linear_ovr_fit(const std::vector<BoFVector>& learn,
                              const std::vector<int>& learn_class, std::size_t classes,
                              const LinearOvrParams& params);

std::vector<int> linear_ovr_predict(const LinearOvrModel& model,
                                    const std::vector<BoFVector>& vectors);

struct MetricsReport {
    std::vector<double> precision, recall, f_measure, tpr, fpr;
    std::vector<std::size_t> support; // true instances per class in the test set
    std::vector<std::vector<std::size_t>> confusion; // rows: truth, cols: prediction
    double macro_precision = 0, macro_recall = 0, macro_f = 0, macro_tpr = 0, macro_fpr = 0;
};

// One-vs-rest counts per class; 0/0 rates are 0; macro averages are
// unweighted means over the classes present in the test set.
MetricsReport compute_metrics(const std::vector<int>& truth, const std::vector<int>& predicted,
                              std::size_t classes);

// Mean macro F over the nc sweep.
double aggregate_over_nc(const std::vector<double>& per_nc_macro_f);

struct RocPoint {
    std::size_t vocab_size = 0;
    double macro_fpr = 0;
    double macro_tpr = 0;
    bool smallest = false;
};

// One (macro FPR, macro TPR) point per vocabulary size, ordered by size,
// smallest size flagged.
std::vector<RocPoint> roc_points(const std::vector<std::pair<std::size_t, MetricsReport>>& by_size);

} // namespace bovw

#endif
