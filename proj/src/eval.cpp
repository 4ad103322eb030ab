#include "eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bovw {

const char* protocol_name(Protocol p) {
    switch (p) {
    case Protocol::holdout_clustering: return "holdout_clustering";
    case Protocol::class_balanced_svm: return "class_balanced_svm";
    }
    throw std::invalid_argument("unknown protocol value");
}

Protocol protocol_from_name(const std::string& name) {
    if (name == "holdout_clustering") return Protocol::holdout_clustering;
    if (name == "class_balanced_svm") return Protocol::class_balanced_svm;
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

void SplitSpec::validate() const {
    if (learn_fraction <= 0.0 || learn_fraction >= 1.0)
        throw std::invalid_argument("split: learn_fraction must be in (0,1)");
    if (labeled_fraction_of_learn <= 0.0 || labeled_fraction_of_learn >= 1.0)
        throw std::invalid_argument("split: labeled_fraction_of_learn must be in (0,1)");
    if (per_class_labeled > per_class_learn)
        throw std::invalid_argument("split: per_class_labeled exceeds per_class_learn");
    if (per_class_learn < 1)
        throw std::invalid_argument("split: per_class_learn must be >= 1");
    if (repetitions < 1)
        throw std::invalid_argument("split: repetitions must be >= 1");
}

std::vector<int> single_class_of_images(const LabeledDataset& dataset) {
    std::vector<int> classes(dataset.image_count(), -1);
    for (std::size_t r = 0; r < dataset.labeled_count(); ++r) {
        int cls = -1;
        for (std::size_t c = 0; c < dataset.label_count(); ++c) {
            if (!dataset.label_matrix[r][c])
                continue;
            if (cls >= 0)
                throw std::invalid_argument("classification protocols need single-label images; '" +
                                            dataset.labeled_ids[r] + "' has several labels");
            cls = static_cast<int>(c);
        }
        classes[dataset.image_index(dataset.labeled_ids[r])] = cls;
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] < 0)
            throw std::invalid_argument("classification protocols need every image labeled; '" +
                                        dataset.images[i].image_id + "' is unlabeled");
    return classes;
}

namespace {

void shuffled_indices(std::vector<std::size_t>& idx, RngEngine& rng) {
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_index(rng, idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
}

} // namespace

Split make_split(const LabeledDataset& dataset, const SplitSpec& spec, std::size_t repetition) {
    spec.validate();
    const auto classes = single_class_of_images(dataset);
    const std::size_t k = dataset.label_count();

    std::vector<std::vector<std::size_t>> by_class(k);
    for (std::size_t i = 0; i < classes.size(); ++i)
        by_class[static_cast<std::size_t>(classes[i])].push_back(i);

    Split split;
    for (std::size_t c = 0; c < k; ++c) {
        auto& members = by_class[c];
        const std::size_t n_c = members.size();
        auto rng = make_engine(spec.seed.derive("split/rep", repetition)
                                   .derive(protocol_name(spec.protocol))
                                   .derive("class", c));
        shuffled_indices(members, rng);

        std::size_t n_learn = 0, n_labeled = 0;
        if (spec.protocol == Protocol::holdout_clustering) {
            if (n_c < 2)
                throw std::invalid_argument("split: class '" + dataset.label_vocab.labels[c] +
                                            "' has fewer than 2 images");
            n_learn = static_cast<std::size_t>(std::llround(spec.learn_fraction * static_cast<double>(n_c)));
            n_learn = std::clamp<std::size_t>(n_learn, 1, n_c - 1);
            n_labeled = static_cast<std::size_t>(
                std::llround(spec.labeled_fraction_of_learn * static_cast<double>(n_learn)));
            n_labeled = std::clamp<std::size_t>(n_labeled, 1, n_learn);
        } else {
            if (n_c < spec.per_class_learn + 1)
                throw std::invalid_argument("split: class '" + dataset.label_vocab.labels[c] +
                                            "' has " + std::to_string(n_c) + " images, needs at least " +
                                            std::to_string(spec.per_class_learn + 1));
            n_learn = spec.per_class_learn;
            n_labeled = spec.per_class_labeled;
        }
        for (std::size_t i = 0; i < n_c; ++i) {
            if (i < n_learn) {
                split.learn.push_back(members[i]);
                if (i < n_labeled)
                    split.labeled.push_back(members[i]);
            } else {
                split.test.push_back(members[i]);
            }
        }
    }
    return split;
}

ClusterClassifierModel cluster_classifier_fit(const std::vector<BoFVector>& learn,
                                              const std::vector<int>& learn_class,
                                              std::size_t nc, Seed seed,
                                              const KMeansParams& kmeans) {
    if (learn.empty())
        throw std::invalid_argument("cluster classifier: empty learn set");
    if (learn.size() != learn_class.size())
        throw std::invalid_argument("cluster classifier: learn/class size mismatch");

    int max_class = -1;
    std::size_t labeled_count = 0;
    for (int c : learn_class) {
        if (c >= 0) {
            ++labeled_count;
            max_class = std::max(max_class, c);
        }
    }
    if (labeled_count == 0)
        throw std::invalid_argument("cluster classifier: labeled subset is empty");
    const std::size_t classes = static_cast<std::size_t>(max_class) + 1;

    ClusterClassifierModel model;
    if (nc < classes)
        model.warnings.push_back("nc=" + std::to_string(nc) + " below class count " +
                                 std::to_string(classes));

    std::vector<FeatureVector> vectors;
    vectors.reserve(learn.size());
    for (const auto& v : learn)
        vectors.push_back(v.weights);

    KMeansParams params = kmeans;
    params.seed = seed;
    const auto initial = choose_features_at_random(nc, vectors, seed.derive("cluster/init"));
    const auto km = ameliorate_using_kmeans(initial, vectors, params);
    model.centroids = km.centroids;

    std::vector<std::size_t> global_votes(classes, 0);
    for (int c : learn_class)
        if (c >= 0)
            ++global_votes[static_cast<std::size_t>(c)];
    const int global_majority = static_cast<int>(
        std::max_element(global_votes.begin(), global_votes.end()) - global_votes.begin());

    model.cluster_labels.assign(nc, global_majority);
    std::vector<std::vector<std::size_t>> votes(nc, std::vector<std::size_t>(classes, 0));
    for (std::size_t i = 0; i < learn.size(); ++i)
        if (learn_class[i] >= 0)
            ++votes[km.assignments[i]][static_cast<std::size_t>(learn_class[i])];
    for (std::size_t c = 0; c < nc; ++c) {
        std::size_t total = 0;
        for (auto v : votes[c])
            total += v;
        if (total == 0)
            continue; // keep the global majority fallback
        model.cluster_labels[c] = static_cast<int>(
            std::max_element(votes[c].begin(), votes[c].end()) - votes[c].begin());
    }
    return model;
}

std::vector<int> cluster_classifier_predict(const ClusterClassifierModel& model,
                                            const std::vector<BoFVector>& test) {
    std::vector<int> out;
    out.reserve(test.size());
    for (const auto& v : test)
        out.push_back(model.cluster_labels[nearest(v.weights, model.centroids).first]);
    return out;
}

LinearOvrModel linear_ovr_fit(const std::vector<BoFVector>& learn,
                              const std::vector<int>& learn_class, std::size_t classes,
                              const LinearOvrParams& params) {
    if (learn.empty() || learn.size() != learn_class.size())
        throw std::invalid_argument("linear ovr: bad learn set");
    std::vector<std::size_t> counts(classes, 0);
    for (int c : learn_class) {
        if (c < 0 || static_cast<std::size_t>(c) >= classes)
            throw std::invalid_argument("linear ovr: class index out of range");
        ++counts[static_cast<std::size_t>(c)];
    }
    std::size_t present = 0;
    for (auto c : counts)
        if (c > 0)
            ++present;
    if (present < 2)
        throw std::invalid_argument("linear ovr: need at least 2 classes in the learn set");

    const std::size_t dim = learn[0].weights.size();
    const std::size_t n = learn.size();
    LinearOvrModel model;
    model.weights.assign(classes, std::vector<double>(dim, 0.0));
    model.bias.assign(classes, 0.0);

    for (std::size_t cls = 0; cls < classes; ++cls) {
        auto& w = model.weights[cls];
        double& b = model.bias[cls];
        for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
            const double eta =
                params.eta0 / (1.0 + params.lambda * params.eta0 * static_cast<double>(epoch));
            std::vector<double> grad(dim, 0.0);
            double grad_b = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double y = learn_class[i] == static_cast<int>(cls) ? 1.0 : -1.0;
                double margin = b;
                const auto& x = learn[i].weights;
                for (std::size_t d = 0; d < dim; ++d)
                    margin += w[d] * x[d];
                if (y * margin < 1.0) {
                    for (std::size_t d = 0; d < dim; ++d)
                        grad[d] -= y * x[d];
                    grad_b -= y;
                }
            }
            const double inv_n = 1.0 / static_cast<double>(n);
            for (std::size_t d = 0; d < dim; ++d)
                w[d] -= eta * (params.lambda * w[d] + grad[d] * inv_n);
            b -= eta * grad_b * inv_n;
        }
    }
    return model;
}

std::vector<int> linear_ovr_predict(const LinearOvrModel& model,
                                    const std::vector<BoFVector>& vectors) {
    std::vector<int> out;
    out.reserve(vectors.size());
    for (const auto& v : vectors) {
        int best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t cls = 0; cls < model.weights.size(); ++cls) {
            double score = model.bias[cls];
            for (std::size_t d = 0; d < v.weights.size(); ++d)
                score += model.weights[cls][d] * v.weights[d];
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(cls);
            }
        }
        out.push_back(best);
    }
    return out;
}

MetricsReport compute_metrics(const std::vector<int>& truth, const std::vector<int>& predicted,
                              std::size_t classes) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("metrics: truth/prediction size mismatch");
    MetricsReport r;
    r.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] < 0 || static_cast<std::size_t>(truth[i]) >= classes ||
            predicted[i] < 0 || static_cast<std::size_t>(predicted[i]) >= classes)
            throw std::invalid_argument("metrics: class index out of range");
        ++r.confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])];
    }
    const std::size_t n = truth.size();
    r.precision.assign(classes, 0.0);
    r.recall.assign(classes, 0.0);
    r.f_measure.assign(classes, 0.0);
    r.tpr.assign(classes, 0.0);
    r.fpr.assign(classes, 0.0);
    r.support.assign(classes, 0);

    auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };

    std::size_t present = 0;
    for (std::size_t c = 0; c < classes; ++c) {
        std::size_t tp = r.confusion[c][c];
        std::size_t row = 0, col = 0;
        for (std::size_t j = 0; j < classes; ++j) {
            row += r.confusion[c][j];
            col += r.confusion[j][c];
        }
        const std::size_t fn = row - tp;
        const std::size_t fp = col - tp;
        const std::size_t tn = n - tp - fn - fp;
        r.support[c] = row;
        r.precision[c] = ratio(static_cast<double>(tp), static_cast<double>(tp + fp));
        r.recall[c] = ratio(static_cast<double>(tp), static_cast<double>(tp + fn));
        r.tpr[c] = r.recall[c];
        r.f_measure[c] = ratio(2.0 * r.precision[c] * r.recall[c], r.precision[c] + r.recall[c]);
        r.fpr[c] = ratio(static_cast<double>(fp), static_cast<double>(fp + tn));
        if (row > 0)
            ++present;
    }
    if (present > 0) {
        for (std::size_t c = 0; c < classes; ++c) {
            if (r.support[c] == 0)
                continue;
            r.macro_precision += r.precision[c];
            r.macro_recall += r.recall[c];
            r.macro_f += r.f_measure[c];
            r.macro_tpr += r.tpr[c];
            r.macro_fpr += r.fpr[c];
        }
        const double p = static_cast<double>(present);
        r.macro_precision /= p;
        r.macro_recall /= p;
        r.macro_f /= p;
        r.macro_tpr /= p;
        r.macro_fpr /= p;
    }
    return r;
}

double aggregate_over_nc(const std::vector<double>& per_nc_macro_f) {
    if (per_nc_macro_f.empty())
        throw std::invalid_argument("aggregate_over_nc: empty input");
    double s = 0.0;
    for (double v : per_nc_macro_f)
        s += v;
    return s / static_cast<double>(per_nc_macro_f.size());
}

std::vector<RocPoint> roc_points(const std::vector<std::pair<std::size_t, MetricsReport>>& by_size) {
    std::vector<RocPoint> pts;
    pts.reserve(by_size.size());
    for (const auto& [size, report] : by_size)
        pts.push_back({size, report.macro_fpr, report.macro_tpr, false});
    std::sort(pts.begin(), pts.end(),
              [](const RocPoint& a, const RocPoint& b) { return a.vocab_size < b.vocab_size; });
    if (!pts.empty())
        pts.front().smallest = true;
    return pts;
}

} // namespace bovw
