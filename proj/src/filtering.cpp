#include "filtering.hpp"

#include <stdexcept>

namespace bovw {

void FilterParams::validate() const {
    if (!(alpha > 0.0))
        throw std::invalid_argument("filter: alpha must be > 0");
    if (max_files < 1)
        throw std::invalid_argument("filter: max_files must be >= 1");
}

namespace {

// Candidate rows of Y satisfying a predicate, capped to max_files by a
// uniform seeded draw. The subsample seed is tied to the target image so
// per-image results do not depend on processing order.
template <typename Pred>
std::vector<std::string> capped_candidates(std::size_t labeled_index, const LabeledDataset& dataset,
                                           const FilterParams& params, const char* tag, Pred pred) {
    std::vector<std::string> ids;
    for (std::size_t j = 0; j < dataset.labeled_count(); ++j) {
        if (j == labeled_index)
            continue;
        if (pred(dataset.label_matrix[j]))
            ids.push_back(dataset.labeled_ids[j]);
    }
    if (ids.size() > params.max_files) {
        auto rng = make_engine(params.seed.derive(tag, labeled_index));
        const auto pick = sample_without_replacement(rng, ids.size(), params.max_files);
        std::vector<std::string> capped;
        capped.reserve(params.max_files);
        for (std::size_t i : pick)
            capped.push_back(ids[i]);
        return capped;
    }
    return ids;
}

} // namespace

std::vector<std::string> create_kp(std::size_t labeled_index, const LabeledDataset& dataset,
                                   const FilterParams& params) {
    params.validate();
    if (labeled_index >= dataset.labeled_count())
        throw std::invalid_argument("create_kp: image is not labeled");
    const auto& row_i = dataset.label_matrix[labeled_index];
    return capped_candidates(labeled_index, dataset, params, "filter/kp",
                             [&](const std::vector<std::uint8_t>& row_j) {
                                 for (std::size_t l = 0; l < row_i.size(); ++l)
                                     if (row_i[l] && !row_j[l])
                                         return false;
                                 return true;
                             });
}

std::vector<std::string> create_kn(std::size_t labeled_index, const LabeledDataset& dataset,
                                   const FilterParams& params) {
    params.validate();
    if (labeled_index >= dataset.labeled_count())
        throw std::invalid_argument("create_kn: image is not labeled");
    const auto& row_i = dataset.label_matrix[labeled_index];
    return capped_candidates(labeled_index, dataset, params, "filter/kn",
                             [&](const std::vector<std::uint8_t>& row_j) {
                                 for (std::size_t l = 0; l < row_i.size(); ++l)
                                     if (row_i[l] && row_j[l])
                                         return false;
                                 return true;
                             });
}

KnownSets make_known_sets(std::size_t labeled_index, const LabeledDataset& dataset,
                          const FilterParams& params) {
    KnownSets sets;
    sets.kp_image_ids = create_kp(labeled_index, dataset, params);
    sets.kn_image_ids = create_kn(labeled_index, dataset, params);
    for (const auto& id : sets.kp_image_ids) {
        const auto& img = dataset.images[dataset.image_index(id)];
        sets.kp_features.insert(sets.kp_features.end(), img.features.begin(), img.features.end());
    }
    for (const auto& id : sets.kn_image_ids) {
        const auto& img = dataset.images[dataset.image_index(id)];
        sets.kn_features.insert(sets.kn_features.end(), img.features.begin(), img.features.end());
    }
    return sets;
}

double min_distance(std::span<const double> f, const std::vector<FeatureVector>& pool) {
    if (pool.empty())
        throw std::invalid_argument("min_distance: empty pool");
    return nearest(f, pool).second;
}

std::size_t count_similar(std::span<const double> f, const std::vector<FeatureVector>& kp,
                          double delta) {
    std::size_t count = 0;
    for (const auto& fp : kp)
        if (euclidean_distance(f, fp) <= delta)
            ++count;
    return count;
}

FilterImageResult filter_image(std::size_t labeled_index, const LabeledDataset& dataset,
                               const FilterParams& params) {
    const KnownSets sets = make_known_sets(labeled_index, dataset, params);
    const auto& img = dataset.images[dataset.image_index(dataset.labeled_ids[labeled_index])];

    FilterImageResult result;
    result.total = img.features.size();
    result.kp_feature_count = sets.kp_features.size();
    result.kn_feature_count = sets.kn_features.size();
    result.empty_kp = sets.kp_features.empty();
    result.empty_kn = sets.kn_features.empty();

    // No negatives: the threshold is undefined, keep everything. No
    // positives: keep everything rather than deleting the whole image.
    if (sets.kn_features.empty() || sets.kp_features.empty()) {
        result.kept = img.features;
        result.kept_indices.resize(img.features.size());
        for (std::size_t i = 0; i < img.features.size(); ++i)
            result.kept_indices[i] = i;
        return result;
    }

    for (std::size_t i = 0; i < img.features.size(); ++i) {
        const auto& f = img.features[i];
        const double delta = params.alpha * min_distance(f, sets.kn_features);
        if (count_similar(f, sets.kp_features, delta) > 0) {
            result.kept.push_back(f);
            result.kept_indices.push_back(i);
        }
    }
    return result;
}

FilterDatasetResult filter_dataset(const LabeledDataset& dataset, const FilterParams& params) {
    params.validate();
    FilterDatasetResult out;
    out.dataset = dataset;
    out.report.reserve(dataset.labeled_count());
    for (std::size_t i = 0; i < dataset.labeled_count(); ++i) {
        const auto res = filter_image(i, dataset, params);
        const int img_idx = dataset.image_index(dataset.labeled_ids[i]);
        out.dataset.images[img_idx].features = res.kept;
        out.report.push_back({dataset.labeled_ids[i], res.total, res.kept.size(),
                              res.kp_feature_count, res.kn_feature_count});
        if (res.empty_kp && !res.empty_kn)
            out.warnings.push_back("image '" + dataset.labeled_ids[i] +
                                   "': known positive set is empty, all features kept");
    }
    return out;
}

} // namespace bovw
