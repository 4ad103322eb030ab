#include "vocabulary.hpp"

#include <stdexcept>

namespace bovw {

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::random: return "random";
    case Strategy::random_km: return "random_km";
    case Strategy::model: return "model";
    case Strategy::filt_model: return "filt_model";
    }
    throw std::invalid_argument("unknown strategy value");
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "random") return Strategy::random;
    if (name == "random_km" || name == "random+km") return Strategy::random_km;
    if (name == "model") return Strategy::model;
    if (name == "filt_model" || name == "filt+model") return Strategy::filt_model;
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected random, random_km, model or filt_model)");
}

std::vector<FeatureVector> labeled_feature_pool(const LabeledDataset& dataset) {
    std::vector<FeatureVector> pool;
    for (const auto& id : dataset.labeled_ids) {
        const auto& img = dataset.images[dataset.image_index(id)];
        pool.insert(pool.end(), img.features.begin(), img.features.end());
    }
    return pool;
}

std::vector<FeatureVector> label_feature_pool(const LabeledDataset& dataset, std::size_t label) {
    if (label >= dataset.label_count())
        throw std::invalid_argument("label_feature_pool: label index out of range");
    std::vector<FeatureVector> pool;
    for (std::size_t j = 0; j < dataset.labeled_count(); ++j) {
        if (!dataset.label_matrix[j][label])
            continue;
        const auto& img = dataset.images[dataset.image_index(dataset.labeled_ids[j])];
        pool.insert(pool.end(), img.features.begin(), img.features.end());
    }
    return pool;
}

std::vector<std::size_t> split_sizes(std::size_t m, std::size_t k) {
    if (k < 1)
        throw std::invalid_argument("split_sizes: k must be >= 1");
    if (m < k)
        throw std::invalid_argument("split_sizes: m=" + std::to_string(m) + " < k=" +
                                    std::to_string(k) + ", cannot give every label a word");
    std::vector<std::size_t> sizes(k, m / k);
    for (std::size_t i = 0; i < m % k; ++i)
        ++sizes[i];
    return sizes;
}

VisualVocabulary build_random(std::size_t m, const LabeledDataset& dataset, Seed seed) {
    const auto pool = labeled_feature_pool(dataset);
    if (m > pool.size())
        throw std::invalid_argument("build_random: m=" + std::to_string(m) +
                                    " exceeds the labeled feature pool (" +
                                    std::to_string(pool.size()) + " features)");
    VisualVocabulary vocab;
    vocab.strategy = Strategy::random;
    vocab.label_count = static_cast<std::uint32_t>(dataset.label_count());
    vocab.words = choose_features_at_random(m, pool, seed.derive("vocab/init", 0));
    vocab.provenance.assign(m, kGenericProvenance);
    return vocab;
}

VisualVocabulary build_random_km(std::size_t m, const LabeledDataset& dataset,
                                 const KMeansParams& params) {
    const auto pool = labeled_feature_pool(dataset);
    if (m > pool.size())
        throw std::invalid_argument("build_random_km: m=" + std::to_string(m) +
                                    " exceeds the labeled feature pool (" +
                                    std::to_string(pool.size()) + " features)");
    const auto initial = choose_features_at_random(m, pool, params.seed.derive("vocab/init", 0));
    const auto km = ameliorate_using_kmeans(initial, pool, params);
    VisualVocabulary vocab;
    vocab.strategy = Strategy::random_km;
    vocab.label_count = static_cast<std::uint32_t>(dataset.label_count());
    vocab.words = km.centroids;
    vocab.provenance.assign(m, kGenericProvenance);
    return vocab;
}

VisualVocabulary build_dedicated(std::size_t m, const LabeledDataset& dataset,
                                 const KMeansParams& params) {
    const std::size_t k = dataset.label_count();
    if (dataset.labeled_count() == 0)
        throw std::invalid_argument("build_dedicated: dataset has no labeled images");
    const auto sizes = split_sizes(m, k);

    VisualVocabulary vocab;
    vocab.strategy = Strategy::model;
    vocab.label_count = static_cast<std::uint32_t>(k);
    vocab.words.reserve(m);
    vocab.provenance.reserve(m);
    for (std::size_t label = 0; label < k; ++label) {
        const auto pool = label_feature_pool(dataset, label);
        if (pool.size() < sizes[label])
            throw std::invalid_argument("build_dedicated: label '" +
                                        dataset.label_vocab.labels[label] + "' has only " +
                                        std::to_string(pool.size()) + " features for " +
                                        std::to_string(sizes[label]) + " dedicated words");
        const Seed init_seed = params.seed.derive("vocab/init", label);
        const auto initial = choose_features_at_random(sizes[label], pool, init_seed);
        const auto km = ameliorate_using_kmeans(initial, pool, params);
        for (const auto& w : km.centroids) {
            vocab.words.push_back(w);
            vocab.provenance.push_back(static_cast<std::int32_t>(label));
        }
    }
    return vocab;
}

VisualVocabulary build_filtered_dedicated(std::size_t m, const LabeledDataset& dataset,
                                          const FilterParams& filter_params,
                                          const KMeansParams& params) {
    const auto filtered = filter_dataset(dataset, filter_params);
    VisualVocabulary vocab;
    try {
        vocab = build_dedicated(m, filtered.dataset, params);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(e.what()) +
                                    " after filtering; consider a larger alpha or a smaller m");
    }
    vocab.strategy = Strategy::filt_model;
    return vocab;
}

VisualVocabulary build_vocabulary(Strategy strategy, std::size_t m, const LabeledDataset& dataset,
                                  const FilterParams& filter_params, const KMeansParams& params) {
    switch (strategy) {
    case Strategy::random: return build_random(m, dataset, params.seed);
    case Strategy::random_km: return build_random_km(m, dataset, params);
    case Strategy::model: return build_dedicated(m, dataset, params);
    case Strategy::filt_model: return build_filtered_dedicated(m, dataset, filter_params, params);
    }
    throw std::invalid_argument("unknown strategy value");
}

} // namespace bovw
