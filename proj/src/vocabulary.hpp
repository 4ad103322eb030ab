#ifndef BOVW_VOCABULARY_HPP
#define BOVW_VOCABULARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "clustering.hpp"
#include "core.hpp"
#include "filtering.hpp"

namespace bovw {

enum class Strategy : std::uint8_t {
    random = 0,
    random_km = 1,
    model = 2,
    filt_model = 3,
};

const char* strategy_name(Strategy s);
// Throws on unknown names. Accepts the CLI spellings random, random+km /
// random_km, model, filt+model / filt_model.
Strategy strategy_from_name(const std::string& name);

// Per-word provenance: source label index, or -1 for generic words.
inline constexpr std::int32_t kGenericProvenance = -1;

struct VisualVocabulary {
    std::vector<FeatureVector> words;
    std::vector<std::int32_t> provenance;
    Strategy strategy = Strategy::random;
    // Label count of the dataset the vocabulary was built from (provenance
    // indices refer to it).
    std::uint32_t label_count = 0;

    std::size_t size() const { return words.size(); }
    std::size_t dim() const { return words.empty() ? 0 : words[0].size(); }
};

// All features of labeled images, in labeled_ids order. The sampling pool
// for the random strategies.
std::vector<FeatureVector> labeled_feature_pool(const LabeledDataset& dataset);

// Concatenation C_i of the features of every image labeled with label i.
std::vector<FeatureVector> label_feature_pool(const LabeledDataset& dataset, std::size_t label);

// Dedicated sizes m_i: the first (m mod k) labels get floor(m/k)+1 words,
// the rest floor(m/k). Requires m >= k.
std::vector<std::size_t> split_sizes(std::size_t m, std::size_t k);

VisualVocabulary build_random(std::size_t m, const LabeledDataset& dataset, Seed seed);
VisualVocabulary build_random_km(std::size_t m, const LabeledDataset& dataset,
                                 const KMeansParams& params);
VisualVocabulary build_dedicated(std::size_t m, const LabeledDataset& dataset,
                                 const KMeansParams& params);
VisualVocabulary build_filtered_dedicated(std::size_t m, const LabeledDataset& dataset,
                                          const FilterParams& filter_params,
                                          const KMeansParams& params);

// Dispatch on strategy; filter_params is only consulted for filt_model.
VisualVocabulary build_vocabulary(Strategy strategy, std::size_t m, const LabeledDataset& dataset,
                                  const FilterParams& filter_params, const KMeansParams& params);

} // namespace bovw

#endif
