#ifndef BOVW_CORE_HPP
#define BOVW_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace bovw {

// One h-dimensional descriptor. All features of a dataset share the same h.
using FeatureVector = std::vector<double>;

// An image together with the descriptors sampled from it (set V_i).
struct ImageFeatures {
    std::string image_id;
    std::size_t dim = 0;
    std::vector<FeatureVector> features;

    std::size_t count() const { return features.size(); }
};

// Ordered list of the k distinct label names.
struct LabelVocabulary {
    std::vector<std::string> labels;

    std::size_t size() const { return labels.size(); }
    // Index of `name`, or -1 if unknown.
    int index_of(const std::string& name) const;
};

// Collection P with its labeled subset P1 and the boolean label matrix Y.
// Y has one row per labeled image, in labeled_ids order, and one column per
// label in label_vocab order.
struct LabeledDataset {
    std::vector<ImageFeatures> images;
    std::vector<std::string> labeled_ids;
    std::vector<std::vector<std::uint8_t>> label_matrix;
    LabelVocabulary label_vocab;

    std::size_t image_count() const { return images.size(); }
    std::size_t labeled_count() const { return labeled_ids.size(); }
    std::size_t label_count() const { return label_vocab.size(); }

    // Descriptor dimension, 0 when the dataset holds no features at all.
    std::size_t feature_dim() const;

    // Index into `images` for an id; -1 if absent.
    int image_index(const std::string& id) const;
    // Row of Y for an image id; -1 when the image is unlabeled.
    int labeled_row(const std::string& id) const;

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

// Euclidean distance between two descriptors. Dimensions must agree.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Smallest-distance element of a non-empty pool; ties resolve to the lowest
// index. Returns (index, distance).
std::pair<std::size_t, double> nearest(std::span<const double> f,
                                       const std::vector<FeatureVector>& pool);

} // namespace bovw

#endif
