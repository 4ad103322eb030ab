#include "core.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace bovw {

int LabelVocabulary::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name)
            return static_cast<int>(i);
    return -1;
}

std::size_t LabeledDataset::feature_dim() const {
    for (const auto& img : images)
        if (!img.features.empty())
            return img.dim;
    return 0;
}

int LabeledDataset::image_index(const std::string& id) const {
    for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i].image_id == id)
            return static_cast<int>(i);
    return -1;
}

int LabeledDataset::labeled_row(const std::string& id) const {
    for (std::size_t i = 0; i < labeled_ids.size(); ++i)
        if (labeled_ids[i] == id)
            return static_cast<int>(i);
    return -1;
}

void LabeledDataset::validate() const {
    std::unordered_set<std::string> ids;
    for (const auto& img : images) {
        if (!ids.insert(img.image_id).second)
            throw std::invalid_argument("dataset: duplicate image id '" + img.image_id + "'");
        for (const auto& f : img.features) {
            if (f.size() != img.dim)
                throw std::invalid_argument("dataset: feature dimension mismatch in image '" + img.image_id + "'");
            for (double v : f)
                if (!std::isfinite(v))
                    throw std::invalid_argument("dataset: non-finite feature component in image '" + img.image_id + "'");
        }
    }
    const std::size_t h = feature_dim();
    for (const auto& img : images)
        if (!img.features.empty() && img.dim != h)
            throw std::invalid_argument("dataset: image '" + img.image_id + "' has dimension " +
                                        std::to_string(img.dim) + ", dataset uses " + std::to_string(h));

    if (label_matrix.size() != labeled_ids.size())
        throw std::invalid_argument("dataset: label matrix has " + std::to_string(label_matrix.size()) +
                                    " rows for " + std::to_string(labeled_ids.size()) + " labeled ids");
    const std::size_t k = label_vocab.size();
    for (std::size_t r = 0; r < label_matrix.size(); ++r) {
        if (!ids.count(labeled_ids[r]))
            throw std::invalid_argument("dataset: labeled id '" + labeled_ids[r] + "' has no image");
        if (label_matrix[r].size() != k)
            throw std::invalid_argument("dataset: label row for '" + labeled_ids[r] + "' has wrong width");
        std::size_t row_sum = 0;
        for (auto v : label_matrix[r])
            row_sum += v ? 1 : 0;
        if (row_sum == 0)
            throw std::invalid_argument("dataset: labeled image '" + labeled_ids[r] + "' has no label set");
    }
    std::unordered_set<std::string> label_names;
    for (const auto& name : label_vocab.labels) {
        if (name.empty())
            throw std::invalid_argument("dataset: empty label name");
        if (!label_names.insert(name).second)
            throw std::invalid_argument("dataset: duplicate label name '" + name + "'");
    }
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("euclidean_distance: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

std::pair<std::size_t, double> nearest(std::span<const double> f,
                                       const std::vector<FeatureVector>& pool) {
    if (pool.empty())
        throw std::invalid_argument("nearest: empty pool");
    std::size_t best = 0;
    double best_d = euclidean_distance(f, pool[0]);
    for (std::size_t i = 1; i < pool.size(); ++i) {
        const double d = euclidean_distance(f, pool[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return {best, best_d};
}

} // namespace bovw
