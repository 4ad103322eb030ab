#ifndef BOVW_FILTERING_HPP
#define BOVW_FILTERING_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace bovw {

struct FilterParams {
    double alpha = 1.0;
    std::size_t max_files = 20;
    Seed seed;

    void validate() const;
};

// Known positive / known negative feature pools for one labeled image.
struct KnownSets {
    std::vector<std::string> kp_image_ids;
    std::vector<std::string> kn_image_ids;
    std::vector<FeatureVector> kp_features;
    std::vector<FeatureVector> kn_features;
};

// Images whose label set is a superset of image i's labels, excluding i
// itself. Capped to max_files by a uniform seeded sample.
std::vector<std::string> create_kp(std::size_t labeled_index, const LabeledDataset& dataset,
                                   const FilterParams& params);
// Images sharing no label with image i, same cap.
std::vector<std::string> create_kn(std::size_t labeled_index, const LabeledDataset& dataset,
                                   const FilterParams& params);

KnownSets make_known_sets(std::size_t labeled_index, const LabeledDataset& dataset,
                          const FilterParams& params);

double min_distance(std::span<const double> f, const std::vector<FeatureVector>& pool);

// |{ f+ in kp : ||f - f+|| <= delta }|, boundary inclusive.
std::size_t count_similar(std::span<const double> f, const std::vector<FeatureVector>& kp,
                          double delta);

struct FilterImageResult {
    std::vector<FeatureVector> kept;
    std::vector<std::size_t> kept_indices;
    std::size_t total = 0;
    std::size_t kp_feature_count = 0;
    std::size_t kn_feature_count = 0;
    bool empty_kp = false;
    bool empty_kn = false;
};

// One image of Algorithm-style filtering: a feature survives iff some known
// positive feature lies within delta = alpha * (distance to the nearest
// known negative). With no known negatives every feature is kept; with no
// known positives every feature is kept and the result is flagged.
FilterImageResult filter_image(std::size_t labeled_index, const LabeledDataset& dataset,
                               const FilterParams& params);

struct FilterReportRow {
    std::string image_id;
    std::size_t total_features = 0;
    std::size_t kept_features = 0;
    std::size_t kp_size = 0;
    std::size_t kn_size = 0;
};

struct FilterDatasetResult {
    LabeledDataset dataset;
    std::vector<FilterReportRow> report;
    std::vector<std::string> warnings;
};

// Filters every labeled image against the original, unfiltered feature sets
// of its KP/KN images. Unlabeled images pass through untouched.
FilterDatasetResult filter_dataset(const LabeledDataset& dataset, const FilterParams& params);

} // namespace bovw

#endif
