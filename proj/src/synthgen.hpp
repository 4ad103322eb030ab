#ifndef BOVW_SYNTHGEN_HPP
#define BOVW_SYNTHGEN_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace bovw {

struct SynthConfig {
    std::size_t labels = 5;
    std::size_t images_per_label = 40;
    std::size_t features_per_image = 200;
    double background_fraction = 0.6;
    std::size_t words_per_label = 4; // true object centers per label
    std::size_t background_centers = 20;
    std::size_t dim = 16;
    double center_spread = 10.0;  // sigma of the center distribution
    double within_spread = 0.5;   // sigma around a center
    double labeled_fraction = 1.0;
    // When > 0, this fraction of images also carries the cyclically next
    // label and draws object features from both. For filtering tests.
    double second_label_fraction = 0.0;
    Seed seed;

    void validate() const;
};

enum class FeatureFlag : std::uint8_t { object = 0, background = 1 };

struct GroundTruthEntry {
    std::string image_id;
    std::size_t feature_index = 0;
    FeatureFlag flag = FeatureFlag::object;
    // Label index owning the feature; -1 for background.
    int owner_label = -1;
};

struct SynthResult {
    LabeledDataset dataset;
    std::vector<GroundTruthEntry> ground_truth;
};

SynthResult generate(const SynthConfig& cfg);

void write_ground_truth_csv(const std::vector<GroundTruthEntry>& entries,
                            const std::filesystem::path& path);

} // namespace bovw

#endif
