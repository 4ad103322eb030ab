#ifndef BOVW_ENCODING_HPP
#define BOVW_ENCODING_HPP

#include <string>
#include <vector>

#include "core.hpp"
#include "vocabulary.hpp"

namespace bovw {

// tf histogram of one image over the vocabulary. Sums to 1 for any image
// with at least one feature; a feature-less image encodes to all zeros.
struct BoFVector {
    std::string image_id;
    std::vector<double> weights;
};

BoFVector encode_image(const ImageFeatures& img, const VisualVocabulary& vocab);

// Per-image encoding in dataset order.
std::vector<BoFVector> encode_dataset(const LabeledDataset& dataset, const VisualVocabulary& vocab);

} // namespace bovw

#endif
