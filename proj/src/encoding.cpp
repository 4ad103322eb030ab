#include "encoding.hpp"

#include <stdexcept>

namespace bovw {

BoFVector encode_image(const ImageFeatures& img, const VisualVocabulary& vocab) {
    if (vocab.words.empty())
        throw std::invalid_argument("encode_image: empty vocabulary");
    BoFVector out;
    out.image_id = img.image_id;
    out.weights.assign(vocab.size(), 0.0);
    if (img.features.empty())
        return out;
    for (const auto& f : img.features)
        out.weights[nearest(f, vocab.words).first] += 1.0;
    const double l = static_cast<double>(img.features.size());
    for (double& w : out.weights)
        w /= l;
    return out;
}

std::vector<BoFVector> encode_dataset(const LabeledDataset& dataset, const VisualVocabulary& vocab) {
    std::vector<BoFVector> out;
    out.reserve(dataset.image_count());
    for (const auto& img : dataset.images)
        out.push_back(encode_image(img, vocab));
    return out;
}

} // namespace bovw
