#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "encoding.hpp"

using namespace bovw;

namespace {

VisualVocabulary vocab_of(std::vector<FeatureVector> words) {
    VisualVocabulary v;
    v.provenance.assign(words.size(), kGenericProvenance);
    v.words = std::move(words);
    return v;
}

ImageFeatures image_of(std::string id, std::vector<FeatureVector> features) {
    ImageFeatures img;
    img.image_id = std::move(id);
    img.dim = features.empty() ? 0 : features[0].size();
    img.features = std::move(features);
    return img;
}

} // namespace

TEST_CASE("all features on one word produce a unit spike") {
    const auto vocab = vocab_of({{0.0}, {10.0}, {20.0}, {30.0}});
    const auto img = image_of("x", {{29.0}, {30.0}, {31.0}, {28.0}});
    const auto enc = encode_image(img, vocab);
    CHECK(enc.weights == std::vector<double>{0, 0, 0, 1});
}

TEST_CASE("two features split the histogram evenly") {
    const auto vocab = vocab_of({{0.0}, {10.0}, {20.0}, {30.0}});
    const auto img = image_of("x", {{1.0}, {9.0}});
    const auto enc = encode_image(img, vocab);
    CHECK(enc.weights == std::vector<double>{0.5, 0.5, 0, 0});
}

TEST_CASE("histogram equals a brute-force tally on random instances") {
    auto rng = make_engine(Seed{3});
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + uniform_index(rng, 8);
        const std::size_t h = 1 + uniform_index(rng, 4);
        std::vector<FeatureVector> words;
        for (std::size_t w = 0; w < m; ++w) {
            FeatureVector v(h);
            for (auto& x : v)
                x = uniform01(rng) * 4.0;
            words.push_back(v);
        }
        const std::size_t count = 1 + uniform_index(rng, 30);
        std::vector<FeatureVector> features;
        for (std::size_t f = 0; f < count; ++f) {
            FeatureVector v(h);
            for (auto& x : v)
                x = uniform01(rng) * 4.0;
            features.push_back(v);
        }
        const auto vocab = vocab_of(words);
        const auto enc = encode_image(image_of("r", features), vocab);

        std::vector<double> tally(m, 0.0);
        for (const auto& f : features) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t w = 0; w < m; ++w) {
                const double d = euclidean_distance(f, vocab.words[w]);
                if (d < best_d) {
                    best_d = d;
                    best = w;
                }
            }
            tally[best] += 1.0;
        }
        for (auto& t : tally)
            t /= static_cast<double>(count);
        CHECK(enc.weights == tally);

        const double sum = std::accumulate(enc.weights.begin(), enc.weights.end(), 0.0);
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
}

TEST_CASE("feature-less images encode to the zero vector") {
    const auto vocab = vocab_of({{0.0}, {1.0}});
    const auto enc = encode_image(image_of("empty", {}), vocab);
    CHECK(enc.weights == std::vector<double>{0, 0});
}

TEST_CASE("empty vocabulary is a hard error") {
    CHECK_THROWS_AS(encode_image(image_of("x", {{1.0}}), vocab_of({})), std::invalid_argument);
}

TEST_CASE("permuting the vocabulary permutes the histogram exactly") {
    auto rng = make_engine(Seed{4});
    std::vector<FeatureVector> words;
    for (int w = 0; w < 6; ++w)
        words.push_back({uniform01(rng) * 10.0, uniform01(rng) * 10.0});
    std::vector<FeatureVector> features;
    for (int f = 0; f < 40; ++f)
        features.push_back({uniform01(rng) * 10.0, uniform01(rng) * 10.0});
    const auto img = image_of("x", features);
    const auto base = encode_image(img, vocab_of(words));

    const std::vector<std::size_t> perm = {3, 0, 5, 1, 4, 2};
    std::vector<FeatureVector> permuted(words.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        permuted[i] = words[perm[i]];
    const auto shuffled = encode_image(img, vocab_of(permuted));
    for (std::size_t i = 0; i < perm.size(); ++i)
        CHECK(shuffled.weights[i] == base.weights[perm[i]]);
}

TEST_CASE("dataset encoding preserves order and ids") {
    LabeledDataset ds;
    ds.images.push_back(image_of("first", {{0.0}}));
    ds.images.push_back(image_of("second", {}));
    ds.images.push_back(image_of("third", {{9.0}, {1.0}}));
    // no labels needed for encoding
    const auto vocab = vocab_of({{0.0}, {10.0}});
    const auto encs = encode_dataset(ds, vocab);
    REQUIRE(encs.size() == 3);
    CHECK(encs[0].image_id == "first");
    CHECK(encs[1].image_id == "second");
    CHECK(encs[2].image_id == "third");
    CHECK(encs[1].weights == std::vector<double>{0, 0});
    CHECK(encs[2].weights == std::vector<double>{0.5, 0.5});
}
