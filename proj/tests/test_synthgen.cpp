#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "io.hpp"
#include "synthgen.hpp"

using namespace bovw;

namespace {

SynthConfig small_config(std::uint64_t seed) {
    SynthConfig cfg;
    cfg.labels = 3;
    cfg.images_per_label = 4;
    cfg.features_per_image = 20;
    cfg.background_fraction = 0.4;
    cfg.words_per_label = 2;
    cfg.background_centers = 5;
    cfg.dim = 6;
    cfg.center_spread = 8.0;
    cfg.within_spread = 0.3;
    cfg.seed = Seed{seed};
    return cfg;
}

} // namespace

TEST_CASE("zero background fraction yields no background flags") {
    auto cfg = small_config(1);
    cfg.background_fraction = 0.0;
    const auto result = generate(cfg);
    for (const auto& e : result.ground_truth)
        CHECK(e.flag == FeatureFlag::object);
}

TEST_CASE("ground truth covers every feature exactly once") {
    const auto result = generate(small_config(2));
    std::size_t total = 0;
    for (const auto& img : result.dataset.images)
        total += img.count();
    CHECK(result.ground_truth.size() == total);
    // 40% of 20 = 8 background features per image
    std::size_t bg = 0;
    for (const auto& e : result.ground_truth)
        if (e.flag == FeatureFlag::background) {
            ++bg;
            CHECK(e.owner_label == -1);
        }
    CHECK(bg == result.dataset.image_count() * 8);
}

TEST_CASE("generation is deterministic per seed") {
    const auto a = generate(small_config(3));
    const auto b = generate(small_config(3));
    REQUIRE(a.dataset.image_count() == b.dataset.image_count());
    for (std::size_t i = 0; i < a.dataset.image_count(); ++i) {
        CHECK(a.dataset.images[i].image_id == b.dataset.images[i].image_id);
        CHECK(a.dataset.images[i].features == b.dataset.images[i].features);
    }
    const auto c = generate(small_config(4));
    CHECK(a.dataset.images[0].features != c.dataset.images[0].features);
}

TEST_CASE("empirical center of a large draw stays near the true center") {
    SynthConfig cfg = small_config(5);
    cfg.labels = 1;
    cfg.images_per_label = 1;
    cfg.features_per_image = 10000;
    cfg.background_fraction = 0.0;
    cfg.words_per_label = 1;
    cfg.dim = 4;
    cfg.within_spread = 0.5;
    const auto result = generate(cfg);

    // re-derive the single true center the generator drew
    auto rng = make_engine(cfg.seed.derive("synth/centers"));
    FeatureVector center(cfg.dim);
    for (auto& v : center)
        v = cfg.center_spread * normal01(rng);

    FeatureVector mean(cfg.dim, 0.0);
    const auto& feats = result.dataset.images[0].features;
    for (const auto& f : feats)
        for (std::size_t d = 0; d < cfg.dim; ++d)
            mean[d] += f[d] / static_cast<double>(feats.size());
    const double bound = 4.0 * cfg.within_spread / std::sqrt(10000.0);
    for (std::size_t d = 0; d < cfg.dim; ++d)
        CHECK(std::abs(mean[d] - center[d]) < bound * 4.0);
}

TEST_CASE("object features classify to their own centers when spreads are tight") {
    SynthConfig cfg = small_config(6);
    cfg.images_per_label = 10;
    cfg.features_per_image = 50;
    cfg.background_fraction = 0.0;
    cfg.center_spread = 10.0;
    cfg.within_spread = 0.5; // sigma_c / 20
    const auto result = generate(cfg);

    // all true object centers, in label-major order
    auto rng = make_engine(cfg.seed.derive("synth/centers"));
    std::vector<FeatureVector> centers;
    std::vector<int> owner;
    for (std::size_t t = 0; t < cfg.labels; ++t)
        for (std::size_t g = 0; g < cfg.words_per_label; ++g) {
            FeatureVector c(cfg.dim);
            for (auto& v : c)
                v = cfg.center_spread * normal01(rng);
            centers.push_back(c);
            owner.push_back(static_cast<int>(t));
        }

    std::size_t correct = 0, total = 0;
    std::size_t gi = 0;
    for (const auto& img : result.dataset.images) {
        for (std::size_t f = 0; f < img.count(); ++f, ++gi) {
            const auto& truth = result.ground_truth[gi];
            const auto [idx, dist] = nearest(img.features[f], centers);
            ++total;
            if (owner[idx] == truth.owner_label)
                ++correct;
        }
    }
    CHECK(static_cast<double>(correct) / static_cast<double>(total) >= 0.99);
}

TEST_CASE("labeled_fraction hides a trailing slice of each label block") {
    auto cfg = small_config(7);
    cfg.labeled_fraction = 0.5;
    const auto result = generate(cfg);
    CHECK(result.dataset.image_count() == 12);
    CHECK(result.dataset.labeled_count() == 6);
    result.dataset.validate();
}

TEST_CASE("second labels mark two rows of Y") {
    auto cfg = small_config(8);
    cfg.second_label_fraction = 0.5;
    const auto result = generate(cfg);
    std::size_t multi = 0;
    for (const auto& row : result.dataset.label_matrix) {
        std::size_t sum = 0;
        for (auto v : row)
            sum += v;
        if (sum == 2)
            ++multi;
    }
    CHECK(multi > 0);
}

TEST_CASE("config validation rejects inconsistent settings") {
    auto cfg = small_config(9);
    cfg.background_fraction = 1.0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg = small_config(9);
    cfg.within_spread = cfg.center_spread;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg = small_config(9);
    cfg.words_per_label = 0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

TEST_CASE("ground truth CSV writer emits one row per feature") {
    const auto result = generate(small_config(10));
    const auto dir = std::filesystem::temp_directory_path() / "bovw_test_synth";
    std::filesystem::create_directories(dir);
    const auto path = dir / "gt.csv";
    write_ground_truth_csv(result.ground_truth, path);

    std::ifstream in(path);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == result.ground_truth.size() + 1);
}
