#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "core.hpp"
#include "rng.hpp"

using namespace bovw;

namespace {

FeatureVector random_vector(RngEngine& rng, std::size_t h, double scale = 1.0) {
    FeatureVector v(h);
    for (auto& x : v)
        x = scale * (uniform01(rng) - 0.5);
    return v;
}

} // namespace

TEST_CASE("euclidean distance basics") {
    CHECK(euclidean_distance(FeatureVector{0, 0}, FeatureVector{0, 0}) == 0.0);
    CHECK(euclidean_distance(FeatureVector{0, 0}, FeatureVector{3, 4}) == doctest::Approx(5.0));
    CHECK_THROWS_WITH_AS(euclidean_distance(FeatureVector{0}, FeatureVector{0, 0}),
                         doctest::Contains("1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(euclidean_distance(FeatureVector{0}, FeatureVector{0, 0}),
                         doctest::Contains("2"), std::invalid_argument);
}

TEST_CASE("euclidean distance matches a scalar-loop oracle on a 128-d pair") {
    auto rng = make_engine(Seed{7});
    const auto a = random_vector(rng, 128, 2.0);
    const auto b = random_vector(rng, 128, 2.0);
    // independent accumulation
    double acc = 0.0;
    for (std::size_t i = 0; i < 128; ++i)
        acc += (a[i] - b[i]) * (a[i] - b[i]);
    CHECK(euclidean_distance(a, b) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
}

TEST_CASE("distance metric axioms on random samples") {
    auto rng = make_engine(Seed{11});
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t h = 1 + uniform_index(rng, 16);
        const auto a = random_vector(rng, h);
        const auto b = random_vector(rng, h);
        const auto c = random_vector(rng, h);
        const double ab = euclidean_distance(a, b);
        const double ba = euclidean_distance(b, a);
        const double ac = euclidean_distance(a, c);
        const double cb = euclidean_distance(c, b);
        CHECK(ab >= 0.0);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
        CHECK(euclidean_distance(a, a) == 0.0);
        CHECK(ab <= (ac + cb) * (1.0 + 1e-9));
    }
}

TEST_CASE("nearest tie-breaks to the lowest index") {
    const std::vector<FeatureVector> pool{{5}, {1}, {-1}};
    const auto [idx, dist] = nearest(FeatureVector{0}, pool);
    CHECK(idx == 1);
    CHECK(dist == doctest::Approx(1.0));
}

TEST_CASE("nearest finds an exact member") {
    std::vector<FeatureVector> pool{{1, 0}, {2, 0}, {3, 0}, {4, 7}};
    const auto [idx, dist] = nearest(FeatureVector{4, 7}, pool);
    CHECK(idx == 3);
    CHECK(dist == 0.0);
}

TEST_CASE("nearest rejects an empty pool") {
    CHECK_THROWS_AS(nearest(FeatureVector{0}, {}), std::invalid_argument);
}

TEST_CASE("nearest matches an exhaustive scan on random instances") {
    auto rng = make_engine(Seed{13});
    std::vector<FeatureVector> pool;
    for (int i = 0; i < 50; ++i)
        pool.push_back(random_vector(rng, 8));
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_vector(rng, 8);
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double s = 0;
            for (std::size_t d = 0; d < 8; ++d)
                s += (f[d] - pool[i][d]) * (f[d] - pool[i][d]);
            s = std::sqrt(s);
            if (s < best_d) {
                best_d = s;
                best = i;
            }
        }
        const auto [idx, dist] = nearest(f, pool);
        CHECK(idx == best);
        CHECK(dist == doctest::Approx(best_d).epsilon(1e-12));
    }
}

TEST_CASE("nearest is permutation-equivariant up to tie-breaking") {
    auto rng = make_engine(Seed{17});
    std::vector<FeatureVector> pool;
    for (int i = 0; i < 30; ++i)
        pool.push_back(random_vector(rng, 4));
    const auto f = random_vector(rng, 4);
    const auto base = nearest(f, pool);

    std::vector<std::size_t> perm(pool.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        for (std::size_t i = 0; i + 1 < perm.size(); ++i)
            std::swap(perm[i], perm[i + uniform_index(rng, perm.size() - i)]);
        std::vector<FeatureVector> shuffled(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i)
            shuffled[i] = pool[perm[i]];
        const auto got = nearest(f, shuffled);
        CHECK(perm[got.first] == base.first);
        CHECK(got.second == doctest::Approx(base.second).epsilon(1e-12));
    }
}

TEST_CASE("seed derivation is stable and tag-sensitive") {
    const Seed root{42};
    CHECK(root.derive("a").value == root.derive("a").value);
    CHECK(root.derive("a").value != root.derive("b").value);
    CHECK(root.derive("a", 0).value != root.derive("a", 1).value);
    CHECK(Seed{1}.derive("a").value != Seed{2}.derive("a").value);
}

TEST_CASE("sampling helpers are deterministic and in range") {
    auto rng1 = make_engine(Seed{5});
    auto rng2 = make_engine(Seed{5});
    for (int i = 0; i < 100; ++i) {
        CHECK(uniform_index(rng1, 7) == uniform_index(rng2, 7));
    }
    auto rng = make_engine(Seed{6});
    for (int i = 0; i < 1000; ++i) {
        CHECK(uniform_index(rng, 13) < 13);
        const double u = uniform01(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    const auto s = sample_without_replacement(rng, 10, 10);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(sorted[i] == i);
}

TEST_CASE("dataset validation catches broken invariants") {
    LabeledDataset ds;
    ds.images.push_back({"a", 2, {{1.0, 2.0}}});
    ds.images.push_back({"b", 2, {{0.0, 1.0}}});
    ds.label_vocab.labels = {"cat", "dog"};
    ds.labeled_ids = {"a"};
    ds.label_matrix = {{1, 0}};
    CHECK_NOTHROW(ds.validate());

    SUBCASE("zero-label row") {
        ds.label_matrix[0] = {0, 0};
        CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
    }
    SUBCASE("unknown labeled id") {
        ds.labeled_ids[0] = "zz";
        CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
    }
    SUBCASE("row width mismatch") {
        ds.label_matrix[0] = {1};
        CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
    }
    SUBCASE("duplicate image id") {
        ds.images.push_back({"a", 2, {}});
        CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
    }
    SUBCASE("non-finite feature") {
        ds.images[0].features[0][0] = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
    }
}
