#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "clustering.hpp"

using namespace bovw;

namespace {

// Independent step-by-step Lloyd re-implementation used as the oracle. Kept
// deliberately separate from the library code path.
struct OracleResult {
    std::vector<FeatureVector> centroids;
    std::vector<std::size_t> assignments;
    double objective = 0.0;
};

OracleResult lloyd_oracle(std::vector<FeatureVector> centroids,
                          const std::vector<FeatureVector>& points, std::size_t max_iter,
                          double tol) {
    const std::size_t n = points.size();
    const std::size_t k = centroids.size();
    const std::size_t h = points[0].size();
    OracleResult res;
    res.assignments.assign(n, 0);
    std::vector<double> dist(n, 0.0);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = 0;
            for (std::size_t d = 0; d < h; ++d)
                best_d += (points[i][d] - centroids[0][d]) * (points[i][d] - centroids[0][d]);
            best_d = std::sqrt(best_d);
            for (std::size_t c = 1; c < k; ++c) {
                double s = 0;
                for (std::size_t d = 0; d < h; ++d)
                    s += (points[i][d] - centroids[c][d]) * (points[i][d] - centroids[c][d]);
                s = std::sqrt(s);
                if (s < best_d) {
                    best_d = s;
                    best = c;
                }
            }
            res.assignments[i] = best;
            dist[i] = best_d;
        }
        std::vector<std::size_t> counts(k, 0);
        for (auto a : res.assignments)
            ++counts[a];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0)
                continue;
            std::size_t donor = n;
            double donor_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[res.assignments[i]] < 2)
                    continue;
                if (dist[i] > donor_d) {
                    donor_d = dist[i];
                    donor = i;
                }
            }
            if (donor == n)
                continue;
            --counts[res.assignments[donor]];
            res.assignments[donor] = c;
            counts[c] = 1;
            dist[donor] = 0.0;
        }
        std::vector<FeatureVector> updated(k, FeatureVector(h, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < h; ++d)
                updated[res.assignments[i]][d] += points[i][d];
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                updated[c] = centroids[c];
                continue;
            }
            for (std::size_t d = 0; d < h; ++d)
                updated[c][d] /= static_cast<double>(counts[c]);
        }
        double movement = 0;
        for (std::size_t c = 0; c < k; ++c) {
            double s = 0;
            for (std::size_t d = 0; d < h; ++d)
                s += (updated[c][d] - centroids[c][d]) * (updated[c][d] - centroids[c][d]);
            movement += std::sqrt(s);
        }
        centroids = updated;
        if (movement <= tol)
            break;
    }
    res.centroids = centroids;
    res.objective = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t d = 0; d < h; ++d)
            s += (points[i][d] - res.centroids[res.assignments[i]][d]) *
                 (points[i][d] - res.centroids[res.assignments[i]][d]);
        res.objective += s;
    }
    return res;
}

} // namespace

TEST_CASE("choose_features_at_random draws the whole pool for m == n") {
    std::vector<FeatureVector> pool{{1}, {2}, {3}, {4}};
    const auto picked = choose_features_at_random(4, pool, Seed{9});
    auto sorted = picked;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == pool);
}

TEST_CASE("choose_features_at_random is deterministic per seed") {
    std::vector<FeatureVector> pool{{1}, {2}, {3}, {4}};
    const auto a = choose_features_at_random(1, pool, Seed{123});
    const auto b = choose_features_at_random(1, pool, Seed{123});
    CHECK(a == b);
    CHECK_THROWS_AS(choose_features_at_random(5, pool, Seed{1}), std::invalid_argument);
    CHECK_THROWS_AS(choose_features_at_random(0, pool, Seed{1}), std::invalid_argument);
}

TEST_CASE("choose_features_at_random is uniform across seeds") {
    std::vector<FeatureVector> pool{{0}, {1}, {2}, {3}, {4}};
    std::vector<std::size_t> counts(5, 0);
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const auto picked = choose_features_at_random(1, pool, Seed{s});
        ++counts[static_cast<std::size_t>(picked[0][0])];
    }
    for (auto c : counts) {
        CHECK(c >= 1800);
        CHECK(c <= 2200);
    }
}

TEST_CASE("single cluster converges to the mean") {
    const std::vector<FeatureVector> pool{{0, 0}, {2, 0}};
    KMeansParams params;
    params.seed = Seed{1};
    const auto res = ameliorate_using_kmeans({{0.0, 0.0}}, pool, params);
    CHECK(res.centroids[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.centroids[0][1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.objective == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hand-run Lloyd on the 1-d four point instance") {
    const std::vector<FeatureVector> pool{{0}, {1}, {9}, {10}};
    KMeansParams params;
    const auto res = ameliorate_using_kmeans({{0.0}, {9.0}}, pool, params);
    CHECK(res.centroids[0][0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.centroids[1][0] == doctest::Approx(9.5).epsilon(1e-12));
    CHECK(res.iterations_run <= 2);
    CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("init equal to the pool is a fixed point") {
    const std::vector<FeatureVector> pool{{0, 1}, {5, 5}, {-3, 2}};
    KMeansParams params;
    const auto res = ameliorate_using_kmeans(pool, pool, params);
    CHECK(res.centroids == pool);
    CHECK(res.objective == 0.0);
}

TEST_CASE("empty clusters are re-seeded to far points") {
    const std::vector<FeatureVector> pool{{0}, {0.5}, {10}, {10.5}};
    KMeansParams params;
    // duplicate inits leave the second cluster empty on the first pass
    const auto res = ameliorate_using_kmeans({{0.0}, {0.0}}, pool, params);
    std::vector<std::size_t> counts(2, 0);
    for (auto a : res.assignments)
        ++counts[a];
    CHECK(counts[0] > 0);
    CHECK(counts[1] > 0);
    CHECK(res.centroids[0] != res.centroids[1]);
}

TEST_CASE("small-instance Lloyd matches the step oracle exactly") {
    auto rng = make_engine(Seed{2024});
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 4 + uniform_index(rng, 9);  // 4..12
        const std::size_t k = 1 + uniform_index(rng, 3);  // 1..3
        const std::size_t h = 1 + uniform_index(rng, 3);  // 1..3
        std::vector<FeatureVector> points;
        for (std::size_t i = 0; i < n; ++i) {
            FeatureVector p(h);
            for (auto& v : p)
                v = static_cast<double>(uniform_index(rng, 16));
            points.push_back(p);
        }
        const auto init_idx = sample_without_replacement(rng, n, k);
        std::vector<FeatureVector> init;
        for (auto i : init_idx)
            init.push_back(points[i]);

        KMeansParams params;
        params.max_iterations = 50;
        params.convergence_tol = 0.0;
        const auto got = ameliorate_using_kmeans(init, points, params);
        const auto expect = lloyd_oracle(init, points, 50, 0.0);

        REQUIRE(got.centroids.size() == expect.centroids.size());
        CHECK(got.centroids == expect.centroids);
        CHECK(got.assignments == expect.assignments);
        CHECK(got.objective == doctest::Approx(expect.objective).epsilon(1e-12));
    }
}

TEST_CASE("pool order only permutes the clustering, not the centroids") {
    auto rng = make_engine(Seed{31});
    std::vector<FeatureVector> points;
    for (int i = 0; i < 40; ++i) {
        FeatureVector p(3);
        for (auto& v : p)
            v = uniform01(rng) * 10.0;
        points.push_back(p);
    }
    const auto init_idx = sample_without_replacement(rng, points.size(), 4);
    std::vector<FeatureVector> init;
    for (auto i : init_idx)
        init.push_back(points[i]);

    KMeansParams params;
    params.convergence_tol = 0.0;
    params.max_iterations = 200;
    const auto base = ameliorate_using_kmeans(init, points, params);

    auto shuffled = points;
    for (std::size_t i = 0; i + 1 < shuffled.size(); ++i)
        std::swap(shuffled[i], shuffled[i + uniform_index(rng, shuffled.size() - i)]);
    const auto redo = ameliorate_using_kmeans(init, shuffled, params);

    REQUIRE(base.centroids.size() == redo.centroids.size());
    for (std::size_t c = 0; c < base.centroids.size(); ++c)
        for (std::size_t d = 0; d < 3; ++d)
            CHECK(base.centroids[c][d] == doctest::Approx(redo.centroids[c][d]).epsilon(1e-9));
}

TEST_CASE("centroids with members equal the member mean") {
    auto rng = make_engine(Seed{77});
    std::vector<FeatureVector> points;
    for (int i = 0; i < 30; ++i) {
        FeatureVector p(2);
        for (auto& v : p)
            v = uniform01(rng);
        points.push_back(p);
    }
    KMeansParams params;
    const auto init = choose_features_at_random(3, points, Seed{5});
    const auto res = ameliorate_using_kmeans(init, points, params);
    for (std::size_t c = 0; c < res.centroids.size(); ++c) {
        FeatureVector mean(2, 0.0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (res.assignments[i] != c)
                continue;
            ++count;
            for (std::size_t d = 0; d < 2; ++d)
                mean[d] += points[i][d];
        }
        REQUIRE(count > 0);
        for (std::size_t d = 0; d < 2; ++d)
            CHECK(res.centroids[c][d] == doctest::Approx(mean[d] / count).epsilon(1e-9));
    }
}

TEST_CASE("kmeans rejects bad inputs") {
    KMeansParams params;
    CHECK_THROWS_AS(ameliorate_using_kmeans({}, {{1.0}}, params), std::invalid_argument);
    CHECK_THROWS_AS(ameliorate_using_kmeans({{1.0}}, {}, params), std::invalid_argument);
    KMeansParams zero;
    zero.max_iterations = 0;
    CHECK_THROWS_AS(ameliorate_using_kmeans({{1.0}}, {{1.0}}, zero), std::invalid_argument);
}
