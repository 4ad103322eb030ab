#include "clustering.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace bovw {

void KMeansParams::validate() const {
    if (max_iterations < 1)
        throw std::invalid_argument("kmeans: max_iterations must be >= 1");
}

std::vector<FeatureVector> choose_features_at_random(std::size_t m,
                                                     const std::vector<FeatureVector>& pool,
                                                     Seed seed) {
    if (m < 1)
        throw std::invalid_argument("choose_features_at_random: m must be >= 1");
    if (m > pool.size())
        throw std::invalid_argument("choose_features_at_random: m=" + std::to_string(m) +
                                    " exceeds pool size " + std::to_string(pool.size()));
    auto rng = make_engine(seed);
    const auto idx = sample_without_replacement(rng, pool.size(), m);
    std::vector<FeatureVector> out;
    out.reserve(m);
    for (std::size_t i : idx)
        out.push_back(pool[i]);
    return out;
}

KMeansResult ameliorate_using_kmeans(const std::vector<FeatureVector>& initial,
                                     const std::vector<FeatureVector>& pool,
                                     const KMeansParams& params) {
    params.validate();
    if (initial.empty())
        throw std::invalid_argument("kmeans: no initial centroids");
    if (pool.empty())
        throw std::invalid_argument("kmeans: empty pool");
    const std::size_t h = pool[0].size();
    for (const auto& c : initial)
        if (c.size() != h)
            throw std::invalid_argument("kmeans: centroid/pool dimension mismatch");

    const std::size_t n = pool.size();
    const std::size_t k = initial.size();
    const double tol = params.convergence_tol < 0.0 ? 1e-4 * static_cast<double>(h)
                                                    : params.convergence_tol;

    std::vector<FeatureVector> centroids = initial;
    std::vector<std::size_t> assign(n, 0);
    std::vector<double> dist(n, 0.0);
    std::vector<std::size_t> counts(k, 0);
    double prev_objective = std::numeric_limits<double>::infinity();

    KMeansResult result;
    for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
        // Assignment against the current centroids, lowest index on ties.
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = euclidean_distance(pool[i], centroids[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = euclidean_distance(pool[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assign[i] = best;
            dist[i] = best_d;
        }
        counts.assign(k, 0);
        for (std::size_t i = 0; i < n; ++i)
            ++counts[assign[i]];

        // Re-seed each empty cluster to the point farthest from its assigned
        // centroid, never draining a cluster below one member.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0)
                continue;
            std::size_t donor = n;
            double donor_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assign[i]] < 2)
                    continue;
                if (dist[i] > donor_d) {
                    donor_d = dist[i];
                    donor = i;
                }
            }
            if (donor == n)
                continue; // fewer distinct points than clusters
            --counts[assign[donor]];
            assign[donor] = c;
            counts[c] = 1;
            dist[donor] = 0.0;
        }

        // Mean update, accumulated in point-index order.
        std::vector<FeatureVector> updated(k, FeatureVector(h, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            auto& acc = updated[assign[i]];
            const auto& p = pool[i];
            for (std::size_t d = 0; d < h; ++d)
                acc[d] += p[d];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                updated[c] = centroids[c];
                continue;
            }
            for (std::size_t d = 0; d < h; ++d)
                updated[c][d] /= static_cast<double>(counts[c]);
        }

        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c)
            movement += euclidean_distance(updated[c], centroids[c]);
        centroids.swap(updated);

        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = euclidean_distance(pool[i], centroids[assign[i]]);
            objective += d * d;
        }
        if (objective > prev_objective + 1e-9 * (1.0 + prev_objective))
            throw std::logic_error("kmeans: objective increased from " +
                                   std::to_string(prev_objective) + " to " + std::to_string(objective));
        prev_objective = objective;
        result.iterations_run = iter;
        if (movement <= tol)
            break;
    }

    result.centroids = std::move(centroids);
    result.assignments = std::move(assign);
    result.objective = prev_objective;
    return result;
}

} // namespace bovw
