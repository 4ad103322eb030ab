#ifndef BOVW_CLUSTERING_HPP
#define BOVW_CLUSTERING_HPP

#include <cstddef>
#include <vector>

#include "core.hpp"
#include "rng.hpp"

namespace bovw {

struct KMeansParams {
    // The paper's no_iter bound.
    std::size_t max_iterations = 100;
    // Stop when the summed centroid movement drops to this value or below.
    // Negative means auto: 1e-4 * dimension.
    double convergence_tol = -1.0;
    Seed seed;

    void validate() const;
};

struct KMeansResult {
    std::vector<FeatureVector> centroids;
    std::vector<std::size_t> assignments;
    double objective = 0.0;
    std::size_t iterations_run = 0;
};

// m features drawn uniformly without replacement from the pool,
// deterministic per seed. 1 <= m <= |pool|.
std::vector<FeatureVector> choose_features_at_random(std::size_t m,
                                                     const std::vector<FeatureVector>& pool,
                                                     Seed seed);

// Lloyd iterations from the given initial centroids: assign each point to
// the nearest centroid (lowest index on ties), recompute means, until the
// total centroid movement is within tolerance or max_iterations is reached.
// An empty cluster is re-seeded to the point currently farthest from its
// assigned centroid. The objective is checked to be non-increasing on every
// iteration.
KMeansResult ameliorate_using_kmeans(const std::vector<FeatureVector>& initial,
                                     const std::vector<FeatureVector>& pool,
                                     const KMeansParams& params);

} // namespace bovw

#endif
