#include "synthgen.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace bovw {

void SynthConfig::validate() const {
    if (labels < 1 || images_per_label < 1 || features_per_image < 1 || words_per_label < 1 ||
        background_centers < 1 || dim < 1)
        throw std::invalid_argument("synth: all counts must be >= 1");
    if (background_fraction < 0.0 || background_fraction >= 1.0)
        throw std::invalid_argument("synth: background_fraction must be in [0,1)");
    if (!(within_spread < center_spread))
        throw std::invalid_argument("synth: within_spread must be smaller than center_spread");
    if (labeled_fraction <= 0.0 || labeled_fraction > 1.0)
        throw std::invalid_argument("synth: labeled_fraction must be in (0,1]");
    if (second_label_fraction < 0.0 || second_label_fraction >= 1.0)
        throw std::invalid_argument("synth: second_label_fraction must be in [0,1)");
    if (second_label_fraction > 0.0 && labels < 2)
        throw std::invalid_argument("synth: second labels need at least 2 labels");
}

namespace {

FeatureVector gaussian_point(RngEngine& rng, std::size_t dim, double sigma) {
    FeatureVector p(dim);
    for (auto& v : p)
        v = sigma * normal01(rng);
    return p;
}

FeatureVector around(RngEngine& rng, const FeatureVector& center, double sigma) {
    FeatureVector p = center;
    for (auto& v : p)
        v += sigma * normal01(rng);
    return p;
}

std::string synth_image_id(std::size_t label, std::size_t index) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "synth_l%03zu_i%05zu", label, index);
    return buf;
}

} // namespace

SynthResult generate(const SynthConfig& cfg) {
    cfg.validate();
    SynthResult out;

    auto center_rng = make_engine(cfg.seed.derive("synth/centers"));
    std::vector<std::vector<FeatureVector>> object_centers(cfg.labels);
    for (std::size_t t = 0; t < cfg.labels; ++t)
        for (std::size_t g = 0; g < cfg.words_per_label; ++g)
            object_centers[t].push_back(gaussian_point(center_rng, cfg.dim, cfg.center_spread));
    std::vector<FeatureVector> background(cfg.background_centers);
    for (auto& c : background)
        c = gaussian_point(center_rng, cfg.dim, cfg.center_spread);

    out.dataset.label_vocab.labels.reserve(cfg.labels);
    for (std::size_t t = 0; t < cfg.labels; ++t)
        out.dataset.label_vocab.labels.push_back("label" + std::to_string(t));

    const std::size_t n_background =
        static_cast<std::size_t>(std::llround(cfg.background_fraction *
                                              static_cast<double>(cfg.features_per_image)));
    const std::size_t n_object = cfg.features_per_image - n_background;

    std::size_t global_index = 0;
    for (std::size_t t = 0; t < cfg.labels; ++t) {
        for (std::size_t j = 0; j < cfg.images_per_label; ++j, ++global_index) {
            auto rng = make_engine(cfg.seed.derive("synth/image", global_index));
            ImageFeatures img;
            img.image_id = synth_image_id(t, j);
            img.dim = cfg.dim;
            img.features.reserve(cfg.features_per_image);

            const bool second = cfg.second_label_fraction > 0.0 &&
                                uniform01(rng) < cfg.second_label_fraction;
            const std::size_t t2 = (t + 1) % cfg.labels;

            for (std::size_t f = 0; f < n_object; ++f) {
                const std::size_t owner = second && f % 2 == 1 ? t2 : t;
                const auto& centers = object_centers[owner];
                const auto& c = centers[uniform_index(rng, centers.size())];
                img.features.push_back(around(rng, c, cfg.within_spread));
                out.ground_truth.push_back({img.image_id, f, FeatureFlag::object,
                                            static_cast<int>(owner)});
            }
            for (std::size_t f = 0; f < n_background; ++f) {
                const auto& c = background[uniform_index(rng, background.size())];
                img.features.push_back(around(rng, c, cfg.within_spread));
                out.ground_truth.push_back({img.image_id, n_object + f, FeatureFlag::background, -1});
            }

            const std::size_t row = out.dataset.labeled_ids.size();
            out.dataset.images.push_back(std::move(img));
            out.dataset.labeled_ids.push_back(out.dataset.images.back().image_id);
            out.dataset.label_matrix.emplace_back(cfg.labels, 0);
            out.dataset.label_matrix[row][t] = 1;
            if (second)
                out.dataset.label_matrix[row][t2] = 1;
        }
    }

    // Optionally hide the labels of a trailing fraction of each label block.
    if (cfg.labeled_fraction < 1.0) {
        const std::size_t keep_per_label = static_cast<std::size_t>(
            std::llround(cfg.labeled_fraction * static_cast<double>(cfg.images_per_label)));
        std::vector<std::string> kept_ids;
        std::vector<std::vector<std::uint8_t>> kept_rows;
        for (std::size_t t = 0; t < cfg.labels; ++t) {
            for (std::size_t j = 0; j < cfg.images_per_label; ++j) {
                const std::size_t row = t * cfg.images_per_label + j;
                if (j < keep_per_label) {
                    kept_ids.push_back(out.dataset.labeled_ids[row]);
                    kept_rows.push_back(out.dataset.label_matrix[row]);
                }
            }
        }
        if (kept_ids.empty())
            throw std::invalid_argument("synth: labeled_fraction leaves no labeled images");
        out.dataset.labeled_ids = std::move(kept_ids);
        out.dataset.label_matrix = std::move(kept_rows);
    }

    out.dataset.validate();
    return out;
}

void write_ground_truth_csv(const std::vector<GroundTruthEntry>& entries,
                            const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("ground truth: cannot open '" + path.string() + "' for writing");
    out << "image_id,feature_index,flag,owner_label\n";
    for (const auto& e : entries)
        out << e.image_id << ',' << e.feature_index << ','
            << (e.flag == FeatureFlag::object ? "object" : "background") << ',' << e.owner_label
            << '\n';
}

} // namespace bovw
