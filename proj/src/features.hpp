#ifndef BOVW_FEATURES_HPP
#define BOVW_FEATURES_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "core.hpp"

namespace bovw {

// Grayscale raster, intensities in [0,1], row-major.
struct RasterImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

struct SamplingConfig {
    std::size_t grid_step = 16;
    std::size_t patch_size = 16;
    std::size_t min_image_side = 16;

    void validate() const;
};

struct PatchCenter {
    std::size_t x = 0;
    std::size_t y = 0;
};

// Regular grid of patch centers such that every patch lies fully inside the
// image. Pure geometry: the result does not depend on pixel values. Returns
// an empty list when the image is below min_image_side or too small for one
// patch.
std::vector<PatchCenter> dense_sample(const RasterImage& img, const SamplingConfig& cfg);

inline constexpr std::size_t kDescriptorDim = 128;

// 4x4 spatial cells x 8 orientation bins of gradient magnitude over the
// patch. L2-normalized, components clamped at 0.2, renormalized. A patch
// with no gradient at all yields the zero vector.
FeatureVector describe_patch(const RasterImage& img, PatchCenter center, std::size_t patch_size);

struct ExtractionResult {
    ImageFeatures image;
    std::vector<std::string> warnings;
};

// Phases 1-2 for one image: dense sampling followed by patch description.
ExtractionResult extract_features(const RasterImage& img, const std::string& image_id,
                                  const SamplingConfig& cfg);

// Binary PGM (P5) / PPM (P6) decoder. Color inputs are converted to
// luminance (0.299, 0.587, 0.114).
RasterImage read_pnm(const std::filesystem::path& path);

} // namespace bovw

#endif
