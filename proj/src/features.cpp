#include "features.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace bovw {

void SamplingConfig::validate() const {
    if (grid_step < 1)
        throw std::invalid_argument("sampling: grid_step must be >= 1");
    if (patch_size < 8 || patch_size % 2 != 0)
        throw std::invalid_argument("sampling: patch_size must be even and >= 8");
}

std::vector<PatchCenter> dense_sample(const RasterImage& img, const SamplingConfig& cfg) {
    cfg.validate();
    std::vector<PatchCenter> centers;
    if (img.width < cfg.min_image_side || img.height < cfg.min_image_side)
        return centers;
    if (img.width < cfg.patch_size || img.height < cfg.patch_size)
        return centers;

    const std::size_t half = cfg.patch_size / 2;
    // Patch at center c covers [c-half, c+half); last admissible center is
    // dim - half.
    for (std::size_t cy = half; cy + half <= img.height; cy += cfg.grid_step)
        for (std::size_t cx = half; cx + half <= img.width; cx += cfg.grid_step)
            centers.push_back({cx, cy});
    return centers;
}

namespace {

double pixel_clamped(const RasterImage& img, long x, long y) {
    if (x < 0) x = 0;
    if (y < 0) y = 0;
    if (x >= static_cast<long>(img.width)) x = static_cast<long>(img.width) - 1;
    if (y >= static_cast<long>(img.height)) y = static_cast<long>(img.height) - 1;
    return img.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
}

} // namespace

FeatureVector describe_patch(const RasterImage& img, PatchCenter center, std::size_t patch_size) {
    const std::size_t half = patch_size / 2;
    if (center.x < half || center.y < half ||
        center.x + half > img.width || center.y + half > img.height)
        throw std::out_of_range("describe_patch: patch not inside image bounds");

    constexpr std::size_t cells = 4;
    constexpr std::size_t bins = 8;
    FeatureVector desc(kDescriptorDim, 0.0);

    const long x0 = static_cast<long>(center.x) - static_cast<long>(half);
    const long y0 = static_cast<long>(center.y) - static_cast<long>(half);
    for (std::size_t v = 0; v < patch_size; ++v) {
        for (std::size_t u = 0; u < patch_size; ++u) {
            const long x = x0 + static_cast<long>(u);
            const long y = y0 + static_cast<long>(v);
            const double gx = 0.5 * (pixel_clamped(img, x + 1, y) - pixel_clamped(img, x - 1, y));
            const double gy = 0.5 * (pixel_clamped(img, x, y + 1) - pixel_clamped(img, x, y - 1));
            const double mag = std::sqrt(gx * gx + gy * gy);
            if (mag == 0.0)
                continue;
            double theta = std::atan2(gy, gx);
            if (theta < 0.0)
                theta += 2.0 * std::numbers::pi;
            // Split the magnitude between the two adjacent orientation bins.
            const double pos = theta * bins / (2.0 * std::numbers::pi);
            std::size_t b0 = static_cast<std::size_t>(pos) % bins;
            const double frac = pos - std::floor(pos);
            const std::size_t b1 = (b0 + 1) % bins;

            const std::size_t cell_x = u * cells / patch_size;
            const std::size_t cell_y = v * cells / patch_size;
            const std::size_t base = (cell_y * cells + cell_x) * bins;
            desc[base + b0] += mag * (1.0 - frac);
            desc[base + b1] += mag * frac;
        }
    }

    double norm = 0.0;
    for (double d : desc)
        norm += d * d;
    if (norm == 0.0)
        return desc;
    norm = std::sqrt(norm);
    for (double& d : desc)
        d /= norm;
    // SIFT-style clamp and renormalize.
    for (double& d : desc)
        if (d > 0.2)
            d = 0.2;
    norm = 0.0;
    for (double d : desc)
        norm += d * d;
    norm = std::sqrt(norm);
    for (double& d : desc)
        d /= norm;
    return desc;
}

ExtractionResult extract_features(const RasterImage& img, const std::string& image_id,
                                  const SamplingConfig& cfg) {
    ExtractionResult result;
    result.image.image_id = image_id;
    result.image.dim = kDescriptorDim;
    const auto centers = dense_sample(img, cfg);
    if (centers.empty()) {
        result.warnings.push_back("image '" + image_id + "' (" + std::to_string(img.width) + "x" +
                                  std::to_string(img.height) + ") too small to sample, 0 features");
        return result;
    }
    result.image.features.reserve(centers.size());
    for (const auto& c : centers)
        result.image.features.push_back(describe_patch(img, c, cfg.patch_size));
    return result;
}

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty())
                break;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    if (tok.empty())
        throw std::runtime_error("pnm: truncated header");
    return tok;
}

std::size_t pnm_number(std::istream& in) {
    const std::string tok = pnm_token(in);
    std::size_t value = 0;
    for (char ch : tok) {
        if (ch < '0' || ch > '9')
            throw std::runtime_error("pnm: bad header number '" + tok + "'");
        value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    return value;
}

} // namespace

RasterImage read_pnm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("pnm: cannot open '" + path.string() + "'");

    const std::string magic = pnm_token(in);
    if (magic != "P5" && magic != "P6")
        throw std::runtime_error("pnm: '" + path.string() + "' is not binary PGM/PPM (magic '" + magic + "')");
    const bool color = magic == "P6";

    const std::size_t width = pnm_number(in);
    const std::size_t height = pnm_number(in);
    const std::size_t maxval = pnm_number(in);
    if (width == 0 || height == 0)
        throw std::runtime_error("pnm: zero dimension in '" + path.string() + "'");
    if (maxval == 0 || maxval > 65535)
        throw std::runtime_error("pnm: unsupported maxval " + std::to_string(maxval));
    const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::size_t samples = width * height * (color ? 3 : 1);

    std::vector<unsigned char> raw(samples * bytes_per_sample);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw std::runtime_error("pnm: truncated pixel data in '" + path.string() + "'");

    auto sample = [&](std::size_t idx) {
        if (bytes_per_sample == 1)
            return static_cast<double>(raw[idx]) / static_cast<double>(maxval);
        const std::size_t hi = raw[2 * idx];
        const std::size_t lo = raw[2 * idx + 1];
        return static_cast<double>(hi * 256 + lo) / static_cast<double>(maxval);
    };

    RasterImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(width * height);
    for (std::size_t i = 0; i < width * height; ++i) {
        if (color)
            img.pixels[i] = 0.299 * sample(3 * i) + 0.587 * sample(3 * i + 1) + 0.114 * sample(3 * i + 2);
        else
            img.pixels[i] = sample(i);
    }
    return img;
}

} // namespace bovw
