#ifndef BOVW_IO_HPP
#define BOVW_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "core.hpp"
#include "encoding.hpp"
#include "vocabulary.hpp"

namespace bovw {

// Feature file: magic "BOFF", version u16=1, h u32, count u32, then
// count*h float32, feature-major, little-endian throughout. The image id is
// the file stem.
ImageFeatures read_feature_file(const std::filesystem::path& path);
void write_feature_file(const ImageFeatures& image, const std::filesystem::path& path);

// Label table: CSV with header "image_id,label", one row per (image, label)
// pair. Duplicate pairs are idempotent. Every id must exist in the dataset.
struct LabelTable {
    LabelVocabulary vocab;
    std::vector<std::string> labeled_ids;
    std::vector<std::vector<std::uint8_t>> matrix;
};

LabelTable read_label_table(const std::filesystem::path& path,
                            const std::vector<ImageFeatures>& images);
void write_label_table(const LabeledDataset& dataset, const std::filesystem::path& path);

// Vocabulary file: magic "BOFV", version u16=1, strategy u8, m u32, h u32,
// k u32, then per word provenance i32 (-1 = generic) + h float32.
VisualVocabulary read_vocabulary_file(const std::filesystem::path& path);
void write_vocabulary_file(const VisualVocabulary& vocab, const std::filesystem::path& path);

// Dataset as a directory of .boff feature files (sorted by filename) plus an
// optional label table.
LabeledDataset open_dataset(const std::filesystem::path& features_dir,
                            const std::filesystem::path& labels_csv = {});
void save_dataset(const LabeledDataset& dataset, const std::filesystem::path& features_dir,
                  const std::filesystem::path& labels_csv);

// Encoding CSV: header image_id,w0..w{m-1}; 9 significant digits. `header_comment`
// lines (if any) are written first, each prefixed with "# ".
void write_encoding_csv(const std::vector<BoFVector>& encodings, const std::filesystem::path& path,
                        const std::vector<std::string>& header_comment = {});
std::vector<BoFVector> read_encoding_csv(const std::filesystem::path& path);

std::string format_double(double v);

} // namespace bovw

#endif
