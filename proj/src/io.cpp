#include "io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bovw {

namespace {

constexpr char kFeatureMagic[4] = {'B', 'O', 'F', 'F'};
constexpr char kVocabMagic[4] = {'B', 'O', 'F', 'V'};
constexpr std::uint16_t kFormatVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_i32(std::string& out, std::int32_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
}

void put_f32(std::string& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

class ByteReader {
public:
    ByteReader(const std::filesystem::path& path, std::string what) : what_(std::move(what)) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error(what_ + ": cannot open '" + path.string() + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        data_ = buf.str();
    }

    std::uint8_t u8() {
        need(1);
        const std::uint8_t v = bytes()[0];
        pos_ += 1;
        return v;
    }

    std::uint16_t u16() {
        need(2);
        const auto* p = bytes();
        std::uint16_t v = static_cast<std::uint16_t>(p[0]) | static_cast<std::uint16_t>(p[1]) << 8;
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        const auto* p = bytes();
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }

    float f32() {
        const std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }

    void magic(const char expected[4]) {
        need(4);
        if (std::memcmp(data_.data() + pos_, expected, 4) != 0)
            throw std::runtime_error(what_ + ": bad magic");
        pos_ += 4;
    }

    void done() {
        if (pos_ != data_.size())
            throw std::runtime_error(what_ + ": trailing bytes after payload");
    }

private:
    const unsigned char* bytes() const {
        return reinterpret_cast<const unsigned char*>(data_.data()) + pos_;
    }

    void need(std::size_t n) {
        if (pos_ + n > data_.size())
            throw std::runtime_error(what_ + ": truncated payload");
    }

    std::string what_;
    std::string data_;
    std::size_t pos_ = 0;
};

void write_bytes(const std::filesystem::path& path, const std::string& bytes, const char* what) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error(std::string(what) + ": cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error(std::string(what) + ": write failed for '" + path.string() + "'");
}

} // namespace

ImageFeatures read_feature_file(const std::filesystem::path& path) {
    ByteReader in(path, "feature file");
    in.magic(kFeatureMagic);
    const std::uint16_t version = in.u16();
    if (version != kFormatVersion)
        throw std::runtime_error("feature file: unsupported version " + std::to_string(version));
    const std::uint32_t h = in.u32();
    if (h == 0)
        throw std::runtime_error("feature file: dimension 0");
    const std::uint32_t count = in.u32();

    ImageFeatures image;
    image.image_id = path.stem().string();
    image.dim = h;
    image.features.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        FeatureVector f(h);
        for (std::uint32_t d = 0; d < h; ++d)
            f[d] = static_cast<double>(in.f32());
        image.features.push_back(std::move(f));
    }
    in.done();
    return image;
}

void write_feature_file(const ImageFeatures& image, const std::filesystem::path& path) {
    if (image.dim == 0)
        throw std::invalid_argument("feature file: refusing to write dimension 0");
    std::string out;
    out.append(kFeatureMagic, 4);
    put_u16(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(image.dim));
    put_u32(out, static_cast<std::uint32_t>(image.features.size()));
    for (const auto& f : image.features) {
        if (f.size() != image.dim)
            throw std::invalid_argument("feature file: feature dimension mismatch");
        for (double v : f)
            put_f32(out, static_cast<float>(v));
    }
    write_bytes(path, out, "feature file");
}

namespace {

// One line of a simple two-column CSV; no quoting, labels and ids must not
// contain commas.
bool split_csv_pair(const std::string& line, std::string& a, std::string& b) {
    const auto comma = line.find(',');
    if (comma == std::string::npos)
        return false;
    a = line.substr(0, comma);
    b = line.substr(comma + 1);
    if (!b.empty() && b.back() == '\r')
        b.pop_back();
    return true;
}

} // namespace

LabelTable read_label_table(const std::filesystem::path& path,
                            const std::vector<ImageFeatures>& images) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("label table: cannot open '" + path.string() + "'");

    std::map<std::string, std::size_t> image_pos;
    for (std::size_t i = 0; i < images.size(); ++i)
        image_pos[images[i].image_id] = i;

    LabelTable table;
    std::map<std::string, std::size_t> row_of;  // image id -> row
    std::map<std::string, std::size_t> col_of;  // label name -> column
    std::vector<std::vector<std::string>> row_labels;

    std::string line;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] == '#')
            continue;
        if (line.empty() || line == "\r")
            continue;
        std::string id, label;
        if (!split_csv_pair(line, id, label))
            throw std::runtime_error("label table: malformed line " + std::to_string(line_no));
        if (!saw_header) {
            if (id != "image_id" || label != "label")
                throw std::runtime_error("label table: expected header 'image_id,label'");
            saw_header = true;
            continue;
        }
        if (label.empty())
            throw std::runtime_error("label table: image '" + id + "' listed with zero labels (line " +
                                     std::to_string(line_no) + ")");
        if (!image_pos.count(id))
            throw std::runtime_error("label table: unknown image id '" + id + "'");
        if (!row_of.count(id)) {
            row_of[id] = table.labeled_ids.size();
            table.labeled_ids.push_back(id);
            row_labels.emplace_back();
        }
        if (!col_of.count(label)) {
            col_of[label] = table.vocab.labels.size();
            table.vocab.labels.push_back(label);
        }
        row_labels[row_of[id]].push_back(label);
    }
    if (table.labeled_ids.empty())
        throw std::runtime_error("label table: no labeled images in '" + path.string() + "'");

    const std::size_t k = table.vocab.size();
    table.matrix.assign(table.labeled_ids.size(), std::vector<std::uint8_t>(k, 0));
    for (std::size_t r = 0; r < row_labels.size(); ++r)
        for (const auto& name : row_labels[r])
            table.matrix[r][col_of[name]] = 1;
    return table;
}

void write_label_table(const LabeledDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("label table: cannot open '" + path.string() + "' for writing");
    out << "image_id,label\n";
    for (std::size_t r = 0; r < dataset.labeled_count(); ++r)
        for (std::size_t c = 0; c < dataset.label_count(); ++c)
            if (dataset.label_matrix[r][c])
                out << dataset.labeled_ids[r] << ',' << dataset.label_vocab.labels[c] << '\n';
}

VisualVocabulary read_vocabulary_file(const std::filesystem::path& path) {
    ByteReader in(path, "vocabulary file");
    in.magic(kVocabMagic);
    const std::uint16_t version = in.u16();
    if (version != kFormatVersion)
        throw std::runtime_error("vocabulary file: unsupported version " + std::to_string(version));
    const std::uint8_t tag = in.u8();
    if (tag > static_cast<std::uint8_t>(Strategy::filt_model))
        throw std::runtime_error("vocabulary file: unknown strategy tag " + std::to_string(tag));
    const std::uint32_t m = in.u32();
    const std::uint32_t h = in.u32();
    if (h == 0)
        throw std::runtime_error("vocabulary file: dimension 0");
    const std::uint32_t k = in.u32();

    VisualVocabulary vocab;
    vocab.strategy = static_cast<Strategy>(tag);
    vocab.label_count = k;
    vocab.words.reserve(m);
    vocab.provenance.reserve(m);
    for (std::uint32_t w = 0; w < m; ++w) {
        vocab.provenance.push_back(in.i32());
        FeatureVector word(h);
        for (std::uint32_t d = 0; d < h; ++d)
            word[d] = static_cast<double>(in.f32());
        vocab.words.push_back(std::move(word));
    }
    in.done();
    return vocab;
}

void write_vocabulary_file(const VisualVocabulary& vocab, const std::filesystem::path& path) {
    std::string out;
    out.append(kVocabMagic, 4);
    put_u16(out, kFormatVersion);
    out.push_back(static_cast<char>(static_cast<std::uint8_t>(vocab.strategy)));
    put_u32(out, static_cast<std::uint32_t>(vocab.size()));
    put_u32(out, static_cast<std::uint32_t>(vocab.dim()));
    put_u32(out, vocab.label_count);
    for (std::size_t w = 0; w < vocab.size(); ++w) {
        put_i32(out, vocab.provenance[w]);
        for (double v : vocab.words[w])
            put_f32(out, static_cast<float>(v));
    }
    write_bytes(path, out, "vocabulary file");
}

LabeledDataset open_dataset(const std::filesystem::path& features_dir,
                            const std::filesystem::path& labels_csv) {
    if (!std::filesystem::is_directory(features_dir))
        throw std::runtime_error("dataset: '" + features_dir.string() + "' is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(features_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".boff")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw std::runtime_error("dataset: no .boff feature files in '" + features_dir.string() + "'");

    LabeledDataset dataset;
    dataset.images.reserve(files.size());
    for (const auto& f : files)
        dataset.images.push_back(read_feature_file(f));

    if (!labels_csv.empty()) {
        LabelTable table = read_label_table(labels_csv, dataset.images);
        dataset.label_vocab = std::move(table.vocab);
        dataset.labeled_ids = std::move(table.labeled_ids);
        dataset.label_matrix = std::move(table.matrix);
    }
    dataset.validate();
    return dataset;
}

void save_dataset(const LabeledDataset& dataset, const std::filesystem::path& features_dir,
                  const std::filesystem::path& labels_csv) {
    std::filesystem::create_directories(features_dir);
    for (const auto& img : dataset.images)
        write_feature_file(img, features_dir / (img.image_id + ".boff"));
    if (!labels_csv.empty())
        write_label_table(dataset, labels_csv);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_encoding_csv(const std::vector<BoFVector>& encodings, const std::filesystem::path& path,
                        const std::vector<std::string>& header_comment) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("encoding csv: cannot open '" + path.string() + "' for writing");
    for (const auto& c : header_comment)
        out << "# " << c << '\n';
    const std::size_t m = encodings.empty() ? 0 : encodings[0].weights.size();
    out << "image_id";
    for (std::size_t w = 0; w < m; ++w)
        out << ",w" << w;
    out << '\n';
    for (const auto& e : encodings) {
        out << e.image_id;
        for (double w : e.weights)
            out << ',' << format_double(w);
        out << '\n';
    }
}

std::vector<BoFVector> read_encoding_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("encoding csv: cannot open '" + path.string() + "'");
    std::vector<BoFVector> out;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!saw_header) {
            saw_header = true;
            continue;
        }
        BoFVector v;
        std::size_t start = line.find(',');
        if (start == std::string::npos)
            throw std::runtime_error("encoding csv: malformed row");
        v.image_id = line.substr(0, start);
        ++start;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                comma = line.size();
            v.weights.push_back(std::stod(line.substr(start, comma - start)));
            start = comma + 1;
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace bovw
