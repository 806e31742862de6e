#include "gait/gallery.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gait/segmentation.h"

namespace gait {
namespace {

bool valid_id(std::string_view id) {
  return !id.empty() && std::none_of(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c) || c < 0x20; });
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

class GalleryParser {
 public:
  GalleryParser(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  // Next line split into fields; empty optional-like result at EOF.
  bool next(std::vector<std::string_view>& fields) {
    if (!std::getline(in_, line_)) return false;
    ++line_number_;
    fields = split_fields(line_);
    return true;
  }

  bool peek_eof() { return in_.peek() == std::char_traits<char>::eof(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(std::string(source_) + ": line " + std::to_string(line_number_) + ": " + what);
  }
  [[noreturn]] void fail_eof(const std::string& expected) const {
    throw DataError(std::string(source_) + ": line " + std::to_string(line_number_ + 1) + ": expected " + expected +
                    ", found end of file");
  }

  template <typename T>
  T parse(std::string_view field, const char* name) const {
    T value{};
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end) fail(std::string("invalid ") + name + " '" + std::string(field) + "'");
    return value;
  }

  int line_number() const { return line_number_; }

 private:
  std::istream& in_;
  std::string_view source_;
  std::string line_;
  int line_number_ = 0;
};

}  // namespace

std::string format_real(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw DataError("cannot format real value");
  return std::string(buffer, ptr);
}

void GalleryConfig::validate() const {
  if (width <= 0 || height <= 0) throw UsageError("image dimensions must be positive");
  if (k_segments < 1 || k_segments > height) {
    throw UsageError("segment count must lie in [1, " + std::to_string(height) + "], got " + std::to_string(k_segments));
  }
  if (m_dims < 1 || m_dims > static_cast<int>(kAmiCount)) {
    throw UsageError("dims must lie in [1, 10], got " + std::to_string(m_dims));
  }
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) throw UsageError("threshold must lie in (0,1)");
  if (format_version != kGalleryFormatVersion) throw UsageError("unsupported gallery format version");
}

std::vector<SegmentFeature> extract_features(const ActiveEnergyImage& aei, int k_segments) {
  return features_from_segmented(segment_aei(aei, k_segments));
}

std::vector<SegmentFeature> extract_features(const GaitSequence& sequence, int k_segments) {
  return extract_features(active_energy_image(sequence), k_segments);
}

Gallery::Gallery(GalleryConfig config) : config_(config) { config_.validate(); }

std::size_t Gallery::sequence_count() const {
  std::size_t n = 0;
  for (const auto& p : persons_) n += p.sequences.size();
  return n;
}

void Gallery::enroll(const GaitSequence& sequence) {
  validate_sequence(sequence, 2);
  if (sequence.width() != config_.width || sequence.height() != config_.height) {
    throw UsageError("sequence " + sequence.subject_id + "/" + sequence.sequence_id + " is " +
                     std::to_string(sequence.width()) + "x" + std::to_string(sequence.height()) +
                     ", gallery expects " + std::to_string(config_.width) + "x" + std::to_string(config_.height));
  }
  enroll_features(sequence.subject_id, sequence.sequence_id, extract_features(sequence, config_.k_segments));
}

void Gallery::enroll_features(std::string person_id, std::string sequence_id, std::vector<SegmentFeature> features) {
  if (!valid_id(person_id) || !valid_id(sequence_id)) {
    throw UsageError("person and sequence ids must be non-empty and free of whitespace");
  }
  if (static_cast<int>(features.size()) != config_.k_segments) {
    throw UsageError("expected " + std::to_string(config_.k_segments) + " segment features, got " +
                     std::to_string(features.size()));
  }
  auto person = std::lower_bound(persons_.begin(), persons_.end(), person_id,
                                 [](const EnrolledPerson& p, const std::string& id) { return p.person_id < id; });
  if (person == persons_.end() || person->person_id != person_id) {
    person = persons_.insert(person, EnrolledPerson{person_id, {}});
  }
  auto seq = std::lower_bound(person->sequences.begin(), person->sequences.end(), sequence_id,
                              [](const EnrolledSequence& s, const std::string& id) { return s.sequence_id < id; });
  if (seq != person->sequences.end() && seq->sequence_id == sequence_id) {
    throw UsageError("duplicate enrolment of " + person_id + "/" + sequence_id);
  }
  person->sequences.insert(seq, EnrolledSequence{std::move(sequence_id), std::move(features)});
  models_.clear();
  whitened_.clear();
}

void Gallery::finalize() {
  if (sequence_count() < 2) throw DataError("finalize needs at least 2 enrolled sequences");
  std::vector<WhiteningModel> models;
  models.reserve(static_cast<std::size_t>(config_.k_segments));
  for (int k = 0; k < config_.k_segments; ++k) {
    std::vector<AmiVector> samples;
    for (const auto& person : persons_) {
      for (const auto& seq : person.sequences) {
        if (!seq.features[k].degenerate) samples.push_back(seq.features[k].ami);
      }
    }
    models.push_back(fit_whitening(samples, config_.m_dims, k));
  }
  models_ = std::move(models);
  rebuild_whitened();
}

void Gallery::restore_models(std::vector<WhiteningModel> models) {
  if (static_cast<int>(models.size()) != config_.k_segments) {
    throw DataError("expected " + std::to_string(config_.k_segments) + " whitening models, got " +
                    std::to_string(models.size()));
  }
  for (std::size_t k = 0; k < models.size(); ++k) {
    if (models[k].segment_index != static_cast<int>(k) || models[k].output_dim() != config_.m_dims) {
      throw DataError("whitening model " + std::to_string(k) + " does not match the gallery configuration");
    }
  }
  models_ = std::move(models);
  rebuild_whitened();
}

void Gallery::rebuild_whitened() {
  whitened_.clear();
  whitened_.reserve(persons_.size());
  for (const auto& person : persons_) {
    WhitenedPerson wp;
    wp.reserve(person.sequences.size());
    for (const auto& seq : person.sequences) wp.push_back(whiten_features(seq.features));
    whitened_.push_back(std::move(wp));
  }
}

void Gallery::require_finalized() const {
  if (!finalized()) throw UsageError("gallery is not finalized");
}

std::vector<WhitenedSegment> Gallery::whiten_features(std::span<const SegmentFeature> features) const {
  require_finalized();
  if (static_cast<int>(features.size()) != config_.k_segments) {
    throw UsageError("expected " + std::to_string(config_.k_segments) + " segment features, got " +
                     std::to_string(features.size()));
  }
  std::vector<WhitenedSegment> out(features.size());
  for (std::size_t k = 0; k < features.size(); ++k) {
    if (features[k].degenerate) {
      out[k].degenerate = true;
    } else {
      out[k].values = whiten(models_[k], features[k].ami).values;
    }
  }
  return out;
}

const WhitenedGallery& Gallery::whitened() const {
  require_finalized();
  return whitened_;
}

MatchResult Gallery::identify_features(std::span<const SegmentFeature> probe) const {
  const auto whitened_probe = whiten_features(probe);
  return match(whitened_probe, whitened_);
}

MatchResult Gallery::identify(const GaitSequence& probe) const {
  validate_sequence(probe, 2);
  if (probe.width() != config_.width || probe.height() != config_.height) {
    throw UsageError("probe size does not match gallery configuration");
  }
  return identify_features(extract_features(probe, config_.k_segments));
}

void write_gallery(std::ostream& out, const Gallery& gallery) {
  const GalleryConfig& c = gallery.config();
  out << "GAITGALLERY v" << c.format_version << '\n';
  out << "config " << c.width << ' ' << c.height << ' ' << c.k_segments << ' ' << c.m_dims << ' '
      << format_real(c.threshold_fraction) << '\n';
  for (const auto& model : gallery.models()) {
    out << "model " << model.segment_index;
    for (double v : model.mean) out << ' ' << format_real(v);
    for (double v : model.eigenvalues) out << ' ' << format_real(v);
    for (const auto& row : model.basis) {
      for (double v : row) out << ' ' << format_real(v);
    }
    out << '\n';
  }
  for (const auto& person : gallery.persons()) {
    for (const auto& seq : person.sequences) {
      out << "seq " << person.person_id << ' ' << seq.sequence_id << '\n';
      for (std::size_t k = 0; k < seq.features.size(); ++k) {
        out << "ami " << k << ' ' << (seq.features[k].degenerate ? 1 : 0);
        for (double v : seq.features[k].ami.values) out << ' ' << format_real(v);
        out << '\n';
      }
    }
  }
}

Gallery read_gallery(std::istream& in, std::string_view source_name) {
  GalleryParser parser(in, source_name);
  std::vector<std::string_view> f;

  if (!parser.next(f)) parser.fail_eof("header 'GAITGALLERY v1'");
  if (f.size() != 2 || f[0] != "GAITGALLERY" || f[1].size() < 2 || f[1][0] != 'v') {
    parser.fail("bad magic line, expected 'GAITGALLERY v1'");
  }
  const int version = parser.parse<int>(f[1].substr(1), "format version");
  if (version != kGalleryFormatVersion) {
    parser.fail("unsupported gallery format version " + std::to_string(version) + " (expected " +
                std::to_string(kGalleryFormatVersion) + ")");
  }

  if (!parser.next(f)) parser.fail_eof("config record");
  if (f.size() != 6 || f[0] != "config") parser.fail("expected 'config <width> <height> <K> <M> <threshold>'");
  GalleryConfig config;
  config.width = parser.parse<int>(f[1], "width");
  config.height = parser.parse<int>(f[2], "height");
  config.k_segments = parser.parse<int>(f[3], "segment count");
  config.m_dims = parser.parse<int>(f[4], "dims");
  config.threshold_fraction = parser.parse<double>(f[5], "threshold");
  config.format_version = version;
  try {
    config.validate();
  } catch (const UsageError& e) {
    parser.fail(e.what());
  }

  Gallery gallery(config);
  const auto k_count = static_cast<std::size_t>(config.k_segments);
  const auto m = static_cast<std::size_t>(config.m_dims);
  std::vector<WhiteningModel> models;

  bool have_line = parser.next(f);
  while (have_line && !f.empty() && f[0] == "model") {
    const std::size_t expected = 2 + kAmiCount + m + m * kAmiCount;
    if (f.size() != expected) {
      parser.fail("model record has " + std::to_string(f.size()) + " fields, expected " + std::to_string(expected));
    }
    WhiteningModel model;
    model.segment_index = parser.parse<int>(f[1], "segment index");
    if (model.segment_index != static_cast<int>(models.size())) parser.fail("model records out of order");
    std::size_t i = 2;
    for (auto& v : model.mean) v = parser.parse<double>(f[i++], "real");
    model.eigenvalues.resize(m);
    for (auto& v : model.eigenvalues) v = parser.parse<double>(f[i++], "real");
    model.basis.resize(m);
    for (auto& row : model.basis) {
      for (auto& v : row) v = parser.parse<double>(f[i++], "real");
    }
    models.push_back(std::move(model));
    have_line = parser.next(f);
  }
  if (!models.empty() && models.size() != k_count) {
    parser.fail("found " + std::to_string(models.size()) + " model records, expected " + std::to_string(k_count));
  }

  while (have_line) {
    if (f.empty()) {
      if (parser.peek_eof()) break;
      parser.fail("unexpected blank line");
    }
    if (f[0] != "seq" || f.size() != 3) parser.fail("expected 'seq <person_id> <sequence_id>'");
    const std::string person_id(f[1]);
    const std::string sequence_id(f[2]);
    std::vector<SegmentFeature> features(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
      if (!parser.next(f)) parser.fail_eof("ami record " + std::to_string(k) + " of " + person_id + "/" + sequence_id);
      if (f.size() != 3 + kAmiCount || f[0] != "ami") parser.fail("expected 'ami <k> <flag> <10 reals>'");
      if (parser.parse<std::size_t>(f[1], "segment index") != k) parser.fail("ami records out of order");
      const int flag = parser.parse<int>(f[2], "degenerate flag");
      if (flag != 0 && flag != 1) parser.fail("degenerate flag must be 0 or 1");
      features[k].degenerate = flag == 1;
      for (std::size_t j = 0; j < kAmiCount; ++j) features[k].ami[j] = parser.parse<double>(f[3 + j], "real");
    }
    try {
      gallery.enroll_features(person_id, sequence_id, std::move(features));
    } catch (const UsageError& e) {
      parser.fail(e.what());
    }
    have_line = parser.next(f);
  }

  if (!models.empty()) {
    try {
      gallery.restore_models(std::move(models));
    } catch (const DataError& e) {
      throw DataError(std::string(source_name) + ": " + e.what());
    }
  }
  return gallery;
}

void save_gallery(const Gallery& gallery, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_gallery(buffer, gallery);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write gallery file: " + path.string());
  out << buffer.str();
  if (!out) throw DataError("failed writing gallery file: " + path.string());
}

Gallery load_gallery(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open gallery file: " + path.string());
  return read_gallery(in, path.string());
}

}  // namespace gait
