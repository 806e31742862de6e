#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gait/energy_image.h"
#include "gait/matching.h"
#include "gait/moments.h"
#include "gait/silhouette_io.h"
#include "gait/whitening.h"

namespace gait {

inline constexpr int kDefaultSegments = 23;
inline constexpr int kDefaultDims = 5;
inline constexpr int kGalleryFormatVersion = 1;

struct GalleryConfig {
  int width = kDefaultWidth;
  int height = kDefaultHeight;
  int k_segments = kDefaultSegments;
  int m_dims = kDefaultDims;
  double threshold_fraction = kDefaultThreshold;
  int format_version = kGalleryFormatVersion;

  // Throws UsageError when a field is out of range.
  void validate() const;
  bool operator==(const GalleryConfig&) const = default;
};

struct EnrolledSequence {
  std::string sequence_id;
  std::vector<SegmentFeature> features;  // k_segments entries
  bool operator==(const EnrolledSequence&) const = default;
};

struct EnrolledPerson {
  std::string person_id;
  std::vector<EnrolledSequence> sequences;  // sorted by sequence_id
  bool operator==(const EnrolledPerson&) const = default;
};

// AEI -> K strips -> per-strip AMI features.
std::vector<SegmentFeature> extract_features(const ActiveEnergyImage& aei, int k_segments);
std::vector<SegmentFeature> extract_features(const GaitSequence& sequence, int k_segments);

// Enrolled database. Persons are kept sorted by id and each person's
// sequences by sequence id, so the whitening fit and every index-based
// tie-break are independent of enrolment order.
class Gallery {
 public:
  explicit Gallery(GalleryConfig config = {});

  const GalleryConfig& config() const { return config_; }
  const std::vector<EnrolledPerson>& persons() const { return persons_; }
  const std::vector<WhiteningModel>& models() const { return models_; }
  bool finalized() const { return !models_.empty(); }
  std::size_t sequence_count() const;

  // Runs the feature pipeline on the sequence and stores it under its
  // subject_id. Invalidates any fitted models.
  void enroll(const GaitSequence& sequence);
  void enroll_features(std::string person_id, std::string sequence_id, std::vector<SegmentFeature> features);

  // Fits one whitening model per segment over the non-degenerate gallery
  // vectors. Throws DataError on too few samples or insufficient rank.
  void finalize();
  // Installs previously fitted models (used when loading a saved gallery).
  void restore_models(std::vector<WhiteningModel> models);

  // Requires a finalized gallery.
  std::vector<WhitenedSegment> whiten_features(std::span<const SegmentFeature> features) const;
  const WhitenedGallery& whitened() const;
  MatchResult identify_features(std::span<const SegmentFeature> probe) const;
  MatchResult identify(const GaitSequence& probe) const;

  const std::string& person_id(int n) const { return persons_.at(static_cast<std::size_t>(n)).person_id; }

  bool operator==(const Gallery& other) const {
    return config_ == other.config_ && persons_ == other.persons_ && models_ == other.models_;
  }

 private:
  void require_finalized() const;
  void rebuild_whitened();

  GalleryConfig config_;
  std::vector<EnrolledPerson> persons_;
  std::vector<WhiteningModel> models_;
  WhitenedGallery whitened_;
};

// Line-oriented text format:
//   GAITGALLERY v1
//   config <width> <height> <K> <M> <threshold>
//   model <k> <mean x10> <eigenvalues xM> <basis rows, M x 10>     (K lines, finalized only)
//   seq <person_id> <sequence_id>
//   ami <k> <degenerate 0|1> <A1..A10>                             (K lines per seq)
// Reals use the shortest decimal form that round-trips exactly.
void write_gallery(std::ostream& out, const Gallery& gallery);
// Throws DataError with the offending line number on malformed input.
Gallery read_gallery(std::istream& in, std::string_view source_name = "<stream>");

void save_gallery(const Gallery& gallery, const std::filesystem::path& path);
Gallery load_gallery(const std::filesystem::path& path);

// Shortest round-trip decimal form of a double.
std::string format_real(double value);

}  // namespace gait
