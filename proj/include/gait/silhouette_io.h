#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gait/image.h"

namespace gait {

inline constexpr int kDefaultWidth = 64;
inline constexpr int kDefaultHeight = 128;
inline constexpr double kDefaultThreshold = 0.5;

// Binary silhouette; every pixel is 0 or 1.
class SilhouetteFrame {
 public:
  SilhouetteFrame() = default;
  // Throws UsageError if any value is outside {0,1}.
  explicit SilhouetteFrame(Grid<std::uint8_t> pixels);
  SilhouetteFrame(int width, int height) : pixels_(width, height, 0) {}

  int width() const { return pixels_.width(); }
  int height() const { return pixels_.height(); }
  std::uint8_t operator()(int x, int y) const { return pixels_(x, y); }
  void set(int x, int y, bool on) { pixels_(x, y) = on ? 1 : 0; }
  const Grid<std::uint8_t>& pixels() const { return pixels_; }

  bool operator==(const SilhouetteFrame&) const = default;

 private:
  Grid<std::uint8_t> pixels_;
};

struct GaitSequence {
  std::string subject_id;
  std::string sequence_id;
  std::vector<SilhouetteFrame> frames;

  int width() const { return frames.empty() ? 0 : frames.front().width(); }
  int height() const { return frames.empty() ? 0 : frames.front().height(); }

  bool operator==(const GaitSequence&) const = default;
};

// Throws UsageError unless the sequence has at least min_frames frames of one size.
void validate_sequence(const GaitSequence& sequence, std::size_t min_frames = 2);

// pixel = 1 iff gray > threshold_fraction * max_value.
SilhouetteFrame binarize(const GrayImage& image, double threshold_fraction = kDefaultThreshold);

// Nearest-neighbour resampling with source index floor(i * src / dst).
SilhouetteFrame resize_binary(const SilhouetteFrame& frame, int target_width, int target_height);

// Frame files of a sequence directory in lexicographic filename order.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& directory);

// Loads <directory>/<frame files>, binarizes and resizes each frame.
// subject_id / sequence_id default to the parent and leaf directory names.
GaitSequence load_sequence(const std::filesystem::path& directory,
                           int target_width = kDefaultWidth,
                           int target_height = kDefaultHeight,
                           double threshold_fraction = kDefaultThreshold);

// Writes frames as frame_0000.pgm, frame_0001.pgm, ... (values scaled to 0/255).
void save_sequence(const GaitSequence& sequence, const std::filesystem::path& directory);

}  // namespace gait
