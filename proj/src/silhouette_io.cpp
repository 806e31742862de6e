#include "gait/silhouette_io.h"

#include <algorithm>
#include <cstdio>
#include <system_error>

#include "gait/image_io.h"

namespace gait {

SilhouetteFrame::SilhouetteFrame(Grid<std::uint8_t> pixels) : pixels_(std::move(pixels)) {
  if (pixels_.empty()) throw UsageError("silhouette frame is empty");
  const auto values = pixels_.values();
  if (std::any_of(values.begin(), values.end(), [](std::uint8_t v) { return v > 1; })) {
    throw UsageError("silhouette frame contains non-binary values");
  }
}

void validate_sequence(const GaitSequence& sequence, std::size_t min_frames) {
  if (sequence.frames.size() < min_frames) {
    throw UsageError("sequence too short: " + std::to_string(sequence.frames.size()) + " frame(s), need at least " +
                     std::to_string(min_frames));
  }
  const SilhouetteFrame& first = sequence.frames.front();
  for (std::size_t i = 1; i < sequence.frames.size(); ++i) {
    if (!sequence.frames[i].pixels().same_shape(first.pixels())) {
      throw UsageError("frame " + std::to_string(i) + " size differs from frame 0");
    }
  }
}

SilhouetteFrame binarize(const GrayImage& image, double threshold_fraction) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw UsageError("threshold fraction must lie in (0,1)");
  }
  if (image.pixels.empty()) throw UsageError("cannot binarize an empty image");
  const double cutoff = threshold_fraction * static_cast<double>(image.max_value);
  Grid<std::uint8_t> out(image.pixels.width(), image.pixels.height());
  const auto src = image.pixels.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = static_cast<double>(src[i]) > cutoff ? 1 : 0;
  }
  return SilhouetteFrame(std::move(out));
}

SilhouetteFrame resize_binary(const SilhouetteFrame& frame, int target_width, int target_height) {
  if (target_width <= 0 || target_height <= 0) throw UsageError("resize target dimensions must be positive");
  if (frame.width() == target_width && frame.height() == target_height) return frame;

  const auto src_w = static_cast<long long>(frame.width());
  const auto src_h = static_cast<long long>(frame.height());
  std::vector<int> column_map(static_cast<std::size_t>(target_width));
  for (int x = 0; x < target_width; ++x) column_map[x] = static_cast<int>(x * src_w / target_width);

  Grid<std::uint8_t> out(target_width, target_height);
  for (int y = 0; y < target_height; ++y) {
    const int sy = static_cast<int>(y * src_h / target_height);
    const auto src_row = frame.pixels().row(sy);
    auto dst_row = out.row(y);
    for (int x = 0; x < target_width; ++x) dst_row[x] = src_row[column_map[x]];
  }
  return SilhouetteFrame(std::move(out));
}

std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& directory) {
  std::error_code ec;
  if (!std::filesystem::is_directory(directory, ec)) {
    throw DataError("sequence directory not found or unreadable: " + directory.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(directory)) {
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    if (!entry.is_regular_file()) continue;
    if (!is_supported_frame_file(entry.path())) {
      throw DataError("non-image file in sequence directory: " + entry.path().string());
    }
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return files;
}

GaitSequence load_sequence(const std::filesystem::path& directory, int target_width, int target_height,
                           double threshold_fraction) {
  if (target_width <= 0 || target_height <= 0) throw UsageError("target dimensions must be positive");
  const auto files = list_frame_files(directory);
  if (files.size() < 2) {
    throw DataError("sequence too short: " + directory.string() + " has " + std::to_string(files.size()) +
                    " frame(s), need at least 2");
  }

  const auto normalized = directory.lexically_normal();
  const auto leaf = normalized.has_filename() ? normalized : normalized.parent_path();
  GaitSequence sequence;
  sequence.sequence_id = leaf.filename().string();
  sequence.subject_id = leaf.parent_path().filename().string();
  sequence.frames.reserve(files.size());

  int native_width = 0;
  int native_height = 0;
  for (const auto& file : files) {
    GrayImage gray = read_gray_image(file);
    if (sequence.frames.empty()) {
      native_width = gray.pixels.width();
      native_height = gray.pixels.height();
    } else if (gray.pixels.width() != native_width || gray.pixels.height() != native_height) {
      throw DataError("frame size " + std::to_string(gray.pixels.width()) + "x" +
                      std::to_string(gray.pixels.height()) + " differs from sequence size " +
                      std::to_string(native_width) + "x" + std::to_string(native_height) + ": " + file.string());
    }
    sequence.frames.push_back(resize_binary(binarize(gray, threshold_fraction), target_width, target_height));
  }
  return sequence;
}

void save_sequence(const GaitSequence& sequence, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  char name[32];
  for (std::size_t i = 0; i < sequence.frames.size(); ++i) {
    std::snprintf(name, sizeof(name), "frame_%04zu.pgm", i);
    Grid<std::uint8_t> scaled = sequence.frames[i].pixels();
    for (auto& v : scaled.values()) v = v ? 255 : 0;
    write_pgm(directory / name, scaled);
  }
}

}  // namespace gait
