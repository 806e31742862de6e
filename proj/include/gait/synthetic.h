#pragma once

#include <cstdint>
#include <filesystem>

#include "gait/silhouette_io.h"

namespace gait {

// Parametric stick-figure walker rendered as a binary silhouette: ellipse
// torso, circular head, two-segment legs and arms built from quadrilaterals
// that swing with the gait phase.
struct SyntheticWalkerSpec {
  std::uint64_t seed = 0;        // drives the pixel noise
  double swing_amplitude = 12.0;  // horizontal foot excursion, px, [0, 30]
  int stride_period = 16;         // frames per gait cycle, [4, 64]
  double torso_width = 18.0;      // px, [8, 40]
  double torso_height = 38.0;     // px, [20, 60]
  double head_radius = 7.0;       // px, [3, 14]
  double leg_width = 8.0;         // px at the hip, [3, 16]
  double knee_bend = 0.3;         // knee offset as a fraction of the swing, [0, 1]
  double phase = 0.0;             // gait phase of frame 0, radians
  double noise_rate = 0.0;        // per-pixel flip probability, [0, 0.05]
  int width = kDefaultWidth;
  int height = kDefaultHeight;

  // Throws UsageError when a parameter is outside its range.
  void validate() const;
};

// Deterministic: identical specs give identical sequences.
GaitSequence generate_synthetic(const SyntheticWalkerSpec& spec, int n_frames);

// Body parameters of subject `subject` in a dataset drawn from `dataset_seed`.
SyntheticWalkerSpec subject_walker(std::uint64_t dataset_seed, int subject);

// Subject walker with the per-recording phase and noise seed of `sequence`.
SyntheticWalkerSpec sequence_walker(const SyntheticWalkerSpec& subject_spec, std::uint64_t dataset_seed, int subject,
                                    int sequence);

struct SyntheticDatasetOptions {
  int subjects = 10;
  int sequences = 6;
  int frames = 48;
  std::uint64_t seed = 1;
  double noise_rate = 0.01;
  int width = kDefaultWidth;
  int height = kDefaultHeight;
};

// Writes <root>/subject_NNN/seq_NN/frame_NNNN.pgm.
void write_synthetic_dataset(const std::filesystem::path& root, const SyntheticDatasetOptions& options);

}  // namespace gait
