#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gait/energy_image.h"
#include "gait/silhouette_io.h"

namespace gait {

struct DatasetSubject {
  std::string id;
  std::vector<GaitSequence> sequences;  // sorted by sequence_id
};

struct Dataset {
  std::vector<DatasetSubject> subjects;  // sorted by id
  int width = kDefaultWidth;
  int height = kDefaultHeight;
};

// Loads <root>/<subject>/<sequence>/<frames>. Directories are visited in
// lexicographic order.
Dataset load_dataset(const std::filesystem::path& root, int width = kDefaultWidth, int height = kDefaultHeight,
                     double threshold_fraction = kDefaultThreshold);

// Number of training sequences for a subject with `sequence_count` sequences:
// round(fraction * count) clamped to [1, count - 1].
int train_count(double train_fraction, int sequence_count);

// Seeded per-subject permutation of sequence indices; the first
// train_count(...) entries are the training set.
std::vector<int> split_order(std::uint64_t seed, const std::string& subject_id, int sequence_count);

struct ProbeOutcome {
  std::string subject_id;
  std::string sequence_id;
  std::string predicted_id;
  double best_distance = 0.0;
  bool correct() const { return subject_id == predicted_id; }
};

struct EvaluationRow {
  double train_fraction = 0.0;
  int k_segments = 0;
  int m_dims = 0;
  double ccr = 0.0;
  int correct = 0;
  int total = 0;
  std::vector<ProbeOutcome> probes;
};

struct EvaluationReport {
  std::vector<EvaluationRow> rows;  // ordered by (split, K, M)
  std::uint64_t rng_seed = 0;
  std::vector<std::string> skipped_subjects;  // fewer than 2 sequences
};

EvaluationReport evaluate(const Dataset& dataset, double train_fraction, int k_segments, int m_dims,
                          std::uint64_t seed);

// Cross product of the parameter lists; one row per (split, K, M).
EvaluationReport sweep(const Dataset& dataset, const std::vector<double>& train_fractions,
                       const std::vector<int>& k_values, const std::vector<int>& m_values, std::uint64_t seed);

std::string format_report_table(const EvaluationReport& report);
std::string format_report_csv(const EvaluationReport& report);

}  // namespace gait
