#include "gait/harness.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "gait/gallery.h"

namespace gait {
namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::filesystem::path> sorted_subdirectories(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_directory() && !name.empty() && name.front() != '.') out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
  return out;
}

struct SplitPlan {
  std::vector<std::pair<int, int>> train;  // (subject, sequence)
  std::vector<std::pair<int, int>> test;
};

}  // namespace

Dataset load_dataset(const std::filesystem::path& root, int width, int height, double threshold_fraction) {
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) throw DataError("dataset root not found: " + root.string());
  Dataset dataset;
  dataset.width = width;
  dataset.height = height;
  for (const auto& subject_dir : sorted_subdirectories(root)) {
    DatasetSubject subject;
    subject.id = subject_dir.filename().string();
    for (const auto& seq_dir : sorted_subdirectories(subject_dir)) {
      subject.sequences.push_back(load_sequence(seq_dir, width, height, threshold_fraction));
    }
    dataset.subjects.push_back(std::move(subject));
  }
  if (dataset.subjects.empty()) throw DataError("dataset root contains no subject directories: " + root.string());
  return dataset;
}

int train_count(double train_fraction, int sequence_count) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("train fraction must lie in (0,1)");
  const int n = static_cast<int>(std::lround(train_fraction * sequence_count));
  return std::clamp(n, 1, sequence_count - 1);
}

std::vector<int> split_order(std::uint64_t seed, const std::string& subject_id, int sequence_count) {
  std::vector<int> order(static_cast<std::size_t>(sequence_count));
  for (int i = 0; i < sequence_count; ++i) order[i] = i;
  std::mt19937_64 rng(seed ^ fnv1a(subject_id));
  // Fisher-Yates with raw engine output keeps the order stable across
  // standard library implementations.
  for (int i = sequence_count - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

EvaluationReport evaluate(const Dataset& dataset, double train_fraction, int k_segments, int m_dims,
                          std::uint64_t seed) {
  return sweep(dataset, {train_fraction}, {k_segments}, {m_dims}, seed);
}

EvaluationReport sweep(const Dataset& dataset, const std::vector<double>& train_fractions,
                       const std::vector<int>& k_values, const std::vector<int>& m_values, std::uint64_t seed) {
  if (train_fractions.empty() || k_values.empty() || m_values.empty()) throw UsageError("empty parameter list");
  for (double f : train_fractions) train_count(f, 2);
  for (int k : k_values) {
    if (k < 1 || k > dataset.height) throw UsageError("segment count out of range: " + std::to_string(k));
  }
  for (int m : m_values) {
    if (m < 1 || m > static_cast<int>(kAmiCount)) throw UsageError("dims out of range: " + std::to_string(m));
  }

  EvaluationReport report;
  report.rng_seed = seed;

  std::vector<int> usable;
  for (int n = 0; n < static_cast<int>(dataset.subjects.size()); ++n) {
    if (dataset.subjects[n].sequences.size() < 2) {
      report.skipped_subjects.push_back(dataset.subjects[n].id);
    } else {
      usable.push_back(n);
    }
  }
  if (usable.empty()) throw DataError("no subject has at least 2 sequences");

  // AEIs do not depend on K, M or the split.
  std::vector<std::pair<int, int>> all;
  std::vector<std::size_t> subject_offset(dataset.subjects.size(), 0);
  for (int n : usable) {
    subject_offset[n] = all.size();
    for (int s = 0; s < static_cast<int>(dataset.subjects[n].sequences.size()); ++s) all.emplace_back(n, s);
  }
  std::vector<ActiveEnergyImage> aeis(all.size());
  const auto all_count = static_cast<long>(all.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < all_count; ++i) {
    const auto [n, s] = all[static_cast<std::size_t>(i)];
    aeis[i] = active_energy_image(dataset.subjects[n].sequences[s]);
  }
  auto flat_index = [&](int n, int s) { return subject_offset[n] + static_cast<std::size_t>(s); };

  for (double fraction : train_fractions) {
    SplitPlan plan;
    for (int n : usable) {
      const auto& subject = dataset.subjects[n];
      const int count = static_cast<int>(subject.sequences.size());
      const auto order = split_order(seed, subject.id, count);
      const int n_train = train_count(fraction, count);
      std::vector<int> train(order.begin(), order.begin() + n_train);
      std::vector<int> test(order.begin() + n_train, order.end());
      std::sort(train.begin(), train.end());
      std::sort(test.begin(), test.end());
      for (int s : train) plan.train.emplace_back(n, s);
      for (int s : test) plan.test.emplace_back(n, s);
    }

    for (int k : k_values) {
      std::vector<std::vector<SegmentFeature>> features(all.size());
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < all_count; ++i) features[i] = extract_features(aeis[i], k);

      for (int m : m_values) {
        GalleryConfig config;
        config.width = dataset.width;
        config.height = dataset.height;
        config.k_segments = k;
        config.m_dims = m;
        Gallery gallery(config);
        for (const auto& [n, s] : plan.train) {
          gallery.enroll_features(dataset.subjects[n].id, dataset.subjects[n].sequences[s].sequence_id,
                                  features[flat_index(n, s)]);
        }
        try {
          gallery.finalize();
        } catch (const DataError& e) {
          throw DataError("split " + format_real(fraction) + ", K=" + std::to_string(k) + ", M=" +
                          std::to_string(m) + ": " + e.what());
        }

        EvaluationRow row{fraction, k, m, 0.0, 0, static_cast<int>(plan.test.size()), {}};
        row.probes.resize(plan.test.size());
        const auto probe_count = static_cast<long>(plan.test.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < probe_count; ++i) {
          const auto [n, s] = plan.test[static_cast<std::size_t>(i)];
          const MatchResult result = gallery.identify_features(features[flat_index(n, s)]);
          auto& probe = row.probes[i];
          probe.subject_id = dataset.subjects[n].id;
          probe.sequence_id = dataset.subjects[n].sequences[s].sequence_id;
          probe.predicted_id = gallery.person_id(result.predicted_person);
          probe.best_distance = result.total_distances[result.predicted_person][result.predicted_sequence];
        }
        for (const auto& p : row.probes) row.correct += p.correct() ? 1 : 0;
        row.ccr = row.total > 0 ? static_cast<double>(row.correct) / row.total : 0.0;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::string format_report_table(const EvaluationReport& report) {
  std::ostringstream out;
  char line[128];
  out << "seed " << report.rng_seed << '\n';
  if (!report.skipped_subjects.empty()) {
    out << "skipped " << report.skipped_subjects.size() << " subject(s) with fewer than 2 sequences\n";
  }
  std::snprintf(line, sizeof(line), "%-7s %4s %3s %8s %6s %8s\n", "split", "K", "M", "correct", "total", "CCR");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof(line), "%-7.2f %4d %3d %8d %6d %7.2f%%\n", row.train_fraction, row.k_segments,
                  row.m_dims, row.correct, row.total, 100.0 * row.ccr);
    out << line;
  }
  return out.str();
}

std::string format_report_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "split,segments,dims,correct,total,ccr,seed\n";
  for (const auto& row : report.rows) {
    out << format_real(row.train_fraction) << ',' << row.k_segments << ',' << row.m_dims << ',' << row.correct << ','
        << row.total << ',' << format_real(row.ccr) << ',' << report.rng_seed << '\n';
  }
  return out.str();
}

}  // namespace gait
