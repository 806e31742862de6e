#include "gait/matching.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gait/error.h"

namespace gait {

DistanceTensor::DistanceTensor(std::vector<int> sequences_per_person, int segments, double fill)
    : counts_(std::move(sequences_per_person)), segments_(segments) {
  if (segments < 1) throw UsageError("distance tensor needs at least one segment");
  offsets_.reserve(counts_.size() + 1);
  offsets_.push_back(0);
  for (int c : counts_) {
    if (c < 1) throw UsageError("every person needs at least one sequence");
    offsets_.push_back(offsets_.back() + static_cast<std::size_t>(c));
  }
  values_.assign(total_sequences() * static_cast<std::size_t>(segments), fill);
  pending_.assign(values_.size(), 0);
}

DistanceTensor distance_tensor(std::span<const WhitenedSegment> probe, const WhitenedGallery& gallery) {
  const int segments = static_cast<int>(probe.size());
  std::vector<int> counts;
  counts.reserve(gallery.size());
  for (const auto& person : gallery) counts.push_back(static_cast<int>(person.size()));
  DistanceTensor d(counts, segments);

  // (n, s) pairs in person-major order, so the parallel loop is flat.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(d.total_sequences());
  for (int n = 0; n < d.persons(); ++n) {
    for (int s = 0; s < d.sequences(n); ++s) {
      if (static_cast<int>(gallery[n][s].size()) != segments) {
        throw UsageError("gallery sequence has " + std::to_string(gallery[n][s].size()) + " segments, probe has " +
                         std::to_string(segments));
      }
      for (int k = 0; k < segments; ++k) {
        const auto& g = gallery[n][s][k];
        const auto& p = probe[k];
        if (!g.degenerate && !p.degenerate && g.values.size() != p.values.size()) {
          throw UsageError("feature dimension mismatch in segment " + std::to_string(k));
        }
      }
      pairs.emplace_back(n, s);
    }
  }

  const auto pair_count = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static) if (pair_count * segments >= 4096)
  for (long i = 0; i < pair_count; ++i) {
    const auto [n, s] = pairs[static_cast<std::size_t>(i)];
    for (int k = 0; k < segments; ++k) {
      const auto& g = gallery[n][s][k];
      const auto& p = probe[k];
      if (g.degenerate || p.degenerate) {
        d.at(n, s, k) = 0.0;
        d.set_pending(n, s, k, g.degenerate != p.degenerate);
        continue;
      }
      double sum = 0.0;
      for (std::size_t j = 0; j < p.values.size(); ++j) {
        const double diff = p.values[j] - g.values[j];
        sum += diff * diff;
      }
      d.at(n, s, k) = std::sqrt(sum);
    }
  }
  return d;
}

double max_distance(const DistanceTensor& d) {
  double out = 0.0;
  for (int n = 0; n < d.persons(); ++n) {
    for (int s = 0; s < d.sequences(n); ++s) {
      for (int k = 0; k < d.segments(); ++k) {
        if (!d.pending(n, s, k)) out = std::max(out, d.at(n, s, k));
      }
    }
  }
  return out;
}

WeightedDistances apply_matching_weights(const DistanceTensor& d) { return apply_matching_weights(d, max_distance(d)); }

WeightedDistances apply_matching_weights(const DistanceTensor& d, double d_max) {
  WeightedDistances out{d, {}, d_max};
  DistanceTensor& w = out.distances;
  const int persons = d.persons();
  const int segments = d.segments();

  for (int n = 0; n < persons; ++n) {
    for (int s = 0; s < d.sequences(n); ++s) {
      for (int k = 0; k < segments; ++k) {
        if (w.pending(n, s, k)) {
          w.at(n, s, k) = d_max;
          w.set_pending(n, s, k, false);
        }
      }
    }
  }
  const DistanceTensor resolved = w;

  out.selected.assign(static_cast<std::size_t>(segments), std::vector<bool>(d.total_sequences(), false));
  std::vector<bool> person_selected(static_cast<std::size_t>(persons));
  for (int k = 0; k < segments; ++k) {
    double cutoff = std::numeric_limits<double>::infinity();
    for (int n = 0; n < persons; ++n) {
      double sum = 0.0;
      for (int s = 0; s < d.sequences(n); ++s) sum += resolved.at(n, s, k);
      cutoff = std::min(cutoff, sum / d.sequences(n));
    }
    for (int n = 0; n < persons; ++n) {
      bool any = false;
      for (int s = 0; s < d.sequences(n) && !any; ++s) any = resolved.at(n, s, k) < cutoff;
      person_selected[n] = any;
    }
    auto& mask = out.selected[k];
    for (int n = 0; n < persons; ++n) {
      for (int s = 0; s < d.sequences(n); ++s) {
        mask[d.flat(n, s)] = person_selected[n];
        if (!person_selected[n]) w.at(n, s, k) = d_max;
      }
    }
  }
  return out;
}

TotalDistances total_distances(const DistanceTensor& d) {
  TotalDistances totals(static_cast<std::size_t>(d.persons()));
  for (int n = 0; n < d.persons(); ++n) {
    totals[n].assign(static_cast<std::size_t>(d.sequences(n)), 0.0);
    for (int s = 0; s < d.sequences(n); ++s) {
      double sum = 0.0;
      for (int k = 0; k < d.segments(); ++k) sum += d.at(n, s, k);
      totals[n][s] = sum;
    }
  }
  return totals;
}

MatchResult classify(const TotalDistances& totals) {
  MatchResult result;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n < static_cast<int>(totals.size()); ++n) {
    for (int s = 0; s < static_cast<int>(totals[n].size()); ++s) {
      // strict < keeps the earliest (lowest n, then s) minimum
      if (result.predicted_person < 0 || totals[n][s] < best) {
        best = totals[n][s];
        result.predicted_person = n;
        result.predicted_sequence = s;
      }
    }
  }
  if (result.predicted_person < 0) throw UsageError("cannot classify against an empty gallery");
  result.total_distances = totals;
  return result;
}

std::vector<RankedMatch> rank_matches(const TotalDistances& totals) {
  std::vector<RankedMatch> out;
  for (int n = 0; n < static_cast<int>(totals.size()); ++n) {
    for (int s = 0; s < static_cast<int>(totals[n].size()); ++s) out.push_back({n, s, totals[n][s]});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedMatch& a, const RankedMatch& b) { return a.distance < b.distance; });
  return out;
}

MatchResult match(std::span<const WhitenedSegment> probe, const WhitenedGallery& gallery) {
  const WeightedDistances weighted = apply_matching_weights(distance_tensor(probe, gallery));
  MatchResult result = classify(total_distances(weighted.distances));
  result.per_segment_selected = weighted.selected;
  return result;
}

}  // namespace gait
