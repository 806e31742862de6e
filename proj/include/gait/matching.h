#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gait {

struct WhitenedSegment {
  std::vector<double> values;
  bool degenerate = false;
};

using WhitenedSequence = std::vector<WhitenedSegment>;  // one entry per segment
using WhitenedPerson = std::vector<WhitenedSequence>;   // one entry per sequence
using WhitenedGallery = std::vector<WhitenedPerson>;    // one entry per person

// d(n, s, k): distance between the probe and sequence s of person n in
// segment k. Persons may have different sequence counts.
//
// An entry can be marked pending when exactly one side of the comparison is a
// degenerate segment; weighting resolves it to the global maximum distance.
class DistanceTensor {
 public:
  DistanceTensor() = default;
  DistanceTensor(std::vector<int> sequences_per_person, int segments, double fill = 0.0);

  int persons() const { return static_cast<int>(counts_.size()); }
  int sequences(int n) const { return counts_[static_cast<std::size_t>(n)]; }
  int segments() const { return segments_; }
  std::size_t total_sequences() const { return offsets_.empty() ? 0 : offsets_.back(); }
  const std::vector<int>& sequences_per_person() const { return counts_; }

  // Position of (n, s) in person-major order.
  std::size_t flat(int n, int s) const { return offsets_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(s); }

  double& at(int n, int s, int k) { return values_[index(n, s, k)]; }
  double at(int n, int s, int k) const { return values_[index(n, s, k)]; }
  bool pending(int n, int s, int k) const { return pending_[index(n, s, k)] != 0; }
  void set_pending(int n, int s, int k, bool on) { pending_[index(n, s, k)] = on ? 1 : 0; }

  bool operator==(const DistanceTensor&) const = default;

 private:
  std::size_t index(int n, int s, int k) const {
    return flat(n, s) * static_cast<std::size_t>(segments_) + static_cast<std::size_t>(k);
  }

  std::vector<int> counts_;
  std::vector<std::size_t> offsets_;  // prefix sums of counts_, size persons + 1
  int segments_ = 0;
  std::vector<double> values_;
  std::vector<std::uint8_t> pending_;
};

// Euclidean distance per (person, sequence, segment). Both sides degenerate
// gives 0; exactly one degenerate marks the entry pending.
// Parallel over gallery sequences; see serial::distance_tensor.
DistanceTensor distance_tensor(std::span<const WhitenedSegment> probe, const WhitenedGallery& gallery);

struct WeightedDistances {
  DistanceTensor distances;
  std::vector<std::vector<bool>> selected;  // [k][flat(n, s)]
  double d_max = 0.0;
};

// Segment-wise selection rule. For each segment k:
//   mean_n = average of d(n, ., k) over person n's own sequences
//   cutoff = min_n mean_n
//   select (n, s) with d(n, s, k) < cutoff, then extend the selection to every
//   sequence of any person with at least one selected sequence.
// Selected entries keep their distance; all others become d_max, the maximum
// over the whole input tensor (pending entries resolve to d_max first).
WeightedDistances apply_matching_weights(const DistanceTensor& d);
// Same rule with d_max supplied by the caller.
WeightedDistances apply_matching_weights(const DistanceTensor& d, double d_max);

// Largest non-pending entry; 0 if there is none.
double max_distance(const DistanceTensor& d);

using TotalDistances = std::vector<std::vector<double>>;  // [n][s]

// D(n, s) = sum over segments of d(n, s, k).
TotalDistances total_distances(const DistanceTensor& d);

struct MatchResult {
  int predicted_person = -1;
  int predicted_sequence = -1;
  TotalDistances total_distances;
  std::vector<std::vector<bool>> per_segment_selected;
};

// Nearest neighbour (k = 1) over all gallery sequences. Ties go to the lowest
// person index, then the lowest sequence index. Throws UsageError if empty.
MatchResult classify(const TotalDistances& totals);

struct RankedMatch {
  int person = 0;
  int sequence = 0;
  double distance = 0.0;
};

// All (n, s) ordered by total distance with the same tie-break as classify.
std::vector<RankedMatch> rank_matches(const TotalDistances& totals);

// distance_tensor -> apply_matching_weights -> total_distances -> classify.
MatchResult match(std::span<const WhitenedSegment> probe, const WhitenedGallery& gallery);

}  // namespace gait
