#pragma once

#include <array>
#include <span>
#include <vector>

#include "gait/moments.h"

namespace gait {

// Principal components whose eigenvalue is at or below this fraction of the
// largest eigenvalue are treated as absent; asking for them is an error.
// Relative because AMIs of a real-valued energy image scale with intensity.
inline constexpr double kEigenvalueFloor = 1e-12;

// Per-segment PCA whitening model fitted on gallery AMI vectors.
struct WhiteningModel {
  int segment_index = 0;
  std::array<double, kAmiCount> mean{};
  std::vector<double> eigenvalues;                 // M values, descending
  std::vector<std::array<double, kAmiCount>> basis;  // M orthonormal rows

  int output_dim() const { return static_cast<int>(eigenvalues.size()); }
  bool operator==(const WhiteningModel&) const = default;
};

struct WhitenedFeature {
  std::vector<double> values;
  int segment_index = 0;
};

// Mean-centred covariance (1/(n-1)) eigendecomposition, computed through the
// SVD of the centred sample matrix. The top `m` directions are kept; each
// basis row is signed so its largest-magnitude entry is positive.
// Throws DataError for fewer than 2 samples or when fewer than m eigenvalues
// exceed kEigenvalueFloor * largest ("insufficient variance rank").
WhiteningModel fit_whitening(std::span<const AmiVector> samples, int m, int segment_index = 0);

// values_i = basis_i . (feature - mean) / sqrt(eigenvalue_i)
WhitenedFeature whiten(const WhiteningModel& model, const AmiVector& feature);

}  // namespace gait
