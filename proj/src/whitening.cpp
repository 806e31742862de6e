#include "gait/whitening.h"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace gait {

WhiteningModel fit_whitening(std::span<const AmiVector> samples, int m, int segment_index) {
  constexpr int dims = static_cast<int>(kAmiCount);
  if (m < 1 || m > dims) throw UsageError("output dimension must lie in [1, 10], got " + std::to_string(m));
  if (samples.size() < 2) {
    throw DataError("insufficient samples for whitening segment " + std::to_string(segment_index) + ": " +
                    std::to_string(samples.size()));
  }
  const auto count = static_cast<Eigen::Index>(samples.size());

  WhiteningModel model;
  model.segment_index = segment_index;
  for (const auto& s : samples) {
    for (int j = 0; j < dims; ++j) model.mean[j] += s[j];
  }
  for (auto& v : model.mean) v /= static_cast<double>(count);

  Eigen::MatrixXd centred(count, dims);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (int j = 0; j < dims; ++j) centred(i, j) = samples[static_cast<std::size_t>(i)][j] - model.mean[j];
  }

  // cov = X^T X / (n-1): right singular vectors are its eigenvectors and
  // sigma^2 / (n-1) its eigenvalues, already in descending order.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const Eigen::MatrixXd& v = svd.matrixV();

  const double largest = sigma(0) * sigma(0) / static_cast<double>(count - 1);
  int available = 0;
  for (Eigen::Index i = 0; i < sigma.size() && largest > 0.0; ++i) {
    if (sigma(i) * sigma(i) / static_cast<double>(count - 1) > kEigenvalueFloor * largest) ++available;
  }
  if (m > available) {
    throw DataError("insufficient variance rank in segment " + std::to_string(segment_index) + ": requested " +
                    std::to_string(m) + " components, " + std::to_string(available) + " available");
  }

  model.eigenvalues.resize(static_cast<std::size_t>(m));
  model.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    model.eigenvalues[i] = sigma(i) * sigma(i) / static_cast<double>(count - 1);
    int pivot = 0;
    for (int j = 1; j < dims; ++j) {
      if (std::abs(v(j, i)) > std::abs(v(pivot, i))) pivot = j;
    }
    const double sign = v(pivot, i) < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < dims; ++j) model.basis[i][j] = sign * v(j, i);
  }
  return model;
}

WhitenedFeature whiten(const WhiteningModel& model, const AmiVector& feature) {
  WhitenedFeature out;
  out.segment_index = model.segment_index;
  out.values.resize(model.eigenvalues.size());
  std::array<double, kAmiCount> centred{};
  for (std::size_t j = 0; j < kAmiCount; ++j) centred[j] = feature[j] - model.mean[j];
  for (std::size_t i = 0; i < model.eigenvalues.size(); ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < kAmiCount; ++j) dot += model.basis[i][j] * centred[j];
    out.values[i] = dot / std::sqrt(model.eigenvalues[i]);
  }
  return out;
}

}  // namespace gait
