#pragma once

// Straight-line single-threaded versions of the parallel kernels. They follow
// the defining formulas literally and exist to check the optimised paths and
// as the baseline in bench_kernels.

#include <optional>
#include <span>

#include "gait/energy_image.h"
#include "gait/matching.h"
#include "gait/moments.h"

namespace gait::serial {

// Mean of difference_images(sequence).
ActiveEnergyImage active_energy_image(const GaitSequence& sequence);

// mu_ab = sum (x - xc)^a (y - yc)^b I(x, y), one pass per order pair.
std::optional<CentralMoments> central_moments(const RealImage& image);

RealImage apply_affine(const RealImage& image, const AffineTransform& t, int out_width, int out_height);

DistanceTensor distance_tensor(std::span<const WhitenedSegment> probe, const WhitenedGallery& gallery);

}  // namespace gait::serial
