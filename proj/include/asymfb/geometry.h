// Copyright 2026 The asymfb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ASYMFB_GEOMETRY_H_
#define ASYMFB_GEOMETRY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "asymfb/rng.h"

namespace asymfb {

using Vector = std::vector<double>;

// Axis-aligned box {x : lower <= x <= upper}. The only action-set shape the
// learners project onto; projection is a componentwise clamp.
class BoxSet {
 public:
  BoxSet(Vector lower, Vector upper);

  // Scalar interval [lo, hi].
  static BoxSet interval(double lo, double hi);
  // Cube [lo, hi]^dim.
  static BoxSet cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool contains(std::span<const double> x, double tol = 0.0) const;
  bool contains_origin() const;
  // Euclidean length of (upper - lower).
  double diameter() const;
  Vector center() const;

 private:
  Vector lower_;
  Vector upper_;
};

// Unit vector in R^d.
struct RandomDirection {
  Vector u;
};

// Euclidean projection onto the box. Throws std::invalid_argument on a
// dimension mismatch.
Vector project_box(std::span<const double> x, const BoxSet& set);

// (1 - delta) * set, scaled about the origin. Requires 0 <= delta < 1.
BoxSet shrink_set(const BoxSet& set, double delta);

// Uniform on the unit sphere of R^d, via normalized Gaussians. For d = 1 the
// result is -1 or +1 with equal probability.
RandomDirection sample_unit_sphere(Rng& rng, std::size_t d);

// Uniform in the closed unit ball of R^d.
Vector sample_unit_ball(Rng& rng, std::size_t d);

double norm2(std::span<const double> x);
double squared_distance(std::span<const double> x, std::span<const double> y);

}  // namespace asymfb

#endif  // ASYMFB_GEOMETRY_H_
