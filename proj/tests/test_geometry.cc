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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "asymfb/geometry.h"
#include "asymfb/rng.h"

using namespace asymfb;

TEST_CASE("project_box clamps per coordinate") {
  CHECK(project_box(Vector{5.0}, BoxSet::interval(0, 3)) == Vector{3.0});
  CHECK(project_box(Vector{1.2}, BoxSet::interval(0, 3)) == Vector{1.2});
  CHECK(project_box(Vector{-0.4, 2.0}, BoxSet::cube(2, 0, 3)) ==
        Vector{0.0, 2.0});
  CHECK_THROWS_AS(project_box(Vector{1.0, 2.0}, BoxSet::interval(0, 3)),
                  std::invalid_argument);
}

TEST_CASE("projection is non-expansive") {
  Rng rng(11);
  const BoxSet box({-1.0, 0.0, 2.0}, {1.0, 3.0, 2.5});
  for (int k = 0; k < 1000; ++k) {
    Vector x(3), y(3);
    for (auto& v : x) v = rng.uniform(-5, 5);
    for (auto& v : y) v = rng.uniform(-5, 5);
    CHECK(squared_distance(project_box(x, box), project_box(y, box)) <=
          squared_distance(x, y) + 1e-15);
  }
}

TEST_CASE("BoxSet rejects malformed bounds") {
  CHECK_THROWS_AS(BoxSet({0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(BoxSet::interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoxSet::interval(0.0, INFINITY), std::invalid_argument);
}

TEST_CASE("shrink_set scales about the origin") {
  auto s = shrink_set(BoxSet::interval(0, 3), 0.5);
  CHECK(s.lower()[0] == 0.0);
  CHECK(s.upper()[0] == 1.5);
  s = shrink_set(BoxSet::interval(-1, 1), 0.0);
  CHECK(s.lower()[0] == -1.0);
  CHECK(s.upper()[0] == 1.0);
  s = shrink_set(BoxSet::interval(-2, 4), 0.25);
  CHECK(s.lower()[0] == doctest::Approx(-1.5));
  CHECK(s.upper()[0] == doctest::Approx(3.0));
  CHECK_THROWS_AS(shrink_set(BoxSet::interval(0, 3), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(shrink_set(BoxSet::interval(0, 3), -0.1), std::invalid_argument);
}

TEST_CASE("shrunk set stays inside a set containing the origin") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const double lo = rng.uniform(-3, 0), hi = rng.uniform(0, 3);
    const BoxSet box = BoxSet::interval(lo, hi);
    const BoxSet s = shrink_set(box, rng.uniform(0, 0.99));
    CHECK(box.contains(s.lower()));
    CHECK(box.contains(s.upper()));
  }
}

TEST_CASE("shrunk-set point plus delta u can leave [0, U]") {
  // Base action at the lower corner of (1 - delta) X, direction pointing out.
  const BoxSet box = BoxSet::interval(0, 3);
  const double delta = 0.5;
  const BoxSet s = shrink_set(box, delta);
  const double played = s.lower()[0] + delta * -1.0;
  CHECK_FALSE(box.contains(Vector{played}));
}

TEST_CASE("sphere samples") {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const double u = sample_unit_sphere(rng, 1).u[0];
    CHECK((u == 1.0 || u == -1.0));
  }
  for (int k = 0; k < 100; ++k) {
    CHECK(norm2(sample_unit_sphere(rng, 3).u) == doctest::Approx(1.0).epsilon(1e-12));
  }
  double mean = 0.0;
  for (int k = 0; k < 100000; ++k) mean += sample_unit_sphere(rng, 1).u[0];
  CHECK(std::abs(mean / 1e5) < 0.02);
  CHECK_THROWS_AS(sample_unit_sphere(rng, 0), std::invalid_argument);
}

TEST_CASE("sphere sampler is uniform over quarter arcs in d = 2") {
  Rng rng(6);
  constexpr int kDraws = 100000;
  int counts[4] = {0, 0, 0, 0};
  int shifted = 0;
  for (int k = 0; k < kDraws; ++k) {
    const Vector u = sample_unit_sphere(rng, 2).u;
    const double angle = std::atan2(u[1], u[0]) + std::numbers::pi;
    ++counts[std::min(3, static_cast<int>(angle / (std::numbers::pi / 2)))];
    // A quarter arc not aligned with the axes: [pi/5, pi/5 + pi/2).
    const double a = std::atan2(u[1], u[0]);
    if (a >= std::numbers::pi / 5 && a < std::numbers::pi / 5 + std::numbers::pi / 2) {
      ++shifted;
    }
  }
  for (int c : counts) CHECK(std::abs(c / double(kDraws) - 0.25) <= 0.01);
  CHECK(std::abs(shifted / double(kDraws) - 0.25) <= 0.01);
}

TEST_CASE("ball samples") {
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const double w = sample_unit_ball(rng, 1)[0];
    CHECK(w >= -1.0);
    CHECK(w <= 1.0);
  }
  double radius = 0.0;
  for (int k = 0; k < 100000; ++k) radius += norm2(sample_unit_ball(rng, 2));
  // E[r] = d / (d + 1) for the uniform ball.
  CHECK(std::abs(radius / 1e5 - 2.0 / 3.0) < 0.02);
  for (std::size_t d = 1; d <= 6; ++d) {
    for (int k = 0; k < 50; ++k) CHECK(norm2(sample_unit_ball(rng, d)) <= 1.0);
  }
  CHECK_THROWS_AS(sample_unit_ball(rng, 0), std::invalid_argument);
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a = Rng::for_stream(1, 2, 3);
  Rng b = Rng::for_stream(1, 2, 3);
  Rng c = Rng::for_stream(1, 2, 4);
  Rng d = Rng::for_stream(1, 2, 3, StreamTag::kCostSample);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
  Rng e(9);
  for (int k = 0; k < 1000; ++k) {
    const double u = e.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
