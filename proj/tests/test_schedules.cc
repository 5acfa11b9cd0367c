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
#include <stdexcept>

#include "asymfb/schedules.h"

using namespace asymfb;

TEST_CASE("experiment presets") {
  const BoundSchedule a(*schedule_preset("exp-a"), 5, 10, 1.2);
  CHECK(a.eta_f(3) == doctest::Approx(0.2));
  CHECK(a.eta_z(3) == doctest::Approx(0.2));
  CHECK(a.delta(2) == doctest::Approx(0.25));
  CHECK_FALSE(a.has_samples());
  CHECK_THROWS_AS(a.n_samples(1), std::logic_error);

  const BoundSchedule b(*schedule_preset("exp-b"), 1, 2, 1.0);
  CHECK(b.eta_z(5) == doctest::Approx(0.001));
  CHECK(b.n_samples(1) == 200);
  CHECK(b.n_samples(400) == 10);
}

TEST_CASE("rate presets") {
  const double m = 1.5;
  const BoundSchedule t1(*schedule_preset("theorem1"), 16, 10, m);
  CHECK(t1.delta(16) == doctest::Approx(1.0 / 4.0));
  CHECK(t1.eta_z(16) == doctest::Approx(std::pow(16.0, -0.25) * std::pow(16.0, -0.75)));
  CHECK(t1.eta_f(4) == doctest::Approx(0.5));

  const BoundSchedule t2(*schedule_preset("theorem2"), 5, 10, m);
  CHECK(t2.delta(8) == doctest::Approx(std::pow(5.0, 1.0 / 6) / std::cbrt(10.0) / 2.0));
  CHECK(t2.eta_z(4) == doctest::Approx(1.0 / (m * 4)));
  CHECK(t2.eta_f(4) == doctest::Approx(1.0 / (m * 4)));

  const BoundSchedule p2(*schedule_preset("prop2"), 10, 10, m);
  CHECK(p2.delta(27) == doctest::Approx(std::pow(10.0, -1.0 / 6) / 3.0));
  CHECK(p2.eta_z(2) == doctest::Approx(1.0 / (2 * m)));
}

TEST_CASE("every preset is positive, non-increasing, and delta < 1") {
  for (const auto& name : schedule_preset_names()) {
    CAPTURE(name);
    for (std::size_t nz : {0u, 1u, 5u, 10u}) {
      CAPTURE(nz);
      if (name == "theorem1" && nz <= 1) continue;  // delta_1 = 1, checked below
      const BoundSchedule s(*schedule_preset(name), nz, 10, 1.19);
      for (std::size_t t = 1; t < 2000; ++t) {
        CHECK(s.delta(t) < 1.0);
        CHECK(s.delta(t) > 0.0);
        CHECK(s.eta_f(t + 1) <= s.eta_f(t));
        CHECK(s.eta_z(t + 1) <= s.eta_z(t));
        CHECK(s.delta(t + 1) <= s.delta(t));
      }
    }
  }
  CHECK_FALSE(schedule_preset("nope").has_value());
}

TEST_CASE("theorem1 needs at least two zeroth-order agents") {
  const ScheduleSet s = *schedule_preset("theorem1");
  CHECK_THROWS_AS(BoundSchedule(s, 1, 10, 1.19), std::invalid_argument);
  CHECK_NOTHROW(BoundSchedule(s, 0, 10, 1.19));
  CHECK(BoundSchedule(s, 2, 10, 1.19).delta(1) < 1.0);
}

TEST_CASE("invalid schedules are rejected") {
  ScheduleSet s = *schedule_preset("exp-a");
  s.delta.coeff = 1.5;
  CHECK_THROWS_AS(BoundSchedule(s, 1, 2, 1.0), std::invalid_argument);
  s = *schedule_preset("exp-a");
  s.eta_f.t_exp = 0.5;
  CHECK_THROWS_AS(BoundSchedule(s, 1, 2, 1.0), std::invalid_argument);
  s = *schedule_preset("theorem2");
  CHECK_THROWS_AS(BoundSchedule(s, 1, 2, std::nullopt), std::invalid_argument);
  s = *schedule_preset("exp-b");
  s.samples->n0 = 0;
  CHECK_THROWS_AS(BoundSchedule(s, 1, 2, 1.0), std::invalid_argument);
}
