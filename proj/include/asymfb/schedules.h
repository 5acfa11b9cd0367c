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

#ifndef ASYMFB_SCHEDULES_H_
#define ASYMFB_SCHEDULES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace asymfb {

// coeff * N_z^nz_exp * N^n_exp * t^t_exp, optionally divided by the game's
// strong-monotonicity modulus m.
struct PowerLaw {
  double coeff = 1.0;
  double nz_exp = 0.0;
  double n_exp = 0.0;
  double t_exp = 0.0;
  bool inverse_m = false;

  // N_z enters as max(N_z, 1): with no zeroth-order agents the value is
  // never used, and this keeps negative exponents finite.
  double operator()(std::size_t t, std::size_t num_zo, std::size_t num_agents,
                    std::optional<double> m) const;
};

struct SampleSchedule {
  std::size_t n0 = 200;
  double exponent = 0.5;

  std::size_t at(std::size_t t) const;
};

struct ScheduleSet {
  std::string name;
  PowerLaw eta_f;
  PowerLaw eta_z;
  PowerLaw delta;
  std::optional<SampleSchedule> samples;
};

// A schedule evaluated for a fixed (N_z, N, m). Construction checks that
// every family is positive and non-increasing and that delta_1 < 1.
class BoundSchedule {
 public:
  BoundSchedule(const ScheduleSet& set, std::size_t num_zo,
                std::size_t num_agents, std::optional<double> m);

  double eta_f(std::size_t t) const;
  double eta_z(std::size_t t) const;
  double delta(std::size_t t) const;
  bool has_samples() const { return set_.samples.has_value(); }
  std::size_t n_samples(std::size_t t) const;
  const ScheduleSet& set() const { return set_; }
  std::size_t num_zo() const { return num_zo_; }

 private:
  ScheduleSet set_;
  std::size_t num_zo_;
  std::size_t num_agents_;
  std::optional<double> m_;
};

// theorem1, theorem2, prop1, prop2, exp-a, exp-b.
std::optional<ScheduleSet> schedule_preset(const std::string& name);
std::vector<std::string> schedule_preset_names();

}  // namespace asymfb

#endif  // ASYMFB_SCHEDULES_H_
