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

#include "asymfb/schedules.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asymfb/risk.h"

namespace asymfb {
namespace {

void check_family(const PowerLaw& p, const char* name, std::optional<double> m) {
  if (!(p.coeff > 0.0)) {
    throw std::invalid_argument(std::string("schedule ") + name +
                                ": coefficient must be positive");
  }
  if (!(p.t_exp <= 0.0)) {
    throw std::invalid_argument(std::string("schedule ") + name +
                                ": t exponent must be <= 0 (non-increasing)");
  }
  if (p.inverse_m && !(m && *m > 0.0)) {
    throw std::invalid_argument(std::string("schedule ") + name +
                                ": 1/m scaling needs a positive modulus m");
  }
}

PowerLaw per_t(double coeff, double t_exp) {
  PowerLaw p;
  p.coeff = coeff;
  p.t_exp = t_exp;
  return p;
}

PowerLaw inverse_mt() {
  PowerLaw p = per_t(1.0, -1.0);
  p.inverse_m = true;
  return p;
}

}  // namespace

double PowerLaw::operator()(std::size_t t, std::size_t num_zo,
                            std::size_t num_agents,
                            std::optional<double> m) const {
  const double nz = static_cast<double>(std::max<std::size_t>(num_zo, 1));
  double v = coeff * std::pow(nz, nz_exp) *
             std::pow(static_cast<double>(num_agents), n_exp) *
             std::pow(static_cast<double>(t), t_exp);
  if (inverse_m) v /= m.value();
  return v;
}

std::size_t SampleSchedule::at(std::size_t t) const {
  return sampling_schedule(n0, t, exponent);
}

BoundSchedule::BoundSchedule(const ScheduleSet& set, std::size_t num_zo,
                             std::size_t num_agents, std::optional<double> m)
    : set_(set), num_zo_(num_zo), num_agents_(num_agents), m_(m) {
  check_family(set_.eta_f, "eta_f", m_);
  check_family(set_.eta_z, "eta_z", m_);
  check_family(set_.delta, "delta", m_);
  // delta is unused when no agent is zeroth-order.
  if (num_zo_ > 0 && !(delta(1) < 1.0)) {
    throw std::invalid_argument("schedule delta: delta_1 = " +
                                std::to_string(delta(1)) + " must be < 1");
  }
  if (set_.samples && set_.samples->n0 == 0) {
    throw std::invalid_argument("schedule samples: n0 must be >= 1");
  }
  if (set_.samples && !(set_.samples->exponent >= 0.0)) {
    throw std::invalid_argument("schedule samples: exponent must be >= 0");
  }
}

double BoundSchedule::eta_f(std::size_t t) const {
  return set_.eta_f(t, num_zo_, num_agents_, m_);
}
double BoundSchedule::eta_z(std::size_t t) const {
  return set_.eta_z(t, num_zo_, num_agents_, m_);
}
double BoundSchedule::delta(std::size_t t) const {
  return set_.delta(t, num_zo_, num_agents_, m_);
}

std::size_t BoundSchedule::n_samples(std::size_t t) const {
  if (!set_.samples) {
    throw std::logic_error("schedule '" + set_.name +
                           "' has no sample-count family");
  }
  return set_.samples->at(t);
}

std::optional<ScheduleSet> schedule_preset(const std::string& name) {
  ScheduleSet s;
  s.name = name;
  if (name == "theorem1") {
    // delta = N_z^-1/4 t^-1/4, eta_z = N_z^-1/4 t^-3/4, eta_f = t^-1/2.
    s.delta = {1.0, -0.25, 0.0, -0.25, false};
    s.eta_z = {1.0, -0.25, 0.0, -0.75, false};
    s.eta_f = per_t(1.0, -0.5);
  } else if (name == "theorem2") {
    // delta = N_z^1/6 N^-1/3 t^-1/3, eta = 1/(m t).
    s.delta = {1.0, 1.0 / 6.0, -1.0 / 3.0, -1.0 / 3.0, false};
    s.eta_z = inverse_mt();
    s.eta_f = inverse_mt();
  } else if (name == "prop1" || name == "prop2") {
    // eta = 1/(m t), delta = N^-1/6 t^-1/3 (unused by first-order agents).
    s.delta = {1.0, 0.0, -1.0 / 6.0, -1.0 / 3.0, false};
    s.eta_z = inverse_mt();
    s.eta_f = inverse_mt();
  } else if (name == "exp-a") {
    s.eta_f = per_t(0.6, -1.0);
    s.eta_z = per_t(0.6, -1.0);
    s.delta = per_t(0.5, -1.0);
  } else if (name == "exp-b") {
    s.eta_f = per_t(0.005, -1.0);
    s.eta_z = per_t(0.005, -1.0);
    s.delta = per_t(0.5, -1.0);
    s.samples = SampleSchedule{};
  } else {
    return std::nullopt;
  }
  return s;
}

std::vector<std::string> schedule_preset_names() {
  return {"theorem1", "theorem2", "prop1", "prop2", "exp-a", "exp-b"};
}

}  // namespace asymfb
