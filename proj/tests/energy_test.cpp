// Copyright 2026 The hetfor Authors
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

#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "hetfor/energy.hpp"

using hetfor::compute_energy;
using hetfor::PowerModel;
using hetfor::ResourceKind;
using hetfor::RunReport;
using hetfor::TokenSummary;

namespace {

RunReport make_report(double wall, std::vector<TokenSummary> tokens) {
  RunReport report;
  report.wall_time = wall;
  report.per_resource_busy = std::move(tokens);
  return report;
}

}  // namespace

TEST_SUITE("energy") {

TEST_CASE("one fully busy core at 0.2 W for 10 s costs 2 J") {
  PowerModel pm{};
  pm.p_cc_active = 0.2;
  pm.p_cc_idle = 0.0;
  pm.p_fc_active = 0.0;
  pm.p_fc_idle = 0.0;
  pm.p_static = 0.0;
  const RunReport report =
      make_report(10.0, {TokenSummary{ResourceKind::CC, 0, 10.0}});
  CHECK(compute_energy(report, pm) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("a 5 s all-idle run pays only the 0.5 W static floor: 2.5 J") {
  PowerModel pm{};
  pm.p_static = 0.5;
  const RunReport report = make_report(5.0, {});
  CHECK(compute_energy(report, pm) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("mixed 2 CC + 1 FC run matches hand-summed trace integration") {
  PowerModel pm{};
  pm.p_cc_active = 0.25;
  pm.p_cc_idle = 0.05;
  pm.p_fc_active = 0.40;
  pm.p_fc_idle = 0.10;
  pm.p_static = 0.15;
  // wall = 4 s; CC0 busy 3 s, CC1 busy 2 s, FC0 busy 3.5 s.
  const RunReport report =
      make_report(4.0, {TokenSummary{ResourceKind::CC, 0, 3.0},
                        TokenSummary{ResourceKind::CC, 1, 2.0},
                        TokenSummary{ResourceKind::FC, 0, 3.5}});
  const double expected = 3.0 * 0.25 + 1.0 * 0.05   // CC0
                          + 2.0 * 0.25 + 2.0 * 0.05  // CC1
                          + 3.5 * 0.40 + 0.5 * 0.10  // FC0
                          + 4.0 * 0.15;              // static
  CHECK(compute_energy(report, pm) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("raising any power coefficient never decreases the energy") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> power(0.0, 1.0);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double wall = 0.1 + frac(rng) * 10.0;
    std::vector<TokenSummary> tokens;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      tokens.push_back(TokenSummary{
          (rng() % 2 == 0) ? ResourceKind::CC : ResourceKind::FC, i,
          frac(rng) * wall});
    }
    const RunReport report = make_report(wall, tokens);

    PowerModel pm{};
    pm.p_cc_idle = power(rng);
    pm.p_cc_active = pm.p_cc_idle + power(rng);
    pm.p_fc_idle = power(rng);
    pm.p_fc_active = pm.p_fc_idle + power(rng);
    pm.p_static = power(rng);
    const double base = compute_energy(report, pm);

    const double bump = 0.01 + power(rng);
    PowerModel variants[5] = {pm, pm, pm, pm, pm};
    variants[0].p_cc_active += bump;
    variants[1].p_cc_idle += bump;
    variants[1].p_cc_active += bump;  // keep active >= idle
    variants[2].p_fc_active += bump;
    variants[3].p_fc_idle += bump;
    variants[3].p_fc_active += bump;
    variants[4].p_static += bump;
    for (const PowerModel& v : variants) {
      CHECK(compute_energy(report, v) >= base);
    }
  }
}

TEST_CASE("power models reject negative, non-finite, and inverted values") {
  PowerModel pm{};
  pm.p_cc_active = 0.2;
  pm.p_cc_idle = 0.02;
  pm.p_fc_active = 0.3;
  pm.p_fc_idle = 0.03;
  pm.p_static = 0.1;
  CHECK_NOTHROW(pm.validate());

  PowerModel bad = pm;
  bad.p_static = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = pm;
  bad.p_cc_active = 0.01;  // below idle
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = pm;
  bad.p_fc_idle = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("busy time beyond the wall time is clamped, not negative idle") {
  PowerModel pm{};
  pm.p_cc_active = 1.0;
  pm.p_cc_idle = 0.5;
  // busy = 1.2 s but wall = 1.0 s: treat the token as busy the whole wall.
  const RunReport report =
      make_report(1.0, {TokenSummary{ResourceKind::CC, 0, 1.2}});
  CHECK(compute_energy(report, pm) == doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
