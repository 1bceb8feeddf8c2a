#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "altbc/io.hpp"
#include "altbc/simulate.hpp"

#include "support/test_support.hpp"

using namespace altbc;
using S = CsitState;

TEST_CASE("channel draws are deterministic in the seed") {
  ChannelRealization a = draw_channels(7, 3);
  ChannelRealization b = draw_channels(7, 3);
  REQUIRE(a.slots.size() == 3);
  for (size_t t = 0; t < 3; ++t) {
    CHECK(a.slots[t].h == b.slots[t].h);
    CHECK(a.slots[t].g == b.slots[t].g);
  }
  ChannelRealization c = draw_channels(8, 3);
  CHECK(a.slots[0].h != c.slots[0].h);
}

TEST_CASE("channel entries have unit mean power") {
  ChannelRng rng(123);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += std::norm(rng.next_cn01());
  CHECK(std::abs(sum / n - 1.0) < 0.02);
}

TEST_CASE("dof_slope recovers an exact line") {
  std::vector<RateSample> samples;
  for (double db : {10.0, 20.0, 30.0, 40.0}) {
    double l2p = std::log2(std::pow(10.0, db / 10.0));
    samples.push_back({db, 1.5 * l2p, 0.25 * l2p + 3.0});
  }
  auto [d1, d2] = dof_slope(samples);
  CHECK(d1 == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(d2 == doctest::Approx(0.25).epsilon(1e-9));
  CHECK_THROWS_AS(dof_slope({samples[0]}), std::invalid_argument);
}

TEST_CASE("sweep config validation") {
  CHECK_THROWS_AS(SweepConfig::from_range(20, 60, -5, 10, 1), std::invalid_argument);
  SweepConfig bad;
  bad.snr_grid_db = {10.0, 20.0, 25.0};
  bad.trials_per_point = 1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  SweepConfig one_point;
  one_point.snr_grid_db = {10.0};
  one_point.trials_per_point = 1;
  CHECK_THROWS_AS(one_point.validate(), std::invalid_argument);
}

TEST_CASE("S1 carries nothing to receiver 2") {
  auto cfg = SweepConfig::from_range(10, 40, 10, 20, 5);
  for (const RateSample& s : rate_sweep("S1", cfg)) {
    CHECK(s.rate2 == 0.0);
    CHECK(s.rate1 > 0.0);
  }
}

TEST_CASE("S2 sweeps like an interference-free stream per receiver") {
  auto cfg = SweepConfig::from_range(20, 60, 5, 200, 11);
  std::vector<RateSample> samples = rate_sweep("S2", cfg);

  // Monotone averaged curves.
  for (size_t i = 1; i < samples.size(); ++i) {
    CHECK(samples[i].rate1 >= samples[i - 1].rate1);
    CHECK(samples[i].rate2 >= samples[i - 1].rate2);
  }
  // Symmetric rates and unit slope each.
  for (const RateSample& s : samples) CHECK(std::abs(s.rate1 - s.rate2) < 0.2);
  auto [d1, d2] = dof_slope(samples);
  CHECK(std::abs(d1 - 1.0) < 0.05);
  CHECK(std::abs(d2 - 1.0) < 0.05);
  // log2(P) minus an O(1) offset.
  double log2p = std::log2(1e6);
  CHECK(std::abs(samples.back().rate1 - log2p) < 4.0);

  // Bit-identical reruns.
  std::vector<RateSample> again = rate_sweep("S2", cfg);
  for (size_t i = 0; i < samples.size(); ++i) {
    CHECK(samples[i].rate1 == again[i].rate1);
    CHECK(samples[i].rate2 == again[i].rate2);
  }
}

TEST_CASE("retransmission scheme gains 2/3 of a full stream per 10 dB") {
  auto cfg = SweepConfig::from_range(40, 50, 10, 400, 3);
  std::vector<RateSample> samples = rate_sweep("S4/3-1", cfg);
  double gain = samples[1].rate1 - samples[0].rate1;
  // (2/3) * 10 * log2(10) / 10 bits per 10 dB.
  CHECK(std::abs(gain - (2.0 / 3.0) * std::log2(10.0)) < 0.15);
}

TEST_CASE("slopes of the headline schemes, small-trial version") {
  auto cfg = SweepConfig::from_range(20, 60, 5, 150, 17);
  struct Expect {
    const char* id;
    double d1, d2;
  };
  for (const Expect& e : {Expect{"S3/2-3", 1.0, 0.5}, Expect{"S5/3-3", 1.0, 2.0 / 3.0},
                          Expect{"S8/5", 0.8, 0.8}}) {
    auto [d1, d2] = dof_slope(rate_sweep(e.id, cfg));
    CHECK(std::abs(d1 - e.d1) < 0.1);
    CHECK(std::abs(d2 - e.d2) < 0.1);
  }
}

TEST_CASE("schedule sweep matches the fraction-weighted DoF pair") {
  LambdaPmf pmf = LambdaPmf::from_entries({{S::PN, Rational(1, 2)}}, true);
  DofPoint target{Rational(3, 4), Rational(3, 4)};
  Schedule sched = compose_point(pmf, target);
  auto cfg = SweepConfig::from_range(20, 60, 5, 150, 19);
  std::vector<RateSample> samples = rate_sweep(sched, cfg);
  auto [d1, d2] = dof_slope(samples);
  CHECK(std::abs(d1 - 0.75) < 0.1);
  CHECK(std::abs(d2 - 0.75) < 0.1);

  // Discarded blocks contribute no rate.
  Schedule muted = sched;
  for (ScheduleRow& row : muted.rows) row.discard2 = true;
  auto [m1, m2] = dof_slope(rate_sweep(muted, cfg));
  CHECK(std::abs(m1 - 0.75) < 0.1);
  CHECK(m2 == 0.0);
}

TEST_CASE("a six-row apex schedule sweeps to its fraction-weighted DoF pair") {
  LambdaPmf pmf = LambdaPmf::from_entries({{S::PD, Rational(1, 4)},
                                           {S::PN, Rational(1, 8)},
                                           {S::DD, Rational(1, 8)},
                                           {S::NN, Rational(1, 8)}},
                                          true);
  Schedule sched = compose_corner(pmf, Corner::P0);
  REQUIRE(sched.rows.size() >= 5);  // mixes the 5/3 pair and both MAT variants
  auto cfg = SweepConfig::from_range(20, 60, 5, 60, 29);
  auto [d1, d2] = dof_slope(rate_sweep(sched, cfg));
  double apex = 19.0 / 24.0;
  CHECK(std::abs(d1 - apex) < 0.1);
  CHECK(std::abs(d2 - apex) < 0.1);
}

TEST_CASE("csv output carries the mandatory header and digits") {
  auto cfg = SweepConfig::from_range(10, 20, 10, 5, 23);
  std::string csv = sweep_to_csv(rate_sweep("S2", cfg), 5, "S2");
  CHECK(csv.rfind("snr_db,rate1,rate2,trials,scheme_id\n", 0) == 0);
  size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 3);
  CHECK(csv.find(",S2\n") != std::string::npos);
}

TEST_CASE("trial seeding is a fixed splitting function") {
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
  CHECK(trial_seed(5, 7) == trial_seed(5, 7));
}
