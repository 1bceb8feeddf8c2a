#include "altbc/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace altbc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateNorm = 1e-12;
constexpr int kMaxRedraws = 8;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double snr_db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double log2_p_of(double db) { return std::log2(snr_db_to_linear(db)); }

}  // namespace

SweepConfig SweepConfig::from_range(double snr_from_db, double snr_to_db, double snr_step_db,
                                    int trials, std::uint64_t seed) {
  SweepConfig cfg;
  cfg.trials_per_point = trials;
  cfg.seed = seed;
  if (snr_step_db <= 0.0) throw std::invalid_argument("SweepConfig: step must be positive");
  for (double db = snr_from_db; db <= snr_to_db + 1e-9; db += snr_step_db) {
    cfg.snr_grid_db.push_back(db);
  }
  cfg.validate();
  return cfg;
}

void SweepConfig::validate() const {
  if (snr_grid_db.size() < 2) throw std::invalid_argument("SweepConfig: need >= 2 SNR points");
  if (trials_per_point < 1) throw std::invalid_argument("SweepConfig: trials must be >= 1");
  double step = snr_grid_db[1] - snr_grid_db[0];
  if (step <= 0.0) throw std::invalid_argument("SweepConfig: grid must be ascending");
  for (size_t i = 1; i < snr_grid_db.size(); ++i) {
    if (std::abs(snr_grid_db[i] - snr_grid_db[i - 1] - step) > 1e-9) {
      throw std::invalid_argument("SweepConfig: grid spacing must be uniform");
    }
  }
}

std::uint64_t ChannelRng::next_u64() { return splitmix64(state_); }

double ChannelRng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller on (0,1] uniforms.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  double u2 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Complex ChannelRng::next_cn01() {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  double re = next_normal();
  double im = next_normal();
  return Complex(re * kInvSqrt2, im * kInvSqrt2);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  std::uint64_t state = seed ^ (0xD2B74407B1CE6E93ull * (trial_index + 1));
  return splitmix64(state);
}

namespace {

std::array<Complex, 2> draw_vector(ChannelRng& rng) {
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    std::array<Complex, 2> v = {rng.next_cn01(), rng.next_cn01()};
    if (std::sqrt(std::norm(v[0]) + std::norm(v[1])) >= kDegenerateNorm) return v;
  }
  throw DegenerateChannel("channel vector still degenerate after bounded redraws");
}

}  // namespace

ChannelRealization draw_channels(ChannelRng& rng, int n_slots) {
  if (n_slots < 1) throw std::invalid_argument("draw_channels: need at least one slot");
  ChannelRealization ch;
  ch.mode = NoiseMode::Noisy;
  ch.slots.reserve(static_cast<size_t>(n_slots));
  for (int t = 0; t < n_slots; ++t) {
    ChannelRealization::Slot slot;
    slot.h = draw_vector(rng);
    slot.g = draw_vector(rng);
    ch.slots.push_back(slot);
  }
  return ch;
}

ChannelRealization draw_channels(std::uint64_t seed, int n_slots) {
  ChannelRng rng(seed);
  return draw_channels(rng, n_slots);
}

namespace {

// log2 det(I + c M M^H) through singular values.
double log2_det_term(const std::vector<double>& sigma, double c) {
  double acc = 0.0;
  for (double s : sigma) {
    acc += std::log2(1.0 + c * s * s);
  }
  return acc;
}

struct TraceSpectra {
  std::vector<double> full1, interf1, full2, interf2;
  int slots;
  int streams;
};

TraceSpectra spectra_of(const SchemeTrace& trace) {
  TraceSpectra sp;
  sp.slots = trace.slots();
  sp.streams = trace.m1 + trace.m2;
  sp.full1 = singular_values(trace.rx1);
  sp.interf1 = singular_values(
      trace.rx1.columns(static_cast<size_t>(trace.m1), static_cast<size_t>(trace.m2)));
  sp.full2 = singular_values(trace.rx2);
  sp.interf2 = singular_values(trace.rx2.columns(0, static_cast<size_t>(trace.m1)));
  return sp;
}

std::pair<double, double> rates_from_spectra(const TraceSpectra& sp, double snr_linear) {
  double c = snr_linear / static_cast<double>(sp.streams);
  double r1 = (log2_det_term(sp.full1, c) - log2_det_term(sp.interf1, c)) / sp.slots;
  double r2 = (log2_det_term(sp.full2, c) - log2_det_term(sp.interf2, c)) / sp.slots;
  return {r1, r2};
}

}  // namespace

std::pair<double, double> trace_rates(const SchemeTrace& trace, double snr_linear) {
  return rates_from_spectra(spectra_of(trace), snr_linear);
}

std::vector<RateSample> rate_sweep(std::string_view scheme_id, const SweepConfig& cfg) {
  cfg.validate();
  const SchemeSpec& spec = scheme(scheme_id);
  size_t points = cfg.snr_grid_db.size();
  std::vector<double> sum1(points, 0.0), sum2(points, 0.0);

  for (int trial = 0; trial < cfg.trials_per_point; ++trial) {
    ChannelRng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    ChannelRealization ch = draw_channels(rng, spec.slots);
    TraceSpectra sp = spectra_of(build_trace(spec.id, ch));
    for (size_t i = 0; i < points; ++i) {
      auto [r1, r2] = rates_from_spectra(sp, snr_db_to_linear(cfg.snr_grid_db[i]));
      sum1[i] += r1;
      sum2[i] += r2;
    }
  }

  std::vector<RateSample> out(points);
  for (size_t i = 0; i < points; ++i) {
    out[i] = {cfg.snr_grid_db[i], sum1[i] / cfg.trials_per_point, sum2[i] / cfg.trials_per_point};
  }
  return out;
}

namespace {

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

struct BlockPlan {
  struct Row {
    const ScheduleRow* row;
    std::int64_t executions;
  };
  std::vector<Row> rows;
  std::int64_t total_slots = 0;
};

// Concrete slot realization: the least common denominator of all row
// fractions (times each row's slot count) sizes the block so that every row
// gets a whole number of scheme executions.
BlockPlan plan_blocks(const Schedule& schedule) {
  if (schedule.rows.empty()) throw std::invalid_argument("rate_sweep: empty schedule");
  std::int64_t common = 1;
  for (const ScheduleRow& row : schedule.rows) {
    const SchemeSpec& spec = scheme(row.scheme_id);
    common = lcm64(common, row.fraction.den() * spec.slots);
  }
  BlockPlan plan;
  plan.total_slots = common;
  for (const ScheduleRow& row : schedule.rows) {
    const SchemeSpec& spec = scheme(row.scheme_id);
    std::int64_t slots_for_row = row.fraction.num() * (common / row.fraction.den());
    plan.rows.push_back({&row, slots_for_row / spec.slots});
  }
  return plan;
}

}  // namespace

std::vector<RateSample> rate_sweep(const Schedule& schedule, const SweepConfig& cfg) {
  cfg.validate();
  BlockPlan plan = plan_blocks(schedule);
  size_t points = cfg.snr_grid_db.size();
  std::vector<double> sum1(points, 0.0), sum2(points, 0.0);

  for (int trial = 0; trial < cfg.trials_per_point; ++trial) {
    ChannelRng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    for (const auto& planned : plan.rows) {
      const ScheduleRow& row = *planned.row;
      const SchemeSpec& spec = scheme(row.scheme_id);
      for (std::int64_t exec = 0; exec < planned.executions; ++exec) {
        ChannelRealization ch = draw_channels(rng, spec.slots);
        TraceSpectra sp = spectra_of(build_trace(spec.id, ch, row.role));
        for (size_t i = 0; i < points; ++i) {
          auto [r1, r2] = rates_from_spectra(sp, snr_db_to_linear(cfg.snr_grid_db[i]));
          if (!row.discard1) sum1[i] += r1 * spec.slots;
          if (!row.discard2) sum2[i] += r2 * spec.slots;
        }
      }
    }
  }

  double norm = static_cast<double>(plan.total_slots) * cfg.trials_per_point;
  std::vector<RateSample> out(points);
  for (size_t i = 0; i < points; ++i) {
    out[i] = {cfg.snr_grid_db[i], sum1[i] / norm, sum2[i] / norm};
  }
  return out;
}

std::pair<double, double> dof_slope(const std::vector<RateSample>& samples) {
  size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("dof_slope: need at least two samples");
  for (size_t i = 1; i < n; ++i) {
    if (samples[i].snr_db <= samples[i - 1].snr_db) {
      throw std::invalid_argument("dof_slope: samples must ascend in SNR");
    }
  }
  size_t start = std::min(n / 2, n - 2);  // high-SNR window

  auto slope = [&](auto rate_of) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double count = 0.0;
    for (size_t i = start; i < n; ++i) {
      double x = log2_p_of(samples[i].snr_db);
      double y = rate_of(samples[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      count += 1.0;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
  };
  return {slope([](const RateSample& s) { return s.rate1; }),
          slope([](const RateSample& s) { return s.rate2; })};
}

std::string sweep_to_csv(const std::vector<RateSample>& samples, int trials,
                         std::string_view scheme_id) {
  std::string out = "snr_db,rate1,rate2,trials,scheme_id\n";
  char buf[160];
  for (const RateSample& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%d,", s.snr_db, s.rate1, s.rate2, trials);
    out += buf;
    out += scheme_id;
    out += '\n';
  }
  return out;
}

}  // namespace altbc
