#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "altbc/composer.hpp"
#include "altbc/schemes.hpp"

namespace altbc {

/// One averaged operating point of a sweep: SNR in dB and the two receivers'
/// Gaussian mutual-information rates in bits per channel use.
struct RateSample {
  double snr_db;
  double rate1;
  double rate2;
};

/// Sweep setup. The SNR grid must be ascending with uniform spacing (the
/// slope regression depends on it) and carry at least two points.
struct SweepConfig {
  std::vector<double> snr_grid_db;
  int trials_per_point = 1;
  std::uint64_t seed = 0;

  static SweepConfig from_range(double snr_from_db, double snr_to_db, double snr_step_db,
                                int trials, std::uint64_t seed);
  void validate() const;
};

/// Deterministic counter-based generator used for all channel draws; the
/// same seed always reproduces the same realization.
class ChannelRng {
 public:
  explicit ChannelRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double next_normal();
  Complex next_cn01();  // circularly symmetric, unit variance

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Fixed splitting function deriving independent per-trial streams from the
/// sweep seed, so trials can run in any order with identical results.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index);

/// i.i.d. CN(0,1) channel vectors for `n_slots` slots; entries are redrawn a
/// bounded number of times if a vector is numerically zero, then
/// DegenerateChannel is raised.
ChannelRealization draw_channels(std::uint64_t seed, int n_slots);
ChannelRealization draw_channels(ChannelRng& rng, int n_slots);

/// Finite-SNR rates of one executed trace: receiver i sees y = M u + z with
/// unit-variance noise and per-symbol power P/s (s = total stream count), so
/// rate_i = (1/n) [ log2 det(I + (P/s) M M^H) - log2 det(I + (P/s) Mv Mv^H) ].
std::pair<double, double> trace_rates(const SchemeTrace& trace, double snr_linear);

/// Monte Carlo sweep of one scheme: per SNR point, rates averaged over
/// trials. Channel draws are shared across the grid within a trial, which
/// makes the averaged curves exactly monotone in SNR.
std::vector<RateSample> rate_sweep(std::string_view scheme_id, const SweepConfig& cfg);

/// Sweep of a schedule, realized block by block: each row occupies a
/// contiguous run of slots sized by its fraction times the common
/// denominator, with fresh channels per scheme execution. Discarded symbol
/// blocks contribute no rate.
std::vector<RateSample> rate_sweep(const Schedule& schedule, const SweepConfig& cfg);

/// Least-squares slope of rate_i against log2(P) over the top half of the
/// grid. Needs at least two samples in ascending SNR order.
std::pair<double, double> dof_slope(const std::vector<RateSample>& samples);

/// CSV with header snr_db,rate1,rate2,trials,scheme_id and at least ten
/// significant digits per number.
std::string sweep_to_csv(const std::vector<RateSample>& samples, int trials,
                         std::string_view scheme_id);

}  // namespace altbc
