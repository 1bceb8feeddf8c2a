// Command-line front end for the alternating-CSIT MISO broadcast channel
// toolkit: exact DoF regions, schedule synthesis and validation, scheme
// decodability checks, and finite-SNR rate sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "altbc/composer.hpp"
#include "altbc/io.hpp"
#include "altbc/region.hpp"
#include "altbc/schemes.hpp"
#include "altbc/simulate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitSimulation = 3;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

altbc::DofPoint parse_target(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::string d1, d2;
  if (!(in >> d1 >> d2)) throw std::invalid_argument("target: expected 'd1,d2'");
  return altbc::DofPoint{altbc::Rational::parse(d1), altbc::Rational::parse(d2)};
}

struct Options {
  std::string pmf;
  std::string out;
  std::string corner;
  std::string target;
  std::string scheme_id;
  std::string schedule_path;
  int trials = 2000;
  std::uint64_t seed = 1;
  double snr_from = 20.0;
  double snr_to = 60.0;
  double snr_step = 5.0;
  std::string grid_step = "1/30";
};

int run_region(const Options& opt) {
  altbc::LambdaPmf pmf = altbc::parse_pmf_input(opt.pmf);
  write_output(opt.out, altbc::region_document(pmf));
  return kExitOk;
}

int run_compose(const Options& opt) {
  altbc::LambdaPmf pmf = altbc::parse_pmf_input(opt.pmf);
  altbc::Schedule schedule;
  altbc::DofPoint target{altbc::Rational(0), altbc::Rational(0)};
  if (!opt.corner.empty()) {
    altbc::Corner corner = altbc::parse_corner(opt.corner);
    schedule = altbc::compose_corner(pmf, corner);
    target = altbc::corner_point(altbc::marginals(pmf), corner);
  } else {
    target = parse_target(opt.target);
    schedule = altbc::compose_point(pmf, target);
  }
  write_output(opt.out, altbc::schedule_to_text(pmf, schedule, target));
  return kExitOk;
}

int run_verify(const Options& opt) {
  const altbc::SchemeSpec& spec = altbc::scheme(opt.scheme_id);
  int passed1 = 0, passed2 = 0, passed_both = 0;
  for (int trial = 0; trial < opt.trials; ++trial) {
    auto ch = altbc::draw_channels(altbc::trial_seed(opt.seed, trial), spec.slots);
    auto [ok1, ok2] = altbc::check_decodable(altbc::build_trace(spec.id, ch));
    passed1 += ok1;
    passed2 += ok2;
    passed_both += ok1 && ok2;
  }
  std::ostringstream report;
  report << "verify scheme=" << spec.id << " trials=" << opt.trials << " seed=" << opt.seed
         << "\n"
         << "decodable_rx1 " << passed1 << "/" << opt.trials << "\n"
         << "decodable_rx2 " << passed2 << "/" << opt.trials << "\n"
         << "decodable_both " << passed_both << "/" << opt.trials << "\n"
         << "result " << (passed_both == opt.trials ? "pass" : "fail") << "\n";
  write_output(opt.out, report.str());
  return passed_both == opt.trials ? kExitOk : kExitSimulation;
}

int run_simulate(const Options& opt) {
  auto cfg = altbc::SweepConfig::from_range(opt.snr_from, opt.snr_to, opt.snr_step, opt.trials,
                                            opt.seed);
  std::vector<altbc::RateSample> samples;
  std::string label;
  if (!opt.scheme_id.empty()) {
    label = opt.scheme_id;
    samples = altbc::rate_sweep(opt.scheme_id, cfg);
  } else {
    std::ifstream in(opt.schedule_path);
    if (!in) throw std::invalid_argument("cannot open schedule file '" + opt.schedule_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    altbc::ParsedSchedule parsed = altbc::schedule_from_text(buf.str());
    label = "schedule";
    samples = altbc::rate_sweep(parsed.schedule, cfg);
  }
  auto [d1, d2] = altbc::dof_slope(samples);
  std::string out = altbc::sweep_to_csv(samples, opt.trials, label);
  char slope_line[96];
  std::snprintf(slope_line, sizeof(slope_line), "# dof_slope,%.12g,%.12g\n", d1, d2);
  out += slope_line;
  write_output(opt.out, out);
  return kExitOk;
}

int run_surface(const Options& opt) {
  write_output(opt.out, altbc::surface_csv(altbc::Rational::parse(opt.grid_step)));
  return kExitOk;
}

int run_tradeoff(const Options& opt) {
  write_output(opt.out, altbc::tradeoff_csv(altbc::Rational::parse(opt.grid_step)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user MISO broadcast channel with alternating CSIT: exact DoF regions, "
               "achievability schedules, and finite-SNR simulation"};
  app.require_subcommand(1);
  Options opt;

  auto* region = app.add_subcommand("region", "Exact DoF region from a CSIT state distribution");
  region->add_option("--pmf", opt.pmf, "State fractions, e.g. PD=1/2 (symmetric states mirrored)")
      ->required();
  region->add_option("--out", opt.out, "Output file (default stdout)");

  auto* compose = app.add_subcommand("compose", "Synthesize a validated time-sharing schedule");
  compose->add_option("--pmf", opt.pmf, "State fractions")->required();
  auto* corner_opt = compose->add_option("--corner", opt.corner, "P0|P1|P2|P1star|P2star");
  auto* target_opt = compose->add_option("--target", opt.target, "DoF pair 'd1,d2'");
  corner_opt->excludes(target_opt);
  compose->add_option("--out", opt.out, "Output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Decodability check of a scheme over random draws");
  verify->add_option("--scheme", opt.scheme_id, "Scheme id, e.g. S8/5")->required();
  verify->add_option("--trials", opt.trials, "Number of random channel draws")
      ->default_val(1000);
  verify->add_option("--seed", opt.seed, "Random seed")->required();
  verify->add_option("--out", opt.out, "Output file (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rate sweep and DoF slope");
  auto* scheme_opt = simulate->add_option("--scheme", opt.scheme_id, "Scheme id");
  auto* sched_opt =
      simulate->add_option("--schedule", opt.schedule_path, "Schedule document file");
  scheme_opt->excludes(sched_opt);
  simulate->add_option("--snr-from", opt.snr_from, "Sweep start, dB")->default_val(20.0);
  simulate->add_option("--snr-to", opt.snr_to, "Sweep end, dB")->default_val(60.0);
  simulate->add_option("--snr-step", opt.snr_step, "Grid step, dB")->default_val(5.0);
  simulate->add_option("--trials", opt.trials, "Trials per SNR point")->default_val(2000);
  simulate->add_option("--seed", opt.seed, "Random seed")->required();
  simulate->add_option("--out", opt.out, "Output file (default stdout)");

  auto* surface = app.add_subcommand("surface", "Sum-DoF over the (lambda_D, lambda_P) simplex");
  surface->add_option("--grid-step", opt.grid_step, "Rational grid step")->default_val("1/30");
  surface->add_option("--out", opt.out, "Output file (default stdout)");

  auto* tradeoff =
      app.add_subcommand("tradeoff", "Minimum CSIT fractions over a sum-DoF grid on [1,2]");
  tradeoff->add_option("--grid-step", opt.grid_step, "Rational DoF step")->default_val("1/60");
  tradeoff->add_option("--out", opt.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (region->parsed()) return run_region(opt);
    if (compose->parsed()) {
      if (opt.corner.empty() == opt.target.empty()) {
        std::cerr << "compose: exactly one of --corner/--target is required\n";
        return kExitUsage;
      }
      return run_compose(opt);
    }
    if (verify->parsed()) return run_verify(opt);
    if (simulate->parsed()) {
      if (opt.scheme_id.empty() == opt.schedule_path.empty()) {
        std::cerr << "simulate: exactly one of --scheme/--schedule is required\n";
        return kExitUsage;
      }
      return run_simulate(opt);
    }
    if (surface->parsed()) return run_surface(opt);
    if (tradeoff->parsed()) return run_tradeoff(opt);
    return kExitUsage;
  } catch (const altbc::OutsideRegion& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const altbc::WrongCase& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const altbc::DegenerateChannel& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitSimulation;
  } catch (const altbc::UnknownScheme& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
