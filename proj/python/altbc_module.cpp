// Python bindings for the main operations: exact region computation,
// schedule synthesis and validation, scheme decodability checks, and rate
// sweeps. Exact rationals cross the boundary as "num/den" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "altbc/composer.hpp"
#include "altbc/io.hpp"
#include "altbc/region.hpp"
#include "altbc/schemes.hpp"
#include "altbc/simulate.hpp"

namespace py = pybind11;

namespace {

altbc::DofPoint point_of(const std::string& d1, const std::string& d2) {
  return {altbc::Rational::parse(d1), altbc::Rational::parse(d2)};
}

}  // namespace

PYBIND11_MODULE(altbc, m) {
  m.doc() = "Two-user MISO broadcast channel with alternating CSIT: DoF regions, "
            "achievability schedules, and finite-SNR simulation";

  py::register_exception<altbc::OutsideRegion>(m, "OutsideRegion");
  py::register_exception<altbc::WrongCase>(m, "WrongCase");
  py::register_exception<altbc::DegenerateChannel>(m, "DegenerateChannel");
  py::register_exception<altbc::UnknownScheme>(m, "UnknownScheme");

  m.def("marginals", [](const std::string& pmf_text) {
    altbc::Marginals mg = altbc::marginals(altbc::parse_pmf_input(pmf_text));
    return py::make_tuple(mg.lambda_p.str(), mg.lambda_d.str(), mg.lambda_n.str());
  }, py::arg("pmf"), "Marginal fractions (lambda_P, lambda_D, lambda_N) as rational strings");

  m.def("sum_dof", [](const std::string& pmf_text) {
    return altbc::sum_dof(altbc::marginals(altbc::parse_pmf_input(pmf_text))).str();
  }, py::arg("pmf"));

  m.def("min_csit", [](const std::string& dof) {
    auto [p, d] = altbc::min_csit(altbc::Rational::parse(dof));
    return py::make_tuple(p.str(), d.str());
  }, py::arg("dof"));

  m.def("region_case", [](const std::string& pmf_text) {
    altbc::LambdaPmf pmf = altbc::parse_pmf_input(pmf_text);
    return std::string(altbc::subcase_label(altbc::subcase_of(pmf)));
  }, py::arg("pmf"), "Achievability sub-case label (A1..B3)");

  m.def("region_document", [](const std::string& pmf_text) {
    return altbc::region_document(altbc::parse_pmf_input(pmf_text));
  }, py::arg("pmf"));

  m.def("corner_points", [](const std::string& pmf_text) {
    std::vector<py::tuple> out;
    for (const altbc::DofPoint& p :
         altbc::corner_points(altbc::marginals(altbc::parse_pmf_input(pmf_text)))) {
      out.push_back(py::make_tuple(p.d1.str(), p.d2.str()));
    }
    return out;
  }, py::arg("pmf"));

  m.def("catalog", [] {
    std::vector<py::dict> out;
    for (const altbc::SchemeSpec& spec : altbc::catalog()) {
      py::dict d;
      d["id"] = spec.id;
      d["slots"] = spec.slots;
      std::vector<std::string> states;
      for (altbc::CsitState s : spec.state_per_slot) {
        states.emplace_back(altbc::state_label(s));
      }
      d["states"] = states;
      d["m1"] = spec.m1;
      d["m2"] = spec.m2;
      d["dof"] = py::make_tuple(spec.dof1().str(), spec.dof2().str());
      out.push_back(std::move(d));
    }
    return out;
  });

  m.def("swap_roles", [](const std::string& id) { return altbc::swap_roles(id); }, py::arg("id"));

  m.def("verify_scheme", [](const std::string& id, int trials, std::uint64_t seed) {
    const altbc::SchemeSpec& spec = altbc::scheme(id);
    int passes = 0;
    for (int t = 0; t < trials; ++t) {
      auto ch = altbc::draw_channels(altbc::trial_seed(seed, static_cast<std::uint64_t>(t)),
                                     spec.slots);
      auto [ok1, ok2] = altbc::check_decodable(altbc::build_trace(spec.id, ch));
      passes += ok1 && ok2;
    }
    return passes;
  }, py::arg("id"), py::arg("trials") = 100, py::arg("seed") = 1,
     "Number of random draws on which both receivers decode");

  m.def("compose_corner", [](const std::string& pmf_text, const std::string& corner) {
    altbc::LambdaPmf pmf = altbc::parse_pmf_input(pmf_text);
    altbc::Corner c = altbc::parse_corner(corner);
    altbc::Schedule sched = altbc::compose_corner(pmf, c);
    return altbc::schedule_to_text(pmf, sched, altbc::corner_point(altbc::marginals(pmf), c));
  }, py::arg("pmf"), py::arg("corner"));

  m.def("compose_point", [](const std::string& pmf_text, const std::string& d1,
                            const std::string& d2) {
    altbc::LambdaPmf pmf = altbc::parse_pmf_input(pmf_text);
    altbc::DofPoint target = point_of(d1, d2);
    return altbc::schedule_to_text(pmf, altbc::compose_point(pmf, target), target);
  }, py::arg("pmf"), py::arg("d1"), py::arg("d2"));

  m.def("validate_schedule", [](const std::string& document) {
    altbc::ParsedSchedule parsed = altbc::schedule_from_text(document);
    return altbc::validate_schedule(parsed.pmf, parsed.schedule, parsed.target).all_pass();
  }, py::arg("document"));

  m.def("rate_sweep", [](const std::string& id, double snr_from, double snr_to, double snr_step,
                         int trials, std::uint64_t seed) {
    auto cfg = altbc::SweepConfig::from_range(snr_from, snr_to, snr_step, trials, seed);
    std::vector<py::tuple> out;
    for (const altbc::RateSample& s : altbc::rate_sweep(id, cfg)) {
      out.push_back(py::make_tuple(s.snr_db, s.rate1, s.rate2));
    }
    return out;
  }, py::arg("id"), py::arg("snr_from") = 20.0, py::arg("snr_to") = 60.0,
     py::arg("snr_step") = 5.0, py::arg("trials") = 200, py::arg("seed") = 1);

  m.def("dof_slope", [](const std::vector<std::tuple<double, double, double>>& samples) {
    std::vector<altbc::RateSample> rs;
    rs.reserve(samples.size());
    for (const auto& [db, r1, r2] : samples) rs.push_back({db, r1, r2});
    auto [d1, d2] = altbc::dof_slope(rs);
    return py::make_tuple(d1, d2);
  }, py::arg("samples"));

  m.def("surface_csv", [](const std::string& step) {
    return altbc::surface_csv(altbc::Rational::parse(step));
  }, py::arg("step") = "1/30");

  m.def("tradeoff_csv", [](const std::string& step) {
    return altbc::tradeoff_csv(altbc::Rational::parse(step));
  }, py::arg("step") = "1/60");
}
