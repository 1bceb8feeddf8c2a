#include "altbc/composer.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace altbc {

namespace {

using S = CsitState;

struct SubcaseFlags {
  bool c1;  // l_NN <= 2*l_DD
  bool c2;  // l_PN <= 2*l_PD + l_DN
  bool cs;  // l_NN + l_PN <= 2*l_DD + 2*l_PD + l_DN
};

SubcaseFlags flags_of(const LambdaPmf& p) {
  Rational two(2);
  return {
      p[S::NN] <= two * p[S::DD],
      p[S::PN] <= two * p[S::PD] + p[S::DN],
      p[S::NN] + p[S::PN] <= two * p[S::DD] + two * p[S::PD] + p[S::DN],
  };
}

}  // namespace

std::string_view subcase_label(Subcase s) {
  switch (s) {
    case Subcase::A1: return "A1";
    case Subcase::A2: return "A2";
    case Subcase::A3: return "A3";
    case Subcase::B1: return "B1";
    case Subcase::B2: return "B2";
    case Subcase::B3: return "B3";
  }
  return "?";
}

RegionCase case_of(Subcase s) {
  return (s == Subcase::A1 || s == Subcase::A2 || s == Subcase::A3) ? RegionCase::A
                                                                    : RegionCase::B;
}

Subcase subcase_of(const LambdaPmf& pmf) {
  SubcaseFlags f = flags_of(pmf);
  if (f.c1 && f.c2) return Subcase::A1;
  if (!f.c1 && !f.c2) return Subcase::B1;
  if (f.c1) return f.cs ? Subcase::A2 : Subcase::B2;
  return f.cs ? Subcase::A3 : Subcase::B3;
}

FreeVars solve_free_vars(const LambdaPmf& pmf, Subcase subcase) {
  Rational zero(0), two(2), half(1, 2);
  FreeVars q{zero, zero, zero, zero};

  if (subcase == Subcase::A1 || subcase == Subcase::A3) {
    q.q1 = min(pmf[S::PD], pmf[S::PN] * half);
    q.q2 = two * (pmf[S::PN] - two * q.q1);
    if (subcase == Subcase::A3) {
      Rational surplus = pmf[S::NN] - two * pmf[S::DD];
      q.q3 = min(surplus, two * (pmf[S::PD] - q.q1));
      q.q4 = surplus - q.q3;
    }
  } else if (subcase == Subcase::B3) {
    q.q1 = min(Rational(3) * pmf[S::PD], Rational(3, 2) * pmf[S::PN]);
    q.q2 = two * (pmf[S::PN] - Rational(2, 3) * q.q1);
  }

  auto require = [](bool ok, const char* what) {
    if (!ok) throw InfeasibleSystem(std::string("free-variable system violated: ") + what);
  };
  require(!q.q1.is_negative() && !q.q2.is_negative() && !q.q3.is_negative() &&
              !q.q4.is_negative(),
          "negative variable");
  switch (subcase) {
    case Subcase::A1:
      require(q.q1 <= pmf[S::PD], "q1 <= l_PD");
      require(q.q2 <= two * pmf[S::DN], "q2 <= 2*l_DN");
      require(two * q.q1 + q.q2 * half == pmf[S::PN], "2*q1 + q2/2 = l_PN");
      break;
    case Subcase::A3:
      require(q.q1 + q.q3 * half <= pmf[S::PD], "q1 + q3/2 <= l_PD");
      require(q.q2 + two * q.q4 <= two * pmf[S::DN], "q2 + 2*q4 <= 2*l_DN");
      require(two * q.q1 + q.q2 * half == pmf[S::PN], "2*q1 + q2/2 = l_PN");
      require(q.q3 + q.q4 == pmf[S::NN] - two * pmf[S::DD], "q3 + q4 = l_NN - 2*l_DD");
      break;
    case Subcase::B3:
      require(q.q1 <= Rational(3) * pmf[S::PD], "q1 <= 3*l_PD");
      require(q.q2 <= two * pmf[S::DN], "q2 <= 2*l_DN");
      require(Rational(2, 3) * q.q1 + q.q2 * half == pmf[S::PN], "2*q1/3 + q2/2 = l_PN");
      break;
    default:
      break;
  }
  return q;
}

std::string_view corner_label(Corner c) {
  switch (c) {
    case Corner::P0: return "P0";
    case Corner::P1: return "P1";
    case Corner::P2: return "P2";
    case Corner::P1Star: return "P1star";
    case Corner::P2Star: return "P2star";
  }
  return "?";
}

Corner parse_corner(std::string_view label) {
  for (Corner c : {Corner::P0, Corner::P1, Corner::P2, Corner::P1Star, Corner::P2Star}) {
    if (corner_label(c) == label) return c;
  }
  throw std::invalid_argument("Corner: unknown label '" + std::string(label) + "'");
}

DofPoint ScheduleRow::contribution() const {
  const SchemeSpec& spec = scheme(scheme_id);
  Rational a = spec.dof1();
  Rational b = spec.dof2();
  if (role == Role::Swapped) std::swap(a, b);
  if (discard1) a = Rational(0);
  if (discard2) b = Rational(0);
  return DofPoint{fraction * a, fraction * b};
}

std::map<CsitState, Rational> Schedule::state_usage() const {
  std::map<CsitState, Rational> usage;
  for (const ScheduleRow& row : rows) {
    auto slots = static_cast<std::int64_t>(row.slot_states.size());
    for (CsitState s : row.slot_states) usage[s] += row.fraction / Rational(slots);
  }
  return usage;
}

DofPoint Schedule::achieved() const {
  DofPoint total{Rational(0), Rational(0)};
  for (const ScheduleRow& row : rows) {
    DofPoint c = row.contribution();
    total.d1 += c.d1;
    total.d2 += c.d2;
  }
  return total;
}

ScheduleRow make_row(std::string_view id, Role role, Rational fraction) {
  const SchemeSpec& spec = scheme(id);
  std::vector<CsitState> states = spec.state_per_slot;
  if (role == Role::Swapped) {
    for (CsitState& s : states) s = swap_state(s);
  }
  return ScheduleRow{std::string(id), role, std::move(fraction), std::move(states)};
}

ScheduleRow make_row(std::string_view id, Role role, Rational fraction,
                     std::vector<CsitState> slot_states) {
  const SchemeSpec& spec = scheme(id);
  if (slot_states.size() != static_cast<size_t>(spec.slots)) {
    throw std::invalid_argument("ScheduleRow: state list length mismatch for " + spec.id);
  }
  for (int t = 0; t < spec.slots; ++t) {
    CsitState required = spec.state_per_slot[static_cast<size_t>(t)];
    if (role == Role::Swapped) required = swap_state(required);
    if (!state_covers(slot_states[static_cast<size_t>(t)], required)) {
      throw std::invalid_argument("ScheduleRow: slot state does not cover requirement of " +
                                  spec.id);
    }
  }
  return ScheduleRow{std::string(id), role, std::move(fraction), std::move(slot_states)};
}

Schedule swap_schedule(const Schedule& s) {
  Schedule out;
  out.rows.reserve(s.rows.size());
  for (const ScheduleRow& row : s.rows) {
    ScheduleRow r = row;
    r.role = flip(row.role);
    for (CsitState& st : r.slot_states) st = swap_state(st);
    std::swap(r.discard1, r.discard2);
    out.rows.push_back(std::move(r));
  }
  return out;
}

namespace {

// Appends a table row, dropping zero fractions.
void add_row(Schedule& sched, ScheduleRow row) {
  if (row.fraction.is_zero()) return;
  sched.rows.push_back(std::move(row));
}

// Achieving P1 = (1, lambda_P): every state pairing carries full rate to
// receiver 1; the P-states add what they can for receiver 2.
Schedule table_p1(const LambdaPmf& p) {
  Rational two(2);
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  if (!p[S::PD].is_zero()) {
    add_row(s, make_row("S3/2-3", Role::Normal, two * p[S::PD], {S::PD, S::DP}));
  }
  add_row(s, make_row("S3/2-3", Role::Normal, two * p[S::PN]));
  if (!p[S::DN].is_zero()) {
    add_row(s, make_row("S1", Role::Normal, p[S::DN], {S::DN}));
    add_row(s, make_row("S1", Role::Normal, p[S::ND], {S::ND}));
  }
  if (!p[S::DD].is_zero()) add_row(s, make_row("S1", Role::Normal, p[S::DD], {S::DD}));
  add_row(s, make_row("S1", Role::Normal, p[S::NN]));
  return s;
}

Schedule table_p0_a1(const LambdaPmf& p, const FreeVars& q) {
  Rational two(2), half(1, 2), three(3);
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  add_row(s, make_row("S5/3-1", Role::Normal, p[S::PD] - q.q1));
  add_row(s, make_row("S5/3-2", Role::Normal, p[S::PD] - q.q1));
  add_row(s, make_row("S5/3-3", Role::Normal, three * q.q1));
  add_row(s, make_row("S5/3-4", Role::Normal, three * q.q1));
  add_row(s, make_row("S3/2-5", Role::Normal, q.q2));
  add_row(s, make_row("S3/2-6", Role::Normal, q.q2));
  add_row(s, make_row("S4/3-1", Role::Normal, p[S::DD] - p[S::NN] * half));
  add_row(s, make_row("S4/3-2", Role::Normal, Rational(3, 2) * p[S::NN]));
  add_row(s, make_row("S4/3-3", Role::Normal, two * p[S::DN] - q.q2));
  return s;
}

Schedule table_p0_a2(const LambdaPmf& p) {
  Rational two(2), half(1, 2), three(3);
  Rational extra = p[S::PN] - two * p[S::PD] - p[S::DN];
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  add_row(s, make_row("S5/3-3", Role::Normal, three * p[S::PD]));
  add_row(s, make_row("S5/3-4", Role::Normal, three * p[S::PD]));
  add_row(s, make_row("S3/2-5", Role::Normal, two * p[S::DN]));
  add_row(s, make_row("S3/2-6", Role::Normal, two * p[S::DN]));
  add_row(s, make_row("S8/5", Role::Normal, Rational(5, 2) * extra));
  add_row(s, make_row("S4/3-2", Role::Normal, Rational(3, 2) * p[S::NN]));
  add_row(s, make_row("S4/3-1", Role::Normal, p[S::DD] - half * (p[S::NN] + extra)));
  return s;
}

Schedule table_p0_a3(const LambdaPmf& p, const FreeVars& q) {
  Rational two(2), half(1, 2), three(3);
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  add_row(s, make_row("S5/3-1", Role::Normal, p[S::PD] - q.q1 - q.q3 * half));
  add_row(s, make_row("S5/3-2", Role::Normal, p[S::PD] - q.q1 - q.q3 * half));
  add_row(s, make_row("S5/3-3", Role::Normal, three * q.q1));
  add_row(s, make_row("S5/3-4", Role::Normal, three * q.q1));
  add_row(s, make_row("S3/2-1", Role::Normal, q.q3));
  add_row(s, make_row("S3/2-2", Role::Normal, q.q3));
  add_row(s, make_row("S3/2-5", Role::Normal, q.q2));
  add_row(s, make_row("S3/2-6", Role::Normal, q.q2));
  add_row(s, make_row("S4/3-2", Role::Normal, three * p[S::DD]));
  add_row(s, make_row("S4/3-4", Role::Normal, three * q.q4));
  add_row(s, make_row("S4/3-3", Role::Normal, two * p[S::DN] - q.q2 - two * q.q4));
  return s;
}

Schedule table_p1star_b1(const LambdaPmf& p) {
  Rational two(2), three(3);
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  add_row(s, make_row("S5/3-3", Role::Normal, three * p[S::PD]));
  add_row(s, make_row("S5/3-4", Role::Normal, three * p[S::PD]));
  add_row(s, make_row("S3/2-5", Role::Normal, two * p[S::DN]));
  add_row(s, make_row("S3/2-6", Role::Normal, two * p[S::DN]));
  add_row(s, make_row("S3/2-3", Role::Normal, two * (p[S::PN] - two * p[S::PD] - p[S::DN])));
  add_row(s, make_row("S4/3-2", Role::Normal, three * p[S::DD]));
  add_row(s, make_row("S1", Role::Normal, p[S::NN] - two * p[S::DD]));
  return s;
}

Schedule table_p1star_b2(const LambdaPmf& p) {
  Rational two(2), half(1, 2), three(3);
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  add_row(s, make_row("S5/3-3", Role::Normal, three * p[S::PD]));
  add_row(s, make_row("S5/3-4", Role::Normal, three * p[S::PD]));
  add_row(s, make_row("S3/2-5", Role::Normal, two * p[S::DN]));
  add_row(s, make_row("S3/2-6", Role::Normal, two * p[S::DN]));
  add_row(s, make_row("S4/3-2", Role::Normal, Rational(3, 2) * p[S::NN]));
  add_row(s, make_row("S8/5", Role::Normal, Rational(5) * (p[S::DD] - p[S::NN] * half)));
  add_row(s, make_row("S3/2-3", Role::Normal,
                      two * (p[S::NN] + p[S::PN] - two * p[S::DD] - two * p[S::PD] - p[S::DN])));
  return s;
}

Schedule table_p1star_b3(const LambdaPmf& p, const FreeVars& q) {
  Rational two(2), half(1, 2), three(3);
  Schedule s;
  add_row(s, make_row("S2", Role::Normal, p[S::PP]));
  add_row(s, make_row("S5/3-3", Role::Normal, q.q1));
  add_row(s, make_row("S5/3-4", Role::Normal, q.q1));
  add_row(s, make_row("S3/2-5", Role::Normal, q.q2));
  add_row(s, make_row("S3/2-6", Role::Normal, q.q2));
  add_row(s, make_row("S3/2-1", Role::Normal, two * (p[S::PD] - q.q1 / three)));
  add_row(s, make_row("S3/2-2", Role::Normal, two * (p[S::PD] - q.q1 / three)));
  add_row(s, make_row("S4/3-2", Role::Normal, three * p[S::DD]));
  add_row(s, make_row("S4/3-4", Role::Normal, three * (p[S::DN] - q.q2 * half)));
  add_row(s, make_row("S1", Role::Normal,
                      p[S::NN] + p[S::PN] - two * p[S::DD] - two * p[S::PD] - p[S::DN]));
  return s;
}

}  // namespace

DofPoint corner_point(const Marginals& m, Corner corner) {
  Rational one(1), two(2), three(3);
  switch (corner) {
    case Corner::P0: {
      Rational apex = (two + m.lambda_p) / three;
      return {apex, apex};
    }
    case Corner::P1: return {one, m.lambda_p};
    case Corner::P2: return {m.lambda_p, one};
    case Corner::P1Star: return {one - m.lambda_d, m.lambda_p + two * m.lambda_d};
    case Corner::P2Star: return {m.lambda_p + two * m.lambda_d, one - m.lambda_d};
  }
  throw std::logic_error("corner_point: bad corner");
}

Schedule compose_corner(const LambdaPmf& pmf, Corner corner) {
  Marginals m = marginals(pmf);
  RegionCase rc = case_of(m);
  if (corner == Corner::P0 && rc != RegionCase::A) {
    throw WrongCase("P0 is a corner only in case A (lambda_N <= 2*lambda_D)");
  }
  if ((corner == Corner::P1Star || corner == Corner::P2Star) && rc != RegionCase::B) {
    throw WrongCase("P1*/P2* are corners only in case B (lambda_N > 2*lambda_D)");
  }

  Schedule sched;
  switch (corner) {
    case Corner::P1:
      sched = table_p1(pmf);
      break;
    case Corner::P2:
      sched = swap_schedule(table_p1(pmf));
      break;
    case Corner::P0: {
      Subcase sub = subcase_of(pmf);
      FreeVars q = solve_free_vars(pmf, sub);
      sched = sub == Subcase::A1   ? table_p0_a1(pmf, q)
              : sub == Subcase::A2 ? table_p0_a2(pmf)
                                   : table_p0_a3(pmf, q);
      break;
    }
    case Corner::P1Star:
    case Corner::P2Star: {
      Subcase sub = subcase_of(pmf);
      FreeVars q = solve_free_vars(pmf, sub);
      Schedule p1star = sub == Subcase::B1   ? table_p1star_b1(pmf)
                        : sub == Subcase::B2 ? table_p1star_b2(pmf)
                                             : table_p1star_b3(pmf, q);
      sched = corner == Corner::P1Star ? std::move(p1star) : swap_schedule(p1star);
      break;
    }
  }

  ValidationReport report = validate_schedule(pmf, sched, corner_point(m, corner));
  if (!report.all_pass()) {
    throw InfeasibleSystem("corner schedule failed validation for " +
                           std::string(corner_label(corner)) + ":\n" + report.str());
  }
  return sched;
}

namespace {

Rational cross(const DofPoint& o, const DofPoint& a, const DofPoint& b) {
  return (a.d1 - o.d1) * (b.d2 - o.d2) - (a.d2 - o.d2) * (b.d1 - o.d1);
}

// Counterclockwise convex hull (monotone chain) of already-sorted distinct
// vertices of the region polytope.
std::vector<DofPoint> hull_order(std::vector<DofPoint> pts) {
  if (pts.size() <= 2) return pts;
  std::vector<DofPoint> lower, upper;
  for (const DofPoint& p : pts) {
    while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= Rational(0)) {
      lower.pop_back();
    }
    lower.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= Rational(0)) {
      upper.pop_back();
    }
    upper.push_back(*it);
  }
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

Schedule with_discards(Schedule s, bool d1, bool d2) {
  for (ScheduleRow& row : s.rows) {
    row.discard1 = row.discard1 || d1;
    row.discard2 = row.discard2 || d2;
  }
  return s;
}

Schedule scaled(const Schedule& s, const Rational& weight) {
  Schedule out;
  out.rows.reserve(s.rows.size());
  for (const ScheduleRow& row : s.rows) {
    ScheduleRow r = row;
    r.fraction = row.fraction * weight;
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Schedule compose_point(const LambdaPmf& pmf, const DofPoint& target) {
  DofRegion region = region_from_pmf(pmf);
  if (!region.contains(target)) {
    throw OutsideRegion("target (" + target.d1.str() + ", " + target.d2.str() +
                        ") lies outside the DoF region");
  }
  Marginals m = marginals(pmf);
  RegionCase rc = case_of(m);

  // A schedule for every vertex of the region polytope; points below the
  // Pareto frontier are reached by discarding symbols of a Pareto schedule.
  auto vertex_schedule = [&](const DofPoint& v) -> Schedule {
    if (v == corner_point(m, Corner::P1)) return compose_corner(pmf, Corner::P1);
    if (v == corner_point(m, Corner::P2)) return compose_corner(pmf, Corner::P2);
    if (rc == RegionCase::A && v == corner_point(m, Corner::P0)) {
      return compose_corner(pmf, Corner::P0);
    }
    if (rc == RegionCase::B && v == corner_point(m, Corner::P1Star)) {
      return compose_corner(pmf, Corner::P1Star);
    }
    if (rc == RegionCase::B && v == corner_point(m, Corner::P2Star)) {
      return compose_corner(pmf, Corner::P2Star);
    }
    DofPoint origin{Rational(0), Rational(0)};
    DofPoint e1{Rational(1), Rational(0)};
    DofPoint e2{Rational(0), Rational(1)};
    if (v == origin) return with_discards(compose_corner(pmf, Corner::P1), true, true);
    if (v == e1) return with_discards(compose_corner(pmf, Corner::P1), false, true);
    if (v == e2) return with_discards(compose_corner(pmf, Corner::P2), true, false);
    throw std::logic_error("compose_point: unclassified region vertex");
  };

  std::vector<DofPoint> hull = hull_order(corner_points(m));

  // Fan triangulation from hull[0]; exact barycentric solve in the triangle
  // containing the target.
  for (size_t i = 1; i + 1 < hull.size(); ++i) {
    const DofPoint& a = hull[0];
    const DofPoint& b = hull[i];
    const DofPoint& c = hull[i + 1];
    Rational det = cross(a, b, c);
    if (det.is_zero()) continue;
    Rational wb = ((target.d1 - a.d1) * (c.d2 - a.d2) - (target.d2 - a.d2) * (c.d1 - a.d1)) / det;
    Rational wc = ((b.d1 - a.d1) * (target.d2 - a.d2) - (b.d2 - a.d2) * (target.d1 - a.d1)) / det;
    Rational wa = Rational(1) - wb - wc;
    if (wa.is_negative() || wb.is_negative() || wc.is_negative()) continue;

    Schedule out;
    std::array<std::pair<const DofPoint*, Rational>, 3> mix = {
        std::make_pair(&a, wa), std::make_pair(&b, wb), std::make_pair(&c, wc)};
    for (const auto& [vertex, weight] : mix) {
      if (weight.is_zero()) continue;
      Schedule part = scaled(vertex_schedule(*vertex), weight);
      out.rows.insert(out.rows.end(), part.rows.begin(), part.rows.end());
    }
    ValidationReport report = validate_schedule(pmf, out, target);
    if (!report.all_pass()) {
      throw InfeasibleSystem("composed point schedule failed validation:\n" + report.str());
    }
    return out;
  }
  throw std::logic_error("compose_point: target not covered by any triangle");
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const ValidationReport::Check& ValidationReport::check(std::string_view name) const {
  for (const Check& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("ValidationReport: no check named '" + std::string(name) + "'");
}

std::string ValidationReport::str() const {
  std::string out;
  for (const Check& c : checks) {
    out += "check " + c.name + (c.pass ? " pass " : " fail ") + c.residual.str() + "\n";
  }
  return out;
}

ValidationReport validate_schedule(const LambdaPmf& pmf, const Schedule& schedule,
                                   const DofPoint& target) {
  ValidationReport report;
  Rational zero(0);

  Rational negatives = zero;
  Rational total = zero;
  for (const ScheduleRow& row : schedule.rows) {
    if (row.fraction.is_negative()) negatives += -row.fraction;
    total += row.fraction;
  }
  report.checks.push_back({"fractions_nonnegative", negatives == zero, negatives});

  Rational sum_residual = abs(total - Rational(1));
  report.checks.push_back({"fractions_sum_to_one", sum_residual == zero, sum_residual});

  std::map<CsitState, Rational> usage = schedule.state_usage();
  Rational usage_residual = zero;
  for (CsitState s : kAllCsitStates) {
    Rational have = zero;
    if (auto it = usage.find(s); it != usage.end()) have = it->second;
    usage_residual += abs(have - pmf[s]);
  }
  report.checks.push_back({"state_usage_matches_pmf", usage_residual == zero, usage_residual});

  DofPoint got = schedule.achieved();
  Rational point_residual = abs(got.d1 - target.d1) + abs(got.d2 - target.d2);
  report.checks.push_back({"achieved_equals_target", point_residual == zero, point_residual});
  return report;
}

namespace {

std::string pmf_line(const LambdaPmf& pmf) {
  std::string out = "pmf";
  for (CsitState s : kAllCsitStates) {
    out += ' ';
    out += state_label(s);
    out += '=';
    out += pmf[s].str();
  }
  return out;
}

std::string_view discard_label(bool d1, bool d2) {
  if (d1 && d2) return "both";
  if (d1) return "rx1";
  if (d2) return "rx2";
  return "none";
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::pair<std::string, std::string> split_kv(const std::string& token) {
  auto eq = token.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("schedule document: expected key=value, got '" + token + "'");
  }
  return {token.substr(0, eq), token.substr(eq + 1)};
}

}  // namespace

std::string schedule_to_text(const LambdaPmf& pmf, const Schedule& schedule,
                             const DofPoint& target) {
  std::string out = "schedule v1\n";
  out += pmf_line(pmf) + "\n";
  out += "target " + target.d1.str() + " " + target.d2.str() + "\n";
  out += "rows " + std::to_string(schedule.rows.size()) + "\n";
  for (const ScheduleRow& row : schedule.rows) {
    out += "row " + row.scheme_id + " " + std::string(role_label(row.role)) + " " +
           row.fraction.str() + " states=";
    for (size_t t = 0; t < row.slot_states.size(); ++t) {
      if (t) out += ',';
      out += state_label(row.slot_states[t]);
    }
    out += " discard=" + std::string(discard_label(row.discard1, row.discard2)) + "\n";
  }
  DofPoint got = schedule.achieved();
  out += "achieved " + got.d1.str() + " " + got.d2.str() + "\n";
  std::string usage = "usage";
  for (const auto& [state, frac] : schedule.state_usage()) {
    if (frac.is_zero()) continue;
    usage += ' ';
    usage += state_label(state);
    usage += '=';
    usage += frac.str();
  }
  out += usage + "\n";
  out += validate_schedule(pmf, schedule, target).str();
  return out;
}

ParsedSchedule schedule_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<LambdaPmf> pmf;
  std::optional<DofPoint> target;
  Schedule sched;

  while (std::getline(in, line)) {
    std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "schedule" || tok[0] == "rows" || tok[0] == "achieved" || tok[0] == "usage" ||
        tok[0] == "check") {
      continue;
    }
    if (tok[0] == "pmf") {
      std::vector<std::pair<CsitState, Rational>> entries;
      for (size_t i = 1; i < tok.size(); ++i) {
        auto [key, value] = split_kv(tok[i]);
        entries.emplace_back(parse_state(key), Rational::parse(value));
      }
      pmf = LambdaPmf::from_entries(entries);
    } else if (tok[0] == "target") {
      if (tok.size() != 3) throw std::invalid_argument("schedule document: bad target line");
      target = DofPoint{Rational::parse(tok[1]), Rational::parse(tok[2])};
    } else if (tok[0] == "row") {
      if (tok.size() != 6) throw std::invalid_argument("schedule document: bad row line");
      std::string id = tok[1];
      Role role = parse_role(tok[2]);
      Rational fraction = Rational::parse(tok[3]);
      auto [states_key, states_value] = split_kv(tok[4]);
      auto [discard_key, discard_value] = split_kv(tok[5]);
      if (states_key != "states" || discard_key != "discard") {
        throw std::invalid_argument("schedule document: bad row fields");
      }
      std::vector<CsitState> states;
      size_t pos = 0;
      while (pos <= states_value.size()) {
        size_t comma = states_value.find(',', pos);
        size_t end = comma == std::string::npos ? states_value.size() : comma;
        states.push_back(parse_state(std::string_view(states_value).substr(pos, end - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      ScheduleRow row = make_row(id, role, fraction, std::move(states));
      row.discard1 = discard_value == "rx1" || discard_value == "both";
      row.discard2 = discard_value == "rx2" || discard_value == "both";
      if (discard_value != "none" && discard_value != "rx1" && discard_value != "rx2" &&
          discard_value != "both") {
        throw std::invalid_argument("schedule document: bad discard value");
      }
      sched.rows.push_back(std::move(row));
    } else {
      throw std::invalid_argument("schedule document: unknown line '" + tok[0] + "'");
    }
  }
  if (!pmf || !target) {
    throw std::invalid_argument("schedule document: missing pmf or target line");
  }
  return ParsedSchedule{*pmf, std::move(sched), *target};
}

}  // namespace altbc
