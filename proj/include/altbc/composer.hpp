#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "altbc/csit.hpp"
#include "altbc/rational.hpp"
#include "altbc/region.hpp"
#include "altbc/schemes.hpp"

namespace altbc {

struct WrongCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutsideRegion : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Achievability sub-cases. With L1 = l_NN, L2 = l_PN, R1 = 2*l_DD,
/// R2 = 2*l_PD + l_DN: A1 is L1<=R1, L2<=R2; A2 is L1<=R1, L2>R2 with
/// L1+L2<=R1+R2; A3 is L1>R1, L2<=R2 with L1+L2<=R1+R2; B1 is L1>R1, L2>R2;
/// B2 and B3 are the A2/A3 splits with L1+L2>R1+R2.
enum class Subcase { A1, A2, A3, B1, B2, B3 };

std::string_view subcase_label(Subcase s);
RegionCase case_of(Subcase s);

/// The unique sub-case whose defining inequalities hold; ties at equality
/// fall on the "<=" side.
Subcase subcase_of(const LambdaPmf& pmf);

/// Free variables of the sub-case constraint systems (unused entries zero).
struct FreeVars {
  Rational q1, q2, q3, q4;
  bool operator==(const FreeVars&) const = default;
};

/// Deterministic feasible choice for the sub-cases with free variables
/// (A1, A3, B3); the remaining sub-cases have none and get all zeros.
/// Greedy rule: pair as much of PN/NP with PD/DP as possible, then route the
/// remainder through DN/ND; in A3 the NN surplus goes to the PD pairing
/// first. The result is checked exactly against the constraint system;
/// InfeasibleSystem signals a classification bug and must never fire for a
/// correctly classified pmf.
FreeVars solve_free_vars(const LambdaPmf& pmf, Subcase subcase);

/// Corner points of the achievable region: P0 is the symmetric apex (case A
/// only), P1/P2 the fixed corners (1, lambda_P) and its mirror, P1*/P2* the
/// split apex corners of case B.
enum class Corner { P0, P1, P2, P1Star, P2Star };

std::string_view corner_label(Corner c);
Corner parse_corner(std::string_view label);

/// One time-sharing allocation: run `scheme_id` (with roles optionally
/// exchanged) on `fraction` of all slots, consuming `slot_states`, which must
/// cover the scheme's required states slot by slot. Discard flags drop one
/// receiver's symbols from the achieved DoF without changing state usage.
struct ScheduleRow {
  std::string scheme_id;
  Role role = Role::Normal;
  Rational fraction;
  std::vector<CsitState> slot_states;
  bool discard1 = false;
  bool discard2 = false;

  DofPoint contribution() const;
};

/// A convex combination of constituent schemes with exact per-state
/// bookkeeping.
struct Schedule {
  std::vector<ScheduleRow> rows;

  std::map<CsitState, Rational> state_usage() const;
  DofPoint achieved() const;
};

/// Row with the scheme's own states (mirrored through the role flag).
ScheduleRow make_row(std::string_view id, Role role, Rational fraction);

/// Row consuming explicitly given states; throws if they do not cover the
/// scheme's requirements.
ScheduleRow make_row(std::string_view id, Role role, Rational fraction,
                     std::vector<CsitState> slot_states);

/// Role-exchanged copy: flags flip, states and discards mirror.
Schedule swap_schedule(const Schedule& s);

/// Schedule reproducing the corner's achievability table for the pmf's
/// sub-case, with the solved free variables substituted and zero-fraction
/// rows dropped. Throws WrongCase when the corner does not exist for the
/// pmf's case.
Schedule compose_corner(const LambdaPmf& pmf, Corner corner);

/// The exact DoF pair of a corner for these marginals.
DofPoint corner_point(const Marginals& m, Corner corner);

/// Schedule achieving exactly `target`, as a convex combination of corner
/// schedules plus discard flags for points below the Pareto frontier.
/// Throws OutsideRegion when the target is not achievable.
Schedule compose_point(const LambdaPmf& pmf, const DofPoint& target);

/// Outcome of the four exact schedule checks, with exact residuals.
struct ValidationReport {
  struct Check {
    std::string name;
    bool pass;
    Rational residual;
  };
  std::vector<Check> checks;

  bool all_pass() const;
  const Check& check(std::string_view name) const;
  std::string str() const;
};

/// Four checks: fractions nonnegative, fractions sum to one, per-state usage
/// equals the pmf, achieved point equals the target. Failures are report
/// entries, never exceptions.
ValidationReport validate_schedule(const LambdaPmf& pmf, const Schedule& schedule,
                                   const DofPoint& target);

/// Line-oriented schedule document (see README for the format).
std::string schedule_to_text(const LambdaPmf& pmf, const Schedule& schedule,
                             const DofPoint& target);

struct ParsedSchedule {
  LambdaPmf pmf;
  Schedule schedule;
  DofPoint target;
};

ParsedSchedule schedule_from_text(std::string_view text);

}  // namespace altbc
