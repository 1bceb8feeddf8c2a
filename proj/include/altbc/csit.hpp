#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "altbc/rational.hpp"

namespace altbc {

/// Joint CSIT state I1I2: the form of transmitter-side channel knowledge for
/// user 1 and user 2 in a slot. P = perfect/instantaneous, D = delayed,
/// N = none.
enum class CsitState : int { PP, PD, DP, PN, NP, DD, DN, ND, NN };

inline constexpr std::array<CsitState, 9> kAllCsitStates = {
    CsitState::PP, CsitState::PD, CsitState::DP, CsitState::PN, CsitState::NP,
    CsitState::DD, CsitState::DN, CsitState::ND, CsitState::NN};

/// Per-user CSIT form, ordered by how much a scheme can do with it.
enum class CsitForm : int { N = 0, D = 1, P = 2 };

CsitForm user1_form(CsitState s);
CsitForm user2_form(CsitState s);
CsitState make_state(CsitForm f1, CsitForm f2);

/// Exchanges the two users' roles: PD<->DP, PN<->NP, DN<->ND.
CsitState swap_state(CsitState s);

/// True when `actual` offers at least as much CSIT as `required` for both
/// users (P over D over N). A slot of a richer state can always run a scheme
/// designed for a poorer one by ignoring the surplus.
bool state_covers(CsitState actual, CsitState required);

std::string_view state_label(CsitState s);
CsitState parse_state(std::string_view label);

/// Distribution over the nine CSIT states with the symmetry constraints
/// lambda_PD = lambda_DP, lambda_PN = lambda_NP, lambda_DN = lambda_ND.
/// Fractions are exact, nonnegative and sum to one.
class LambdaPmf {
 public:
  /// Builds from (state, fraction) entries; unspecified states are zero.
  /// With `mirror` set, a one-sided entry of an asymmetric pair is copied to
  /// its mirror state; if both sides are given they must agree.
  static LambdaPmf from_entries(const std::vector<std::pair<CsitState, Rational>>& entries,
                                bool mirror = false);

  const Rational& operator[](CsitState s) const { return fractions_[static_cast<size_t>(s)]; }

  bool operator==(const LambdaPmf&) const = default;

  std::string str() const;

 private:
  LambdaPmf() = default;
  void validate() const;

  std::array<Rational, 9> fractions_{};
};

/// Marginal CSIT fractions (lambda_P, lambda_D, lambda_N): the total fraction
/// of time any one user's CSIT is perfect, delayed, or absent.
struct Marginals {
  Rational lambda_p;
  Rational lambda_d;
  Rational lambda_n;

  Marginals(Rational p, Rational d, Rational n);

  bool operator==(const Marginals&) const = default;
};

/// lambda_P = l_PP+l_PD+l_PN, lambda_D = l_DD+l_PD+l_DN, lambda_N = l_NN+l_PN+l_DN.
Marginals marginals(const LambdaPmf& pmf);

}  // namespace altbc
