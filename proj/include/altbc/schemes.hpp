#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "altbc/csit.hpp"
#include "altbc/linalg.hpp"
#include "altbc/rational.hpp"

namespace altbc {

struct DegenerateChannel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownScheme : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Static description of one constituent transmission scheme: over `slots`
/// channel uses with the listed per-slot CSIT states it delivers m1 symbols
/// to receiver 1 and m2 to receiver 2, for a DoF pair (m1/slots, m2/slots).
struct SchemeSpec {
  std::string id;
  int slots;
  std::vector<CsitState> state_per_slot;
  int m1;
  int m2;

  Rational dof1() const { return Rational(m1, slots); }
  Rational dof2() const { return Rational(m2, slots); }

  /// Fraction of slots spent in each CSIT state; sums to 1.
  std::map<CsitState, Rational> state_usage() const;
};

/// All 17 constituent schemes.
const std::vector<SchemeSpec>& catalog();

/// Lookup by id; throws UnknownScheme.
const SchemeSpec& scheme(std::string_view id);

bool scheme_exists(std::string_view id);

/// The catalog id obtained by exchanging the receivers' roles. Schemes whose
/// state usage and DoF pair are symmetric map to themselves (S1's mirror is
/// S1 run with a swapped role flag).
std::string swap_roles(std::string_view id);

/// Whether a scheme executes with the receivers in their catalog roles or
/// exchanged.
enum class Role { Normal, Swapped };

inline Role flip(Role r) { return r == Role::Normal ? Role::Swapped : Role::Normal; }
std::string_view role_label(Role r);
Role parse_role(std::string_view label);

/// Noise handling intent carried by a channel draw: Exact for symbol-level
/// traces (reconstructions treated as noiseless), Noisy for finite-SNR rate
/// evaluation.
enum class NoiseMode { Exact, Noisy };

/// A block of per-slot channel vector pairs H(t) (to receiver 1) and G(t)
/// (to receiver 2).
struct ChannelRealization {
  struct Slot {
    std::array<Complex, 2> h;
    std::array<Complex, 2> g;
  };
  std::vector<Slot> slots;
  NoiseMode mode = NoiseMode::Exact;
};

/// Symbol-level execution record of a scheme over one channel draw. Columns
/// are ordered u1..u_m1 then v1..v_m2 (receiver 1 symbols first). `transmit[t]`
/// is the 2 x (m1+m2) per-antenna coefficient map of X(t); rx1/rx2 hold one
/// row per slot with the noiseless received combination at each receiver.
/// Per-slot transmit power is normalized to 1, split equally across the
/// slot's concurrent streams.
struct SchemeTrace {
  std::string scheme_id;
  Role role = Role::Normal;
  int m1 = 0;
  int m2 = 0;
  std::vector<CsitState> states;
  std::vector<CMat> transmit;
  CMat rx1;
  CMat rx2;

  int slots() const { return static_cast<int>(states.size()); }
};

/// Executes a scheme on the given channels, recording exact coefficients.
/// The transmit rule of slot t depends only on CSIT permitted by the slot
/// states: the current slot's channel of a P-side user, strictly earlier
/// channels of D-side users, nothing for N.
/// Throws DegenerateChannel if a needed zero-forcing direction is undefined.
SchemeTrace build_trace(std::string_view id, const ChannelRealization& channels,
                        Role role = Role::Normal);

/// Per-receiver decodability by rank: receiver 1 can recover its m1 symbols
/// iff rank(rx1) - rank(rx1 restricted to the v columns) == m1, and
/// symmetrically for receiver 2 against the u columns.
std::pair<bool, bool> check_decodable(const SchemeTrace& trace);

/// Textual trace record, one slot per line (state, transmit coefficient map,
/// per-receiver received coefficients). Format documented in the README.
std::string trace_to_text(const SchemeTrace& trace);

/// True when every channel entry the transmitter uses at slot t is visible
/// under the CSIT contract. `slot` and the entry coordinates are 0-based;
/// `for_user1` selects H (user 1's channel) versus G.
bool csit_permits(const std::vector<CsitState>& states, int slot, int channel_slot,
                  bool for_user1);

}  // namespace altbc
