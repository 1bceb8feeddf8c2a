#include "altbc/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace altbc {

std::map<CsitState, Rational> SchemeSpec::state_usage() const {
  std::map<CsitState, Rational> usage;
  for (CsitState s : state_per_slot) usage[s] += Rational(1, slots);
  return usage;
}

namespace {

using S = CsitState;

std::vector<SchemeSpec> build_catalog() {
  return {
      {"S1", 1, {S::NN}, 1, 0},
      {"S2", 1, {S::PP}, 1, 1},
      {"S4/3-1", 3, {S::DD, S::DD, S::DD}, 2, 2},
      {"S4/3-2", 3, {S::DD, S::NN, S::NN}, 2, 2},
      // Two relaxed-CSIT retransmission skeletons back to back; the third
      // slot of each needs no CSIT, so the spare D slots realize DN:ND = 3:3.
      {"S4/3-3", 6, {S::ND, S::DN, S::DN, S::ND, S::DN, S::ND}, 4, 4},
      {"S4/3-4", 3, {S::ND, S::DN, S::NN}, 2, 2},
      {"S3/2-1", 2, {S::PD, S::NN}, 2, 1},
      {"S3/2-2", 2, {S::DP, S::NN}, 1, 2},
      {"S3/2-3", 2, {S::PN, S::NP}, 2, 1},
      {"S3/2-4", 2, {S::NP, S::PN}, 1, 2},
      {"S3/2-5", 2, {S::ND, S::PN}, 2, 1},
      {"S3/2-6", 2, {S::DN, S::NP}, 1, 2},
      {"S5/3-1", 3, {S::PD, S::PD, S::DP}, 3, 2},
      {"S5/3-2", 3, {S::DP, S::DP, S::PD}, 2, 3},
      {"S5/3-3", 3, {S::PD, S::PN, S::NP}, 3, 2},
      {"S5/3-4", 3, {S::DP, S::NP, S::PN}, 2, 3},
      {"S8/5", 5, {S::DD, S::PN, S::NP, S::PN, S::NP}, 4, 4},
  };
}

const std::map<std::string, std::string>& swap_table() {
  static const std::map<std::string, std::string> table = {
      {"S1", "S1"},         {"S2", "S2"},         {"S4/3-1", "S4/3-1"},
      {"S4/3-2", "S4/3-2"}, {"S4/3-3", "S4/3-3"}, {"S4/3-4", "S4/3-4"},
      {"S3/2-1", "S3/2-2"}, {"S3/2-2", "S3/2-1"}, {"S3/2-3", "S3/2-4"},
      {"S3/2-4", "S3/2-3"}, {"S3/2-5", "S3/2-6"}, {"S3/2-6", "S3/2-5"},
      {"S5/3-1", "S5/3-2"}, {"S5/3-2", "S5/3-1"}, {"S5/3-3", "S5/3-4"},
      {"S5/3-4", "S5/3-3"}, {"S8/5", "S8/5"},
  };
  return table;
}

using Vec2 = std::array<Complex, 2>;

constexpr double kDegenerateNorm = 1e-12;

double norm2(const Vec2& v) { return std::norm(v[0]) + std::norm(v[1]); }

void check_nondegenerate(const Vec2& v) {
  if (std::sqrt(norm2(v)) < kDegenerateNorm) {
    throw DegenerateChannel("channel vector numerically zero");
  }
}

// Unit direction orthogonal to the row vector h, with h . b = 0 exact in
// floating point: b = (h2, -h1)/|h|.
Vec2 zero_forcing(const Vec2& h) {
  check_nondegenerate(h);
  double n = std::sqrt(norm2(h));
  return {h[1] / n, -h[0] / n};
}

// Incremental trace construction. Each slot is assembled as a list of
// streams (antenna direction times a scalar symbol combination); finalizing
// a slot splits unit power equally across its streams and appends the
// resulting transmit map and received rows.
class TraceBuilder {
 public:
  TraceBuilder(const SchemeSpec& spec, const ChannelRealization& ch)
      : spec_(spec), ch_(ch), total_(spec.m1 + spec.m2) {
    if (ch.slots.size() < static_cast<size_t>(spec.slots)) {
      throw std::invalid_argument("build_trace: not enough channel slots for " + spec.id);
    }
    for (const auto& slot : ch.slots) {
      check_nondegenerate(slot.h);
      check_nondegenerate(slot.g);
    }
    trace_.scheme_id = spec.id;
    trace_.m1 = spec.m1;
    trace_.m2 = spec.m2;
    trace_.states = spec.state_per_slot;
    trace_.rx1 = CMat(spec.slots, total_);
    trace_.rx2 = CMat(spec.slots, total_);
  }

  const Vec2& h(int t) const { return ch_.slots[t].h; }
  const Vec2& g(int t) const { return ch_.slots[t].g; }

  // Symbol indices: u_k -> k, v_k -> m1 + k.
  int u(int k) const { return k; }
  int v(int k) const { return spec_.m1 + k; }

  using Combination = std::vector<std::pair<int, Complex>>;

  void add_stream(const Vec2& direction, Combination combination) {
    streams_.push_back({direction, std::move(combination)});
  }

  void single(const Vec2& direction, int symbol) { add_stream(direction, {{symbol, Complex(1.0)}}); }

  // The symbol combination a receiver observed in an earlier slot, restricted
  // to one receiver's symbol block. This is what delayed CSIT lets the
  // transmitter reconstruct and re-encode.
  Combination overheard(int slot, bool rx1_side, bool u_block) const {
    const CMat& rx = rx1_side ? trace_.rx1 : trace_.rx2;
    int first = u_block ? 0 : spec_.m1;
    int count = u_block ? spec_.m1 : spec_.m2;
    Combination comb;
    for (int j = 0; j < count; ++j) {
      Complex c = rx.at(slot, first + j);
      if (c != Complex(0.0)) comb.emplace_back(first + j, c);
    }
    return comb;
  }

  void finish_slot() {
    int t = next_slot_++;
    CMat x(2, total_);
    double split = 1.0 / std::sqrt(static_cast<double>(streams_.size()));
    for (const auto& stream : streams_) {
      double comb_power = 0.0;
      for (const auto& [idx, coeff] : stream.combination) comb_power += std::norm(coeff);
      double dir_norm = std::sqrt(norm2(stream.direction));
      if (comb_power == 0.0 || dir_norm < kDegenerateNorm) {
        throw DegenerateChannel("degenerate stream in " + spec_.id);
      }
      double scale = split / (std::sqrt(comb_power) * dir_norm);
      for (const auto& [idx, coeff] : stream.combination) {
        x.at(0, idx) += stream.direction[0] * coeff * scale;
        x.at(1, idx) += stream.direction[1] * coeff * scale;
      }
    }
    for (int j = 0; j < total_; ++j) {
      trace_.rx1.at(t, j) = h(t)[0] * x.at(0, j) + h(t)[1] * x.at(1, j);
      trace_.rx2.at(t, j) = g(t)[0] * x.at(0, j) + g(t)[1] * x.at(1, j);
    }
    trace_.transmit.push_back(std::move(x));
    streams_.clear();
  }

  SchemeTrace take() && { return std::move(trace_); }

 private:
  struct Stream {
    Vec2 direction;
    Combination combination;
  };

  const SchemeSpec& spec_;
  const ChannelRealization& ch_;
  int total_;
  int next_slot_ = 0;
  std::vector<Stream> streams_;
  SchemeTrace trace_;
};

constexpr Vec2 kAntenna1 = {Complex(1.0), Complex(0.0)};
constexpr Vec2 kAntenna2 = {Complex(0.0), Complex(1.0)};

// Retransmission skeleton shared by the 4/3 schemes built on delayed CSIT:
// two fresh symbols per receiver in the block's first two slots, then one
// slot carrying the sum of both overheard combinations.
void build_retransmission_block(TraceBuilder& b, int base_slot, int u0, int v0) {
  b.single(kAntenna1, u0);
  b.single(kAntenna2, u0 + 1);
  b.finish_slot();
  b.single(kAntenna1, v0);
  b.single(kAntenna2, v0 + 1);
  b.finish_slot();
  auto comb = b.overheard(base_slot, /*rx1_side=*/false, /*u_block=*/true);
  auto side = b.overheard(base_slot + 1, /*rx1_side=*/true, /*u_block=*/false);
  comb.insert(comb.end(), side.begin(), side.end());
  b.add_stream(kAntenna1, comb);
  b.finish_slot();
}

void build_scheme(TraceBuilder& b, const SchemeSpec& spec) {
  const std::string& id = spec.id;
  if (id == "S1") {
    b.single(kAntenna1, b.u(0));
    b.finish_slot();
  } else if (id == "S2") {
    b.single(zero_forcing(b.g(0)), b.u(0));
    b.single(zero_forcing(b.h(0)), b.v(0));
    b.finish_slot();
  } else if (id == "S4/3-1" || id == "S4/3-4") {
    build_retransmission_block(b, 0, b.u(0), b.v(0));
  } else if (id == "S4/3-3") {
    build_retransmission_block(b, 0, b.u(0), b.v(0));
    build_retransmission_block(b, 3, b.u(2), b.v(2));
  } else if (id == "S4/3-2") {
    // Superpose both users' symbols in slot 1, then hand each receiver the
    // other's overheard combination on one antenna.
    b.add_stream(kAntenna1, {{b.u(0), Complex(1.0)}, {b.v(0), Complex(1.0)}});
    b.add_stream(kAntenna2, {{b.u(1), Complex(1.0)}, {b.v(1), Complex(1.0)}});
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));  // A2 to both
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, true, false));  // B1 to both
    b.finish_slot();
  } else if (id == "S3/2-1") {
    b.single(kAntenna1, b.u(0));
    b.single(kAntenna2, b.u(1));
    b.single(zero_forcing(b.h(0)), b.v(0));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));  // L2(u1,u2)
    b.finish_slot();
  } else if (id == "S3/2-3") {
    b.single(kAntenna1, b.u(0));
    b.single(zero_forcing(b.h(0)), b.v(0));
    b.finish_slot();
    b.single(kAntenna1, b.u(0));
    b.single(zero_forcing(b.g(1)), b.u(1));
    b.finish_slot();
  } else if (id == "S3/2-5") {
    b.single(kAntenna1, b.u(0));
    b.single(kAntenna2, b.u(1));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));  // L2(u1,u2)
    b.single(zero_forcing(b.h(1)), b.v(0));
    b.finish_slot();
  } else if (id == "S5/3-1" || id == "S5/3-3") {
    // PD slots of S5/3-1 act as the PN/NP slots here; the surplus delayed
    // CSIT is simply unused.
    b.single(kAntenna1, b.u(0));
    b.single(kAntenna2, b.u(1));
    b.single(zero_forcing(b.h(0)), b.v(0));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));  // L2(u1,u2)
    b.single(zero_forcing(b.h(1)), b.v(1));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));
    b.single(zero_forcing(b.g(2)), b.u(2));
    b.finish_slot();
  } else if (id == "S8/5") {
    b.add_stream(kAntenna1, {{b.u(0), Complex(1.0)}, {b.v(0), Complex(1.0)}});
    b.add_stream(kAntenna2, {{b.u(1), Complex(1.0)}, {b.v(1), Complex(1.0)}});
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, true, false));  // B1 to receiver 1
    b.single(zero_forcing(b.h(1)), b.v(2));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));  // A2 to receiver 2
    b.single(zero_forcing(b.g(2)), b.u(2));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, false, true));  // A2 to receiver 1
    b.single(zero_forcing(b.h(3)), b.v(3));
    b.finish_slot();
    b.add_stream(kAntenna1, b.overheard(0, true, false));  // B1 to receiver 2
    b.single(zero_forcing(b.g(4)), b.u(3));
    b.finish_slot();
  } else {
    throw UnknownScheme("no builder for scheme '" + id + "'");
  }
}

// Mirrored schemes run their partner's rule with the channels exchanged.
const SchemeSpec& builder_spec(const SchemeSpec& spec, bool& mirrored) {
  static const std::map<std::string, std::string> mirrors = {
      {"S3/2-2", "S3/2-1"}, {"S3/2-4", "S3/2-3"}, {"S3/2-6", "S3/2-5"},
      {"S5/3-2", "S5/3-1"}, {"S5/3-4", "S5/3-3"},
  };
  auto it = mirrors.find(spec.id);
  mirrored = it != mirrors.end();
  return mirrored ? scheme(it->second) : spec;
}

ChannelRealization swap_channels(const ChannelRealization& ch) {
  ChannelRealization out;
  out.mode = ch.mode;
  out.slots.reserve(ch.slots.size());
  for (const auto& slot : ch.slots) out.slots.push_back({slot.g, slot.h});
  return out;
}

CMat permute_symbol_columns(const CMat& m, int old_m1, int old_m2) {
  CMat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (int j = 0; j < old_m2; ++j) out.at(r, j) = m.at(r, old_m1 + j);
    for (int j = 0; j < old_m1; ++j) out.at(r, old_m2 + j) = m.at(r, j);
  }
  return out;
}

// Reinterprets a trace with the receivers' roles exchanged: rx1/rx2 swap and
// the symbol columns reorder so receiver 1's block still comes first.
SchemeTrace exchange_roles(SchemeTrace t) {
  SchemeTrace out;
  out.scheme_id = std::move(t.scheme_id);
  out.m1 = t.m2;
  out.m2 = t.m1;
  out.states.reserve(t.states.size());
  for (CsitState s : t.states) out.states.push_back(swap_state(s));
  out.rx1 = permute_symbol_columns(t.rx2, t.m1, t.m2);
  out.rx2 = permute_symbol_columns(t.rx1, t.m1, t.m2);
  out.transmit.reserve(t.transmit.size());
  for (const CMat& x : t.transmit) out.transmit.push_back(permute_symbol_columns(x, t.m1, t.m2));
  return out;
}

}  // namespace

const std::vector<SchemeSpec>& catalog() {
  static const std::vector<SchemeSpec> all = build_catalog();
  return all;
}

const SchemeSpec& scheme(std::string_view id) {
  for (const SchemeSpec& spec : catalog()) {
    if (spec.id == id) return spec;
  }
  throw UnknownScheme("unknown scheme '" + std::string(id) + "'");
}

bool scheme_exists(std::string_view id) {
  for (const SchemeSpec& spec : catalog()) {
    if (spec.id == id) return true;
  }
  return false;
}

std::string swap_roles(std::string_view id) {
  auto it = swap_table().find(std::string(id));
  if (it == swap_table().end()) throw UnknownScheme("unknown scheme '" + std::string(id) + "'");
  return it->second;
}

std::string_view role_label(Role r) { return r == Role::Normal ? "normal" : "swapped"; }

Role parse_role(std::string_view label) {
  if (label == "normal") return Role::Normal;
  if (label == "swapped") return Role::Swapped;
  throw std::invalid_argument("Role: unknown label '" + std::string(label) + "'");
}

SchemeTrace build_trace(std::string_view id, const ChannelRealization& channels, Role role) {
  const SchemeSpec& spec = scheme(id);
  bool mirrored = false;
  const SchemeSpec& rule = builder_spec(spec, mirrored);
  bool exchange = mirrored != (role == Role::Swapped);

  SchemeTrace trace;
  if (exchange) {
    ChannelRealization swapped = swap_channels(channels);
    TraceBuilder b(rule, swapped);
    build_scheme(b, rule);
    trace = exchange_roles(std::move(b).take());
  } else {
    TraceBuilder b(rule, channels);
    build_scheme(b, rule);
    trace = std::move(b).take();
  }
  trace.scheme_id = spec.id;
  trace.role = role;
  return trace;
}

std::pair<bool, bool> check_decodable(const SchemeTrace& trace) {
  constexpr double kTol = 1e-9;
  // Interference sub-ranks use the full matrix's scale, so an all-zero
  // zero-forced block counts as rank 0 rather than ranking its own rounding
  // residue.
  CMat v_cols1 = trace.rx1.columns(static_cast<std::size_t>(trace.m1),
                                   static_cast<std::size_t>(trace.m2));
  CMat u_cols2 = trace.rx2.columns(0, static_cast<std::size_t>(trace.m1));
  std::vector<double> s1 = singular_values(trace.rx1);
  std::vector<double> s2 = singular_values(trace.rx2);
  double scale1 = s1.empty() ? 0.0 : s1.front();
  double scale2 = s2.empty() ? 0.0 : s2.front();
  bool ok1 = numeric_rank(trace.rx1, kTol, scale1) - numeric_rank(v_cols1, kTol, scale1) ==
             static_cast<std::size_t>(trace.m1);
  bool ok2 = numeric_rank(trace.rx2, kTol, scale2) - numeric_rank(u_cols2, kTol, scale2) ==
             static_cast<std::size_t>(trace.m2);
  return {ok1, ok2};
}

namespace {

void append_complex(std::string& out, const Complex& z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", z.real(), z.imag());
  out += buf;
}

void append_row(std::string& out, const char* tag, const CMat& m, std::size_t row) {
  out += ' ';
  out += tag;
  out += '=';
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j) out += ';';
    append_complex(out, m.at(row, j));
  }
}

}  // namespace

std::string trace_to_text(const SchemeTrace& trace) {
  std::string out = "trace v1 scheme=" + trace.scheme_id + " role=" +
                    std::string(role_label(trace.role)) + " slots=" + std::to_string(trace.slots()) +
                    " m1=" + std::to_string(trace.m1) + " m2=" + std::to_string(trace.m2) + "\n";
  for (int t = 0; t < trace.slots(); ++t) {
    out += "slot " + std::to_string(t + 1) + " state=" +
           std::string(state_label(trace.states[static_cast<size_t>(t)]));
    append_row(out, "x1", trace.transmit[static_cast<size_t>(t)], 0);
    append_row(out, "x2", trace.transmit[static_cast<size_t>(t)], 1);
    append_row(out, "y", trace.rx1, static_cast<size_t>(t));
    append_row(out, "z", trace.rx2, static_cast<size_t>(t));
    out += '\n';
  }
  return out;
}

bool csit_permits(const std::vector<CsitState>& states, int slot, int channel_slot,
                  bool for_user1) {
  if (channel_slot >= static_cast<int>(states.size())) return false;
  CsitForm form = for_user1 ? user1_form(states[static_cast<size_t>(channel_slot)])
                            : user2_form(states[static_cast<size_t>(channel_slot)]);
  if (channel_slot < slot) return form != CsitForm::N;
  if (channel_slot == slot) return form == CsitForm::P;
  return false;
}

}  // namespace altbc
