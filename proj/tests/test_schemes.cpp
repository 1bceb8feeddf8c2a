#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "altbc/schemes.hpp"
#include "altbc/simulate.hpp"

#include "support/test_support.hpp"

using namespace altbc;
using S = CsitState;

namespace {

std::string states_of(const SchemeSpec& spec) {
  std::string out;
  for (CsitState s : spec.state_per_slot) {
    if (!out.empty()) out += ',';
    out += state_label(s);
  }
  return out;
}

}  // namespace

TEST_CASE("catalog holds exactly the 17 constituent schemes") {
  const auto& all = catalog();
  REQUIRE(all.size() == 17);

  std::set<std::string> ids;
  for (const SchemeSpec& spec : all) ids.insert(spec.id);
  CHECK(ids.size() == 17);

  // Pin the whole table: states in slot order, symbol counts.
  std::vector<std::tuple<std::string, std::string, int, int>> expect = {
      {"S1", "NN", 1, 0},
      {"S2", "PP", 1, 1},
      {"S4/3-1", "DD,DD,DD", 2, 2},
      {"S4/3-2", "DD,NN,NN", 2, 2},
      {"S4/3-3", "ND,DN,DN,ND,DN,ND", 4, 4},
      {"S4/3-4", "ND,DN,NN", 2, 2},
      {"S3/2-1", "PD,NN", 2, 1},
      {"S3/2-2", "DP,NN", 1, 2},
      {"S3/2-3", "PN,NP", 2, 1},
      {"S3/2-4", "NP,PN", 1, 2},
      {"S3/2-5", "ND,PN", 2, 1},
      {"S3/2-6", "DN,NP", 1, 2},
      {"S5/3-1", "PD,PD,DP", 3, 2},
      {"S5/3-2", "DP,DP,PD", 2, 3},
      {"S5/3-3", "PD,PN,NP", 3, 2},
      {"S5/3-4", "DP,NP,PN", 2, 3},
      {"S8/5", "DD,PN,NP,PN,NP", 4, 4},
  };
  for (const auto& [id, states, m1, m2] : expect) {
    const SchemeSpec& spec = scheme(id);
    CHECK(states_of(spec) == states);
    CHECK(spec.m1 == m1);
    CHECK(spec.m2 == m2);
    CHECK(spec.slots == static_cast<int>(spec.state_per_slot.size()));
  }

  for (const SchemeSpec& spec : all) {
    Rational total(0);
    for (const auto& [state, frac] : spec.state_usage()) total += frac;
    CHECK(total == Rational(1));
    CHECK(spec.dof1() == Rational(spec.m1, spec.slots));
    CHECK(spec.dof2() == Rational(spec.m2, spec.slots));
  }
}

TEST_CASE("catalog lookups named in the contract") {
  const SchemeSpec& s2 = scheme("S2");
  CHECK(s2.slots == 1);
  CHECK(s2.state_per_slot == std::vector<CsitState>{S::PP});
  CHECK(s2.dof1() == Rational(1));
  CHECK(s2.dof2() == Rational(1));

  const SchemeSpec& s53 = scheme("S5/3-3");
  CHECK(s53.slots == 3);
  CHECK(s53.state_per_slot == std::vector<CsitState>{S::PD, S::PN, S::NP});
  CHECK(s53.dof1() == Rational(1));
  CHECK(s53.dof2() == Rational(2, 3));

  const SchemeSpec& s85 = scheme("S8/5");
  CHECK(s85.slots == 5);
  CHECK(s85.m1 == 4);
  CHECK(s85.m2 == 4);
  CHECK(s85.dof1() == Rational(4, 5));

  CHECK_THROWS_AS(scheme("S9/5"), UnknownScheme);
}

TEST_CASE("swap_roles pairs mirrors and fixes symmetric schemes") {
  CHECK(swap_roles("S3/2-1") == "S3/2-2");
  CHECK(swap_roles("S4/3-1") == "S4/3-1");
  CHECK(swap_roles("S5/3-3") == "S5/3-4");
  CHECK(swap_roles("S1") == "S1");

  for (const SchemeSpec& spec : catalog()) {
    const SchemeSpec& other = scheme(swap_roles(spec.id));
    CHECK(swap_roles(other.id) == spec.id);  // involution
    if (spec.id == "S1") continue;  // the (0,1) variant is S1 with a role flag
    CHECK(other.dof1() == spec.dof2());
    CHECK(other.dof2() == spec.dof1());
    // State usage maps through the swap.
    std::map<CsitState, Rational> swapped;
    for (const auto& [state, frac] : spec.state_usage()) swapped[swap_state(state)] += frac;
    CHECK(swapped == other.state_usage());
  }
}

TEST_CASE("S2 trace zero-forces each symbol at the unintended receiver") {
  ChannelRealization ch = draw_channels(3, 1);
  SchemeTrace t = build_trace("S2", ch);
  CHECK(std::abs(t.rx1.at(0, 1)) <= 1e-13);  // v invisible at receiver 1
  CHECK(std::abs(t.rx2.at(0, 0)) <= 1e-13);  // u invisible at receiver 2
  CHECK(std::abs(t.rx1.at(0, 0)) > 1e-3);
  CHECK(std::abs(t.rx2.at(0, 1)) > 1e-3);
  auto [ok1, ok2] = check_decodable(t);
  CHECK(ok1);
  CHECK(ok2);
}

TEST_CASE("S3/2-3 trace matches the two-slot equations coefficient by coefficient") {
  ChannelRealization ch = draw_channels(42, 2);
  SchemeTrace t = build_trace("S3/2-3", ch);
  REQUIRE(t.m1 == 2);
  REQUIRE(t.m2 == 1);
  REQUIRE(t.slots() == 2);

  // Independent evaluation of the slot equations from the raw channels:
  // slot 1 sends u1 on antenna 1 plus v on the direction nulled at receiver
  // 1; slot 2 repeats u1 and adds u2 on the direction nulled at receiver 2.
  // Streams split unit power equally, so every column scales by 1/sqrt(2).
  auto zf = [](const std::array<Complex, 2>& a) {
    double n = std::sqrt(std::norm(a[0]) + std::norm(a[1]));
    return std::array<Complex, 2>{a[1] / n, -a[0] / n};
  };
  const double split = 1.0 / std::sqrt(2.0);
  auto b1 = zf(ch.slots[0].h);
  auto b2 = zf(ch.slots[1].g);

  auto expect_rx = [&](const std::array<Complex, 2>& chan, int slot, int col) {
    // Column layout: u1, u2, v.
    std::array<Complex, 2> dir{};
    if (slot == 0 && col == 0) dir = {split, 0.0};
    if (slot == 0 && col == 2) dir = {b1[0] * split, b1[1] * split};
    if (slot == 1 && col == 0) dir = {split, 0.0};
    if (slot == 1 && col == 1) dir = {b2[0] * split, b2[1] * split};
    return chan[0] * dir[0] + chan[1] * dir[1];
  };

  for (int slot = 0; slot < 2; ++slot) {
    for (int col = 0; col < 3; ++col) {
      auto want1 = expect_rx(ch.slots[static_cast<size_t>(slot)].h, slot, col);
      auto want2 = expect_rx(ch.slots[static_cast<size_t>(slot)].g, slot, col);
      CHECK(std::abs(t.rx1.at(slot, col) - want1) <= 1e-12);
      CHECK(std::abs(t.rx2.at(slot, col) - want2) <= 1e-12);
    }
  }

  // The v column of rx1 vanishes in slot 1 through zero-forcing only; the
  // u2 coefficient at receiver 2 in slot 2 vanishes the same way.
  CHECK(std::abs(t.rx1.at(0, 2)) <= 1e-13);
  CHECK(std::abs(t.rx2.at(1, 1)) <= 1e-13);
}

TEST_CASE("S8/5 interference occupies one dimension at each receiver") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    ChannelRealization ch = draw_channels(seed, 5);
    SchemeTrace t = build_trace("S8/5", ch);
    CHECK(numeric_rank(t.rx1.columns(4, 4)) == 1);
    CHECK(numeric_rank(t.rx2.columns(0, 4)) == 1);
    auto [ok1, ok2] = check_decodable(t);
    CHECK(ok1);
    CHECK(ok2);
  }
}

TEST_CASE("hand-built rank-deficient trace is rejected") {
  SchemeTrace t;
  t.scheme_id = "S3/2-1";
  t.m1 = 2;
  t.m2 = 1;
  t.states = {S::PD, S::NN};
  t.rx1 = CMat(2, 3);
  t.rx2 = CMat(2, 3);
  // Receiver 1's slot-2 row duplicates slot 1: only one useful dimension.
  t.rx1.at(0, 0) = Complex(1.0, 0.5);
  t.rx1.at(0, 1) = Complex(-0.3, 1.1);
  t.rx1.at(1, 0) = t.rx1.at(0, 0);
  t.rx1.at(1, 1) = t.rx1.at(0, 1);
  t.rx2.at(0, 2) = Complex(0.9, -0.2);
  t.rx2.at(1, 2) = Complex(0.4, 0.7);
  auto [ok1, ok2] = check_decodable(t);
  CHECK_FALSE(ok1);
  CHECK(ok2);
}

TEST_CASE("every scheme decodes on random draws, both roles") {
  testsupport::TestRng seeds(23);
  for (const SchemeSpec& spec : catalog()) {
    for (int i = 0; i < 50; ++i) {
      ChannelRealization ch = draw_channels(seeds.next(), spec.slots);
      auto [ok1, ok2] = check_decodable(build_trace(spec.id, ch));
      CHECK(ok1);
      CHECK(ok2);
      auto [sok1, sok2] = check_decodable(build_trace(spec.id, ch, Role::Swapped));
      CHECK(sok1);
      CHECK(sok2);
    }
  }
}

TEST_CASE("traces keep unit transmit power per slot and consistent rx rows") {
  testsupport::TestRng seeds(59);
  for (const SchemeSpec& spec : catalog()) {
    ChannelRealization ch = draw_channels(seeds.next(), spec.slots);
    SchemeTrace t = build_trace(spec.id, ch);
    for (int slot = 0; slot < spec.slots; ++slot) {
      const CMat& x = t.transmit[static_cast<size_t>(slot)];
      double power = 0.0;
      for (size_t j = 0; j < x.cols(); ++j) {
        power += std::norm(x.at(0, j)) + std::norm(x.at(1, j));
      }
      CHECK(power == doctest::Approx(1.0).epsilon(1e-12));

      // Received rows are exactly the channel applied to the transmit map.
      for (size_t j = 0; j < x.cols(); ++j) {
        const auto& s = ch.slots[static_cast<size_t>(slot)];
        Complex y = s.h[0] * x.at(0, j) + s.h[1] * x.at(1, j);
        Complex z = s.g[0] * x.at(0, j) + s.g[1] * x.at(1, j);
        CHECK(std::abs(t.rx1.at(static_cast<size_t>(slot), j) - y) <= 1e-14);
        CHECK(std::abs(t.rx2.at(static_cast<size_t>(slot), j) - z) <= 1e-14);
      }
    }
  }
}

TEST_CASE("singular values of known matrices") {
  CMat diag(2, 2);
  diag.at(0, 0) = Complex(3.0);
  diag.at(1, 1) = Complex(0.0, -4.0);
  std::vector<double> s = singular_values(diag);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s[1] == doctest::Approx(3.0).epsilon(1e-12));

  // Rank-one outer product: sigma_1 = |a||b|, the rest at rounding level.
  CMat outer(4, 3);
  std::array<Complex, 4> a = {Complex(1, 1), Complex(0, 2), Complex(-1, 0), Complex(2, -1)};
  std::array<Complex, 3> b = {Complex(1, 0), Complex(0.5, -0.5), Complex(0, 1)};
  for (size_t r = 0; r < 4; ++r) {
    for (size_t c = 0; c < 3; ++c) outer.at(r, c) = a[r] * b[c];
  }
  double na = 0, nb = 0;
  for (const Complex& v : a) na += std::norm(v);
  for (const Complex& v : b) nb += std::norm(v);
  std::vector<double> so = singular_values(outer);
  CHECK(so[0] == doctest::Approx(std::sqrt(na * nb)).epsilon(1e-12));
  CHECK(so[1] <= 1e-14 * so[0]);
  CHECK(numeric_rank(outer) == 1);
}

TEST_CASE("svd rank agrees with the elimination oracle on trace matrices") {
  testsupport::TestRng seeds(29);
  for (const SchemeSpec& spec : catalog()) {
    for (int i = 0; i < 10; ++i) {
      SchemeTrace t = build_trace(spec.id, draw_channels(seeds.next(), spec.slots));
      CHECK(numeric_rank(t.rx1) == testsupport::oracle_rank(t.rx1));
      CHECK(numeric_rank(t.rx2) == testsupport::oracle_rank(t.rx2));
      CMat v1 = t.rx1.columns(static_cast<size_t>(t.m1), static_cast<size_t>(t.m2));
      CHECK(numeric_rank(v1) == testsupport::oracle_rank(v1));
    }
  }
}

TEST_CASE("MAT side information cancels from slots 1 and 3") {
  SchemeTrace t = build_trace("S4/3-1", draw_channels(5, 3));
  CMat u_at_rx2 = t.rx2.columns(0, 2);
  // Receiver 2 sees the u symbols only in slots 1 and 3, as the same
  // one-dimensional combination.
  CHECK(std::abs(u_at_rx2.at(1, 0)) <= 1e-13);
  CHECK(std::abs(u_at_rx2.at(1, 1)) <= 1e-13);
  CHECK(numeric_rank(u_at_rx2) == 1);
  CHECK(std::abs(u_at_rx2.at(0, 0)) > 1e-6);
  CHECK(std::abs(u_at_rx2.at(2, 0)) > 1e-6);
}

TEST_CASE("swapped S1 serves receiver 2 only") {
  SchemeTrace t = build_trace("S1", draw_channels(9, 1), Role::Swapped);
  CHECK(t.m1 == 0);
  CHECK(t.m2 == 1);
  auto [ok1, ok2] = check_decodable(t);
  CHECK(ok1);
  CHECK(ok2);
}

TEST_CASE("degenerate channels are refused") {
  ChannelRealization ch;
  ch.slots.push_back({{Complex(0.0), Complex(0.0)}, {Complex(1.0), Complex(0.0)}});
  CHECK_THROWS_AS(build_trace("S2", ch), DegenerateChannel);
  ChannelRealization short_ch = draw_channels(1, 1);
  CHECK_THROWS_AS(build_trace("S8/5", short_ch), std::invalid_argument);
}

TEST_CASE("csit permission table") {
  std::vector<CsitState> states = {S::PD, S::PN, S::NP};  // S5/3-3
  CHECK(csit_permits(states, 0, 0, true));    // perfect H(1) now
  CHECK_FALSE(csit_permits(states, 0, 0, false));  // G(1) only delayed
  CHECK(csit_permits(states, 1, 0, false));   // G(1) delayed, available later
  CHECK(csit_permits(states, 1, 1, true));    // perfect H(2)
  CHECK_FALSE(csit_permits(states, 1, 1, false));
  CHECK(csit_permits(states, 2, 2, false));   // perfect G(3)
  CHECK_FALSE(csit_permits(states, 2, 2, true));
  CHECK_FALSE(csit_permits(states, 1, 2, true));  // future slot
}

TEST_CASE("transmit rules use only permitted CSIT") {
  // Perturbing any channel entry outside a slot's permitted set must leave
  // that slot's transmit coefficients bit-identical.
  testsupport::TestRng seeds(31);
  for (const SchemeSpec& spec : catalog()) {
    ChannelRealization base = draw_channels(seeds.next(), spec.slots);
    SchemeTrace reference = build_trace(spec.id, base);
    for (int chan_slot = 0; chan_slot < spec.slots; ++chan_slot) {
      for (int user1 = 0; user1 <= 1; ++user1) {
        for (int antenna = 0; antenna < 2; ++antenna) {
          ChannelRealization mod = base;
          auto& vec = user1 ? mod.slots[static_cast<size_t>(chan_slot)].h
                            : mod.slots[static_cast<size_t>(chan_slot)].g;
          vec[static_cast<size_t>(antenna)] += Complex(0.5, -0.25);
          SchemeTrace changed = build_trace(spec.id, mod);
          for (int t = 0; t < spec.slots; ++t) {
            if (csit_permits(spec.state_per_slot, t, chan_slot, user1 != 0)) continue;
            CHECK(changed.transmit[static_cast<size_t>(t)] ==
                  reference.transmit[static_cast<size_t>(t)]);
          }
        }
      }
    }
  }
}

TEST_CASE("trace export matches the committed golden record") {
  // Explicit integer channels keep every operation IEEE-deterministic, so
  // the bytes are stable across platforms.
  ChannelRealization ch;
  ch.slots.push_back({{Complex(3, 1), Complex(1, -2)}, {Complex(2, 0), Complex(1, 1)}});
  ch.slots.push_back({{Complex(0, 1), Complex(2, 1)}, {Complex(1, 0), Complex(0, 2)}});
  std::string text = trace_to_text(build_trace("S3/2-3", ch));

  std::ifstream golden(std::string(ALTBC_GOLDEN_DIR) + "/trace_s32_3.txt");
  REQUIRE(golden.good());
  std::stringstream want;
  want << golden.rdbuf();
  CHECK(text == want.str());
}

TEST_CASE("trace export lists one slot per line and is stable") {
  ChannelRealization ch = draw_channels(77, 2);
  SchemeTrace t = build_trace("S3/2-1", ch);
  std::string text = trace_to_text(t);
  CHECK(text.find("trace v1 scheme=S3/2-1 role=normal slots=2 m1=2 m2=1") == 0);
  CHECK(text.find("slot 1 state=PD x1=") != std::string::npos);
  CHECK(text.find("slot 2 state=NN") != std::string::npos);
  CHECK(trace_to_text(build_trace("S3/2-1", ch)) == text);
}
