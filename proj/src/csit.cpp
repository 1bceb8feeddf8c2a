#include "altbc/csit.hpp"

#include <stdexcept>

namespace altbc {

namespace {

constexpr std::array<std::string_view, 9> kLabels = {"PP", "PD", "DP", "PN", "NP",
                                                     "DD", "DN", "ND", "NN"};

CsitForm parse_form(char c) {
  switch (c) {
    case 'P': return CsitForm::P;
    case 'D': return CsitForm::D;
    case 'N': return CsitForm::N;
    default: throw std::invalid_argument("CsitState: bad form character");
  }
}

}  // namespace

CsitForm user1_form(CsitState s) { return parse_form(kLabels[static_cast<size_t>(s)][0]); }
CsitForm user2_form(CsitState s) { return parse_form(kLabels[static_cast<size_t>(s)][1]); }

CsitState make_state(CsitForm f1, CsitForm f2) {
  auto c = [](CsitForm f) { return f == CsitForm::P ? 'P' : f == CsitForm::D ? 'D' : 'N'; };
  char label[3] = {c(f1), c(f2), '\0'};
  return parse_state(label);
}

CsitState swap_state(CsitState s) { return make_state(user2_form(s), user1_form(s)); }

bool state_covers(CsitState actual, CsitState required) {
  return static_cast<int>(user1_form(actual)) >= static_cast<int>(user1_form(required)) &&
         static_cast<int>(user2_form(actual)) >= static_cast<int>(user2_form(required));
}

std::string_view state_label(CsitState s) { return kLabels[static_cast<size_t>(s)]; }

CsitState parse_state(std::string_view label) {
  for (size_t i = 0; i < kLabels.size(); ++i) {
    if (kLabels[i] == label) return static_cast<CsitState>(i);
  }
  throw std::invalid_argument("CsitState: unknown label '" + std::string(label) + "'");
}

LambdaPmf LambdaPmf::from_entries(const std::vector<std::pair<CsitState, Rational>>& entries,
                                  bool mirror) {
  LambdaPmf pmf;
  std::array<bool, 9> given{};
  for (const auto& [state, frac] : entries) {
    auto i = static_cast<size_t>(state);
    if (given[i]) throw std::invalid_argument("LambdaPmf: duplicate entry for " +
                                              std::string(state_label(state)));
    given[i] = true;
    pmf.fractions_[i] = frac;
  }
  if (mirror) {
    for (CsitState s : kAllCsitStates) {
      CsitState t = swap_state(s);
      if (t == s) continue;
      auto i = static_cast<size_t>(s);
      auto j = static_cast<size_t>(t);
      if (given[i] && !given[j]) {
        pmf.fractions_[j] = pmf.fractions_[i];
        given[j] = true;
      }
    }
  }
  pmf.validate();
  return pmf;
}

void LambdaPmf::validate() const {
  Rational sum;
  for (const Rational& f : fractions_) {
    if (f.is_negative()) throw std::invalid_argument("LambdaPmf: negative fraction");
    sum += f;
  }
  if (sum != Rational(1)) {
    throw std::invalid_argument("LambdaPmf: fractions sum to " + sum.str() + ", expected 1");
  }
  for (CsitState s : kAllCsitStates) {
    if ((*this)[s] != (*this)[swap_state(s)]) {
      throw std::invalid_argument("LambdaPmf: asymmetric fractions for " +
                                  std::string(state_label(s)));
    }
  }
}

std::string LambdaPmf::str() const {
  std::string out;
  for (CsitState s : kAllCsitStates) {
    if (!out.empty()) out += ' ';
    out += state_label(s);
    out += '=';
    out += (*this)[s].str();
  }
  return out;
}

Marginals::Marginals(Rational p, Rational d, Rational n)
    : lambda_p(std::move(p)), lambda_d(std::move(d)), lambda_n(std::move(n)) {
  if (lambda_p.is_negative() || lambda_d.is_negative() || lambda_n.is_negative()) {
    throw std::invalid_argument("Marginals: negative fraction");
  }
  if (lambda_p + lambda_d + lambda_n != Rational(1)) {
    throw std::invalid_argument("Marginals: fractions must sum to 1");
  }
}

Marginals marginals(const LambdaPmf& pmf) {
  using S = CsitState;
  Rational p = pmf[S::PP] + pmf[S::PD] + pmf[S::PN];
  Rational d = pmf[S::DD] + pmf[S::PD] + pmf[S::DN];
  Rational n = pmf[S::NN] + pmf[S::PN] + pmf[S::DN];
  return Marginals(p, d, n);
}

}  // namespace altbc
