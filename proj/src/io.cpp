#include "altbc/io.hpp"

#include <sstream>
#include <vector>

namespace altbc {

LambdaPmf parse_pmf_input(std::string_view text) {
  std::string normalized(text);
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<std::pair<CsitState, Rational>> entries;
  std::string token;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("pmf input: expected STATE=fraction, got '" + token + "'");
    }
    entries.emplace_back(parse_state(token.substr(0, eq)),
                         Rational::parse(token.substr(eq + 1)));
  }
  if (entries.empty()) throw std::invalid_argument("pmf input: no entries");
  return LambdaPmf::from_entries(entries, /*mirror=*/true);
}

std::string region_document(const LambdaPmf& pmf) {
  Marginals m = marginals(pmf);
  DofRegion region = region_from_pmf(pmf);

  std::string out = "region v1\n";
  out += "pmf";
  for (CsitState s : kAllCsitStates) {
    out += ' ';
    out += state_label(s);
    out += '=';
    out += pmf[s].str();
  }
  out += '\n';
  out += "marginals lambda_p=" + m.lambda_p.str() + " lambda_d=" + m.lambda_d.str() +
         " lambda_n=" + m.lambda_n.str() + "\n";
  out += "case ";
  out += case_of(m) == RegionCase::A ? 'A' : 'B';
  out += '\n';
  out += "subcase " + std::string(subcase_label(subcase_of(pmf))) + "\n";
  out += "sum_dof " + sum_dof(m).str() + "\n";
  for (const Inequality& q : region.inequalities()) {
    out += "inequality " + q.a.str() + " " + q.b.str() + " " + q.c.str() + "\n";
  }
  for (const DofPoint& p : corner_points(m)) {
    out += "corner " + p.d1.str() + " " + p.d2.str() + "\n";
  }
  return out;
}

DofRegion region_from_document(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Inequality> ineqs;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head != "inequality") continue;
    std::string a, b, c;
    if (!(ls >> a >> b >> c)) {
      throw std::invalid_argument("region document: bad inequality line");
    }
    ineqs.push_back({Rational::parse(a), Rational::parse(b), Rational::parse(c)});
  }
  if (ineqs.empty()) throw std::invalid_argument("region document: no inequalities");
  return DofRegion(std::move(ineqs));
}

std::string surface_csv(const Rational& grid_step) {
  if (!(grid_step > Rational(0)) || grid_step > Rational(1)) {
    throw std::invalid_argument("surface: grid step must lie in (0, 1]");
  }
  std::string out = "lambda_d,lambda_p,sum_dof\n";
  for (Rational d(0); d <= Rational(1); d += grid_step) {
    for (Rational p(0); p + d <= Rational(1); p += grid_step) {
      Marginals m(p, d, Rational(1) - p - d);
      out += d.str() + "," + p.str() + "," + sum_dof(m).str() + "\n";
    }
  }
  return out;
}

std::string tradeoff_csv(const Rational& grid_step) {
  if (!(grid_step > Rational(0)) || grid_step > Rational(1)) {
    throw std::invalid_argument("tradeoff: grid step must lie in (0, 1]");
  }
  std::string out = "dof,lambda_p_min,lambda_d_min\n";
  for (Rational dof(1); dof <= Rational(2); dof += grid_step) {
    auto [p, d] = min_csit(dof);
    out += dof.str() + "," + p.str() + "," + d.str() + "\n";
  }
  return out;
}

}  // namespace altbc
