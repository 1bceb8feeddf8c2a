#include "altbc/region.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace altbc {

namespace {

Inequality normalize(Inequality q) {
  if (q.a.is_negative() || q.b.is_negative() || (q.a.is_zero() && q.b.is_zero())) {
    throw std::invalid_argument("DofRegion: inequality must have a, b >= 0, not both zero");
  }
  const Rational& lead = q.a.is_zero() ? q.b : q.a;
  return Inequality{q.a / lead, q.b / lead, q.c / lead};
}

// Intersection of the boundary lines of two constraints, if unique.
std::optional<DofPoint> line_intersection(const Inequality& p, const Inequality& q) {
  Rational det = p.a * q.b - q.a * p.b;
  if (det.is_zero()) return std::nullopt;
  Rational d1 = (p.c * q.b - q.c * p.b) / det;
  Rational d2 = (p.a * q.c - q.a * p.c) / det;
  return DofPoint{d1, d2};
}

std::vector<DofPoint> enumerate_vertices(const std::vector<Inequality>& ineqs) {
  std::vector<Inequality> all = ineqs;
  all.push_back(Inequality{Rational(-1), Rational(0), Rational(0)});  // d1 >= 0
  all.push_back(Inequality{Rational(0), Rational(-1), Rational(0)});  // d2 >= 0

  auto feasible = [&](const DofPoint& p) {
    for (const Inequality& q : all) {
      if (q.a * p.d1 + q.b * p.d2 > q.c) return false;
    }
    return true;
  };

  std::vector<DofPoint> verts;
  for (size_t i = 0; i < all.size(); ++i) {
    for (size_t j = i + 1; j < all.size(); ++j) {
      auto p = line_intersection(all[i], all[j]);
      if (p && feasible(*p)) verts.push_back(*p);
    }
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

}  // namespace

DofRegion::DofRegion(std::vector<Inequality> inequalities) {
  for (Inequality& q : inequalities) q = normalize(q);
  std::sort(inequalities.begin(), inequalities.end());
  inequalities.erase(std::unique(inequalities.begin(), inequalities.end()), inequalities.end());
  if (inequalities.empty()) throw std::invalid_argument("DofRegion: no inequalities");
  ineqs_ = std::move(inequalities);
}

bool DofRegion::contains(const DofPoint& p) const {
  if (p.d1.is_negative() || p.d2.is_negative()) return false;
  for (const Inequality& q : ineqs_) {
    if (q.a * p.d1 + q.b * p.d2 > q.c) return false;
  }
  return true;
}

std::vector<DofPoint> DofRegion::vertices() const { return enumerate_vertices(ineqs_); }

DofRegion DofRegion::reduced() const {
  std::vector<Inequality> kept = ineqs_;
  bool changed = true;
  while (changed && kept.size() > 1) {
    changed = false;
    std::vector<DofPoint> base = enumerate_vertices(kept);
    for (size_t i = 0; i < kept.size(); ++i) {
      std::vector<Inequality> without = kept;
      without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
      if (enumerate_vertices(without) == base) {
        kept = std::move(without);
        changed = true;
        break;
      }
    }
  }
  return DofRegion(std::move(kept));
}

bool regions_equal(const DofRegion& r1, const DofRegion& r2) {
  return r1.reduced().inequalities() == r2.reduced().inequalities();
}

DofRegion region_from_pmf(const LambdaPmf& pmf) {
  using S = CsitState;
  Rational one(1), two(2);
  Rational cross = two + pmf[S::PP] + pmf[S::PD] + pmf[S::PN];
  Rational sum = one + pmf[S::PP] + two * pmf[S::PD] + pmf[S::DD] + pmf[S::PN] + pmf[S::DN];
  return DofRegion({
      Inequality{one, Rational(0), one},
      Inequality{Rational(0), one, one},
      Inequality{one, two, cross},
      Inequality{two, one, cross},
      Inequality{one, one, sum},
  });
}

DofRegion region_from_marginals(const Marginals& m) {
  Rational one(1), two(2);
  Rational cross = two + m.lambda_p;
  Rational sum = one + m.lambda_p + m.lambda_d;
  return DofRegion({
      Inequality{one, Rational(0), one},
      Inequality{Rational(0), one, one},
      Inequality{one, two, cross},
      Inequality{two, one, cross},
      Inequality{one, one, sum},
  });
}

Rational sum_dof(const Marginals& m) {
  Rational apex = (Rational(4) + Rational(2) * m.lambda_p) / Rational(3);
  Rational edge = Rational(1) + m.lambda_p + m.lambda_d;
  return min(apex, edge);
}

RegionCase case_of(const Marginals& m) {
  return m.lambda_n <= Rational(2) * m.lambda_d ? RegionCase::A : RegionCase::B;
}

std::vector<DofPoint> corner_points(const Marginals& m) {
  return region_from_marginals(m).vertices();
}

bool contains(const DofRegion& r, const DofPoint& p) { return r.contains(p); }

std::pair<Rational, Rational> min_csit(const Rational& dof) {
  if (dof < Rational(0) || dof > Rational(2)) {
    throw std::domain_error("min_csit: dof must lie in [0, 2]");
  }
  if (dof >= Rational(4, 3)) {
    return {Rational(3, 2) * dof - Rational(2), Rational(1) - dof / Rational(2)};
  }
  return {Rational(0), max(dof - Rational(1), Rational(0))};
}

}  // namespace altbc
