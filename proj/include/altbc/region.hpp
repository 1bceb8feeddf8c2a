#pragma once

#include <utility>
#include <vector>

#include "altbc/csit.hpp"
#include "altbc/rational.hpp"

namespace altbc {

/// A DoF pair (d1, d2) in exact rationals.
struct DofPoint {
  Rational d1;
  Rational d2;

  bool operator==(const DofPoint&) const = default;
  friend bool operator<(const DofPoint& a, const DofPoint& b) {
    return a.d1 != b.d1 ? a.d1 < b.d1 : a.d2 < b.d2;
  }
};

/// One half-plane bound a*d1 + b*d2 <= c with a, b >= 0 (not both zero).
struct Inequality {
  Rational a;
  Rational b;
  Rational c;

  bool operator==(const Inequality&) const = default;
  friend bool operator<(const Inequality& x, const Inequality& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.c < y.c;
  }
};

/// DoF region as a list of half-plane inequalities over (d1, d2), plus the
/// implicit nonnegativity of both coordinates. Held in normalized form: each
/// inequality is scaled so its first nonzero coefficient is 1, duplicates are
/// merged, and the list is sorted, so equal regions built the same way
/// compare equal member-wise.
class DofRegion {
 public:
  explicit DofRegion(std::vector<Inequality> inequalities);

  const std::vector<Inequality>& inequalities() const { return ineqs_; }

  /// Exact membership test, boundary inclusive.
  bool contains(const DofPoint& p) const;

  /// All vertices of the polytope (axes included as constraints), each the
  /// intersection of two boundaries, sorted by d1 then d2.
  std::vector<DofPoint> vertices() const;

  /// Copy with redundant inequalities removed: an inequality is redundant if
  /// dropping it leaves the vertex set unchanged.
  DofRegion reduced() const;

 private:
  std::vector<Inequality> ineqs_;
};

/// True iff the two regions describe the same set of points, decided by
/// comparing normalized inequality lists after redundancy removal.
bool regions_equal(const DofRegion& r1, const DofRegion& r2);

/// The five-inequality DoF region of the alternating-CSIT MISO BC, from the
/// full state distribution.
DofRegion region_from_pmf(const LambdaPmf& pmf);

/// Same region expressed through the marginal fractions only.
DofRegion region_from_marginals(const Marginals& m);

/// max(d1 + d2) over the region: min((4 + 2*lambda_P)/3, 1 + lambda_P + lambda_D).
Rational sum_dof(const Marginals& m);

/// Region shape: in case A the d1+d2 bound is inactive and the region has a
/// single symmetric apex; in case B the sum bound cuts the apex into two.
enum class RegionCase { A, B };

/// Case A iff lambda_N <= 2*lambda_D (boundary counts as A: both shapes
/// coincide there).
RegionCase case_of(const Marginals& m);

/// Vertices of the region polytope for these marginals, sorted by d1 then d2.
std::vector<DofPoint> corner_points(const Marginals& m);

bool contains(const DofRegion& r, const DofPoint& p);

/// Minimum marginal (lambda_P, lambda_D) able to reach a target sum-DoF:
/// ((3/2)dof - 2, 1 - dof/2) for dof in [4/3, 2], else (0, max(dof - 1, 0)).
/// Rejects dof outside [0, 2].
std::pair<Rational, Rational> min_csit(const Rational& dof);

}  // namespace altbc
