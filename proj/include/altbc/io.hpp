#pragma once

#include <string>
#include <string_view>

#include "altbc/composer.hpp"
#include "altbc/csit.hpp"
#include "altbc/region.hpp"

namespace altbc {

/// Parses a textual state distribution like "PD=1/2,DP=1/2" (comma or space
/// separated). Asymmetric pairs may be given one-sided; the mirror entry is
/// filled in automatically. Unlisted states are zero.
LambdaPmf parse_pmf_input(std::string_view text);

/// Line-oriented region description: pmf, marginals, case, sub-case, sum-DoF,
/// normalized inequalities and corner points, all as exact rationals.
std::string region_document(const LambdaPmf& pmf);

/// Reads the inequality lines of a region document back into a region.
DofRegion region_from_document(std::string_view text);

/// CSV of (lambda_d, lambda_p, sum_dof) over the marginal simplex on the
/// given grid step.
std::string surface_csv(const Rational& grid_step);

/// CSV of (dof, lambda_p_min, lambda_d_min) over a sum-DoF grid on [1, 2].
std::string tradeoff_csv(const Rational& grid_step);

}  // namespace altbc
