#pragma once

#include <vector>

#include "wcounts/diagram_action.hpp"
#include "wcounts/rational.hpp"
#include "wcounts/root_system.hpp"

namespace wcounts {

// An element lam = sum_alpha lam_alpha D_alpha of Pic(X)_Q in the
// boundary-divisor basis, indexed in Bourbaki order. Coefficients are exact
// rationals and must be constant on orbits of the diagram action in play.
struct DivisorVector {
    std::vector<Rational> coeffs;
};

// A subset of the simple roots selecting the removed boundary divisors.
// Must be a union of orbits of the diagram action.
struct BoundarySelection {
    std::vector<int> indices;    // sorted, 0-based
    std::vector<int> complement; // sorted, 0-based

    bool contains(int idx) const;
};

// Builds a selection from 0-based indices, validating range, uniqueness and
// orbit stability under `da`.
BoundarySelection make_selection(const DiagramAction& da, std::vector<int> indices);

// Divisor vector with coefficients kappa_alpha + 1 (the anticanonical class).
DivisorVector anticanonical(const RootSystem& rs);

// kappa_alpha on the selected boundary, kappa_alpha + 1 elsewhere
// (the log-anticanonical class for the selection).
DivisorVector log_anticanonical(const RootSystem& rs, const BoundarySelection& sel);

// Rank of the divisor class group of the complement of the selected boundary:
// (#orbits) - (#orbits contained in the selection). Rejects selections that
// are not orbit-stable.
int pic_rank_complement(const DiagramAction& da, const BoundarySelection& sel);

// True iff every coefficient is > 0 (interior of the effective cone).
bool in_effective_interior(const DivisorVector& lam);

// Throws unless lam has the right length and is orbit-constant for `da`.
void validate_divisor_vector(const DiagramAction& da, const DivisorVector& lam);

} // namespace wcounts
