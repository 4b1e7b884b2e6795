#pragma once

#include <vector>

#include "wcounts/picard.hpp"
#include "wcounts/place.hpp"

namespace wcounts {

// Simplicial complex on a subset of the selected boundary indices. In the
// split case every face is present, so the complex is the full simplex on
// its vertex set; the empty complex has dimension -1.
struct ClemensComplex {
    std::vector<int> vertices;            // sorted simple-root indices
    std::vector<std::vector<int>> faces;  // all nonempty subsets of vertices
    int dimension = -1;                   // #vertices - 1, or -1 when empty
};

// Result of the growth-exponent computation for one configuration.
struct ExponentReport {
    Rational a;                       // leading growth exponent
    std::vector<int> achievers_D;     // boundary indices with kappa/lam = a
    std::vector<int> achievers_offD;  // complement indices with (kappa+1)/lam = a
    std::vector<Place> places;
    std::vector<int> d_per_place;     // pruned-complex dimension at each place
    int pic_rank = 0;
    int b = 0;                        // order of the leading pole
};

struct AValue {
    Rational a;
    std::vector<int> achievers_D;
    std::vector<int> achievers_offD;
};

// a = max( max_{alpha in sel} kappa_alpha / lam_alpha,
//          max_{alpha not in sel} (kappa_alpha + 1) / lam_alpha ),
// with both achiever sets. Requires lam strictly inside the effective cone;
// a nonpositive coefficient is rejected.
AValue a_of_lambda(const RootSystem& rs, const BoundarySelection& sel, const DivisorVector& lam);

// Complex obtained from the full simplex on the selection by removing every
// face containing a vertex with kappa_alpha < a * lam_alpha. `a` must be the
// value returned by a_of_lambda, so the kept vertices are exactly those with
// kappa_alpha = a * lam_alpha.
ClemensComplex pruned_clemens(const RootSystem& rs, const BoundarySelection& sel,
                              const DivisorVector& lam, const Rational& a);

// b = pic_rank_complement + sum_{v in S} (1 + d_v), where d_v is the
// pruned-complex dimension at v and an empty complex contributes 0.
// For split data d_v does not depend on the place.
int b_of_lambda(const DiagramAction& da, const BoundarySelection& sel, const DivisorVector& lam,
                const std::vector<Place>& places_S);

// Full exponent computation: a with achievers, per-place dimensions, and b.
ExponentReport exponent_report(const DiagramAction& da, const BoundarySelection& sel,
                               const DivisorVector& lam, const std::vector<Place>& places_S);

} // namespace wcounts
