#pragma once

#include <string>
#include <vector>

#include "wcounts/rational.hpp"

namespace wcounts {

// Exact combinatorics of an irreducible reduced root system: Cartan matrix,
// positive roots in the simple-root basis, and the coefficients kappa_alpha
// of the sum of positive roots (sum_{beta>0} beta = sum_alpha kappa_alpha alpha).
//
// Conventions: simple roots are numbered in Bourbaki order and appear as unit
// vectors; cartan[i][j] = <alpha_i, alpha_j^vee>; positive roots are sorted
// lexicographically by coordinate vector. Values are immutable after
// construction and safe to share across threads.
struct RootSystem {
    char type_letter = 'A';
    int rank = 0;
    std::vector<std::vector<long long>> cartan;
    std::vector<std::vector<long long>> positive_roots;
    std::vector<long long> kappa;
};

// Pairing data of the cocharacter attached to a simple root, stored with the
// sign convention <alpha_i, theta^vee> = -delta_{i,theta}. The sign is kept
// verbatim; nothing downstream reinterprets it.
struct Cocharacter {
    int theta_index = 0;                  // 0-based simple-root index
    std::vector<long long> pairing_row;   // <alpha_i, theta^vee> for each i
};

// Builds the root system for a valid irreducible type:
// A (rank >= 1), B/C (rank >= 2), D (rank >= 3), E (6..8), F (4), G (2).
// Positive roots are generated from the simple roots by root-string closure.
// Invalid pairs are rejected with a diagnostic naming the constraint.
RootSystem build_root_system(char type_letter, int rank);

// Coordinates of sum_{beta>0} beta in the simple-root basis, recomputed from
// the stored positive roots. Always equals rs.kappa.
std::vector<long long> kappa_vector(const RootSystem& rs);

// Cocharacter for simple root `theta_index` (0-based).
Cocharacter cocharacter(const RootSystem& rs, int theta_index);

// True iff `lam`, read in the boundary-divisor (= simple-root) basis, has all
// coefficients > 0 in the fundamental-weight basis. The change of basis is
// multiplication by the transpose Cartan matrix, done in exact rationals.
bool is_regular_dominant(const RootSystem& rs, const std::vector<Rational>& lam);

// Number of positive roots by the classical closed form for the type.
long long positive_root_count_formula(char type_letter, int rank);

std::string type_name(const RootSystem& rs);

} // namespace wcounts
