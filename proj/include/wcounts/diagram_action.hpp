#pragma once

#include <vector>

#include "wcounts/rational.hpp"
#include "wcounts/root_system.hpp"

namespace wcounts {

// A finite permutation action on the Dynkin diagram of a root system,
// generated by diagram automorphisms. Orbits of the action index the
// Galois-stable divisor classes used by the Picard and exponent modules.
// The trivial action (no generators) is the split case: all orbits are
// singletons. Immutable after construction.
struct DiagramAction {
    RootSystem rs;
    // Each generator maps simple-root index i to generators[g][i] (0-based).
    std::vector<std::vector<int>> generators;
    // Orbits partition {0..rank-1}; each orbit is sorted, and orbits are
    // sorted by smallest element.
    std::vector<std::vector<int>> orbits;
    std::vector<int> orbit_sizes;
    // orbit_index[i] = position of the orbit containing i in `orbits`.
    std::vector<int> orbit_index;
};

// Validates that every generator is a diagram automorphism (preserves the
// Cartan matrix entrywise) and computes the orbit partition. A permutation
// that breaks some Cartan entry is rejected with the violated index pair.
DiagramAction build_action(const RootSystem& rs, const std::vector<std::vector<int>>& generators);

// Identifier (index into da.orbits) of the orbit containing `idx`.
int orbit_of(const DiagramAction& da, int idx);

// True iff the vector takes a single value on each orbit. Divisor vectors
// must satisfy this to descend to the ground field.
bool is_orbit_constant(const DiagramAction& da, const std::vector<Rational>& values);

} // namespace wcounts
