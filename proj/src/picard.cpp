#include "wcounts/picard.hpp"

#include <algorithm>
#include <set>

#include "wcounts/errors.hpp"

namespace wcounts {

bool BoundarySelection::contains(int idx) const {
    return std::binary_search(indices.begin(), indices.end(), idx);
}

BoundarySelection make_selection(const DiagramAction& da, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    for (int idx : indices)
        if (idx < 0 || idx >= da.rs.rank)
            throw validation_error("picard", "boundary index " + std::to_string(idx + 1) +
                                                 " out of range for rank " +
                                                 std::to_string(da.rs.rank));
    // The selection must be a union of orbits.
    std::set<int> chosen(indices.begin(), indices.end());
    for (int idx : indices)
        for (int member : da.orbits[da.orbit_index[idx]])
            if (!chosen.count(member))
                throw validation_error(
                    "picard", "boundary selection is not orbit-stable: index " +
                                  std::to_string(idx + 1) + " is selected but its orbit member " +
                                  std::to_string(member + 1) + " is not");

    BoundarySelection sel;
    sel.indices = std::move(indices);
    for (int i = 0; i < da.rs.rank; ++i)
        if (!chosen.count(i)) sel.complement.push_back(i);
    return sel;
}

DivisorVector anticanonical(const RootSystem& rs) {
    DivisorVector v;
    v.coeffs.reserve(rs.rank);
    for (long long k : rs.kappa) v.coeffs.emplace_back(k + 1);
    return v;
}

DivisorVector log_anticanonical(const RootSystem& rs, const BoundarySelection& sel) {
    DivisorVector v;
    v.coeffs.reserve(rs.rank);
    for (int i = 0; i < rs.rank; ++i)
        v.coeffs.emplace_back(rs.kappa[i] + (sel.contains(i) ? 0 : 1));
    return v;
}

int pic_rank_complement(const DiagramAction& da, const BoundarySelection& sel) {
    for (int idx : sel.indices) {
        for (int member : da.orbits[da.orbit_index[idx]])
            if (!sel.contains(member))
                throw validation_error("picard",
                                       "selection is not orbit-stable at index " +
                                           std::to_string(idx + 1));
    }
    int selected_orbits = 0;
    for (const auto& orbit : da.orbits) {
        bool inside = true;
        for (int member : orbit)
            if (!sel.contains(member)) inside = false;
        if (inside) ++selected_orbits;
    }
    return static_cast<int>(da.orbits.size()) - selected_orbits;
}

bool in_effective_interior(const DivisorVector& lam) {
    for (const auto& c : lam.coeffs)
        if (!(c > Rational(0))) return false;
    return !lam.coeffs.empty();
}

void validate_divisor_vector(const DiagramAction& da, const DivisorVector& lam) {
    if (static_cast<int>(lam.coeffs.size()) != da.rs.rank)
        throw validation_error("picard", "divisor vector has " +
                                             std::to_string(lam.coeffs.size()) +
                                             " entries, expected rank " +
                                             std::to_string(da.rs.rank));
    if (!is_orbit_constant(da, lam.coeffs))
        throw validation_error("picard",
                               "divisor vector is not constant on orbits of the diagram action");
}

} // namespace wcounts
