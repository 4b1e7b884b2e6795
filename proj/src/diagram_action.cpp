#include "wcounts/diagram_action.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wcounts/errors.hpp"

namespace wcounts {

namespace {

void require_automorphism(const RootSystem& rs, const std::vector<int>& sigma, size_t gen_pos) {
    const int n = rs.rank;
    if (static_cast<int>(sigma.size()) != n)
        throw validation_error("diagram_action",
                               "generator " + std::to_string(gen_pos) + " has length " +
                                   std::to_string(sigma.size()) + ", expected rank " +
                                   std::to_string(n));
    std::vector<bool> seen(n, false);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[v])
            throw validation_error("diagram_action",
                                   "generator " + std::to_string(gen_pos) +
                                       " is not a permutation of the simple-root indices");
        seen[v] = true;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (rs.cartan[sigma[i]][sigma[j]] != rs.cartan[i][j])
                throw validation_error(
                    "diagram_action",
                    "generator " + std::to_string(gen_pos) +
                        " is not a diagram automorphism: Cartan entry (" + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) + ") = " + std::to_string(rs.cartan[i][j]) +
                        " maps to (" + std::to_string(sigma[i] + 1) + "," +
                        std::to_string(sigma[j] + 1) +
                        ") = " + std::to_string(rs.cartan[sigma[i]][sigma[j]]));
        }
    }
}

} // namespace

DiagramAction build_action(const RootSystem& rs, const std::vector<std::vector<int>>& generators) {
    for (size_t g = 0; g < generators.size(); ++g) require_automorphism(rs, generators[g], g);

    DiagramAction da;
    da.rs = rs;
    da.generators = generators;

    // Union-find over simple-root indices.
    std::vector<int> parent(rs.rank);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& sigma : generators)
        for (int i = 0; i < rs.rank; ++i) {
            int a = find(i), b = find(sigma[i]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    std::vector<std::vector<int>> buckets(rs.rank);
    for (int i = 0; i < rs.rank; ++i) buckets[find(i)].push_back(i);

    da.orbit_index.assign(rs.rank, -1);
    for (int r = 0; r < rs.rank; ++r) {
        if (buckets[r].empty()) continue;
        for (int member : buckets[r]) da.orbit_index[member] = static_cast<int>(da.orbits.size());
        da.orbit_sizes.push_back(static_cast<int>(buckets[r].size()));
        da.orbits.push_back(std::move(buckets[r]));
    }

    // kappa is a diagram invariant, so it must be constant on orbits.
    for (const auto& orbit : da.orbits)
        for (int member : orbit)
            if (rs.kappa[member] != rs.kappa[orbit[0]])
                throw validation_error("diagram_action",
                                       "kappa is not constant on an orbit; the generators do not "
                                       "preserve the root system");
    return da;
}

int orbit_of(const DiagramAction& da, int idx) {
    if (idx < 0 || idx >= da.rs.rank)
        throw validation_error("diagram_action", "simple-root index " + std::to_string(idx) +
                                                     " out of range for rank " +
                                                     std::to_string(da.rs.rank));
    return da.orbit_index[idx];
}

bool is_orbit_constant(const DiagramAction& da, const std::vector<Rational>& values) {
    if (static_cast<int>(values.size()) != da.rs.rank)
        throw validation_error("diagram_action",
                               "vector has " + std::to_string(values.size()) +
                                   " entries, expected rank " + std::to_string(da.rs.rank));
    for (const auto& orbit : da.orbits)
        for (int member : orbit)
            if (values[member] != values[orbit[0]]) return false;
    return true;
}

} // namespace wcounts
