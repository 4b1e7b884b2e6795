#pragma once

#include <cstdint>
#include <vector>

#include "wcounts/heights.hpp"
#include "wcounts/picard.hpp"
#include "wcounts/place.hpp"
#include "wcounts/rational.hpp"

namespace wcounts {

// A request to count points of PGL_n(Q) (n = 2 or 3) that are integral with
// respect to the boundary selection away from S and have height at most each
// of the listed thresholds.
struct CountQuery {
    int n = 2;
    DivisorVector lam;                 // length n-1, interior of effective cone
    BoundarySelection sel;
    std::vector<Place> places;         // must contain the archimedean place
    std::vector<Rational> thresholds;  // strictly increasing, positive
    unsigned long long budget = 2'000'000'000ULL;
    long double guard_rel = 1e-9L;     // near-threshold guard band
    int threads = 1;
    bool collect_points = false;
};

struct PointRecord {
    std::vector<long long> entries; // row-major
    long double height = 0.0L;
    bool flagged = false;
};

struct CountRow {
    Rational threshold;
    long long count = 0;   // points with height <= threshold
    long long flagged = 0; // points within the guard band of this threshold
};

// Counts per threshold; counts are nondecreasing in the threshold. When
// points are collected they are sorted lexicographically by entries.
struct CountSeries {
    std::vector<CountRow> rows;
    std::vector<PointRecord> points;
};

// Integer E such that every counted matrix has all |entries| <= E, derived
// from the singular-value bound sigma_1 <= B^{(sum_j (n-j)/lambda_j)/n}.
long long entry_bound(const CountQuery& query);

// Estimated inner-loop iterations of enumerate_bounded for this query.
unsigned long long estimate_work(const CountQuery& query);

// Exhaustive enumeration over candidate column vectors pruned by the
// singular-value bound. Exceeding the budget is an error before any work
// starts; partial results are never returned.
CountSeries enumerate_bounded(const CountQuery& query);

// Independent reference strategy: scan the full entry box [-E, E]^{n^2} and
// filter with the heights module only. Used as the test oracle for the
// faster strategies.
CountSeries box_scan_reference(const CountQuery& query);

// Fast path for PGL_2 with the full boundary selected: integrality forces the
// determinant to be an S-unit u, so first columns are enumerated directly and
// (b, d) solved from a*d - b*c = u by the linear Diophantine parametrization.
// Produces exactly the same series as enumerate_bounded.
CountSeries enumerate_sl2_specialized(const CountQuery& query);

// Validates a query against all module preconditions.
void validate_query(const CountQuery& query);

} // namespace wcounts
