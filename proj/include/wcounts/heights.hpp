#pragma once

#include <map>
#include <vector>

#include "wcounts/matrix.hpp"
#include "wcounts/picard.hpp"
#include "wcounts/place.hpp"
#include "wcounts/rational.hpp"

namespace wcounts {

// A point of PGL_n(Q) represented by a primitive integer matrix with a
// canonical sign: the first nonzero entry in row-major order is positive.
// This quotients out exactly the scalar ambiguity of the Q-representative.
struct PointRep {
    int n = 0;
    IntMatrix entries;

    // Normalizes arbitrary integer entries: rejects det = 0, divides out the
    // content, and fixes the sign.
    static PointRep make(int n, std::vector<long long> raw);

    // True iff `raw` is already primitive with canonical sign (and det != 0).
    static bool is_canonical(const IntMatrix& m);

    long long det() const { return determinant(entries); }
};

// Cartan coordinates of a group element at one place: at a finite prime the
// n-1 gaps v_p(d_{i+1}) - v_p(d_i) of the elementary divisor chain, at the
// archimedean place the logs log(sigma_i / sigma_{i+1}) of the sorted
// singular values. All entries are >= 0.
struct CartanProfile {
    Place place;
    std::vector<long long> finite_exponents; // finite place
    std::vector<long double> arch_exponents; // archimedean place

    int rank() const {
        return static_cast<int>(place.archimedean ? arch_exponents.size()
                                                  : finite_exponents.size());
    }
};

// Value of one local height: exact for finite places, floating for the
// archimedean one.
struct LocalHeightValue {
    Place place;
    Rational exact{1};        // finite places
    long double value = 1.0L; // both (approximation at finite places)
};

// Global height of a point with a per-divisor breakdown. `finite_part` is an
// exact positive rational; `arch_part` carries the stated floating precision.
struct HeightValue {
    Rational finite_part{1};
    long double arch_part = 1.0L;
    long double total = 1.0L;
    // per simple-root index: (exact finite factor, archimedean factor),
    // both before raising to the lambda exponent.
    std::vector<Rational> divisor_finite;
    std::vector<long double> divisor_arch;
};

// Finite-place Cartan profile via the elementary divisors of M localized at p.
CartanProfile smith_exponents(const PointRep& M, long long p);

// Archimedean profile via the symmetric eigenproblem of M^T M (cyclic Jacobi),
// to relative accuracy `tol`. Deterministic for fixed input; throws
// convergence_error with the residual if the iteration budget is exhausted.
CartanProfile arch_profile(const PointRep& M, long double tol = 1e-12L);

// Singular values of M, descending (convenience wrapper over the same solver).
std::vector<long double> singular_values(const PointRep& M, long double tol = 1e-12L);

// Local height Prod_i |alpha_i(t)|^{lambda_i}: at a prime p the exact rational
// p^{sum lambda_i e_i} (the exponent must come out an integer; otherwise the
// value is irrational and the call is rejected), at infinity
// exp(sum lambda_i e_i).
LocalHeightValue local_height(const CartanProfile& profile, const DivisorVector& lam);

// Product of local heights over the archimedean place and all primes dividing
// det(M); every other place contributes 1 for a primitive matrix.
HeightValue global_height(const PointRep& M, const DivisorVector& lam, long double tol = 1e-12L);

// True iff for every prime p outside S the Smith exponents of M vanish in
// every coordinate selected by `sel`. Requires the infinite place in S.
bool integrality_delta(const PointRep& M, const BoundarySelection& sel,
                       const std::vector<Place>& places_S);

} // namespace wcounts
