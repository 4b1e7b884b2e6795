#pragma once

#include <vector>

#include "wcounts/diagram_action.hpp"
#include "wcounts/picard.hpp"
#include "wcounts/place.hpp"
#include "wcounts/rational.hpp"

namespace wcounts {

// Per-orbit data entering a local height integral: the (orbit-constant)
// kappa and lambda values, the orbit size, and whether the orbit lies in the
// selected boundary (so the integrality indicator kills its nontrivial cells).
struct OrbitFactor {
    long long kappa = 0;
    Rational lambda{1};
    int size = 1;
    bool in_boundary = false;
    std::vector<int> members; // simple-root indices, for diagnostics
};

// A local Euler factor specification at one prime.
struct EulerFactorSpec {
    long long q = 2;
    std::vector<OrbitFactor> orbits;
    int depth = 40; // truncation depth per cell coordinate
};

struct LocalFactorValue {
    long double value = 1.0L;
    long double tail_bound = 0.0L; // exact closed-form tail of the truncation
};

enum class VolumeModel {
    modular,    // vol(K t(a) K) approximated by the modular function q^{<kappa,a>}
    exact_pgl2, // exact double-coset volumes for PGL_2 by sublattice counting
};

EulerFactorSpec make_euler_spec(const DiagramAction& da, const BoundarySelection& sel,
                                const DivisorVector& lam, long long q, int depth = 40);

// Closed form prod_orbits (1 - q^{-(s*lambda - kappa) * l})^{-1}; no
// truncation error. Rejects s at or below the abscissa, naming the orbit
// that blocks convergence.
LocalFactorValue geometric_local_factor(const EulerFactorSpec& spec, long double s);

// Truncated sum over Cartan cells a in {0..depth}^orbits with the chosen
// volume model. With `apply_delta`, orbits inside the boundary selection
// contribute only their trivial cell. The exact tail of the truncation is
// reported alongside the value.
LocalFactorValue cell_sum_local_integral(const EulerFactorSpec& spec, long double s,
                                         VolumeModel model, bool apply_delta = false);

// vol(K diag(1, pi^m) K) with vol(K) = 1: the number of sublattices of Z_p^2
// with elementary divisors (1, p^m). Closed form: 1 for m = 0, q^{m-1}(q+1)
// for m >= 1.
long long pgl2_cell_volume(long long q, int m);

// The same count by direct Hermite-form enumeration (gcd-filtered); usable
// while p^m stays below the enumeration cap. This is the oracle backing
// pgl2_cell_volume.
long long count_cyclic_sublattices(long long p, int m);

// Exact PGL_2 local factor (1 + q^{-s_eff}) / (1 - q^{1 - s_eff}) where
// s_eff = s * lambda.
long double pgl2_exact_local_factor(long long q, long double s_eff);

struct CorrectionReport {
    long double correction = 0.0L; // |exact - modular|
    long double c_observed = 0.0L; // correction / (q^{-1} * (modular - 1))
};

// The volume-correction term at one prime for PGL_2: the difference between
// the exact and modular-model factors. Checks the bound
// correction <= C * q^{-1} * (modular - 1) and reports the observed C.
CorrectionReport volume_correction_bound(const EulerFactorSpec& spec, long double s);

// Prime-independent template for global products.
struct GlobalProductSpec {
    std::vector<OrbitFactor> orbits;
    std::vector<Place> places_S;
};

GlobalProductSpec make_global_spec(const DiagramAction& da, const BoundarySelection& sel,
                                   const DivisorVector& lam, const std::vector<Place>& places_S);

struct GlobalProductRow {
    long long p = 0;
    long double local_factor = 1.0L;
    long double running_product = 1.0L;
};

// Product over primes p <= prime_cutoff of the modular-model factor at s.
// With delta_on, primes outside S use only the orbits off the boundary
// (the integrality indicator removes the rest); finite primes inside S use
// all orbits. Requires s strictly right of the predicted pole a(lambda).
std::vector<GlobalProductRow> truncated_global_product_trace(const GlobalProductSpec& spec,
                                                             long long prime_cutoff, long double s,
                                                             bool delta_on);

long double truncated_global_product(const GlobalProductSpec& spec, long long prime_cutoff,
                                     long double s, bool delta_on);

// Predicted pole location max over orbits of kappa/lambda (boundary) and
// (kappa+1)/lambda (off boundary), as exact rational.
Rational predicted_pole(const std::vector<OrbitFactor>& orbits);

std::vector<long long> primes_up_to(long long limit);

} // namespace wcounts
