#include "wcounts/local_zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "wcounts/errors.hpp"

namespace wcounts {

namespace {

std::string orbit_label(const OrbitFactor& o) {
    std::string s = "{";
    for (size_t i = 0; i < o.members.size(); ++i) {
        if (i) s += ",";
        s += "alpha_" + std::to_string(o.members[i] + 1);
    }
    return s + "}";
}

// x = q^{-(s*lambda - kappa) * l}, the geometric ratio of one orbit.
long double orbit_ratio(const OrbitFactor& o, long long q, long double s) {
    long double expo = (s * o.lambda.to_long_double() - o.kappa) * o.size;
    return std::pow(static_cast<long double>(q), -expo);
}

void require_convergent(const EulerFactorSpec& spec, long double s) {
    for (const auto& o : spec.orbits) {
        if (s * o.lambda.to_long_double() - static_cast<long double>(o.kappa) <= 0.0L)
            throw validation_error("local_zeta",
                                   "s = " + std::to_string(static_cast<double>(s)) +
                                       " is at or below the abscissa of orbit " + orbit_label(o) +
                                       " (needs s*lambda > kappa = " + std::to_string(o.kappa) +
                                       ")");
    }
}

} // namespace

EulerFactorSpec make_euler_spec(const DiagramAction& da, const BoundarySelection& sel,
                                const DivisorVector& lam, long long q, int depth) {
    if (!is_prime(q)) throw validation_error("local_zeta", std::to_string(q) + " is not prime");
    if (depth < 1) throw validation_error("local_zeta", "truncation depth must be at least 1");
    validate_divisor_vector(da, lam);

    EulerFactorSpec spec;
    spec.q = q;
    spec.depth = depth;
    for (const auto& orbit : da.orbits) {
        OrbitFactor o;
        o.members = orbit;
        o.size = static_cast<int>(orbit.size());
        o.kappa = da.rs.kappa[orbit[0]];
        o.lambda = lam.coeffs[orbit[0]];
        o.in_boundary = sel.contains(orbit[0]);
        spec.orbits.push_back(std::move(o));
    }
    return spec;
}

LocalFactorValue geometric_local_factor(const EulerFactorSpec& spec, long double s) {
    require_convergent(spec, s);
    LocalFactorValue v;
    for (const auto& o : spec.orbits) v.value *= 1.0L / (1.0L - orbit_ratio(o, spec.q, s));
    v.tail_bound = 0.0L;
    return v;
}

LocalFactorValue cell_sum_local_integral(const EulerFactorSpec& spec, long double s,
                                         VolumeModel model, bool apply_delta) {
    require_convergent(spec, s);
    if (model == VolumeModel::exact_pgl2) {
        if (spec.orbits.size() != 1 || spec.orbits[0].size != 1)
            throw validation_error("local_zeta",
                                   "exact volumes are implemented for PGL_2 (one orbit of size 1)");
        const auto& o = spec.orbits[0];
        if (o.kappa != 1)
            throw validation_error("local_zeta", "exact volumes require kappa = 1 (PGL_2)");
        LocalFactorValue v;
        if (apply_delta && o.in_boundary) return v; // only the trivial cell survives
        const long double q = static_cast<long double>(spec.q);
        const long double se = s * o.lambda.to_long_double();
        long double sum = 1.0L;
        // vol(m) = q^{m-1}(q+1); the m-th term is (q+1)/q * (q^{1-se})^m.
        for (int m = 1; m <= spec.depth; ++m)
            sum += (q + 1.0L) / q * std::pow(q, (1.0L - se) * m);
        // Tail: sum_{m > depth} q^{m-1}(q+1) q^{-se m}, geometric with ratio q^{1-se}.
        const long double x = std::pow(q, 1.0L - se);
        v.value = sum;
        v.tail_bound = (q + 1.0L) / q * std::pow(x, spec.depth + 1) / (1.0L - x);
        return v;
    }

    // Modular model: the sum factors over orbits; each orbit contributes a
    // finite geometric sum in x = q^{-(s*lambda - kappa) l}.
    LocalFactorValue v;
    for (const auto& o : spec.orbits) {
        if (apply_delta && o.in_boundary) continue; // a_theta = 0 only
        const long double x = orbit_ratio(o, spec.q, s);
        long double partial = (1.0L - std::pow(x, spec.depth + 1)) / (1.0L - x);
        long double full = 1.0L / (1.0L - x);
        v.value *= partial;
        // Tail of the whole product is bounded by the sum of per-orbit tails
        // times the full product of the other orbits.
        v.tail_bound += (full - partial) / full;
    }
    long double full_product = 1.0L;
    for (const auto& o : spec.orbits) {
        if (apply_delta && o.in_boundary) continue;
        full_product *= 1.0L / (1.0L - orbit_ratio(o, spec.q, s));
    }
    v.tail_bound *= full_product;
    return v;
}

long long pgl2_cell_volume(long long q, int m) {
    if (m < 0) throw validation_error("local_zeta", "cell index must be nonnegative");
    if (m == 0) return 1;
    long long v = q + 1;
    for (int i = 1; i < m; ++i) {
        if (v > (1LL << 62) / q) throw overflow_error("local_zeta", "cell volume overflow");
        v *= q;
    }
    return v;
}

long long count_cyclic_sublattices(long long p, int m) {
    if (!is_prime(p)) throw validation_error("local_zeta", std::to_string(p) + " is not prime");
    if (m < 0) throw validation_error("local_zeta", "m must be nonnegative");
    // Sublattices of Z^2 of index p^m are rows (a, b), (0, d) with a*d = p^m,
    // 0 <= b < d; the quotient is cyclic iff gcd(a, b, d) = 1.
    long long pm = 1;
    for (int i = 0; i < m; ++i) {
        if (pm > 20'000'000 / p)
            throw validation_error("local_zeta", "p^m too large for direct sublattice enumeration");
        pm *= p;
    }
    long long count = 0;
    for (long long a = 1; a <= pm; a *= p) {
        long long d = pm / a;
        for (long long b = 0; b < d; ++b)
            if (std::gcd(std::gcd(a, b), d) == 1) ++count;
    }
    return count;
}

long double pgl2_exact_local_factor(long long q, long double s_eff) {
    const long double qf = static_cast<long double>(q);
    return (1.0L + std::pow(qf, -s_eff)) / (1.0L - std::pow(qf, 1.0L - s_eff));
}

CorrectionReport volume_correction_bound(const EulerFactorSpec& spec, long double s) {
    if (spec.orbits.size() != 1 || spec.orbits[0].size != 1 || spec.orbits[0].kappa != 1)
        throw validation_error("local_zeta", "volume correction is a PGL_2 quantity");
    const long double se = s * spec.orbits[0].lambda.to_long_double();
    if (se <= 0.5L)
        throw validation_error("local_zeta",
                               "s*lambda must exceed kappa - 1/2 = 1/2 for the correction bound");
    const long double q = static_cast<long double>(spec.q);
    const long double modular = 1.0L / (1.0L - std::pow(q, 1.0L - se));
    const long double exact = pgl2_exact_local_factor(spec.q, se);

    CorrectionReport rep;
    rep.correction = std::fabs(exact - modular);
    // In the continuation strip 1/2 < s*lambda < 1 the factors are the
    // meromorphic continuations and can be negative; the bound compares
    // magnitudes.
    const long double reference = std::fabs(modular - 1.0L) / q;
    rep.c_observed = reference > 0.0L ? rep.correction / reference : 0.0L;
    if (rep.correction > 1.0000001L * reference)
        throw validation_error("local_zeta", "volume correction exceeded its q^{-1} bound");
    return rep;
}

GlobalProductSpec make_global_spec(const DiagramAction& da, const BoundarySelection& sel,
                                   const DivisorVector& lam, const std::vector<Place>& places_S) {
    EulerFactorSpec one = make_euler_spec(da, sel, lam, 2, 1);
    GlobalProductSpec g;
    g.orbits = one.orbits;
    g.places_S = places_S;
    return g;
}

Rational predicted_pole(const std::vector<OrbitFactor>& orbits) {
    if (orbits.empty()) throw validation_error("local_zeta", "no orbits");
    Rational a(0);
    bool first = true;
    for (const auto& o : orbits) {
        Rational cand = Rational(o.in_boundary ? o.kappa : o.kappa + 1) / o.lambda;
        if (first || cand > a) {
            a = cand;
            first = false;
        }
    }
    return a;
}

std::vector<GlobalProductRow> truncated_global_product_trace(const GlobalProductSpec& spec,
                                                             long long prime_cutoff, long double s,
                                                             bool delta_on) {
    const Rational a = predicted_pole(spec.orbits);
    if (static_cast<long double>(s) <= a.to_long_double())
        throw validation_error("local_zeta",
                               "s must lie strictly right of the predicted pole a = " + a.str());
    std::vector<long long> s_primes = finite_primes(spec.places_S);

    std::vector<GlobalProductRow> rows;
    long double running = 1.0L;
    for (long long p : primes_up_to(prime_cutoff)) {
        EulerFactorSpec local;
        local.q = p;
        const bool in_S = std::binary_search(s_primes.begin(), s_primes.end(), p);
        for (const auto& o : spec.orbits) {
            // Outside S, the integrality indicator removes boundary orbits.
            if (delta_on && !in_S && o.in_boundary) continue;
            local.orbits.push_back(o);
        }
        long double factor =
            local.orbits.empty() ? 1.0L : geometric_local_factor(local, s).value;
        running *= factor;
        rows.push_back(GlobalProductRow{p, factor, running});
    }
    return rows;
}

long double truncated_global_product(const GlobalProductSpec& spec, long long prime_cutoff,
                                     long double s, bool delta_on) {
    auto rows = truncated_global_product_trace(spec, prime_cutoff, s, delta_on);
    return rows.empty() ? 1.0L : rows.back().running_product;
}

std::vector<long long> primes_up_to(long long limit) {
    if (limit > 50'000'000)
        throw validation_error("local_zeta", "prime cutoff too large");
    std::vector<long long> primes;
    if (limit < 2) return primes;
    std::vector<bool> sieve(static_cast<size_t>(limit) + 1, true);
    for (long long i = 2; i <= limit; ++i) {
        if (!sieve[i]) continue;
        primes.push_back(i);
        for (long long j = i * i; j <= limit; j += i) sieve[j] = false;
    }
    return primes;
}

} // namespace wcounts
