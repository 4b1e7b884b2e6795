#include "wcounts/heights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wcounts {

namespace {

// Primes dividing |v| by trial division; fine at the scales this tool runs.
std::vector<long long> prime_divisors(long long v) {
    if (v < 0) v = -v;
    std::vector<long long> out;
    for (long long p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

bool is_s_unit(long long v, const std::vector<long long>& s_primes) {
    if (v < 0) v = -v;
    if (v == 0) return false;
    for (long long p : s_primes)
        while (v % p == 0) v /= p;
    return v == 1;
}

} // namespace

bool PointRep::is_canonical(const IntMatrix& m) {
    for (long long v : m.a) {
        if (v > 0) break;
        if (v < 0) return false;
    }
    if (content(m) != 1) return false;
    return determinant(m) != 0;
}

PointRep PointRep::make(int n, std::vector<long long> raw) {
    if (n < 2) throw validation_error("heights", "matrix size must be at least 2");
    IntMatrix m(n, std::move(raw));
    if (determinant(m) == 0)
        throw validation_error("heights", "singular matrix does not represent a group point");
    long long g = content(m);
    for (auto& v : m.a) v /= g;
    for (long long v : m.a) {
        if (v > 0) break;
        if (v < 0) {
            for (auto& w : m.a) w = -w;
            break;
        }
    }
    PointRep p;
    p.n = n;
    p.entries = std::move(m);
    return p;
}

CartanProfile smith_exponents(const PointRep& M, long long p) {
    if (!is_prime(p))
        throw validation_error("heights", std::to_string(p) + " is not prime");
    std::vector<long long> d = elementary_divisors(M.entries);
    CartanProfile prof;
    prof.place = Place::finite(p);
    prof.finite_exponents.reserve(M.n - 1);
    for (int i = 0; i + 1 < M.n; ++i)
        prof.finite_exponents.push_back(p_valuation(d[i + 1], p) - p_valuation(d[i], p));
    return prof;
}

std::vector<long double> singular_values(const PointRep& M, long double tol) {
    const int n = M.n;
    // Gram matrix M^T M in long double; entries are exact integers well below
    // the 64-bit mantissa at enumeration scales.
    std::vector<long double> g(static_cast<size_t>(n) * n, 0.0L);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long double s = 0.0L;
            for (int k = 0; k < n; ++k)
                s += static_cast<long double>(M.entries.at(k, i)) * M.entries.at(k, j);
            g[static_cast<size_t>(i) * n + j] = s;
        }
    auto at = [&](int i, int j) -> long double& { return g[static_cast<size_t>(i) * n + j]; };

    long double scale = 0.0L;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(at(i, i)));

    // Cyclic Jacobi sweeps, fixed order, until the off-diagonal mass is gone.
    const int max_sweeps = 64;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        long double off = 0.0L;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (std::sqrt(off) <= tol * scale) break;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (at(i, j) == 0.0L) continue;
                long double theta = (at(j, j) - at(i, i)) / (2.0L * at(i, j));
                long double t = (theta >= 0 ? 1.0L : -1.0L) /
                                (std::fabs(theta) + std::sqrt(theta * theta + 1.0L));
                long double c = 1.0L / std::sqrt(t * t + 1.0L);
                long double s = t * c;
                for (int k = 0; k < n; ++k) {
                    long double gik = at(i, k), gjk = at(j, k);
                    at(i, k) = c * gik - s * gjk;
                    at(j, k) = s * gik + c * gjk;
                }
                for (int k = 0; k < n; ++k) {
                    long double gki = at(k, i), gkj = at(k, j);
                    at(k, i) = c * gki - s * gkj;
                    at(k, j) = s * gki + c * gkj;
                }
            }
    }
    if (sweep == max_sweeps) {
        long double off = 0.0L;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        throw convergence_error("heights", "Jacobi eigeniteration did not converge",
                                std::sqrt(off) / scale);
    }

    std::vector<long double> sv(n);
    for (int i = 0; i < n; ++i) sv[i] = std::sqrt(std::max(at(i, i), 0.0L));
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

CartanProfile arch_profile(const PointRep& M, long double tol) {
    if (tol <= 0) throw validation_error("heights", "tolerance must be positive");
    std::vector<long double> sv = singular_values(M, tol);
    CartanProfile prof;
    prof.place = Place::infinite();
    prof.arch_exponents.reserve(M.n - 1);
    for (int i = 0; i + 1 < M.n; ++i)
        prof.arch_exponents.push_back(std::log(sv[i] / sv[i + 1]));
    return prof;
}

LocalHeightValue local_height(const CartanProfile& profile, const DivisorVector& lam) {
    if (static_cast<size_t>(profile.rank()) != lam.coeffs.size())
        throw validation_error("heights", "profile rank does not match divisor vector length");
    LocalHeightValue v;
    v.place = profile.place;
    if (profile.place.archimedean) {
        long double t = 0.0L;
        for (size_t i = 0; i < lam.coeffs.size(); ++i)
            t += lam.coeffs[i].to_long_double() * profile.arch_exponents[i];
        v.value = std::exp(t);
    } else {
        Rational expo(0);
        for (size_t i = 0; i < lam.coeffs.size(); ++i)
            expo += lam.coeffs[i] * Rational(profile.finite_exponents[i]);
        if (!expo.is_integer())
            throw validation_error("heights",
                                   "local height at p=" + std::to_string(profile.place.prime) +
                                       " has non-integral exponent " + expo.str() +
                                       " and is not rational");
        v.exact = Rational(profile.place.prime).pow(expo.num());
        v.value = v.exact.to_long_double();
    }
    return v;
}

HeightValue global_height(const PointRep& M, const DivisorVector& lam, long double tol) {
    if (static_cast<int>(lam.coeffs.size()) != M.n - 1)
        throw validation_error("heights", "divisor vector length must be n-1 for PGL_n");
    if (!in_effective_interior(lam))
        throw validation_error("heights", "lambda must lie in the interior of the effective cone");

    HeightValue h;
    std::vector<long long> d = elementary_divisors(M.entries);

    // Per-divisor finite factors d_{i+1}/d_i are integers by the divisibility
    // chain; their product over primes is assembled without factoring.
    h.divisor_finite.reserve(M.n - 1);
    for (int i = 0; i + 1 < M.n; ++i) h.divisor_finite.emplace_back(d[i + 1] / d[i]);

    bool integral_lambda = true;
    for (const auto& c : lam.coeffs)
        if (!c.is_integer()) integral_lambda = false;

    if (integral_lambda) {
        h.finite_part = Rational(1);
        for (size_t i = 0; i < h.divisor_finite.size(); ++i)
            h.finite_part *= h.divisor_finite[i].pow(lam.coeffs[i].num());
    } else {
        // Vet per-prime integrality, then combine place by place.
        h.finite_part = Rational(1);
        for (long long p : prime_divisors(M.det())) {
            LocalHeightValue lv = local_height(smith_exponents(M, p), lam);
            h.finite_part *= lv.exact;
        }
    }

    std::vector<long double> sv = singular_values(M, tol);
    h.divisor_arch.reserve(M.n - 1);
    long double arch_log = 0.0L;
    for (int i = 0; i + 1 < M.n; ++i) {
        h.divisor_arch.push_back(sv[i] / sv[i + 1]);
        arch_log += lam.coeffs[i].to_long_double() * std::log(sv[i] / sv[i + 1]);
    }
    h.arch_part = std::exp(arch_log);
    h.total = h.finite_part.to_long_double() * h.arch_part;
    return h;
}

bool integrality_delta(const PointRep& M, const BoundarySelection& sel,
                       const std::vector<Place>& places_S) {
    if (!contains_infinite_place(places_S))
        throw validation_error("heights", "the place set S must contain the archimedean place");
    for (int idx : sel.indices)
        if (idx < 0 || idx >= M.n - 1)
            throw validation_error("heights", "boundary index out of range for PGL_" +
                                                  std::to_string(M.n));
    std::vector<long long> s_primes = finite_primes(places_S);
    std::vector<long long> d = elementary_divisors(M.entries);
    // Exponent i vanishes at every p outside S iff d_{i+1}/d_i is an S-unit.
    for (int idx : sel.indices) {
        if (!is_s_unit(d[idx + 1] / d[idx], s_primes)) return false;
    }
    return true;
}

} // namespace wcounts
