#include "wcounts/enumerate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <thread>

#include "wcounts/errors.hpp"

namespace wcounts {

namespace {

long long abs64(long long v) { return v < 0 ? -v : v; }

long long gcd2(long long a, long long b) { return std::gcd(abs64(a), abs64(b)); }

// g = a*x + b*y with g >= 0.
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return abs64(a);
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

bool is_s_unit_mag(long long v, const std::vector<long long>& s_primes) {
    if (v < 0) v = -v;
    if (v == 0) return false;
    for (long long p : s_primes)
        while (v % p == 0) v /= p;
    return v == 1;
}

// Exact test sigma_1(M)^2 <= T for a 2x2 integer matrix, where
// tau = sum of squared entries and det is the determinant:
//   sigma_1^2 <= T  <=>  T >= |det|  and  tau*T <= T^2 + det^2.
// Falls back to floating point if the cross products leave the safe range
// (far beyond any bound this tool enumerates to).
bool sigma1_sq_leq(long long tau, long long det, const Rational& T) {
    const long long p = T.num(), q = T.den();
    if (p <= 0) return false;
    const long long ad = abs64(det);
    constexpr long long kSafe = 2'000'000'000'000'000LL; // 2e15
    if (tau > kSafe || p > kSafe || q > 1'000'000'000LL || ad > kSafe) {
        long double t = static_cast<long double>(tau);
        long double d2 = static_cast<long double>(ad) * ad;
        long double s1 = (t + std::sqrt(t * t - 4.0L * d2)) / 2.0L;
        return s1 <= T.to_long_double();
    }
    if (static_cast<__int128>(p) < static_cast<__int128>(ad) * q) return false;
    __int128 lhs = static_cast<__int128>(tau) * p * q;
    __int128 rhs = static_cast<__int128>(p) * p +
                   static_cast<__int128>(ad) * ad * (static_cast<__int128>(q) * q);
    return lhs <= rhs;
}

struct ThresholdSet {
    std::vector<Rational> values;
    std::vector<long double> values_f;
    std::vector<long double> guards;

    explicit ThresholdSet(const CountQuery& q) {
        values = q.thresholds;
        for (const auto& b : values) {
            long double bf = b.to_long_double();
            values_f.push_back(bf);
            guards.push_back(q.guard_rel * std::max(1.0L, bf));
        }
    }
    size_t size() const { return values.size(); }
};

// Per-worker accumulator. `first_hit[i]` counts points whose smallest
// qualifying threshold is i; the cumulative counts are prefix sums.
struct Accum {
    std::vector<long long> first_hit;
    std::vector<long long> flagged;
    std::vector<PointRecord> points;

    explicit Accum(size_t k) : first_hit(k, 0), flagged(k, 0) {}

    void merge(const Accum& o) {
        for (size_t i = 0; i < first_hit.size(); ++i) {
            first_hit[i] += o.first_hit[i];
            flagged[i] += o.flagged[i];
        }
        points.insert(points.end(), o.points.begin(), o.points.end());
    }
};

// Shared candidate-acceptance logic: given the exact-or-floating "height at
// most B" predicate and the floating height, record the point.
template <typename CountedAt>
bool record_candidate(const ThresholdSet& ts, Accum& acc, bool collect,
                      const std::vector<long long>& entries, long double height_f,
                      CountedAt counted_at) {
    auto in_band = [&](size_t i) { return std::fabs(height_f - ts.values_f[i]) <= ts.guards[i]; };
    size_t first = ts.size();
    for (size_t i = 0; i < ts.size(); ++i) {
        if (counted_at(i) || in_band(i)) {
            first = i;
            break;
        }
    }
    bool any_flag = false;
    for (size_t i = first; i < ts.size(); ++i)
        if (in_band(i)) {
            ++acc.flagged[i];
            any_flag = true;
        }
    if (first == ts.size()) return false;
    ++acc.first_hit[first];
    if (collect) acc.points.push_back(PointRecord{entries, height_f, any_flag});
    return true;
}

enum class HeightMode { exact_linear, exact_quadratic, floating };

// The 2x2 height closed form: for a primitive matrix the full height equals
// sigma_1^{2*lambda_1}, so the threshold test reduces to sigma_1^2 against
// B^{1/lambda_1}; for lambda_1 = 1 that is exact directly and for
// lambda_1 = 2 via sigma_1^4 = tau*sigma_1^2 - det^2.
struct Height2Test {
    HeightMode mode;
    Rational lam1;
    long double lam1_f;

    explicit Height2Test(const Rational& lam) : lam1(lam), lam1_f(lam.to_long_double()) {
        if (lam == Rational(1))
            mode = HeightMode::exact_linear;
        else if (lam == Rational(2))
            mode = HeightMode::exact_quadratic;
        else
            mode = HeightMode::floating;
    }

    long double sigma1_sq(long long tau, long long det) const {
        long double t = static_cast<long double>(tau);
        long double disc = t * t - 4.0L * static_cast<long double>(det) * det;
        return (t + std::sqrt(std::max(disc, 0.0L))) / 2.0L;
    }

    long double height(long long tau, long long det) const {
        return std::pow(sigma1_sq(tau, det), lam1_f);
    }

    bool counted(long long tau, long long det, const Rational& B, long double B_f,
                 long double H_f) const {
        switch (mode) {
            case HeightMode::exact_linear:
                return sigma1_sq_leq(tau, det, B);
            case HeightMode::exact_quadratic: {
                Rational tprime = (B + Rational(det) * Rational(det)) / Rational(tau);
                return sigma1_sq_leq(tau, det, tprime);
            }
            case HeightMode::floating:
                return H_f <= B_f;
        }
        return false;
    }
};

long double sigma1_upper_bound(const CountQuery& q) {
    // sigma_1^n = prod_j u_j^{n-j} with u_j >= 1 the per-divisor heights and
    // H = prod u_j^{lambda_j}, so sigma_1 <= B^{(sum_j (n-j)/lambda_j)/n}.
    long double expo = 0.0L;
    for (int j = 0; j < q.n - 1; ++j)
        expo += static_cast<long double>(q.n - 1 - j) / q.lam.coeffs[j].to_long_double();
    expo /= q.n;
    long double bmax = q.thresholds.back().to_long_double();
    return std::pow(bmax, expo) * (1.0L + 1e-12L);
}

std::vector<std::array<long long, 2>> columns_2(long long nsq) {
    std::vector<std::array<long long, 2>> cols;
    long long e = static_cast<long long>(std::floor(std::sqrt(static_cast<long double>(nsq)) + 1e-9L));
    for (long long a = -e; a <= e; ++a)
        for (long long c = -e; c <= e; ++c) {
            if (a == 0 && c == 0) continue;
            if (a * a + c * c <= nsq) cols.push_back({a, c});
        }
    return cols;
}

std::vector<std::array<long long, 3>> columns_3(long long nsq) {
    std::vector<std::array<long long, 3>> cols;
    long long e = static_cast<long long>(std::floor(std::sqrt(static_cast<long double>(nsq)) + 1e-9L));
    for (long long a = -e; a <= e; ++a)
        for (long long b = -e; b <= e; ++b)
            for (long long c = -e; c <= e; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                if (a * a + b * b + c * c <= nsq) cols.push_back({a, b, c});
            }
    return cols;
}

bool canonical_sign_ok(const std::vector<long long>& row_major) {
    for (long long v : row_major) {
        if (v > 0) return true;
        if (v < 0) return false;
    }
    return false;
}

// Runs fn(chunk_accum, begin, end) over [0, total) split across `threads`
// contiguous chunks and merges the accumulators in chunk order.
template <typename Fn>
Accum run_partitioned(size_t total, size_t k_thresholds, int threads, Fn fn) {
    int nt = std::max(1, threads);
    nt = static_cast<int>(std::min<size_t>(nt, std::max<size_t>(total, 1)));
    std::vector<Accum> parts;
    parts.reserve(nt);
    for (int i = 0; i < nt; ++i) parts.emplace_back(k_thresholds);
    if (nt == 1) {
        fn(parts[0], size_t{0}, total);
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (total + nt - 1) / nt;
        for (int i = 0; i < nt; ++i) {
            size_t lo = std::min(total, i * chunk), hi = std::min(total, (i + 1) * chunk);
            pool.emplace_back([&, i, lo, hi] { fn(parts[i], lo, hi); });
        }
        for (auto& t : pool) t.join();
    }
    Accum all(k_thresholds);
    for (const auto& p : parts) all.merge(p);
    return all;
}

CountSeries finish(const CountQuery& q, const ThresholdSet& ts, Accum& acc) {
    CountSeries out;
    long long running = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        running += acc.first_hit[i];
        out.rows.push_back(CountRow{ts.values[i], running, acc.flagged[i]});
    }
    if (q.collect_points) {
        std::sort(acc.points.begin(), acc.points.end(),
                  [](const PointRecord& x, const PointRecord& y) { return x.entries < y.entries; });
        out.points = std::move(acc.points);
    }
    return out;
}

unsigned long long saturating_pow(unsigned long long base, int e) {
    unsigned long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (base != 0 && r > ~0ULL / base) return ~0ULL;
        r *= base;
    }
    return r;
}

} // namespace

void validate_query(const CountQuery& query) {
    if (query.n != 2 && query.n != 3)
        throw validation_error("enumerator", "only PGL_2 and PGL_3 are supported, got n = " +
                                                 std::to_string(query.n));
    if (static_cast<int>(query.lam.coeffs.size()) != query.n - 1)
        throw validation_error("enumerator", "lambda must have n-1 entries");
    if (!in_effective_interior(query.lam))
        throw validation_error("enumerator", "lambda must lie in the interior of the effective cone");
    if (query.thresholds.empty())
        throw validation_error("enumerator", "at least one height threshold is required");
    for (size_t i = 0; i < query.thresholds.size(); ++i) {
        if (!(query.thresholds[i] > Rational(0)))
            throw validation_error("enumerator", "thresholds must be positive");
        if (i > 0 && !(query.thresholds[i] > query.thresholds[i - 1]))
            throw validation_error("enumerator", "thresholds must be strictly increasing");
    }
    if (!contains_infinite_place(query.places))
        throw validation_error("enumerator", "S must contain the archimedean place");
    for (int idx : query.sel.indices)
        if (idx < 0 || idx >= query.n - 1)
            throw validation_error("enumerator", "boundary index out of range for PGL_" +
                                                     std::to_string(query.n));
    if (query.threads < 1)
        throw validation_error("enumerator", "thread count must be at least 1");
    if (query.guard_rel <= 0 || query.guard_rel > 1e-3L)
        throw validation_error("enumerator", "guard band must be in (0, 1e-3]");
}

long long entry_bound(const CountQuery& query) {
    validate_query(query);
    return static_cast<long long>(std::floor(sigma1_upper_bound(query) + 1e-9L));
}

unsigned long long estimate_work(const CountQuery& query) {
    validate_query(query);
    long double sb = sigma1_upper_bound(query);
    long double nsq = sb * sb;
    // Ball cardinalities estimated by volume plus surface slack.
    long double cols = (query.n == 2) ? 3.2L * nsq + 4.0L * sb + 1.0L
                                      : 4.2L * nsq * sb + 6.0L * nsq + 8.0L * sb;
    long double work = std::pow(cols, static_cast<long double>(query.n));
    if (work > 1.8e19L) return ~0ULL;
    return static_cast<unsigned long long>(work);
}

CountSeries enumerate_bounded(const CountQuery& query) {
    validate_query(query);
    unsigned long long est = estimate_work(query);
    if (est > query.budget)
        throw budget_error("enumerator", "estimated work " + std::to_string(est) +
                                             " exceeds budget " + std::to_string(query.budget) +
                                             "; raise --budget or lower the largest threshold");

    ThresholdSet ts(query);
    long double sb = sigma1_upper_bound(query);
    long long nsq = static_cast<long long>(std::floor(sb * sb + 1e-9L));
    std::vector<long long> s_primes = finite_primes(query.places);
    const bool need_delta = !query.sel.indices.empty();

    if (query.n == 2) {
        auto cols = columns_2(nsq);
        Height2Test ht(query.lam.coeffs[0]);
        Accum acc = run_partitioned(
            cols.size(), ts.size(), query.threads, [&](Accum& a, size_t lo, size_t hi) {
                std::vector<long long> entries(4);
                for (size_t ci = lo; ci < hi; ++ci) {
                    const long long c0 = cols[ci][0], c1 = cols[ci][1];
                    for (const auto& col2 : cols) {
                        const long long b0 = col2[0], b1 = col2[1];
                        const long long det = c0 * b1 - b0 * c1;
                        if (det == 0) continue;
                        // row-major [[a, b], [c, d]] with columns (a,c), (b,d)
                        entries[0] = c0;
                        entries[1] = b0;
                        entries[2] = c1;
                        entries[3] = b1;
                        if (!canonical_sign_ok(entries)) continue;
                        if (std::gcd(gcd2(c0, b0), gcd2(c1, b1)) != 1) continue;
                        if (need_delta && !is_s_unit_mag(det, s_primes)) continue;
                        const long long tau =
                            c0 * c0 + b0 * b0 + c1 * c1 + b1 * b1;
                        long double hf = ht.height(tau, det);
                        record_candidate(ts, a, query.collect_points, entries, hf,
                                         [&](size_t i) {
                                             return ht.counted(tau, det, ts.values[i],
                                                               ts.values_f[i], hf);
                                         });
                    }
                }
            });
        return finish(query, ts, acc);
    }

    // n == 3
    auto cols = columns_3(nsq);
    const long double l1 = query.lam.coeffs[0].to_long_double();
    const long double l2 = query.lam.coeffs[1].to_long_double();
    Accum acc = run_partitioned(
        cols.size(), ts.size(), query.threads, [&](Accum& a, size_t lo, size_t hi) {
            std::vector<long long> entries(9);
            for (size_t ci = lo; ci < hi; ++ci) {
                const auto& u = cols[ci];
                for (const auto& v : cols) {
                    for (const auto& w : cols) {
                        const long long det = u[0] * (v[1] * w[2] - w[1] * v[2]) -
                                              v[0] * (u[1] * w[2] - w[1] * u[2]) +
                                              w[0] * (u[1] * v[2] - v[1] * u[2]);
                        if (det == 0) continue;
                        entries[0] = u[0]; entries[1] = v[0]; entries[2] = w[0];
                        entries[3] = u[1]; entries[4] = v[1]; entries[5] = w[1];
                        entries[6] = u[2]; entries[7] = v[2]; entries[8] = w[2];
                        if (!canonical_sign_ok(entries)) continue;
                        long long g = 0;
                        for (long long e : entries) g = std::gcd(g, abs64(e));
                        if (g != 1) continue;
                        IntMatrix m(3, entries);
                        std::vector<long long> d = elementary_divisors(m);
                        if (need_delta) {
                            bool ok = true;
                            for (int idx : query.sel.indices)
                                if (!is_s_unit_mag(d[idx + 1] / d[idx], s_primes)) ok = false;
                            if (!ok) continue;
                        }
                        PointRep P;
                        P.n = 3;
                        P.entries = m;
                        std::vector<long double> sv = singular_values(P);
                        long double hf =
                            std::pow(static_cast<long double>(d[1] / d[0]) * (sv[0] / sv[1]), l1) *
                            std::pow(static_cast<long double>(d[2] / d[1]) * (sv[1] / sv[2]), l2);
                        record_candidate(ts, a, query.collect_points, entries, hf,
                                         [&](size_t i) { return hf <= ts.values_f[i]; });
                    }
                }
            }
        });
    return finish(query, ts, acc);
}

CountSeries box_scan_reference(const CountQuery& query) {
    validate_query(query);
    const long long E = entry_bound(query);
    const int cells = query.n * query.n;
    unsigned long long est = saturating_pow(static_cast<unsigned long long>(2 * E + 1), cells);
    if (est > query.budget)
        throw budget_error("enumerator", "box scan of " + std::to_string(est) +
                                             " matrices exceeds budget " +
                                             std::to_string(query.budget));

    ThresholdSet ts(query);
    Accum acc(ts.size());
    IntMatrix m(query.n, std::vector<long long>(cells, 0));
    std::vector<long long> odo(cells, -E);
    m.a = odo;

    while (true) {
        if (PointRep::is_canonical(m)) {
            PointRep P;
            P.n = query.n;
            P.entries = m;
            if (integrality_delta(P, query.sel, query.places)) {
                HeightValue h = global_height(P, query.lam);
                record_candidate(ts, acc, query.collect_points, m.a, h.total,
                                 [&](size_t i) { return h.total <= ts.values_f[i]; });
            }
        }
        int pos = cells - 1;
        while (pos >= 0 && m.a[pos] == E) m.a[pos--] = -E;
        if (pos < 0) break;
        ++m.a[pos];
    }
    return finish(query, ts, acc);
}

CountSeries enumerate_sl2_specialized(const CountQuery& query) {
    validate_query(query);
    if (query.n != 2 || query.sel.indices != std::vector<int>{0})
        throw validation_error("enumerator",
                               "the specialized path requires PGL_2 with the boundary selected");

    ThresholdSet ts(query);
    Height2Test ht(query.lam.coeffs[0]);
    const Rational bmax = query.thresholds.back();
    const long double T_f =
        std::pow(bmax.to_long_double(), 1.0L / query.lam.coeffs[0].to_long_double());

    // delta forces |det| to be an S-unit; the finite height is |det|^{lam_1},
    // so |det| <= B^{1/lam_1}.
    const long long umax = static_cast<long long>(std::floor(T_f * (1.0L + 1e-12L) + 1e-9L));
    std::vector<long long> s_primes = finite_primes(query.places);
    std::vector<long long> unit_mags{1};
    for (long long p : s_primes) {
        size_t cur = unit_mags.size();
        for (size_t i = 0; i < cur; ++i) {
            long long v = unit_mags[i];
            while (v <= umax / p) {
                v *= p;
                unit_mags.push_back(v);
            }
        }
    }
    std::sort(unit_mags.begin(), unit_mags.end());
    unit_mags.erase(std::remove_if(unit_mags.begin(), unit_mags.end(),
                                   [&](long long v) { return v > umax; }),
                    unit_mags.end());
    if (umax < 1 || unit_mags.empty()) {
        Accum acc(ts.size());
        return finish(query, ts, acc);
    }

    const long long col_nsq = static_cast<long long>(std::floor(T_f * (1.0L + 1e-12L) + 1e-9L));
    auto cols = columns_2(col_nsq);

    // Per unit: one pass over the columns plus the total length of the
    // Diophantine t-intervals, which sums to O(T).
    unsigned long long est = 2ULL * unit_mags.size() *
                             (cols.size() + static_cast<unsigned long long>(8.0L * T_f) + 1);
    if (est > query.budget)
        throw budget_error("enumerator", "estimated work " + std::to_string(est) +
                                             " exceeds budget " + std::to_string(query.budget));

    Accum acc = run_partitioned(
        cols.size(), ts.size(), query.threads, [&](Accum& a, size_t lo, size_t hi) {
            std::vector<long long> entries(4);
            for (size_t ci = lo; ci < hi; ++ci) {
                const long long av = cols[ci][0], cv = cols[ci][1];
                const long long g = gcd2(av, cv);
                const long long colsq = av * av + cv * cv;
                for (long long mag : unit_mags) {
                    if (mag % g != 0) continue;
                    for (int su = 0; su < 2; ++su) {
                        const long long u = su == 0 ? mag : -mag;
                        // Base solution of a*d - b*c = u.
                        long long x, y;
                        ext_gcd(av, cv, x, y);
                        long long scale = u / g;
                        long long d0 = x * scale;
                        long long b0 = -y * scale;
                        const long long va = av / g, vc = cv / g; // step direction
                        const long long A = va * va + vc * vc;
                        // Recenter to the minimal-norm representative to keep
                        // all magnitudes small and exact.
                        long long dot = b0 * va + d0 * vc;
                        long long t0 = static_cast<long long>(
                            std::floor(static_cast<long double>(dot) / A + 0.5L));
                        b0 -= t0 * va;
                        d0 -= t0 * vc;
                        // tau <= T + u^2/T bounds b^2 + d^2.
                        long double R = T_f + static_cast<long double>(u) * u / T_f -
                                        static_cast<long double>(colsq);
                        R = R * (1.0L + 1e-9L) + 1.0L;
                        if (R < 0) continue;
                        long long span = static_cast<long long>(
                            std::floor(std::sqrt(R / A) + 2.0L));
                        for (long long t = -span; t <= span; ++t) {
                            const long long bb = b0 + t * va, dd = d0 + t * vc;
                            entries[0] = av;
                            entries[1] = bb;
                            entries[2] = cv;
                            entries[3] = dd;
                            if (!canonical_sign_ok(entries)) continue;
                            if (std::gcd(gcd2(av, bb), gcd2(cv, dd)) != 1) continue;
                            const long long tau = colsq + bb * bb + dd * dd;
                            long double hf = ht.height(tau, u);
                            record_candidate(ts, a, query.collect_points, entries, hf,
                                             [&](size_t i) {
                                                 return ht.counted(tau, u, ts.values[i],
                                                                   ts.values_f[i], hf);
                                             });
                        }
                    }
                }
            }
        });
    return finish(query, ts, acc);
}

} // namespace wcounts
