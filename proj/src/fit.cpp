#include "wcounts/fit.hpp"

#include <algorithm>
#include <cmath>

#include "wcounts/errors.hpp"

namespace wcounts {

namespace {

struct Sample {
    long double logB;
    long double loglogB;
    long double logN;
};

std::vector<Sample> usable_samples(const CountSeries& series) {
    std::vector<Sample> out;
    for (const auto& row : series.rows) {
        if (row.count < 1) continue;
        long double b = row.threshold.to_long_double();
        if (b <= 1.0L + 1e-12L) continue;
        out.push_back(Sample{std::log(b), std::log(std::log(b)),
                             std::log(static_cast<long double>(row.count))});
    }
    return out;
}

void require_fittable(const CountSeries& series, const std::vector<Sample>& samples) {
    if (samples.size() < 5)
        throw validation_error("fit", "need at least 5 thresholds with N >= 1 and B > 1, have " +
                                          std::to_string(samples.size()));
    long long n_first = 0, n_last = 0;
    for (const auto& row : series.rows)
        if (row.count >= 1) {
            if (n_first == 0) n_first = row.count;
            n_last = row.count;
        }
    if (n_last < 10)
        throw validation_error("fit", "largest count is " + std::to_string(n_last) +
                                          "; need at least 10 points for a fit");
    if (n_first == n_last)
        throw validation_error("fit", "counts are constant across the grid; no growth information");
}

// Gaussian elimination with partial pivoting; rejects singular systems.
std::vector<long double> solve(std::vector<std::vector<long double>> m,
                               std::vector<long double> rhs) {
    const size_t n = rhs.size();
    long double scale = 0.0L;
    for (const auto& row : m)
        for (long double v : row) scale = std::max(scale, std::fabs(v));
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
        if (std::fabs(m[piv][k]) <= 1e-13L * scale)
            throw validation_error("fit", "degenerate grid: the design matrix is (near) singular");
        std::swap(m[k], m[piv]);
        std::swap(rhs[k], rhs[piv]);
        for (size_t i = k + 1; i < n; ++i) {
            long double f = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    std::vector<long double> x(n, 0.0L);
    for (size_t k = n; k-- > 0;) {
        long double s = rhs[k];
        for (size_t j = k + 1; j < n; ++j) s -= m[k][j] * x[j];
        x[k] = s / m[k][k];
    }
    return x;
}

long double rms(const std::vector<Sample>& samples, long double a, long double p,
                long double c0) {
    long double sse = 0.0L;
    for (const auto& s : samples) {
        long double r = s.logN - (a * s.logB + p * s.loglogB + c0);
        sse += r * r;
    }
    return std::sqrt(sse / samples.size());
}

} // namespace

std::vector<DoublingRatio> doubling_ratios(const CountSeries& series) {
    std::vector<DoublingRatio> out;
    for (size_t i = 0; i < series.rows.size(); ++i) {
        if (series.rows[i].count < 1) continue;
        Rational twice = series.rows[i].threshold * Rational(2);
        for (size_t j = i + 1; j < series.rows.size(); ++j) {
            if (series.rows[j].threshold == twice) {
                out.push_back(DoublingRatio{
                    series.rows[i].threshold,
                    static_cast<long double>(series.rows[j].count) / series.rows[i].count});
                break;
            }
        }
    }
    return out;
}

LinearFit constrained_fit(const CountSeries& series, long double p_frozen) {
    auto samples = usable_samples(series);
    require_fittable(series, samples);
    // Fit y - p*loglogB = a*logB + c0.
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        long double y = s.logN - p_frozen * s.loglogB;
        sx += s.logB;
        sy += y;
        sxx += s.logB * s.logB;
        sxy += s.logB * y;
    }
    const long double n = static_cast<long double>(samples.size());
    const long double det = n * sxx - sx * sx;
    if (std::fabs(det) <= 1e-13L * std::max(n * sxx, sx * sx))
        throw validation_error("fit", "degenerate grid: thresholds do not span a range");
    LinearFit f;
    f.p = p_frozen;
    f.a = (n * sxy - sx * sy) / det;
    f.c0 = (sy - f.a * sx) / n;
    f.rms_residual = rms(samples, f.a, f.p, f.c0);
    return f;
}

FitReport fit_asymptotic(const CountSeries& series, long double frozen_p) {
    auto samples = usable_samples(series);
    require_fittable(series, samples);

    std::vector<std::vector<long double>> ata(3, std::vector<long double>(3, 0.0L));
    std::vector<long double> atb(3, 0.0L);
    for (const auto& s : samples) {
        const long double row[3] = {s.logB, s.loglogB, 1.0L};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
            atb[i] += row[i] * s.logN;
        }
    }
    auto x = solve(std::move(ata), std::move(atb));

    FitReport rep;
    rep.unconstrained.a = x[0];
    rep.unconstrained.p = x[1];
    rep.unconstrained.c0 = x[2];
    rep.unconstrained.rms_residual = rms(samples, x[0], x[1], x[2]);
    rep.frozen_p = frozen_p;
    rep.constrained = constrained_fit(series, frozen_p);
    rep.doubling = doubling_ratios(series);
    rep.points_used = static_cast<int>(samples.size());
    return rep;
}

} // namespace wcounts
