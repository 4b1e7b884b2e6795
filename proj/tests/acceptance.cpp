// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <vector>

#include <json.hpp>

#include "wcounts/config.hpp"
#include "wcounts/enumerate.hpp"
#include "wcounts/fit.hpp"
#include "wcounts/local_zeta.hpp"

using namespace wcounts;
using nlohmann::json;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(const std::string& name, bool pass, double secs, double limit,
            const std::string& detail = "") {
    bool ok = pass && secs <= limit;
    if (!ok) ++failures;
    std::printf("[%s] %-34s %7.2fs (limit %gs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                limit, detail.empty() ? "" : "  ", detail.c_str());
    if (pass && secs > limit) std::printf("       exceeded the runtime limit\n");
}

struct Rng {
    unsigned long long s;
    explicit Rng(unsigned long long seed) : s(seed) {}
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long long uniform(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
};

PointRep random_point(Rng& rng, int n, long long bound) {
    while (true) {
        std::vector<long long> e(static_cast<size_t>(n) * n);
        for (auto& v : e) v = rng.uniform(-bound, bound);
        IntMatrix m(n, e);
        if (determinant(m) == 0) continue;
        return PointRep::make(n, std::move(e));
    }
}

IntMatrix random_unimodular(Rng& rng, int n) {
    IntMatrix u = IntMatrix::identity(n);
    for (int k = 0; k < 6; ++k) {
        int i = static_cast<int>(rng.uniform(0, n - 1));
        int j = static_cast<int>(rng.uniform(0, n - 1));
        if (i == j) continue;
        long long c = rng.uniform(-3, 3);
        for (int col = 0; col < n; ++col)
            u.at(i, col) = checked_add(u.at(i, col), checked_mul(c, u.at(j, col)));
    }
    return u;
}

IntMatrix random_signed_permutation(Rng& rng, int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform(0, i)]);
    IntMatrix m(n, std::vector<long long>(static_cast<size_t>(n) * n, 0));
    for (int i = 0; i < n; ++i) m.at(i, perm[i]) = rng.uniform(0, 1) ? 1 : -1;
    return m;
}

const std::vector<Place> S_inf{Place::infinite()};

CountQuery pgl2_query(Rational lam1, std::vector<int> boundary, std::vector<Place> places,
                      std::vector<Rational> thresholds) {
    CountQuery q;
    q.n = 2;
    q.lam.coeffs = {std::move(lam1)};
    auto da = build_action(build_root_system('A', 1), {});
    q.sel = make_selection(da, std::move(boundary));
    q.places = std::move(places);
    q.thresholds = std::move(thresholds);
    q.budget = 4'000'000'000ULL;
    return q;
}

// ---- criteria -------------------------------------------------------------

void kappa_identity() {
    Timer t;
    bool ok = true;
    auto check = [&](char type, int n) {
        auto rs = build_root_system(type, n);
        std::vector<long long> sum(n, 0);
        for (const auto& beta : rs.positive_roots)
            for (int i = 0; i < n; ++i) sum[i] += beta[i];
        ok = ok && (sum == rs.kappa) && (kappa_vector(rs) == rs.kappa);
    };
    for (int n = 1; n <= 6; ++n) check('A', n);
    for (int n = 2; n <= 6; ++n) check('B', n);
    for (int n = 2; n <= 6; ++n) check('C', n);
    for (int n = 3; n <= 6; ++n) check('D', n);
    check('G', 2);
    for (int n = 1; n <= 8; ++n) {
        auto rs = build_root_system('A', n);
        for (int i = 1; i <= n; ++i)
            ok = ok && rs.kappa[i - 1] == static_cast<long long>(i) * (n + 1 - i);
    }
    report("kappa identity", ok, t.seconds(), 1.0);
}

void height_well_defined() {
    Timer t;
    bool ok = true;
    Rng rng(20260808);
    long double worst = 0.0L;
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = (trial % 2) ? 3 : 2;
        auto p = random_point(rng, n, 25);
        DivisorVector lam;
        for (int i = 0; i < n - 1; ++i) lam.coeffs.emplace_back(i + 1);
        auto hp = global_height(p, lam);

        // scalar scaling: c*M normalizes back to the same representative
        std::vector<long long> scaled = p.entries.a;
        long long c = (trial % 3) ? 3 : -7;
        for (auto& v : scaled) v *= c;
        auto ps = PointRep::make(n, scaled);
        ok = ok && ps.entries.a == p.entries.a;

        // unimodular factors: finite parts exact
        auto u = random_unimodular(rng, n);
        auto v = random_unimodular(rng, n);
        auto q = PointRep::make(n, mat_mul(mat_mul(u, p.entries), v).a);
        auto hq = global_height(q, lam);
        ok = ok && hp.finite_part == hq.finite_part && hp.divisor_finite == hq.divisor_finite;

        // integer-orthogonal factors (the K_inf part of GL_n(Z)): full height
        auto su = random_signed_permutation(rng, n);
        auto sv = random_signed_permutation(rng, n);
        auto r = PointRep::make(n, mat_mul(mat_mul(su, p.entries), sv).a);
        auto hr = global_height(r, lam);
        ok = ok && hp.finite_part == hr.finite_part;
        long double rel = std::fabs(hr.arch_part - hp.arch_part) / hp.arch_part;
        worst = std::max(worst, rel);
        ok = ok && rel <= 1e-10L;
    }
    report("height well-definedness", ok, t.seconds(), 30.0,
           "arch worst rel err " + std::to_string(static_cast<double>(worst)) +
               "; arch invariance over the integer-orthogonal subgroup");
}

void pgl2_closed_form() {
    Timer t;
    bool ok = true;
    Rng rng(424242);
    DivisorVector lam;
    lam.coeffs.emplace_back(1);
    for (int trial = 0; trial < 10000; ++trial) {
        PointRep p = random_point(rng, 2, 40);
        long long det = p.det();
        auto h = global_height(p, lam);
        ok = ok && h.finite_part == Rational(det < 0 ? -det : det);
    }
    // dedicated det = +-1 batch for the sigma_1^2 identity
    for (int trial = 0; trial < 10000; ++trial) {
        long long a = rng.uniform(-40, 40), b = rng.uniform(-40, 40);
        // complete (a, b) to determinant 1 by solving a*d - b*c = 1
        long long g = std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
        if (g != 1) continue;
        long long x = 0, y = 0;
        std::function<long long(long long, long long, long long&, long long&)> eg =
            [&](long long aa, long long bb, long long& xx, long long& yy) -> long long {
            if (bb == 0) {
                xx = aa >= 0 ? 1 : -1;
                yy = 0;
                return aa >= 0 ? aa : -aa;
            }
            long long x1, y1;
            long long gg = eg(bb, aa % bb, x1, y1);
            xx = y1;
            yy = x1 - (aa / bb) * y1;
            return gg;
        };
        eg(a, b, x, y);
        PointRep p = PointRep::make(2, {a, b, -y, x});
        if (p.det() != 1 && p.det() != -1) continue;
        auto h = global_height(p, lam);
        long double tau = 0;
        for (long long v : p.entries.a) tau += static_cast<long double>(v) * v;
        long double s1sq = (tau + std::sqrt(tau * tau - 4.0L)) / 2.0L;
        ok = ok && h.finite_part == Rational(1) && std::fabs(h.total - s1sq) <= 1e-10L * s1sq;
    }
    report("PGL_2 closed form", ok, t.seconds(), 10.0);
}

void enumerator_equivalence() {
    Timer t;
    bool ok = true;
    {
        auto q = pgl2_query(Rational(1), {0}, S_inf,
                            {Rational(1), Rational(10), Rational(100), Rational(1000)});
        q.collect_points = true;
        auto box = box_scan_reference(q);
        auto gen = enumerate_bounded(q);
        auto spc = enumerate_sl2_specialized(q);
        ok = ok && box.points.size() == gen.points.size() &&
             box.points.size() == spc.points.size();
        for (size_t i = 0; ok && i < box.points.size(); ++i)
            ok = box.points[i].entries == gen.points[i].entries &&
                 box.points[i].entries == spc.points[i].entries;
        for (size_t i = 0; i < box.rows.size(); ++i)
            ok = ok && box.rows[i].count == gen.rows[i].count &&
                 box.rows[i].count == spc.rows[i].count;
    }
    {
        auto q = pgl2_query(Rational(2), {}, S_inf,
                            {Rational(16), Rational(100), Rational(1000)});
        q.collect_points = true;
        auto box = box_scan_reference(q);
        auto gen = enumerate_bounded(q);
        ok = ok && box.points.size() == gen.points.size();
        for (size_t i = 0; ok && i < box.points.size(); ++i)
            ok = box.points[i].entries == gen.points[i].entries;
    }
    report("enumerator oracle equivalence", ok, t.seconds(), 120.0);
}

void exponent_check_integral() {
    Timer t;
    json cfg = {{"group", {{"type", "A"}, {"rank", 1}}},
                {"lambda", "log_anticanonical"},
                {"A_D", {1}},
                {"S", {"inf"}},
                {"thresholds", {1000, 2000, 4000, 8000, 16000, 32000, 64000, 100000}}};
    Experiment ex = build_experiment(parse_config(cfg));
    json pred = predict(ex);
    bool ok = pred["a"].get<std::string>() == "1" && pred["b"].get<int>() == 1;

    CountSeries series = run_count(ex);
    for (const auto& row : series.rows) ok = ok && row.flagged == 0;
    FitReport fit = fit_asymptotic(series, 0.0L);
    bool a_ok = fit.constrained.a >= 0.9L && fit.constrained.a <= 1.1L;
    bool r_ok = !fit.doubling.empty();
    for (const auto& d : fit.doubling) r_ok = r_ok && d.ratio >= 1.8L && d.ratio <= 2.2L;
    ok = ok && a_ok && r_ok;
    report("growth exponents, S={inf}", ok, t.seconds(), 600.0,
           "a_hat = " + std::to_string(static_cast<double>(fit.constrained.a)) +
               ", N(1e5) = " + std::to_string(series.rows.back().count));
}

void exponent_check_s_unit() {
    Timer t;
    json cfg = {{"group", {{"type", "A"}, {"rank", 1}}},
                {"lambda", "log_anticanonical"},
                {"A_D", {1}},
                {"S", {"inf", 2}},
                {"thresholds", {1000, 2000, 4000, 8000, 16000, 32000, 64000, 100000}}};
    Experiment ex = build_experiment(parse_config(cfg));
    json pred = predict(ex);
    bool ok = pred["a"].get<std::string>() == "1" && pred["b"].get<int>() == 2;

    CountSeries series = run_count(ex);
    FitReport fit = fit_asymptotic(series, 1.0L);
    bool a_ok = fit.constrained.a >= 0.9L && fit.constrained.a <= 1.1L;
    LinearFit p0 = constrained_fit(series, 0.0L);
    bool soft = fit.constrained.rms_residual <= p0.rms_residual;
    ok = ok && a_ok && soft;
    report("S-unit variant, S={inf,2}", ok, t.seconds(), 900.0,
           "a_hat = " + std::to_string(static_cast<double>(fit.constrained.a)) + ", rms(p=1) = " +
               std::to_string(static_cast<double>(fit.constrained.rms_residual)) +
               " <= rms(p=0) = " + std::to_string(static_cast<double>(p0.rms_residual)));
}

void local_zeta_exact() {
    Timer t;
    bool ok = true;
    auto da = build_action(build_root_system('A', 1), {});
    auto sel = make_selection(da, {});
    DivisorVector lam;
    lam.coeffs.emplace_back(1);
    for (long long q : {2LL, 3LL, 5LL}) {
        for (double s : {2.5, 3.0, 4.0}) {
            auto spec = make_euler_spec(da, sel, lam, q, 40);
            auto cell = cell_sum_local_integral(spec, s, VolumeModel::exact_pgl2);
            ok = ok && std::fabs(cell.value - pgl2_exact_local_factor(q, s)) <= 1e-10L;
        }
        ok = ok && count_cyclic_sublattices(q, 1) == q + 1;
    }
    report("local zeta exact factor", ok, t.seconds(), 5.0);
}

void global_pole_probe() {
    Timer t;
    auto da = build_action(build_root_system('A', 1), {});
    auto sel = make_selection(da, {});
    DivisorVector lam;
    lam.coeffs.emplace_back(2); // -K
    auto spec = make_global_spec(da, sel, lam, S_inf);

    const long long P = 10000;
    long double g2 = (1.01L - 1.0L) * truncated_global_product(spec, P, 1.01L, true);
    long double g3 = (1.001L - 1.0L) * truncated_global_product(spec, P, 1.001L, true);
    long double rel = std::fabs(g2 - g3) / std::fabs(g3);
    bool ok = rel <= 0.05L;
    report("global pole probe", ok, t.seconds(), 10.0,
           "(s-1)*prod: s=1.01 -> " + std::to_string(static_cast<double>(g2)) +
               ", s=1.001 -> " + std::to_string(static_cast<double>(g3)) + ", rel diff " +
               std::to_string(static_cast<double>(rel)));
    if (!ok) {
        // Diagnostics: the pole is real but the truncated product cannot see
        // it this close to s = 1. The probe needs (s-1)*log(P) >> 1; at
        // P = 1e4 that fails for s - 1 <= 1e-2, while farther right the
        // product does approach the residue 1/2 of (s-1)*zeta(2s-1).
        for (double s : {1.5, 1.2, 1.1, 1.05, 1.01, 1.001}) {
            long double v = (static_cast<long double>(s) - 1.0L) *
                            truncated_global_product(spec, P, s, true);
            std::printf("       (s-1)*prod at s=%-6g : %.6f\n", s, static_cast<double>(v));
        }
        for (long long PP : {1000LL, 10000LL, 100000LL, 1000000LL}) {
            long double v = 0.01L * truncated_global_product(spec, PP, 1.01L, true);
            std::printf("       s=1.01, P=%-8lld: %.6f\n", PP, static_cast<double>(v));
        }
        std::printf("       truncation at P=1e4 suppresses the probe for s-1 < 1/log P;\n"
                    "       the criterion's s-values cannot stabilize at this cutoff.\n");
    }
}

void exponent_fixtures() {
    Timer t;
    bool ok = true;
    std::ifstream in(std::string(WCOUNTS_SOURCE_DIR) + "/tests/fixtures/predict_fixtures.json");
    json fixtures;
    in >> fixtures;
    for (const auto& f : fixtures.at("cases")) {
        json cfg = {{"group", {{"type", f.at("type").get<std::string>()},
                               {"rank", f.at("rank").get<int>()}}},
                    {"lambda", "log_anticanonical"},
                    {"A_D", f.at("A_D")},
                    {"S", {"inf"}}};
        Experiment ex = build_experiment(parse_config(cfg));
        json p = predict(ex);
        ok = ok && p["a"].get<std::string>() == f.at("a").get<std::string>() &&
             p["b"].get<int>() == f.at("b").get<int>() &&
             p["pic_rank"].get<int>() == f.at("pic_rank").get<int>() &&
             p["achievers_D"] == f.at("achievers_D") &&
             p["achievers_offD"] == f.at("achievers_offD") &&
             p["d_per_place"]["inf"].get<int>() == f.at("d_inf").get<int>() &&
             p["lambda"] == f.at("lambda");
    }
    report("exponent formula fixtures", ok, t.seconds(), 5.0);
}

} // namespace

int main() {
    std::printf("acceptance criteria\n-------------------\n");
    kappa_identity();
    height_well_defined();
    pgl2_closed_form();
    enumerator_equivalence();
    exponent_check_integral();
    exponent_check_s_unit();
    local_zeta_exact();
    global_pole_probe();
    exponent_fixtures();
    std::printf("-------------------\n%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
