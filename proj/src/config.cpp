#include "wcounts/config.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wcounts/errors.hpp"

namespace wcounts {

using nlohmann::json;

namespace {

Rational rational_from_json(const json& v, const std::string& what) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_float()) {
        double d = v.get<double>();
        double r = std::round(d);
        if (std::fabs(d - r) > 1e-9 * std::max(1.0, std::fabs(d)))
            throw validation_error("config", what + ": non-integral number " + std::to_string(d) +
                                                 "; write exact rationals as strings like \"3/2\"");
        return Rational(static_cast<long long>(r));
    }
    throw validation_error("config", what + ": expected a number or a \"p/q\" string");
}

std::vector<Rational> threshold_grid(const json& t) {
    std::vector<Rational> out;
    if (t.is_array()) {
        for (const auto& v : t) out.push_back(rational_from_json(v, "thresholds"));
        return out;
    }
    if (!t.is_object())
        throw validation_error("config", "thresholds: expected an array or a grid object");
    std::string kind = t.value("kind", "");
    if (kind == "doubling") {
        Rational b = rational_from_json(t.at("start"), "thresholds.start");
        int steps = t.at("steps").get<int>();
        if (steps < 1) throw validation_error("config", "thresholds.steps must be >= 1");
        for (int i = 0; i < steps; ++i) {
            out.push_back(b);
            b = b * Rational(2);
        }
        return out;
    }
    if (kind == "geometric") {
        long double lo = rational_from_json(t.at("min"), "thresholds.min").to_long_double();
        long double hi = rational_from_json(t.at("max"), "thresholds.max").to_long_double();
        int per_decade = t.value("per_decade", 12);
        if (!(lo > 0 && hi > lo) || per_decade < 1)
            throw validation_error("config", "thresholds: geometric grid needs 0 < min < max");
        long double step = std::pow(10.0L, 1.0L / per_decade);
        for (long double b = lo; b <= hi * (1 + 1e-12L); b *= step) {
            long long v = static_cast<long long>(std::floor(b + 0.5L));
            if (out.empty() || Rational(v) > out.back()) out.push_back(Rational(v));
        }
        return out;
    }
    throw validation_error("config", "thresholds.kind must be 'doubling' or 'geometric'");
}

} // namespace

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig c;
    try {
        const auto& g = j.at("group");
        std::string t = g.at("type").get<std::string>();
        if (t.size() != 1)
            throw validation_error("config", "group.type must be a single letter A..G");
        c.type_letter = t[0];
        c.rank = g.at("rank").get<int>();

        if (j.contains("action_generators")) {
            for (const auto& gen : j.at("action_generators")) {
                std::vector<int> perm;
                for (const auto& v : gen) perm.push_back(v.get<int>() - 1); // 1-based in JSON
                c.generators.push_back(std::move(perm));
            }
        }

        const auto& lam = j.at("lambda");
        if (lam.is_string()) {
            std::string s = lam.get<std::string>();
            if (s == "log_anticanonical" || s == "anticanonical")
                c.lambda_is_log_anticanonical = true; // -(K+D); equals -K when A_D is empty
            else
                throw validation_error("config", "lambda: unknown shorthand '" + s + "'");
        } else if (lam.is_array()) {
            for (const auto& v : lam) c.lambda.push_back(rational_from_json(v, "lambda"));
        } else {
            throw validation_error("config", "lambda: expected an array or 'log_anticanonical'");
        }

        if (j.contains("A_D"))
            for (const auto& v : j.at("A_D")) c.boundary.push_back(v.get<int>() - 1);

        for (const auto& v : j.at("S")) {
            if (v.is_string())
                c.places.push_back(Place::parse(v.get<std::string>()));
            else
                c.places.push_back(Place::finite(v.get<long long>()));
        }

        if (j.contains("thresholds")) c.thresholds = threshold_grid(j.at("thresholds"));
        c.budget = j.value("budget", c.budget);
        c.guard_rel = j.value("guard_rel", static_cast<double>(c.guard_rel));
        c.arch_tol = j.value("arch_tol", static_cast<double>(c.arch_tol));
        c.threads = j.value("threads", c.threads);

        if (j.contains("zeta")) {
            const auto& z = j.at("zeta");
            c.zeta_prime_cutoff = z.value("prime_cutoff", c.zeta_prime_cutoff);
            if (z.contains("s_values")) {
                c.zeta_s.clear();
                for (const auto& v : z.at("s_values")) c.zeta_s.push_back(v.get<double>());
            }
            c.zeta_delta_on = z.value("delta_on", c.zeta_delta_on);
            c.zeta_depth = z.value("depth", c.zeta_depth);
        }
        if (j.contains("fit")) {
            const auto& f = j.at("fit");
            c.tol_a = f.value("tol_a", static_cast<double>(c.tol_a));
            c.ratio_tol = f.value("ratio_tol", static_cast<double>(c.ratio_tol));
        }
    } catch (const json::exception& e) {
        throw validation_error("config", std::string("malformed config: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("config", "cannot read config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw validation_error("config", "invalid JSON in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["group"] = {{"type", std::string(1, c.type_letter)}, {"rank", c.rank}};
    json gens = json::array();
    for (const auto& g : c.generators) {
        json perm = json::array();
        for (int v : g) perm.push_back(v + 1);
        gens.push_back(perm);
    }
    j["action_generators"] = gens;
    if (c.lambda_is_log_anticanonical) {
        j["lambda"] = "log_anticanonical";
    } else {
        json lam = json::array();
        for (const auto& v : c.lambda) lam.push_back(v.str());
        j["lambda"] = lam;
    }
    json ad = json::array();
    for (int v : c.boundary) ad.push_back(v + 1);
    j["A_D"] = ad;
    json s = json::array();
    for (const auto& v : c.places) {
        if (v.archimedean)
            s.push_back("inf");
        else
            s.push_back(v.prime);
    }
    j["S"] = s;
    json th = json::array();
    for (const auto& v : c.thresholds) th.push_back(v.str());
    j["thresholds"] = th;
    j["budget"] = c.budget;
    j["guard_rel"] = static_cast<double>(c.guard_rel);
    j["arch_tol"] = static_cast<double>(c.arch_tol);
    j["threads"] = c.threads;
    j["zeta"] = {{"prime_cutoff", c.zeta_prime_cutoff},
                 {"s_values", c.zeta_s},
                 {"delta_on", c.zeta_delta_on},
                 {"depth", c.zeta_depth}};
    j["fit"] = {{"tol_a", static_cast<double>(c.tol_a)},
                {"ratio_tol", static_cast<double>(c.ratio_tol)}};
    return j;
}

Experiment build_experiment(const ExperimentConfig& c) {
    Experiment ex;
    ex.config = c;
    RootSystem rs = build_root_system(c.type_letter, c.rank);
    ex.action = build_action(rs, c.generators);
    ex.selection = make_selection(ex.action, c.boundary);
    if (c.lambda_is_log_anticanonical) {
        ex.lambda = log_anticanonical(rs, ex.selection);
    } else {
        ex.lambda.coeffs = c.lambda;
    }
    validate_divisor_vector(ex.action, ex.lambda);
    if (!in_effective_interior(ex.lambda))
        throw validation_error("config", "lambda must lie in the interior of the effective cone");
    if (!contains_infinite_place(c.places))
        throw validation_error("config", "S must contain the archimedean place 'inf'");

    DivisorVector logk = log_anticanonical(rs, ex.selection);
    ex.lambda_equals_log_anticanonical = (ex.lambda.coeffs == logk.coeffs);
    return ex;
}

json predict(const Experiment& ex) {
    const RootSystem& rs = ex.action.rs;
    ExponentReport rep = exponent_report(ex.action, ex.selection, ex.lambda, ex.config.places);

    json out;
    out["config"] = config_to_json(ex.config);
    out["group"] = {{"type", std::string(1, rs.type_letter)},
                    {"rank", rs.rank},
                    {"positive_roots", rs.positive_roots.size()},
                    {"kappa", rs.kappa}};
    json orbits = json::array();
    for (const auto& orbit : ex.action.orbits) {
        json o = json::array();
        for (int v : orbit) o.push_back(v + 1);
        orbits.push_back(o);
    }
    out["orbits"] = orbits;
    json lam = json::array();
    for (const auto& v : ex.lambda.coeffs) lam.push_back(v.str());
    out["lambda"] = lam;
    out["regular_dominant"] = is_regular_dominant(rs, ex.lambda.coeffs);

    out["a"] = rep.a.str();
    out["a_real"] = static_cast<double>(rep.a.to_long_double());
    json achD = json::array(), achO = json::array();
    for (int v : rep.achievers_D) achD.push_back(v + 1);
    for (int v : rep.achievers_offD) achO.push_back(v + 1);
    out["achievers_D"] = achD;
    out["achievers_offD"] = achO;
    json dpp = json::object();
    for (size_t i = 0; i < rep.places.size(); ++i)
        dpp[rep.places[i].str()] = rep.d_per_place[i];
    out["d_per_place"] = dpp;
    out["pic_rank"] = rep.pic_rank;
    out["b"] = rep.b;
    out["is_log_anticanonical"] = ex.lambda_equals_log_anticanonical;
    if (ex.lambda_equals_log_anticanonical)
        out["log_anticanonical_a_is_one"] = (rep.a == Rational(1));
    return out;
}

CountQuery make_count_query(const Experiment& ex) {
    if (ex.config.thresholds.empty())
        throw validation_error("config", "no height thresholds configured for counting");
    CountQuery q;
    q.n = ex.action.rs.rank + 1;
    q.lam = ex.lambda;
    q.sel = ex.selection;
    q.places = ex.config.places;
    q.thresholds = ex.config.thresholds;
    q.budget = ex.config.budget;
    q.guard_rel = ex.config.guard_rel;
    q.threads = ex.config.threads;
    if (ex.action.rs.type_letter != 'A' || (q.n != 2 && q.n != 3))
        throw validation_error("config",
                               "counting supports PGL_2 (A_1) and PGL_3 (A_2) only; run predict "
                               "for other groups");
    return q;
}

CountSeries run_count(const Experiment& ex) {
    CountQuery q = make_count_query(ex);
    if (q.n == 2 && q.sel.indices == std::vector<int>{0}) return enumerate_sl2_specialized(q);
    return enumerate_bounded(q);
}

json zeta_summary(const Experiment& ex) {
    GlobalProductSpec spec =
        make_global_spec(ex.action, ex.selection, ex.lambda, ex.config.places);
    Rational a = predicted_pole(spec.orbits);

    json out;
    out["a"] = a.str();
    out["prime_cutoff"] = ex.config.zeta_prime_cutoff;
    out["delta_on"] = ex.config.zeta_delta_on;
    json table = json::array();
    for (long double s : ex.config.zeta_s) {
        long double prod = truncated_global_product(spec, ex.config.zeta_prime_cutoff, s,
                                                    ex.config.zeta_delta_on);
        json row;
        row["s"] = static_cast<double>(s);
        row["product"] = static_cast<double>(prod);
        row["s_minus_a_times_product"] =
            static_cast<double>((s - a.to_long_double()) * prod);
        table.push_back(row);
    }
    out["pole_probe"] = table;
    return out;
}

json make_report(const Experiment& ex, const CountSeries& series) {
    ExponentReport rep = exponent_report(ex.action, ex.selection, ex.lambda, ex.config.places);
    const long double frozen_p = static_cast<long double>(rep.b - 1);
    FitReport fit = fit_asymptotic(series, frozen_p);

    json out;
    out["predicted"] = {{"a", rep.a.str()},
                        {"a_real", static_cast<double>(rep.a.to_long_double())},
                        {"b", rep.b}};
    out["fit"] = {{"a_unconstrained", static_cast<double>(fit.unconstrained.a)},
                  {"p_unconstrained", static_cast<double>(fit.unconstrained.p)},
                  {"rms_unconstrained", static_cast<double>(fit.unconstrained.rms_residual)},
                  {"a_constrained", static_cast<double>(fit.constrained.a)},
                  {"frozen_p", static_cast<double>(fit.frozen_p)},
                  {"rms_constrained", static_cast<double>(fit.constrained.rms_residual)},
                  {"points_used", fit.points_used}};

    // Residual comparison across neighboring log powers, the soft criterion.
    json alt = json::array();
    for (long double p : {frozen_p - 1, frozen_p, frozen_p + 1}) {
        LinearFit lf = constrained_fit(series, p);
        alt.push_back({{"p", static_cast<double>(p)},
                       {"a", static_cast<double>(lf.a)},
                       {"rms", static_cast<double>(lf.rms_residual)}});
    }
    out["constrained_scan"] = alt;

    json dbl = json::array();
    const long double a_real = rep.a.to_long_double();
    const long double band_center = std::pow(2.0L, a_real);
    const long double lo = band_center * (1.0L - ex.config.ratio_tol);
    const long double hi = band_center * (1.0L + ex.config.ratio_tol);
    bool ratio_pass = true;
    for (const auto& d : fit.doubling) {
        bool in_band = d.ratio >= lo && d.ratio <= hi;
        ratio_pass = ratio_pass && in_band;
        dbl.push_back({{"B", d.at.str()},
                       {"ratio", static_cast<double>(d.ratio)},
                       {"in_band", in_band}});
    }
    out["doubling"] = dbl;

    const bool a_pass = std::fabs(fit.constrained.a - a_real) <= ex.config.tol_a;
    const bool log_power_soft =
        constrained_fit(series, frozen_p).rms_residual <=
        constrained_fit(series, frozen_p >= 1.0L ? frozen_p - 1 : frozen_p + 1).rms_residual +
            1e-12L;
    out["verdict"] = {{"a_pass", a_pass},
                      {"ratio_pass", ratio_pass},
                      {"log_power_soft_pass", log_power_soft},
                      {"pass", a_pass && ratio_pass},
                      {"tol_a", static_cast<double>(ex.config.tol_a)},
                      {"ratio_band", {static_cast<double>(lo), static_cast<double>(hi)}}};
    return out;
}

void atomic_write(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw validation_error("cli", "cannot write '" + tmp.string() + "'");
        out << contents;
    }
    fs::rename(tmp, target);
}

void write_counts_csv(const std::string& path, const CountSeries& series, double seconds) {
    std::ostringstream out;
    out << "B,N,flagged,seconds\n";
    for (const auto& row : series.rows)
        out << row.threshold.str() << "," << row.count << "," << row.flagged << "," << seconds
            << "\n";
    atomic_write(path, out.str());
}

CountSeries read_counts_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cli", "cannot read counts file '" + path + "'");
    CountSeries series;
    std::string line;
    if (!std::getline(in, line) || line.rfind("B,N,flagged", 0) != 0)
        throw validation_error("cli", "counts file '" + path + "' lacks the B,N,flagged header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string b, n, f;
        if (!std::getline(row, b, ',') || !std::getline(row, n, ',') || !std::getline(row, f, ','))
            throw validation_error("cli", "malformed counts row: '" + line + "'");
        series.rows.push_back(CountRow{Rational::parse(b), std::stoll(n), std::stoll(f)});
    }
    return series;
}

void write_points_jsonl(const std::string& path, const CountSeries& series) {
    std::ostringstream out;
    for (const auto& p : series.points) {
        json j;
        j["entries"] = p.entries;
        j["height"] = static_cast<double>(p.height);
        j["flagged"] = p.flagged;
        out << j.dump() << "\n";
    }
    atomic_write(path, out.str());
}

} // namespace wcounts
