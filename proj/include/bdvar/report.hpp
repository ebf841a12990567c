#pragma once

#include "bdvar/analysis.hpp"
#include "bdvar/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace bdvar {

enum class Suite { moments, detracting, rate, remainder, apply };
enum class OutputFormat { csv, json };

inline std::string to_string(Suite s) {
    switch (s) {
        case Suite::moments: return "moments";
        case Suite::detracting: return "detracting";
        case Suite::rate: return "rate";
        case Suite::remainder: return "remainder";
        case Suite::apply: return "apply";
    }
    return "?";
}

inline Suite parse_suite(const std::string& s) {
    if (s == "moments") return Suite::moments;
    if (s == "detracting") return Suite::detracting;
    if (s == "rate") return Suite::rate;
    if (s == "remainder") return Suite::remainder;
    if (s == "apply") return Suite::apply;
    throw std::invalid_argument("unknown suite: " + s);
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format: " + s);
}

/// "a,b,c" as an explicit list, "lo:hi" as a dense range, "lo:hi:g" as a
/// geometric range with integer ratio g >= 2.
inline std::vector<int> parse_n_spec(const std::string& spec) {
    std::vector<int> out;
    const auto colon = std::count(spec.begin(), spec.end(), ':');
    const auto parse_int = [](const std::string& s) {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("bad integer in --n: " + s);
        return v;
    };
    if (colon > 0) {
        std::vector<std::string> parts;
        size_t start = 0;
        for (size_t pos; (pos = spec.find(':', start)) != std::string::npos; start = pos + 1)
            parts.push_back(spec.substr(start, pos - start));
        parts.push_back(spec.substr(start));
        if (parts.size() != 2 && parts.size() != 3)
            throw std::invalid_argument("bad --n range: " + spec);
        const int lo = parse_int(parts[0]);
        const int hi = parse_int(parts[1]);
        const int step = parts.size() == 3 ? parse_int(parts[2]) : 0;
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad --n range: " + spec);
        if (parts.size() == 3) {
            if (step < 2) throw std::invalid_argument("--n geometric step must be >= 2");
            for (long long v = lo; v <= hi; v *= step) out.push_back(int(v));
        } else {
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        }
    } else {
        size_t start = 0;
        while (start <= spec.size()) {
            const size_t pos = spec.find(',', start);
            const std::string tok =
                spec.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
            if (tok.empty()) throw std::invalid_argument("bad --n list: " + spec);
            out.push_back(parse_int(tok));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
    }
    for (int v : out)
        if (v < 1) throw std::invalid_argument("--n entries must be >= 1");
    if (out.empty()) throw std::invalid_argument("--n produced an empty list");
    return out;
}

struct ExperimentConfig {
    Suite suite = Suite::moments;
    std::vector<int> n_list;                // empty: use the suite default
    std::vector<std::string> function_ids;  // empty or {"all"}: suite default
    int quad_order = 32;
    int panels = 64;
    double tol = 1e-10;
    OutputFormat format = OutputFormat::csv;
};

namespace detail {

struct Cell {
    enum class Kind { blank, integer, real, text } kind = Kind::blank;
    long long i = 0;
    double d = 0.0;
    std::string s;

    static Cell blank() { return {}; }
    static Cell of(long long v) { return {Kind::integer, v, 0.0, {}}; }
    static Cell of(int v) { return of(static_cast<long long>(v)); }
    static Cell of(double v) { return {Kind::real, 0, v, {}}; }
    static Cell of(bool v) { return {Kind::integer, v ? 1 : 0, 0.0, {}}; }
    static Cell of(std::string v) { return {Kind::text, 0, 0.0, std::move(v)}; }

    std::string csv() const {
        char buf[40];
        switch (kind) {
            case Kind::blank: return "";
            case Kind::integer:
                std::snprintf(buf, sizeof buf, "%lld", i);
                return buf;
            case Kind::real:
                std::snprintf(buf, sizeof buf, "%.17g", d);
                return buf;
            case Kind::text: return s;
        }
        return "";
    }

    nlohmann::ordered_json json() const {
        switch (kind) {
            case Kind::blank: return nullptr;
            case Kind::integer: return i;
            case Kind::real: return d;
            case Kind::text: return s;
        }
        return nullptr;
    }
};

}  // namespace detail

struct Report {
    ExperimentConfig config;
    std::vector<std::string> columns;
    std::vector<std::vector<detail::Cell>> rows;
    std::vector<std::string> notes;
    int hard_failures = 0;

    std::string to_csv() const {
        std::string out;
        for (const auto& note : notes) out += "# " + note + "\n";
        for (size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += columns[c];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += row[c].csv();
            }
            out += '\n';
        }
        return out;
    }

    std::string to_json() const {
        nlohmann::ordered_json doc;
        doc["suite"] = to_string(config.suite);
        doc["config"] = {{"n", config.n_list},
                         {"functions", config.function_ids},
                         {"quad_order", config.quad_order},
                         {"panels", config.panels},
                         {"tol", config.tol}};
        doc["notes"] = notes;
        doc["columns"] = columns;
        auto records = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json rec;
            for (size_t c = 0; c < row.size() && c < columns.size(); ++c)
                rec[columns[c]] = row[c].json();
            records.push_back(std::move(rec));
        }
        doc["records"] = std::move(records);
        doc["hard_failures"] = hard_failures;
        return doc.dump(2) + "\n";
    }

    std::string render() const {
        return config.format == OutputFormat::csv ? to_csv() : to_json();
    }
};

namespace detail {

inline std::vector<std::string> resolve_function_ids(const ExperimentConfig& config,
                                                     const std::vector<TestFunction>& corpus) {
    std::vector<std::string> ids;
    const bool want_default =
        config.function_ids.empty() ||
        (config.function_ids.size() == 1 && config.function_ids[0] == "all");
    if (want_default) {
        for (const auto& f : corpus) {
            switch (config.suite) {
                case Suite::moments: break;  // function-independent
                case Suite::detracting:
                case Suite::apply: ids.push_back(f.id); break;
                case Suite::rate:
                    if (f.cls == SmoothnessClass::C3) ids.push_back(f.id);
                    break;
                case Suite::remainder:
                    if (f.id == "sin2pi" || f.id == "exp") ids.push_back(f.id);
                    break;
            }
        }
    } else {
        for (const auto& id : config.function_ids) {
            corpus_lookup(corpus, id);  // throws on unknown ids
            ids.push_back(id);
        }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

inline std::vector<int> resolve_n_list(const ExperimentConfig& config) {
    std::vector<int> ns = config.n_list;
    if (ns.empty()) {
        switch (config.suite) {
            case Suite::moments:
                for (int n = 1; n <= 20; ++n) ns.push_back(n);
                break;
            case Suite::detracting:
                for (int n = 1; n <= 128; ++n) ns.push_back(n);
                break;
            case Suite::rate:
                for (int n = 4; n <= 256; n *= 2) ns.push_back(n);
                break;
            case Suite::remainder: ns = {4, 16, 64}; break;
            case Suite::apply: ns = {8}; break;
        }
    }
    for (int n : ns)
        if (n < 1) throw std::invalid_argument("n entries must be >= 1");
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

inline Report run_moments_suite(const ExperimentConfig& config) {
    Report report;
    report.config = config;
    report.columns = {"kind", "n", "r", "x", "closed_value", "exact_match"};
    const std::vector<Rational> grid = {Rational(0),    Rational(1, 4), Rational(1, 3),
                                        Rational(1, 2), Rational(2, 3), Rational(1)};
    const auto ns = resolve_n_list(config);
    for (int n : ns) {
        for (int r = 0; r <= 4; ++r) {
            for (const auto& x : grid) {
                const Rational closed = sum_moment<Rational>(r, n, x);
                const bool match = closed == sum_moment_direct<Rational>(r, n, x);
                report.rows.push_back({Cell::of(std::string("sum")), Cell::of(n), Cell::of(r),
                                       Cell::of(to_double(x)), Cell::of(to_double(closed)),
                                       Cell::of(match)});
                if (!match) ++report.hard_failures;
            }
        }
        for (int r = 1; r <= 4; ++r) {
            for (const auto& x : grid) {
                const Rational closed = central_moment<Rational>(r, n, x);
                const bool match = closed == central_moment_direct<Rational>(r, n, x);
                report.rows.push_back({Cell::of(std::string("central")), Cell::of(n), Cell::of(r),
                                       Cell::of(to_double(x)), Cell::of(to_double(closed)),
                                       Cell::of(match)});
                if (!match) ++report.hard_failures;
            }
        }
    }
    // the r = 3 closed-form question: which factor does the direct sum carry?
    {
        const int n = 5;
        const Rational x(1, 4);
        const Rational big_x = x * (Rational(1) - x);
        const Rational nX = Rational(n) * big_x;
        const Rational direct = central_moment_direct<Rational>(3, n, x);
        const bool is_1_minus_2x = direct == nX * (Rational(1) - Rational(2) * x);
        const bool is_1_minus_2X = direct == nX * (Rational(1) - Rational(2) * big_x);
        report.notes.push_back(
            std::string("central r=3 direct sum at n=5, x=1/4 matches nX(1-2x): ") +
            (is_1_minus_2x ? "yes" : "no") + "; matches nX(1-2X): " +
            (is_1_minus_2X ? "yes" : "no"));
    }
    return report;
}

inline Report run_detracting_suite(const ExperimentConfig& config,
                                   const std::vector<TestFunction>& corpus) {
    Report report;
    report.config = config;
    report.columns = {"function", "n",         "v_input", "v_output", "margin",
                      "bv_input", "bv_output", "eps",     "pass",     "error"};
    const auto ids = resolve_function_ids(config, corpus);
    const auto ns = resolve_n_list(config);
    for (const auto& id : ids) {
        const auto& f = corpus_lookup(corpus, id);
        for (int n : ns) {
            try {
                const auto rec = verify_detracting(f, n, config.quad_order, config.panels);
                report.rows.push_back({Cell::of(id), Cell::of(n), Cell::of(rec.v_input),
                                       Cell::of(rec.v_output), Cell::of(rec.margin),
                                       Cell::of(rec.bv_input), Cell::of(rec.bv_output),
                                       Cell::of(rec.eps), Cell::of(rec.pass), Cell::blank()});
                if (!rec.pass) ++report.hard_failures;
            } catch (const std::exception& e) {
                report.rows.push_back({Cell::of(id), Cell::of(n), Cell::blank(), Cell::blank(),
                                       Cell::blank(), Cell::blank(), Cell::blank(), Cell::blank(),
                                       Cell::of(false), Cell::of(std::string(e.what()))});
                ++report.hard_failures;
            }
        }
    }
    return report;
}

inline Report run_rate_suite(const ExperimentConfig& config,
                             const std::vector<TestFunction>& corpus) {
    Report report;
    report.config = config;
    report.columns = {"function", "n",        "lhs",        "term1", "term2", "term3",
                      "rhs",      "ratio",    "stmt_rhs",   "stmt_ratio",     "slope",
                      "stein_ratio",          "pass",       "error"};
    report.notes.push_back(
        "stmt_rhs = 2(C+1)/sqrt(n) (V[g] + V[g'']) with the empirical stein ratio standing "
        "in for C; lhs doubles as V[D_n g - g] through the AC identity");
    const auto ids = resolve_function_ids(config, corpus);
    const auto ns = resolve_n_list(config);
    for (const auto& id : ids) {
        const auto& g = corpus_lookup(corpus, id);
        std::vector<RateRecord> records;
        std::vector<std::string> errors(ns.size());
        for (size_t i = 0; i < ns.size(); ++i) {
            try {
                records.push_back(verify_rate(g, ns[i], config.quad_order, config.panels,
                                              config.tol));
            } catch (const std::exception& e) {
                records.push_back({});
                records.back().function_id = id;
                records.back().n = ns[i];
                errors[i] = e.what();
            }
        }
        // per-function summary values shared across the rows
        Cell slope_cell = Cell::blank();
        {
            std::vector<std::pair<double, double>> pts;
            for (const auto& rec : records)
                if (rec.n >= 16 && rec.lhs > 0.0) pts.emplace_back(rec.n, rec.lhs);
            if (pts.size() >= 2) slope_cell = Cell::of(loglog_slope(pts));
        }
        Cell stein_cell = Cell::blank();
        double statement_scale = -1.0;  // 2(C+1)(V[g] + V[g''])
        try {
            const double stein = stein_ratio(g, config.tol);
            stein_cell = Cell::of(stein);
            const auto norms = derivative_l1_norms(g, config.tol, config.panels);
            const double v_g = g.known_tv ? *g.known_tv : norms[0];
            statement_scale = 2.0 * (stein + 1.0) * (v_g + norms[2]);
        } catch (const std::exception&) {
        }
        for (size_t i = 0; i < records.size(); ++i) {
            const auto& rec = records[i];
            if (!errors[i].empty()) {
                report.rows.push_back({Cell::of(id), Cell::of(rec.n), Cell::blank(), Cell::blank(),
                                       Cell::blank(), Cell::blank(), Cell::blank(), Cell::blank(),
                                       Cell::blank(), Cell::blank(), slope_cell, stein_cell,
                                       Cell::of(false), Cell::of(errors[i])});
                ++report.hard_failures;
                continue;
            }
            Cell stmt_rhs = Cell::blank(), stmt_ratio = Cell::blank();
            if (statement_scale >= 0.0) {
                const double rhs = statement_scale / std::sqrt(double(rec.n));
                stmt_rhs = Cell::of(rhs);
                if (rhs > 0.0) stmt_ratio = Cell::of(rec.lhs / rhs);
            }
            report.rows.push_back({Cell::of(id), Cell::of(rec.n), Cell::of(rec.lhs),
                                   Cell::of(rec.term1), Cell::of(rec.term2), Cell::of(rec.term3),
                                   Cell::of(rec.rhs), Cell::of(rec.ratio), stmt_rhs, stmt_ratio,
                                   slope_cell, stein_cell, Cell::of(rec.pass), Cell::blank()});
            if (!rec.pass) ++report.hard_failures;
        }
    }
    return report;
}

inline Report run_remainder_suite(const ExperimentConfig& config,
                                  const std::vector<TestFunction>& corpus) {
    Report report;
    report.config = config;
    report.columns = {"row_type", "function", "n",       "x",       "remainder", "q1",
                      "q2",       "q3",       "q4",      "q_sum",   "q_gap",     "b1",
                      "b2",       "b3",       "b4",      "b1_norm", "b2_norm",   "b3_norm",
                      "b4_norm",  "claimed_b1_norm",     "claimed_b4_norm",      "b2_bound",
                      "b3_bound", "pass",     "error"};
    report.notes.push_back(
        "q1..q4: exact-kernel quadrant split of the remainder sum (k <= [nx] vs k > [nx], "
        "t <= x vs t > x); their sum reassembles the remainder");
    report.notes.push_back(
        "b1..b4: bound-stage partial sums with kernel (t-x)^2 (g''(t)-g''(x)) and t-ranges "
        "[0,k/n],[k/n,x],[x,k/n],[k/n,1]; the b*_norm rows report their L1 size in x "
        "against the claimed zero for b1/b4 and the bounds |g'''|/sqrt(n), |g'''|/(2n)");
    const auto ids = resolve_function_ids(config, corpus);
    const auto ns = resolve_n_list(config);
    const auto blank_row = [&]() { return std::vector<Cell>(report.columns.size(), Cell::blank()); };
    for (const auto& id : ids) {
        const auto& g = corpus_lookup(corpus, id);
        for (int n : ns) {
            DurrmeyerCoefficients<double> F;
            try {
                F = durrmeyer_coefficients_for(g, n, config.quad_order, config.panels);
            } catch (const std::exception& e) {
                auto row = blank_row();
                row[0] = Cell::of(std::string("pointwise"));
                row[1] = Cell::of(id);
                row[2] = Cell::of(n);
                row[23] = Cell::of(false);
                row[24] = Cell::of(std::string(e.what()));
                report.rows.push_back(std::move(row));
                ++report.hard_failures;
                continue;
            }
            for (int i = 1; i <= 9; ++i) {
                const double x = double(i) / 10.0;
                auto row = blank_row();
                row[0] = Cell::of(std::string("pointwise"));
                row[1] = Cell::of(id);
                row[2] = Cell::of(n);
                row[3] = Cell::of(x);
                try {
                    const double r = taylor_remainder(g, F, x);
                    const auto q = remainder_quadrants(g, n, x);
                    const double q_sum = q[0] + q[1] + q[2] + q[3];
                    const double gap = std::abs(q_sum - r);
                    const auto b = b_components(g, n, x);
                    const bool pass = gap <= 1e-9;
                    row[4] = Cell::of(r);
                    for (int j = 0; j < 4; ++j) row[5 + j] = Cell::of(q[size_t(j)]);
                    row[9] = Cell::of(q_sum);
                    row[10] = Cell::of(gap);
                    for (int j = 0; j < 4; ++j) row[11 + j] = Cell::of(b[size_t(j)]);
                    row[23] = Cell::of(pass);
                    if (!pass) ++report.hard_failures;
                } catch (const std::exception& e) {
                    row[23] = Cell::of(false);
                    row[24] = Cell::of(std::string(e.what()));
                    ++report.hard_failures;
                }
                report.rows.push_back(std::move(row));
            }
            // L1 norms of the bound-stage components over x
            auto row = blank_row();
            row[0] = Cell::of(std::string("norms"));
            row[1] = Cell::of(id);
            row[2] = Cell::of(n);
            try {
                const auto rule = gauss_legendre(8);
                std::array<double, 4> norms{0.0, 0.0, 0.0, 0.0};
                const int panels = 16;
                for (int p = 0; p < panels; ++p) {
                    const double lo = double(p) / panels;
                    for (size_t qn = 0; qn < rule.nodes.size(); ++qn) {
                        const double x = lo + rule.nodes[qn] / panels;
                        const auto b = b_components(g, n, x);
                        for (int j = 0; j < 4; ++j)
                            norms[size_t(j)] += rule.weights[qn] / panels * std::abs(b[size_t(j)]);
                    }
                }
                const double d3_norm = derivative_l1_norms(g, config.tol, config.panels)[2];
                for (int j = 0; j < 4; ++j) row[15 + j] = Cell::of(norms[size_t(j)]);
                row[19] = Cell::of(0.0);
                row[20] = Cell::of(0.0);
                row[21] = Cell::of(d3_norm / std::sqrt(double(n)));
                row[22] = Cell::of(d3_norm / (2.0 * double(n)));
                row[23] = Cell::of(true);  // the norm report passes by existing
            } catch (const std::exception& e) {
                row[23] = Cell::of(false);
                row[24] = Cell::of(std::string(e.what()));
                ++report.hard_failures;
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

inline Report run_apply_suite(const ExperimentConfig& config,
                              const std::vector<TestFunction>& corpus) {
    Report report;
    report.config = config;
    report.columns = {"function", "n", "k", "node", "bernstein_coeff", "durrmeyer_coeff",
                      "error"};
    const auto ids = resolve_function_ids(config, corpus);
    const auto ns = resolve_n_list(config);
    for (const auto& id : ids) {
        const auto& f = corpus_lookup(corpus, id);
        for (int n : ns) {
            try {
                const auto bern = bernstein_apply(f.f, n);
                const auto durr = durrmeyer_coefficients_for(f, n, config.quad_order,
                                                             config.panels);
                for (int k = 0; k <= n; ++k) {
                    report.rows.push_back(
                        {Cell::of(id), Cell::of(n), Cell::of(k), Cell::of(double(k) / n),
                         Cell::of(bern.coeffs()[size_t(k)]), Cell::of(durr.values[size_t(k)]),
                         Cell::blank()});
                }
            } catch (const std::exception& e) {
                report.rows.push_back({Cell::of(id), Cell::of(n), Cell::blank(), Cell::blank(),
                                       Cell::blank(), Cell::blank(),
                                       Cell::of(std::string(e.what()))});
            }
        }
    }
    return report;
}

}  // namespace detail

/// Execute a suite over the (function x n) grid. Rows are emitted in sorted
/// (function, n, x) order with fixed 17-significant-digit formatting, so a
/// given config always produces byte-identical output.
inline Report run_suite(const ExperimentConfig& config, const std::vector<TestFunction>& corpus) {
    ExperimentConfig resolved = config;
    resolved.n_list = detail::resolve_n_list(config);
    resolved.function_ids = detail::resolve_function_ids(config, corpus);
    switch (resolved.suite) {
        case Suite::moments: return detail::run_moments_suite(resolved);
        case Suite::detracting: return detail::run_detracting_suite(resolved, corpus);
        case Suite::rate: return detail::run_rate_suite(resolved, corpus);
        case Suite::remainder: return detail::run_remainder_suite(resolved, corpus);
        case Suite::apply: return detail::run_apply_suite(resolved, corpus);
    }
    throw std::invalid_argument("run_suite: unknown suite");
}

}  // namespace bdvar
