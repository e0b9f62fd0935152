// bi-waves: command-line surface over the standing-wave solver library.
//
// Every subcommand reads an optional JSON config (--config run.json) whose
// keys may be overridden by flags, validates it strictly (unknown keys are
// rejected), and writes CSV tables and/or JSON reports.  Runs are
// deterministic: identical inputs produce byte-identical outputs.
// Exit codes: 0 success, 2 config error, 3 numerical failure; failures
// print {"error": name, "message": ...} on stderr.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "biwaves/background.hpp"
#include "biwaves/example_wave.hpp"
#include "biwaves/lindstedt.hpp"
#include "biwaves/minimal_surface.hpp"
#include "biwaves/parallel.hpp"
#include "biwaves/residual_check.hpp"

using json = nlohmann::json;
using namespace biwaves;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------- output

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string table_csv(const Table& t) {
    // RFC-4180: comma separators, CRLF line endings, header row first.
    std::ostringstream os;
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << (i ? "," : "") << t.header[i];
    os << "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\r\n";
    }
    return os.str();
}

json table_rows_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const double v = std::strtod(row[i].c_str(), nullptr);
            if (std::isfinite(v))
                o[t.header[i]] = v;
            else
                o[t.header[i]] = nullptr;
        }
        rows.push_back(std::move(o));
    }
    return rows;
}

void write_text(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(outPath, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + outPath);
    f << text;
    if (!f) throw std::invalid_argument("failed writing output file: " + outPath);
}

// Emit a table honoring --out/--format.  With --out the summary JSON goes
// to stdout; without it the chosen primary stream goes to stdout alone.
void emit_table(const Table& t, const json& summary, const std::string& outPath,
                const std::string& format) {
    if (format == "csv") {
        write_text(table_csv(t), outPath);
        if (!outPath.empty()) std::cout << summary.dump() << "\n";
    } else if (format == "json") {
        json doc = summary;
        doc["rows"] = table_rows_json(t);
        write_text(doc.dump(), outPath);
    } else {
        throw std::invalid_argument("format must be csv or json, got \"" + format + "\"");
    }
}

void emit_report(const json& doc, const std::string& outPath, const std::string& format) {
    if (format == "csv")
        throw std::invalid_argument("this subcommand emits a JSON report; use --format json");
    write_text(doc.dump(), outPath);
}

// ---------------------------------------------------------------- config

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& ctx) {
    if (obj.is_null()) return;
    if (!obj.is_object()) throw std::invalid_argument(ctx + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok)
            throw std::invalid_argument("unknown config key \"" + it.key() + "\" in " + ctx);
    }
}

template <typename T>
T get_or(const json& o, const char* key, T def) {
    if (!o.is_object() || !o.contains(key)) return def;
    try {
        return o.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument(std::string("config key \"") + key +
                                    "\" has the wrong type");
    }
}

std::vector<double> get_vec(const json& o, const char* key) {
    return get_or<std::vector<double>>(o, key, {});
}

// Shared per-command plumbing: config file, output destination, format,
// and the common top-level keys every command accepts.
struct CommonOpts {
    std::string configPath, outPath, format;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* sc) {
        cmd = sc;
        sc->add_option("--config", configPath, "JSON run configuration");
        sc->add_option("--out", outPath, "output file (default: stdout)");
        sc->add_option("--format", format, "csv or json");
    }

    // Load the config and resolve output settings (flags beat config keys).
    json resolve(std::initializer_list<const char*> commandKeys) {
        json cfg = load_config(configPath);
        std::vector<const char*> allowed{"output", "deterministic"};
        allowed.insert(allowed.end(), commandKeys.begin(), commandKeys.end());
        if (!cfg.is_null() && !cfg.is_object())
            throw std::invalid_argument("config root: expected a JSON object");
        for (auto it = cfg.begin(); it != cfg.end(); ++it) {
            bool ok = false;
            for (const char* a : allowed)
                if (it.key() == a) ok = true;
            if (!ok)
                throw std::invalid_argument("unknown config key \"" + it.key() +
                                            "\" in config root");
        }
        const json out = cfg.value("output", json::object());
        check_keys(out, {"path", "format"}, "output");
        if (outPath.empty()) outPath = get_or<std::string>(out, "path", "");
        if (format.empty()) format = get_or<std::string>(out, "format", "");
        if (cfg.contains("deterministic") && !get_or(cfg, "deterministic", true))
            throw std::invalid_argument("nondeterministic runs are not supported");
        return cfg;
    }

    std::string formatOr(const char* def) const { return format.empty() ? def : format; }
    bool flagGiven(const char* name) const { return cmd->count(name) > 0; }
};

// ------------------------------------------------------------ subcommands

void cmd_dispersion(CommonOpts& opts, int flagN, double flagEpsMax, int flagSteps) {
    const json cfg = opts.resolve({"N", "epsMax", "steps"});
    int N = opts.flagGiven("--N") ? flagN : get_or(cfg, "N", 3);
    double epsMax = opts.flagGiven("--eps-max") ? flagEpsMax : get_or(cfg, "epsMax", 0.9);
    int steps = opts.flagGiven("--steps") ? flagSteps : get_or(cfg, "steps", 64);
    if (N < 0) throw std::invalid_argument("dispersion: N must be >= 0");
    if (!(epsMax > 0.0) || !(epsMax < 1.0))
        throw std::invalid_argument("dispersion: need 0 < epsMax < 1");
    if (steps < 1) throw std::invalid_argument("dispersion: steps must be >= 1");

    const LindstedtSolution sol = solve_order(N);
    Table t;
    t.header = {"eps", "omega2_over_k2"};
    for (int i = 0; i <= steps; ++i) {
        const double eps = epsMax * i / steps;
        t.rows.push_back({fmt17(eps), fmt17(dispersion_value(sol, eps))});
    }

    // exact dispersion coefficients as [numerator, denominator] pairs
    std::ostringstream xi;
    xi << "[";
    for (int M = 0; M <= N; ++M) {
        if (M) xi << ",";
        xi << "[" << sol.xi[M].get_num().get_str() << ","
           << sol.xi[M].get_den().get_str() << "]";
    }
    xi << "]";
    json summary = json::object();
    summary["N"] = N;
    summary["xi"] = json::parse(xi.str());
    emit_table(t, summary, opts.outPath, opts.formatOr("csv"));
}

void cmd_fig1(CommonOpts& opts, double flagEpsMin, double flagEpsMax, int flagSteps,
              int flagGrid) {
    const json cfg = opts.resolve({"Nlist", "epsMin", "epsMax", "steps", "grid"});
    std::vector<int> Nlist = get_or<std::vector<int>>(cfg, "Nlist", {3, 6, 11});
    double epsMin = opts.flagGiven("--eps-min") ? flagEpsMin : get_or(cfg, "epsMin", 0.02);
    double epsMax = opts.flagGiven("--eps-max") ? flagEpsMax : get_or(cfg, "epsMax", 0.3);
    int steps = opts.flagGiven("--steps") ? flagSteps : get_or(cfg, "steps", 24);
    int grid = opts.flagGiven("--grid") ? flagGrid : get_or(cfg, "grid", 64);
    if (Nlist.empty()) throw std::invalid_argument("fig1: Nlist must not be empty");
    for (int N : Nlist)
        if (N < 0 || N > 11)
            throw std::invalid_argument(
                "fig1: orders outside [0, 11] are not tabulated (got " +
                std::to_string(N) + ")");
    if (!(epsMin > 0.0) || !(epsMax > epsMin) || !(epsMax < 1.0))
        throw std::invalid_argument("fig1: need 0 < epsMin < epsMax < 1");
    if (steps < 2) throw std::invalid_argument("fig1: steps must be >= 2");
    if (grid < 8) throw std::invalid_argument("fig1: grid must be >= 8");

    const int maxN = *std::max_element(Nlist.begin(), Nlist.end());
    const LindstedtSolution base = solve_order(maxN);
    std::vector<ResidualScan> scans;
    scans.reserve(Nlist.size());
    for (int N : Nlist) scans.emplace_back(base.truncated(N), grid, grid);

    // log-spaced eps grid (the scaling study is a log-log plot)
    std::vector<double> epsGrid(steps + 1);
    for (int i = 0; i <= steps; ++i)
        epsGrid[i] = epsMin * std::pow(epsMax / epsMin, double(i) / steps);

    const int nN = static_cast<int>(Nlist.size());
    std::vector<double> F(static_cast<std::size_t>(nN) * (steps + 1),
                          std::numeric_limits<double>::quiet_NaN());
    std::vector<char> failed(F.size(), 0);
    parallel_for(static_cast<int>(F.size()), [&](int idx) {
        const int a = idx / (steps + 1), i = idx % (steps + 1);
        try {
            F[idx] = scans[a](epsGrid[i]);
        } catch (const NegativeOmegaSquared&) {
            failed[idx] = 1;  // row marked, not fatal
        }
    });

    Table t;
    t.header = {"eps", "N", "F"};
    int nFailed = 0;
    for (int a = 0; a < nN; ++a) {
        for (int i = 0; i <= steps; ++i) {
            const int idx = a * (steps + 1) + i;
            t.rows.push_back({fmt17(epsGrid[i]), std::to_string(Nlist[a]),
                              failed[idx] ? "nan" : fmt17(F[idx])});
            nFailed += failed[idx];
        }
    }

    // summary: curve ordering in N, growth in eps, small-eps slopes
    auto value = [&](int a, int i) { return F[a * (steps + 1) + i]; };
    std::vector<int> order(nN);
    for (int a = 0; a < nN; ++a) order[a] = a;
    std::sort(order.begin(), order.end(),
              [&](int p, int q) { return Nlist[p] < Nlist[q]; });
    bool monotoneInN = true, increasingInEps = true;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j + 1 < nN; ++j) {
            const double lo = value(order[j], i), hi = value(order[j + 1], i);
            if (std::isfinite(lo) && std::isfinite(hi) && !(hi < lo)) monotoneInN = false;
        }
    for (int a = 0; a < nN; ++a)
        for (int i = 0; i < steps; ++i) {
            const double l = value(a, i), r = value(a, i + 1);
            if (std::isfinite(l) && std::isfinite(r) && !(r > l)) increasingInEps = false;
        }
    json slopes = json::array();
    for (int a = 0; a < nN; ++a) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (int i = 0; i <= steps; ++i) {
            const double e = epsGrid[i], f = value(a, i);
            if (e < 0.02 * (1 - 1e-9) || e > 0.1 * (1 + 1e-9)) continue;
            if (!std::isfinite(f) || f <= 0) continue;
            const double lx = std::log(e), ly = std::log(f);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        json entry = json::object();
        entry["N"] = Nlist[a];
        entry["expected"] = 2 * Nlist[a] + 2;
        if (n >= 2) {
            entry["slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            entry["points"] = n;
        } else {
            entry["slope"] = nullptr;
            entry["points"] = n;
        }
        slopes.push_back(std::move(entry));
    }
    json summary = json::object();
    summary["monotoneInN"] = monotoneInN;
    summary["increasingInEps"] = increasingInEps;
    summary["slopes"] = slopes;
    summary["rowsFailed"] = nFailed;
    summary["grid"] = grid;
    emit_table(t, summary, opts.outPath, opts.formatOr("csv"));
}

void cmd_compare(CommonOpts& opts, int flagN, double flagA, double flagK, double flagB,
                 int flagGrid) {
    const json cfg = opts.resolve({"N", "A", "k", "b", "grid"});
    int N = opts.flagGiven("--N") ? flagN : get_or(cfg, "N", 3);
    double A = opts.flagGiven("--A") ? flagA : get_or(cfg, "A", 0.1);
    double k = opts.flagGiven("--k") ? flagK : get_or(cfg, "k", 1.0);
    double b = opts.flagGiven("--b") ? flagB : get_or(cfg, "b", 1.0);
    int grid = opts.flagGiven("--grid") ? flagGrid : get_or(cfg, "grid", 24);
    if (N < 0) throw std::invalid_argument("compare: N must be >= 0");
    if (!(A >= 0.0)) throw std::invalid_argument("compare: A must be >= 0");
    if (!(k > 0.0) || !(b > 0.0))
        throw std::invalid_argument("compare: k and b must be positive");
    if (grid < 2) throw std::invalid_argument("compare: grid must be >= 2");
    const double eps = A * k / b;
    if (!(eps < 1.0))
        throw std::invalid_argument("compare: eps = A*k/b must be < 1");

    LindstedtSolution sol = solve_order(N);
    sol.A = A;
    sol.k = k;
    sol.b = b;
    const double omega = k * std::sqrt(dispersion_value(sol, eps));
    const InitialCondition ic = lindstedt_initial_condition(sol, eps);
    const ParametricSolution ps = build_parametric(ic);

    const double twoK = 2 * ps.K();
    const double modePeriod = 2 * kPi / omega;
    double maxDiff = 0.0;
    std::vector<double> diffs(static_cast<std::size_t>(grid) * grid, 0.0);
    parallel_for(grid * grid, [&](int idx) {
        const int i = idx / grid, j = idx % grid;
        const double x = ic.L * (i + 0.5) / grid;
        const double t = twoK * (j + 0.5) / grid;
        diffs[idx] = std::abs(evaluate(sol, x, t, eps) - field_at(ps, x, t).u);
    });
    for (double d : diffs) maxDiff = std::max(maxDiff, d);

    json doc = json::object();
    doc["N"] = N;
    doc["A"] = A;
    doc["k"] = k;
    doc["b"] = b;
    doc["eps"] = eps;
    doc["twoK"] = twoK;
    doc["modePeriod"] = modePeriod;
    doc["periodGapAbs"] = std::abs(twoK - modePeriod);
    doc["periodGapNormalized"] = std::abs(twoK - modePeriod) / (2 * kPi / k);
    doc["maxFieldDiff"] = maxDiff;
    doc["grid"] = grid;
    emit_report(doc, opts.outPath, opts.formatOr("json"));
}

void cmd_lindstedt_table(CommonOpts& opts, int flagN, bool dumpSeries) {
    const json cfg = opts.resolve({"N", "dumpSeries"});
    int N = opts.flagGiven("--N") ? flagN : get_or(cfg, "N", 3);
    if (opts.cmd->count("--dump-series") == 0)
        dumpSeries = get_or(cfg, "dumpSeries", false);
    if (N < 0) throw std::invalid_argument("lindstedt-table: N must be >= 0");
    if (!opts.formatOr("json").empty() && opts.formatOr("json") != "json")
        throw std::invalid_argument("lindstedt-table emits a JSON report; use --format json");

    const LindstedtSolution sol = solve_order(N);
    std::string doc = dump_json(sol);
    if (dumpSeries) {
        // splice a "series" array into the document (coefficients are
        // arbitrary-precision; emitted as exact integer strings)
        std::ostringstream os;
        os << ",\"series\":[";
        bool first = true;
        for (const auto& row : sol.normalized_series().dump_rows()) {
            if (!first) os << ",";
            first = false;
            os << "{\"n\":" << row.n << ",\"m\":" << row.m << ",\"parity\":\""
               << row.parity << "\",\"num\":" << row.num << ",\"den\":" << row.den
               << ",\"epsPower\":" << row.epsPower << "}";
        }
        os << "]";
        doc.insert(doc.size() - 1, os.str());
    }
    write_text(doc, opts.outPath);
}

void cmd_parametric(CommonOpts& opts, int flagNx, int flagNt, double flagH) {
    const json cfg = opts.resolve({"ic", "quad", "grid", "h", "symmetry"});
    const json icCfg = cfg.value("ic", json::object());
    check_keys(icCfg, {"aSine", "v0Sine", "L", "backgroundB", "b"}, "ic");
    InitialCondition ic;
    ic.aSine = get_vec(icCfg, "aSine");
    ic.v0Sine = get_vec(icCfg, "v0Sine");
    ic.L = get_or(icCfg, "L", kPi);
    ic.backgroundB = get_or(icCfg, "backgroundB", 0.0);
    ic.b = get_or(icCfg, "b", 1.0);

    const json quadCfg = cfg.value("quad", json::object());
    check_keys(quadCfg, {"panels", "nodesPerPanel", "tol", "maxPanels"}, "quad");
    QuadratureSpec quad;
    quad.panels = get_or(quadCfg, "panels", quad.panels);
    quad.nodesPerPanel = get_or(quadCfg, "nodesPerPanel", quad.nodesPerPanel);
    quad.tol = get_or(quadCfg, "tol", quad.tol);
    quad.maxPanels = get_or(quadCfg, "maxPanels", quad.maxPanels);

    const json gridCfg = cfg.value("grid", json::object());
    check_keys(gridCfg, {"nx", "nt"}, "grid");
    int nx = opts.flagGiven("--nx") ? flagNx : get_or(gridCfg, "nx", 16);
    int nt = opts.flagGiven("--nt") ? flagNt : get_or(gridCfg, "nt", 16);
    double h = opts.flagGiven("--fd-step") ? flagH : get_or(cfg, "h", 1e-4);
    const bool doSymmetry = get_or(cfg, "symmetry", true);
    if (nx < 2 || nt < 2) throw std::invalid_argument("parametric: grid must be >= 2x2");
    if (!(h > 0.0)) throw std::invalid_argument("parametric: h must be positive");

    const ParametricSolution ps = build_parametric(ic, quad);
    const double twoK = 2 * ps.K();

    struct Row {
        double x, t, u, ux, ut, margin, residual;
    };
    std::vector<Row> rows(static_cast<std::size_t>(nx) * nt);
    auto sampler = [&](double x, double t) { return field_at(ps, x, t).u; };
    parallel_for(nx * nt, [&](int idx) {
        const int i = idx / nt, j = idx % nt;
        const double x = ic.L * (i + 0.5) / nx;
        const double t = twoK * (j + 0.5) / nt;
        const ParametricSample s = field_at(ps, x, t);
        FieldSample fd = fd_derivatives(sampler, x, t, h, h);
        rows[idx] = {x, t, s.u, s.ux, s.ut, s.margin, bi_residual(fd, ic.b)};
    });

    Table t;
    t.header = {"x", "t", "u", "ux", "ut", "margin", "residual"};
    double maxResidual = 0.0, minMargin = std::numeric_limits<double>::infinity();
    for (const Row& r : rows) {
        t.rows.push_back({fmt17(r.x), fmt17(r.t), fmt17(r.u), fmt17(r.ux), fmt17(r.ut),
                          fmt17(r.margin), fmt17(r.residual)});
        maxResidual = std::max(maxResidual, std::abs(r.residual));
        minMargin = std::min(minMargin, r.margin);
    }

    json summary = json::object();
    summary["K"] = ps.K();
    summary["L"] = ps.L();
    summary["minMarginNodes"] = ps.minMargin();
    summary["nullWorst"] = ps.nullWorst();
    summary["minMarginGrid"] = minMargin;
    summary["maxAbsResidual"] = maxResidual;
    summary["h"] = h;
    if (doSymmetry) summary["symmetryWorst"] = validate_symmetries(ps).worst;
    emit_table(t, summary, opts.outPath, opts.formatOr("csv"));
}

void cmd_example(CommonOpts& opts, double flagA, int flagNx, int flagNt) {
    const json cfg = opts.resolve({"A", "nx", "nt"});
    double A = opts.flagGiven("--A") ? flagA : get_or(cfg, "A", 0.1);
    int nx = opts.flagGiven("--nx") ? flagNx : get_or(cfg, "nx", 33);
    int nt = opts.flagGiven("--nt") ? flagNt : get_or(cfg, "nt", 33);
    if (nx < 2 || nt < 2) throw std::invalid_argument("example: grid must be >= 2x2");
    ExampleConfig ec;
    ec.A = A;
    ec.validate();

    const double period = 2 * kPi * (1 + A);
    std::vector<double> u(static_cast<std::size_t>(nx) * nt);
    parallel_for(nx * nt, [&](int idx) {
        const int i = idx / nt, j = idx % nt;
        const double x = kPi * i / (nx - 1);
        const double t = period * j / (nt - 1);
        u[idx] = cavity_field(x, t, ec);
    });

    Table t;
    t.header = {"x", "t", "u"};
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nt; ++j)
            t.rows.push_back({fmt17(kPi * i / (nx - 1)), fmt17(period * j / (nt - 1)),
                              fmt17(u[i * nt + j])});
    json summary = json::object();
    summary["A"] = A;
    summary["period"] = period;
    emit_table(t, summary, opts.outPath, opts.formatOr("csv"));
}

void cmd_background(CommonOpts& opts, double flagB, double flagA, double flagK,
                    double flagBI) {
    const json cfg = opts.resolve({"B", "A", "k", "b"});
    BackgroundConfig bc;
    bc.B = opts.flagGiven("--B") ? flagB : get_or(cfg, "B", 0.0);
    bc.A = opts.flagGiven("--A") ? flagA : get_or(cfg, "A", 0.0);
    bc.k = opts.flagGiven("--k") ? flagK : get_or(cfg, "k", 1.0);
    bc.b = opts.flagGiven("--b") ? flagBI : get_or(cfg, "b", 1.0);
    bc.validate();

    json doc = json::object();
    doc["B"] = bc.B;
    doc["A"] = bc.A;
    doc["k"] = bc.k;
    doc["b"] = bc.b;
    if (bc.A > 0.0) {
        const MagneticFirstOrder m = magnetic_first_order(bc);
        doc["dispersion"] = m.omegaSqOverKSq;
        doc["dispersionAlt"] = m.omegaSqOverKSqAlt;
    } else {
        doc["dispersion"] = nullptr;
        doc["dispersionAlt"] = nullptr;
    }
    const double ratio = period_ratio(background_ic(bc.B, {}, {}, kPi / bc.k, bc.b));
    const double v = effective_metric_velocity(bc.B, bc.b);
    doc["KoverL"] = ratio;
    doc["v"] = v;
    doc["vTimesKoverL"] = v * ratio;
    emit_report(doc, opts.outPath, opts.formatOr("json"));
}

void error_json(const char* name, const std::string& message) {
    json e = json::object();
    e["error"] = name;
    e["message"] = message;
    std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver toolkit for nonlinear standing waves"};
    app.require_subcommand(1);

    CommonOpts dOpts, fOpts, cOpts, lOpts, pOpts, eOpts, bOpts;

    auto* d = app.add_subcommand("dispersion", "frequency-correction series table");
    dOpts.attach(d);
    int dN = 3, dSteps = 64;
    double dEpsMax = 0.9;
    d->add_option("--N", dN, "expansion order");
    d->add_option("--eps-max", dEpsMax, "largest eps sampled (< 1)");
    d->add_option("--steps", dSteps, "number of eps intervals");

    auto* f = app.add_subcommand("fig1", "residual-vs-eps scaling sweep");
    fOpts.attach(f);
    double fEpsMin = 0.02, fEpsMax = 0.3;
    int fSteps = 24, fGrid = 64;
    f->add_option("--eps-min", fEpsMin, "smallest eps sampled");
    f->add_option("--eps-max", fEpsMax, "largest eps sampled (< 1)");
    f->add_option("--steps", fSteps, "log-spaced eps intervals");
    f->add_option("--grid", fGrid, "phase-grid points per direction");

    auto* c = app.add_subcommand("compare",
                                 "mode expansion vs exact surface: period and field");
    cOpts.attach(c);
    int cN = 3, cGrid = 24;
    double cA = 0.1, cK = 1.0, cB = 1.0;
    c->add_option("--N", cN, "expansion order");
    c->add_option("--A", cA, "amplitude");
    c->add_option("--k", cK, "wavenumber");
    c->add_option("--b", cB, "field-strength scale");
    c->add_option("--grid", cGrid, "comparison grid per direction");

    auto* l = app.add_subcommand("lindstedt-table", "exact coefficient tables as JSON");
    lOpts.attach(l);
    int lN = 3;
    bool lDump = false;
    l->add_option("--N", lN, "expansion order");
    l->add_flag("--dump-series", lDump, "include the symbolic series rows");

    auto* p = app.add_subcommand("parametric", "exact solution grid export");
    pOpts.attach(p);
    int pNx = 16, pNt = 16;
    double pH = 1e-4;
    p->add_option("--nx", pNx, "spatial grid points");
    p->add_option("--nt", pNt, "temporal grid points");
    p->add_option("--fd-step", pH, "finite-difference step for the residual column");

    auto* e = app.add_subcommand("example", "closed-form cavity wave grid export");
    eOpts.attach(e);
    double eA = 0.1;
    int eNx = 33, eNt = 33;
    e->add_option("--A", eA, "amplitude parameter");
    e->add_option("--nx", eNx, "spatial grid points");
    e->add_option("--nt", eNt, "temporal grid points");

    auto* b = app.add_subcommand("background", "sloped-background closed forms");
    bOpts.attach(b);
    double bB = 0.0, bA = 0.0, bK = 1.0, bBI = 1.0;
    b->add_option("--B", bB, "background slope");
    b->add_option("--A", bA, "wave amplitude (0 = background only)");
    b->add_option("--k", bK, "wavenumber");
    b->add_option("--b", bBI, "field-strength scale");

    try {
        app.parse(argc, argv);
        if (d->parsed()) cmd_dispersion(dOpts, dN, dEpsMax, dSteps);
        if (f->parsed()) cmd_fig1(fOpts, fEpsMin, fEpsMax, fSteps, fGrid);
        if (c->parsed()) cmd_compare(cOpts, cN, cA, cK, cB, cGrid);
        if (l->parsed()) cmd_lindstedt_table(lOpts, lN, lDump);
        if (p->parsed()) cmd_parametric(pOpts, pNx, pNt, pH);
        if (e->parsed()) cmd_example(eOpts, eA, eNx, eNt);
        if (b->parsed()) cmd_background(bOpts, bB, bA, bK, bBI);
        return 0;
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex);
    } catch (const CLI::ParseError& ex) {
        error_json("ConfigError", ex.what());
        return 2;
    } catch (const NumericalError& ex) {
        error_json(ex.name(), ex.what());
        return 3;
    } catch (const std::invalid_argument& ex) {
        error_json("ConfigError", ex.what());
        return 2;
    } catch (const std::exception& ex) {
        error_json("InternalError", ex.what());
        return 3;
    }
}
