#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spectral_bounds/bounds.hpp"
#include "spectral_bounds/error.hpp"
#include "spectral_bounds/extremal.hpp"
#include "spectral_bounds/geometry.hpp"
#include "spectral_bounds/io.hpp"
#include "spectral_bounds/problem.hpp"
#include "spectral_bounds/spectra.hpp"

namespace spectral_bounds::cli {

using json = nlohmann::json;

enum ExitCode { exit_ok = 0, exit_internal = 1, exit_invalid = 2 };

struct RunConfig {
    std::string subcommand;
    std::optional<std::string> domain; ///< inline JSON or a file path
    std::optional<int> n;
    std::optional<double> volume;
    std::optional<double> inertia;
    std::optional<int> l;
    std::optional<double> a;
    std::string k = "1..10";
    std::optional<double> kstar;
    std::vector<std::string> which; ///< empty: every applicable inequality
    std::string epsilon = "zero";
    std::vector<int> grids{96, 192};
    std::optional<double> slack;
    std::string format = "csv";
    std::string output; ///< empty: stdout
    std::uint64_t seed = 20240601;
    bool total = false; ///< report k * mean instead of the mean
};

inline json config_json(const RunConfig& c)
{
    json j = {{"subcommand", c.subcommand}, {"k", c.k},           {"which", c.which},   {"epsilon", c.epsilon},
              {"grids", c.grids},           {"format", c.format}, {"seed", c.seed},     {"total", c.total}};
    const auto opt = [&j](const char* key, const auto& v) {
        if (v) j[key] = *v;
    };
    opt("domain", c.domain);
    opt("n", c.n);
    opt("volume", c.volume);
    opt("inertia", c.inertia);
    opt("l", c.l);
    opt("a", c.a);
    opt("kstar", c.kstar);
    opt("slack", c.slack);
    if (!c.output.empty()) j["output"] = c.output;
    return j;
}

/// Fills fields present in a JSON config document. The domain may be given
/// as an object or as a string (inline JSON or path).
inline void apply_config_json(RunConfig& c, const json& j)
{
    try {
        detail::require(j.is_object(), ErrorKind::invalid_argument, "config file must hold a JSON object");
        if (j.contains("domain")) c.domain = j["domain"].is_string() ? j["domain"].get<std::string>() : j["domain"].dump();
        if (j.contains("n")) c.n = j["n"].get<int>();
        if (j.contains("volume")) c.volume = j["volume"].get<double>();
        if (j.contains("inertia")) c.inertia = j["inertia"].get<double>();
        if (j.contains("l")) c.l = j["l"].get<int>();
        if (j.contains("a")) c.a = j["a"].get<double>();
        if (j.contains("k")) c.k = j["k"].is_string() ? j["k"].get<std::string>() : j["k"].dump();
        if (j.contains("kstar")) c.kstar = j["kstar"].get<double>();
        if (j.contains("which")) c.which = j["which"].get<std::vector<std::string>>();
        if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<std::string>();
        if (j.contains("grids")) c.grids = j["grids"].get<std::vector<int>>();
        if (j.contains("slack")) c.slack = j["slack"].get<double>();
        if (j.contains("format")) c.format = j["format"].get<std::string>();
        if (j.contains("output")) c.output = j["output"].get<std::string>();
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("total")) c.total = j["total"].get<bool>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_argument, std::string("bad config value: ") + e.what());
    }
}

namespace detail {

using spectral_bounds::detail::require;

inline double parse_number(const std::string& s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    spectral_bounds::detail::require(used == s.size() && !s.empty(), ErrorKind::invalid_argument,
                                     "not a number: '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, const std::string& sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + sep.size();
    }
    return out;
}

} // namespace detail

/// "a..b", "a..b..step", "log:a..b:count" or a single value.
inline std::vector<double> parse_k_range(const std::string& text)
{
    std::vector<double> out;
    if (text.rfind("log:", 0) == 0) {
        const auto parts = detail::split(text.substr(4), ":");
        spectral_bounds::detail::require(parts.size() == 2, ErrorKind::invalid_argument,
                                         "log range must look like log:a..b:count");
        const auto ends = detail::split(parts[0], "..");
        spectral_bounds::detail::require(ends.size() == 2, ErrorKind::invalid_argument,
                                         "log range must look like log:a..b:count");
        const double lo = detail::parse_number(ends[0]);
        const double hi = detail::parse_number(ends[1]);
        const double count = detail::parse_number(parts[1]);
        spectral_bounds::detail::require(lo > 0.0 && hi >= lo && count >= 1 && count == std::floor(count),
                                         ErrorKind::invalid_argument, "log range needs 0 < a <= b and count >= 1");
        const auto m = static_cast<int>(count);
        for (int i = 0; i < m; ++i) {
            // exponent form keeps decade points exact: log:1..1e6:7 gives 1, 10, 100, ...
            const double e0 = std::log10(lo);
            const double e1 = std::log10(hi);
            out.push_back(m == 1 ? lo : std::pow(10.0, e0 + (e1 - e0) * i / (m - 1)));
        }
        out.front() = lo;
        out.back() = m == 1 ? lo : hi;
    } else {
        const auto parts = detail::split(text, "..");
        spectral_bounds::detail::require(parts.size() >= 1 && parts.size() <= 3, ErrorKind::invalid_argument,
                                         "k range must look like a..b or a..b..step");
        const double lo = detail::parse_number(parts[0]);
        const double hi = parts.size() >= 2 ? detail::parse_number(parts[1]) : lo;
        const double step = parts.size() == 3 ? detail::parse_number(parts[2]) : 1.0;
        spectral_bounds::detail::require(step > 0.0 && hi >= lo, ErrorKind::invalid_argument,
                                         "k range needs a <= b and a positive step");
        const auto m = static_cast<long long>(std::floor((hi - lo) / step * (1.0 + 1e-12))) + 1;
        spectral_bounds::detail::require(m <= 10'000'000, ErrorKind::invalid_argument, "k range is too long");
        for (long long i = 0; i < m; ++i) out.push_back(lo + static_cast<double>(i) * step);
    }
    spectral_bounds::detail::require(!out.empty(), ErrorKind::invalid_argument, "k range is empty");
    for (double k : out) {
        spectral_bounds::detail::require(std::isfinite(k) && k >= 1.0, ErrorKind::invalid_argument,
                                         "k values must be >= 1");
    }
    return out;
}

inline bounds::EpsilonMode parse_epsilon(const std::string& s)
{
    if (s == "zero") return bounds::EpsilonMode::zero;
    if (s == "rigorous") return bounds::EpsilonMode::rigorous;
    throw Error(ErrorKind::invalid_argument, "epsilon mode must be 'zero' or 'rigorous'");
}

struct CommandResult {
    int exit_code = exit_ok;
    std::string text;      ///< the artifact (CSV or JSON)
    std::string message;   ///< human-readable notes for stderr
};

namespace detail {

inline std::optional<geometry::Domain> domain_of(const RunConfig& c)
{
    if (!c.domain) return std::nullopt;
    return io::parse_domain_text(*c.domain);
}

inline void require_operator(const RunConfig& c)
{
    spectral_bounds::detail::require(c.l.has_value() != c.a.has_value(), ErrorKind::invalid_argument,
                                     "give exactly one of --l (poly-Laplacian order) or --a (Delta^2 - a Delta)");
}

inline ProblemSpec problem_of(const RunConfig& c)
{
    require_operator(c);
    if (const auto d = domain_of(c)) {
        spectral_bounds::detail::require(!c.n || *c.n == d->dimension(), ErrorKind::invalid_argument,
                                         "--n disagrees with the domain dimension");
        return c.l ? ProblemSpec::poly(*d, *c.l) : ProblemSpec::quadratic(*d, *c.a);
    }
    spectral_bounds::detail::require(c.n && c.volume && c.inertia, ErrorKind::invalid_argument,
                                     "without --domain, --n, --volume and --inertia are required");
    return c.l ? ProblemSpec::poly(*c.n, *c.l, *c.volume, *c.inertia)
               : ProblemSpec::quadratic(*c.n, *c.a, *c.volume, *c.inertia);
}

// Selected ids, validated against every spec in turn: an id must cover at
// least one of them. Empty selection means all applicable ones.
inline std::vector<std::pair<InequalityId, ProblemSpec>> selection(const RunConfig& c,
                                                                   const std::vector<ProblemSpec>& specs,
                                                                   bool include_asymptotic)
{
    std::vector<std::pair<InequalityId, ProblemSpec>> out;
    const bool all = c.which.empty() || (c.which.size() == 1 && c.which[0] == "all");
    if (all) {
        for (const auto& s : specs) {
            for (auto id : bounds::applicable(s, include_asymptotic)) out.emplace_back(id, s);
        }
        return out;
    }
    for (const auto& name : c.which) {
        const auto id = inequality_from_string(name);
        spectral_bounds::detail::require(id.has_value(), ErrorKind::invalid_argument, "unknown inequality '" + name + "'");
        std::optional<Error> last;
        bool found = false;
        for (const auto& s : specs) {
            try {
                bounds::evaluate(*id, s, 1.0);
                out.emplace_back(*id, s);
                found = true;
                break;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::not_applicable) throw;
                last = e;
            }
        }
        if (!found) throw *last;
    }
    return out;
}

inline void scale_by_k(BoundResult& r)
{
    r.value *= r.k;
    for (auto& t : r.terms) t.value *= r.k;
}

inline std::string json_document(const RunConfig& c, json rows, json diagnostics)
{
    json doc = {{"config", config_json(c)}, {"rows", std::move(rows)}, {"diagnostics", std::move(diagnostics)}};
    return doc.dump(2) + "\n";
}

} // namespace detail

inline CommandResult cmd_bounds(const RunConfig& c)
{
    const auto spec = detail::problem_of(c);
    const auto ks = parse_k_range(c.k);
    const auto mode = parse_epsilon(c.epsilon);
    const auto chosen = detail::selection(c, {spec}, true);

    std::vector<BoundResult> rows;
    for (double k : ks) {
        for (const auto& [id, s] : chosen) {
            auto r = bounds::evaluate(id, s, k, mode);
            if (c.total) detail::scale_by_k(r);
            rows.push_back(std::move(r));
        }
    }

    CommandResult out;
    if (c.format == "json") {
        json jr = json::array();
        for (const auto& r : rows) jr.push_back(io::bound_json(r));
        out.text = detail::json_document(c, jr, {{"row_count", rows.size()}, {"quantity", c.total ? "sum" : "mean"}});
        return out;
    }
    out.text = io::csv_row({"k", "id", "value", "certified", "terms", "note"});
    for (const auto& r : rows) {
        out.text += io::csv_row({io::format_double(r.k), std::string(to_string(r.id)), io::format_double(r.value),
                                 r.certified ? "1" : "0", io::terms_cell(r), r.note});
    }
    return out;
}

inline CommandResult cmd_verify(const RunConfig& c)
{
    detail::require_operator(c);
    spectral_bounds::detail::require(!c.l || *c.l <= 2, ErrorKind::not_applicable,
                                     "no desk-scale oracle for l >= 3");
    const auto domain = detail::domain_of(c);
    spectral_bounds::detail::require(domain.has_value(), ErrorKind::invalid_argument, "verify needs --domain");
    const auto* box = domain->as_box();

    const auto ks = parse_k_range(c.k);
    std::size_t count = 0;
    for (double k : ks) {
        spectral_bounds::detail::require(k == std::floor(k), ErrorKind::invalid_argument,
                                         "verify needs integer k values");
        count = std::max(count, static_cast<std::size_t>(k));
    }

    spectra::EigenOptions eig;
    eig.seed = c.seed;
    const bool analytic = c.l && *c.l == 1;
    std::optional<spectra::SpectrumTable> table;
    if (analytic) {
        spectral_bounds::detail::require(box != nullptr, ErrorKind::not_applicable,
                                         "no desk-scale oracle: the l = 1 oracle covers boxes only");
        table = spectra::box_laplacian(*domain, count);
    } else {
        spectral_bounds::detail::require(box != nullptr && box->sides.size() == 2, ErrorKind::not_applicable,
                                         "no desk-scale oracle: finite differences cover 2-D boxes only");
        const auto op = c.l ? spectra::OperatorKind::bilaplacian() : spectra::OperatorKind::quadratic(*c.a);
        table = c.grids.size() == 1 ? spectra::fd_spectrum(*domain, op, c.grids[0], count, eig)
                                    : spectra::extrapolated_spectrum(*domain, op, c.grids, count, eig);
    }

    // the clamped plate is both l = 2 and a = 0, so both bound families apply
    std::vector<ProblemSpec> specs{detail::problem_of(c)};
    if (c.l && *c.l == 2) specs.push_back(ProblemSpec::quadratic(*domain, 0.0));
    if (c.a && *c.a == 0.0) specs.push_back(ProblemSpec::poly(*domain, 2));
    const auto mode = parse_epsilon(c.epsilon);
    const auto chosen = detail::selection(c, specs, false);

    std::vector<BoundResult> results;
    for (double k : ks) {
        for (const auto& [id, s] : chosen) results.push_back(bounds::evaluate(id, s, k, mode));
    }
    const double slack = c.slack.value_or(analytic ? 0.0 : 0.01);
    const auto report = spectra::verify(*table, results, slack);

    CommandResult out;
    out.exit_code = report.passed() ? exit_ok : exit_internal;
    std::ostringstream msg;
    msg << report.rows.size() << " checks, " << report.violations.size() << " violations, slack " << slack;
    if (!table->provenance().flagged.empty()) {
        msg << "; " << table->provenance().flagged.size() << " eigenvalues flagged for irregular convergence";
    }
    out.message = msg.str();

    if (c.format == "json") {
        json rows = json::array();
        for (const auto& r : report.rows) {
            rows.push_back({{"k", r.k}, {"id", std::string(to_string(r.id))}, {"mean", r.mean}, {"bound", r.bound},
                            {"margin", r.margin}, {"passed", r.passed}});
        }
        json tightest = json::array();
        for (const auto& t : report.tightest) tightest.push_back(t ? json(std::string(to_string(*t))) : json(nullptr));
        out.text = detail::json_document(c, rows,
                                         {{"slack", slack},
                                          {"checks", report.rows.size()},
                                          {"violations", report.violations.size()},
                                          {"skipped_uncertified", report.skipped_uncertified},
                                          {"tightest", tightest},
                                          {"spectrum", io::spectrum_json(*table)}});
        return out;
    }
    out.text = io::csv_row({"k", "id", "mean", "bound", "margin", "passed"});
    for (const auto& r : report.rows) {
        out.text += io::csv_row({std::to_string(r.k), std::string(to_string(r.id)), io::format_double(r.mean),
                                 io::format_double(r.bound), io::format_double(r.margin), r.passed ? "1" : "0"});
    }
    return out;
}

inline CommandResult cmd_root(const RunConfig& c)
{
    spectral_bounds::detail::require(c.n.has_value() && *c.n >= 2, ErrorKind::invalid_argument, "root needs --n >= 2");
    spectral_bounds::detail::require(c.kstar.has_value(), ErrorKind::invalid_argument, "root needs --kstar");
    const int n = *c.n;
    const double ks = *c.kstar;

    std::vector<extremal::RootSolution> sols{extremal::solve_t(n, ks, extremal::RootMethod::numeric)};
    if (n == 3) sols.push_back(extremal::solve_t(n, ks, extremal::RootMethod::exact3));
    if (n == 4) sols.push_back(extremal::solve_t(n, ks, extremal::RootMethod::exact4));
    if (extremal::zeta_of(n, ks) >= 1.0) sols.push_back(extremal::solve_t(n, ks, extremal::RootMethod::asymptotic));

    json pairwise = json::array();
    for (std::size_t i = 0; i < sols.size(); ++i) {
        for (std::size_t j = i + 1; j < sols.size(); ++j) {
            pairwise.push_back({{"a", std::string(extremal::to_string(sols[i].method))},
                                {"b", std::string(extremal::to_string(sols[j].method))},
                                {"delta", sols[i].t - sols[j].t}});
        }
    }

    CommandResult out;
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& s : sols) {
            rows.push_back({{"method", std::string(extremal::to_string(s.method))},
                            {"t", s.t},
                            {"residual", s.residual},
                            {"eta_offset", s.eta_offset}});
        }
        out.text = detail::json_document(c, rows, {{"zeta", extremal::zeta_of(n, ks)}, {"pairwise", pairwise}});
        return out;
    }
    out.text = io::csv_row({"method", "t", "residual", "eta_offset", "delta_vs_numeric"});
    for (const auto& s : sols) {
        out.text += io::csv_row({std::string(extremal::to_string(s.method)), io::format_double(s.t),
                                 io::format_double(s.residual), io::format_double(s.eta_offset),
                                 io::format_double(s.t - sols.front().t)});
    }
    return out;
}

inline CommandResult cmd_compare(const RunConfig& c)
{
    const auto spec = detail::problem_of(c);
    const auto l = spec.order();
    spectral_bounds::detail::require(l.has_value(), ErrorKind::not_applicable,
                                     "compare covers the poly-Laplacian problem (--l)");
    const auto ks = parse_k_range(c.k);
    const double ratio = bounds::remark1_ratio(spec.n, *l);

    struct Row {
        double k, cqw, thm1, rigorous;
    };
    std::vector<Row> rows;
    for (double k : ks) {
        rows.push_back({k, bounds::cheng_qi_wei(spec, k).value, bounds::thm1(spec, k, bounds::EpsilonMode::zero).value,
                        extremal::rigorous_sum_bound(spec, k).value});
    }
    // first index from which the rigorous bound stays above cheng_qi_wei to the end of the range
    std::optional<std::size_t> crossover;
    for (std::size_t i = rows.size(); i-- > 0;) {
        if (rows[i].rigorous > rows[i].cqw) {
            crossover = i;
        } else {
            break;
        }
    }
    const bool above_throughout = crossover && *crossover == 0;
    if (above_throughout) crossover.reset(); // no crossing observed inside the range
    const std::size_t marked = crossover.value_or(rows.size());

    CommandResult out;
    out.message = crossover ? "crossover at k = " + io::format_double(rows[*crossover].k)
                            : std::string("crossover: none in range") +
                                  (above_throughout ? " (rigorous above cheng_qi_wei throughout)" : "");
    if (c.format == "json") {
        json jr = json::array();
        for (const auto& r : rows) {
            jr.push_back({{"k", r.k}, {"cheng_qi_wei", r.cqw}, {"thm1", r.thm1}, {"rigorous", r.rigorous},
                          {"ratio", ratio}});
        }
        out.text = detail::json_document(
            c, jr, {{"crossover", crossover ? json(rows[*crossover].k) : json("none in range")},
               {"rigorous_above_throughout", above_throughout},
               {"ratio", ratio}});
        return out;
    }
    out.text = io::csv_row({"k", "cheng_qi_wei", "thm1", "rigorous", "ratio", "crossover"});
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out.text += io::csv_row({io::format_double(r.k), io::format_double(r.cqw), io::format_double(r.thm1),
                                 io::format_double(r.rigorous), io::format_double(ratio),
                                 marked == i ? "1" : "0"});
    }
    return out;
}

inline CommandResult dispatch(const RunConfig& c)
{
    spectral_bounds::detail::require(c.format == "csv" || c.format == "json", ErrorKind::invalid_argument,
                                     "format must be csv or json");
    if (c.subcommand == "bounds") return cmd_bounds(c);
    if (c.subcommand == "verify") return cmd_verify(c);
    if (c.subcommand == "root") return cmd_root(c);
    if (c.subcommand == "compare") return cmd_compare(c);
    throw Error(ErrorKind::invalid_argument, "unknown subcommand '" + c.subcommand + "'");
}

inline int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::numerical_breakdown:
    case ErrorKind::overflow: return exit_internal;
    default: return exit_invalid;
    }
}

/// Full front end: argument parsing, config file, env override, output.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lower bounds for eigenvalue sums of poly-Laplacian and Delta^2 - a Delta problems", "spectral_bounds"};
    app.require_subcommand(1);

    struct Flags {
        std::optional<std::string> config, domain, k, which, epsilon, grids, format, output;
        std::optional<int> n, l;
        std::optional<double> volume, inertia, a, kstar, slack;
        std::optional<std::uint64_t> seed;
        bool total = false;
    } f;

    const auto add_common = [&f](CLI::App* s) {
        s->add_option("--config", f.config, "JSON config file; flags override its values");
        s->add_option("--domain", f.domain, "domain as inline JSON or a path to a JSON file");
        s->add_option("--n", f.n, "dimension when no domain is given");
        s->add_option("--volume", f.volume, "domain volume when no domain is given");
        s->add_option("--inertia", f.inertia, "moment of inertia when no domain is given");
        s->add_option("--l", f.l, "poly-Laplacian order");
        s->add_option("--a", f.a, "coefficient a of Delta^2 - a Delta");
        s->add_option("--k", f.k, "k range: a..b, a..b..step or log:a..b:count");
        s->add_option("--which", f.which, "comma-separated inequality ids, or 'all'");
        s->add_option("--epsilon", f.epsilon, "zero (asymptotic display) or rigorous");
        s->add_option("--grids", f.grids, "comma-separated FD grids, e.g. 96,192");
        s->add_option("--slack", f.slack, "relative verification slack");
        s->add_option("--format", f.format, "csv or json");
        s->add_option("--output", f.output, "output path (default stdout)");
        s->add_option("--seed", f.seed, "seed for randomized parts");
        s->add_option("--kstar", f.kstar, "k_* for the root subcommand");
        s->add_flag("--total", f.total, "report k times the mean bound");
    };
    const std::pair<const char*, const char*> subcommands[] = {
        {"bounds", "lower bounds on the mean of the first k eigenvalues"},
        {"verify", "check certified bounds against an analytic or finite-difference spectrum"},
        {"root", "solve (t+1)^{n+1} - t^{n+1} = k_star by every available method"},
        {"compare", "rigorous bound against the Cheng-Qi-Wei bound, with crossover"},
    };
    for (const auto& [name, what] : subcommands) add_common(app.add_subcommand(name, what));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        RunConfig c;
        c.subcommand = app.get_subcommands().front()->get_name();
        if (f.config) apply_config_json(c, io::parse_json_text(io::read_file(*f.config), "config file"));

        if (f.domain) c.domain = f.domain;
        if (f.n) c.n = f.n;
        if (f.volume) c.volume = f.volume;
        if (f.inertia) c.inertia = f.inertia;
        if (f.l) {
            c.l = f.l;
            c.a.reset();
        }
        if (f.a) {
            c.a = f.a;
            if (!f.l) c.l.reset();
        }
        if (f.k) c.k = *f.k;
        if (f.kstar) c.kstar = f.kstar;
        if (f.which) c.which = detail::split(*f.which, ",");
        if (f.epsilon) c.epsilon = *f.epsilon;
        if (f.grids) {
            c.grids.clear();
            for (const auto& g : detail::split(*f.grids, ",")) {
                const double v = detail::parse_number(g);
                spectral_bounds::detail::require(v == std::floor(v) && v > 0, ErrorKind::invalid_argument,
                                                 "grids must be positive integers");
                c.grids.push_back(static_cast<int>(v));
            }
        }
        if (f.slack) c.slack = f.slack;
        if (f.format) c.format = *f.format;
        if (f.output) c.output = *f.output;
        if (f.seed) c.seed = *f.seed;
        if (f.total) c.total = true;
        if (const char* env = std::getenv("SPECTRAL_BOUNDS_SEED")) {
            try {
                c.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw Error(ErrorKind::invalid_argument, "SPECTRAL_BOUNDS_SEED is not an unsigned integer");
            }
        }

        const auto result = dispatch(c);
        if (c.output.empty()) {
            out << result.text;
        } else {
            std::ofstream file(c.output, std::ios::binary);
            spectral_bounds::detail::require(static_cast<bool>(file), ErrorKind::invalid_argument,
                                             "cannot write '" + c.output + "'");
            file << result.text;
        }
        if (!result.message.empty()) err << result.message << "\n";
        return result.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

} // namespace spectral_bounds::cli
