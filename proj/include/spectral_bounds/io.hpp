#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectral_bounds/error.hpp"
#include "spectral_bounds/geometry.hpp"
#include "spectral_bounds/problem.hpp"
#include "spectral_bounds/spectra.hpp"

namespace spectral_bounds::io {

using json = nlohmann::json;

inline geometry::Domain parse_domain(const json& j)
{
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "box") return geometry::Domain::box(j.at("sides").get<std::vector<double>>());
        if (kind == "ball") return geometry::Domain::ball(j.at("dim").get<int>(), j.at("radius").get<double>());
        if (kind == "polygon") {
            std::vector<geometry::Point2> v;
            for (const auto& p : j.at("vertices")) {
                detail::require(p.is_array() && p.size() == 2, ErrorKind::invalid_argument,
                                "polygon vertices must be [x, y] pairs");
                v.push_back({p[0].get<double>(), p[1].get<double>()});
            }
            return geometry::Domain::polygon(std::move(v));
        }
        throw Error(ErrorKind::invalid_argument, "unknown domain kind '" + kind + "'");
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_argument, std::string("malformed domain description: ") + e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    detail::require(static_cast<bool>(in), ErrorKind::invalid_argument, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, std::string_view what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::invalid_argument, std::string(what) + " is not valid JSON: " + e.what());
    }
}

/// Inline JSON when the text starts with '{', otherwise a file path.
inline geometry::Domain parse_domain_text(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_domain(parse_json_text(text, "domain"));
    return parse_domain(parse_json_text(read_file(text), "domain file"));
}

inline json domain_json(const geometry::Domain& d)
{
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, geometry::Box>) {
                return {{"kind", "box"}, {"sides", s.sides}};
            } else if constexpr (std::is_same_v<T, geometry::Ball>) {
                return {{"kind", "ball"}, {"dim", s.dim}, {"radius", s.radius}};
            } else {
                json v = json::array();
                for (const auto& p : s.vertices) v.push_back({p[0], p[1]});
                return {{"kind", "polygon"}, {"vertices", v}};
            }
        },
        d.shape());
}

/// 17 significant digits so that values survive a text round trip.
inline std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

inline json bound_json(const BoundResult& r)
{
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back({{"name", t.name}, {"value", t.value}});
    return {{"id", std::string(to_string(r.id))}, {"k", r.k}, {"value", r.value}, {"terms", terms},
            {"note", r.note}, {"certified", r.certified}};
}

/// "name=value;name=value" with full precision, for a single CSV cell.
inline std::string terms_cell(const BoundResult& r)
{
    std::string out;
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (i) out += ';';
        out += r.terms[i].name + "=" + format_double(r.terms[i].value);
    }
    return out;
}

inline std::string spectrum_csv(const spectra::SpectrumTable& t)
{
    std::string out = csv_row({"k", "lambda_k", "cumulative_mean"});
    for (std::size_t k = 1; k <= t.count(); ++k) {
        out += csv_row({std::to_string(k), format_double(t.eigenvalues()[k - 1]), format_double(t.cumulative_mean(k))});
    }
    return out;
}

inline json provenance_json(const spectra::Provenance& p)
{
    json j = {{"source", p.source == spectra::Provenance::Source::analytic ? "analytic" : "fd"}};
    if (p.source == spectra::Provenance::Source::fd) {
        j["grids"] = p.grids;
        j["h"] = p.h;
        j["extrapolated"] = p.extrapolated;
        json orders = json::array();
        for (const auto& o : p.observed_order) orders.push_back(o ? json(*o) : json(nullptr));
        j["observed_order"] = orders;
        j["flagged"] = p.flagged;
    }
    return j;
}

inline json spectrum_json(const spectra::SpectrumTable& t)
{
    json j = {{"operator", t.op().name()},
              {"domain", domain_json(t.domain())},
              {"eigenvalues", t.eigenvalues()},
              {"cumulative_means", t.cumulative_means()},
              {"provenance", provenance_json(t.provenance())}};
    if (t.op().kind == spectra::OperatorKind::Kind::quadratic) j["a"] = t.op().a;
    return j;
}

} // namespace spectral_bounds::io
