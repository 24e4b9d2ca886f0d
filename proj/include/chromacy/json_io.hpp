#pragma once

// Serialization of the on-disk formats:
//   chromacy-array/1    restriction arrays
//   chromacy-cert/1     certificates
//   chromacy-points/1   exact point sets
//   chromacy-vectors/1  vector restriction arrays
//
// Formats are versioned through their "format" tag; a mismatched tag is
// rejected outright, never misread. One file holds one object.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chromacy/core.hpp"
#include "chromacy/errors.hpp"
#include "chromacy/exact.hpp"
#include "chromacy/solver.hpp"
#include "chromacy/version.hpp"
#include "chromacy/witnesses.hpp"

namespace chromacy {

using Json = nlohmann::json;

namespace detail {

inline void require_format(const Json& j, const char* tag) {
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string())
        throw ParseError("malformed document: missing format tag");
    if (j["format"].get<std::string>() != tag)
        throw ParseError("unsupported format: expected " + std::string(tag) + ", got " +
                         j["format"].get<std::string>());
}

inline long long integral_number(const Json& j, const char* what) {
    if (j.is_number_integer()) return j.get<long long>();
    throw ParseError(std::string("malformed document: ") + what + " must be an integer");
}

// Entries and coordinates admit exact rationals as "p/q" strings; plain
// integers may be JSON numbers. Floats are rejected, exactness is the point.
inline Rat rat_from_json(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        try {
            const auto slash = s.find('/');
            if (slash == std::string::npos) return Rat(std::stoll(s));
            return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const ArithmeticError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError(std::string("malformed document: bad rational in ") + what);
        }
    }
    throw ParseError(std::string("malformed document: ") + what +
                     " must be an integer or a \"p/q\" string");
}

inline Json rat_to_json(const Rat& r) {
    if (r.den == 1) return Json(r.num);
    return Json(r.str());
}

} // namespace detail

// ---- space ----

inline Json space_to_json(const Space& s) {
    return Json{{"dim", s.dim}, {"metric", metric_name(s.metric)}};
}

inline Space space_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim")) throw ParseError("malformed document: bad space");
    Space s;
    s.dim = static_cast<int>(detail::integral_number(j["dim"], "space dim"));
    if (s.dim < 1) throw ParseError("malformed document: space dim must be >= 1");
    std::string metric = j.value("metric", std::string("l1"));
    if (metric == "euclidean") s.metric = Metric::euclidean;
    else if (metric == "l1") s.metric = Metric::l1;
    else if (metric == "linf") s.metric = Metric::linf;
    else throw ParseError("malformed document: unknown metric " + metric);
    return s;
}

// ---- restriction arrays ----

inline Json array_to_json(const RestrictionArray& a) {
    const bool squared = a.space.dim >= 2 && a.space.metric == Metric::euclidean;
    Json columns = Json::array();
    for (const auto& col : a.columns) {
        Json jc = Json::array();
        for (const auto& t : col) {
            if (t.den == 1) jc.push_back(t.num);
            else jc.push_back(std::to_string(t.num) + "/" + std::to_string(t.den));
        }
        columns.push_back(std::move(jc));
    }
    return Json{{"format", kArrayFormat},
                {"space", space_to_json(a.space)},
                {"squared", squared},
                {"columns", std::move(columns)}};
}

inline RestrictionArray array_from_json(const Json& j) {
    detail::require_format(j, kArrayFormat);
    if (!j.contains("space") || !j.contains("columns") || !j["columns"].is_array())
        throw ParseError("malformed array document");
    const Space space = space_from_json(j["space"]);
    const bool euclidean_grid = space.dim >= 2 && space.metric == Metric::euclidean;
    const bool squared = j.value("squared", false);
    if (euclidean_grid && !squared)
        throw ParseError("Euclidean arrays on Z^n require \"squared\": true");
    if (!euclidean_grid && squared)
        throw ParseError("token kind incompatible with metric: squared entries need Euclidean Z^n");

    std::vector<std::vector<DistanceToken>> columns;
    for (const auto& jc : j["columns"]) {
        if (!jc.is_array() || jc.empty()) throw ParseError("malformed array document: bad column");
        std::vector<DistanceToken> col;
        for (const auto& je : jc) {
            const Rat r = detail::rat_from_json(je, "array entry");
            if (r.num <= 0) throw ParseError("nonpositive distance");
            if (squared) {
                if (r.den != 1)
                    throw ParseError("malformed array document: squared entries must be integers");
                col.push_back(squared_token(r.num));
            } else if (r.den == 1 || space.dim == 1) {
                col.push_back(rational_token(r.num, r.den));
            } else {
                throw ParseError("token kind incompatible with metric: rational entries need Z");
            }
        }
        columns.push_back(std::move(col));
    }
    try {
        return make_array(space, std::move(columns));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

inline RestrictionArray parse_array(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed array document: ") + e.what());
    }
    return array_from_json(j);
}

// ---- certificates ----

inline Json certificate_to_json(const Certificate& cert) {
    Json j;
    j["format"] = kCertFormat;
    j["verdict"] = verdict_name(cert.verdict);
    j["array"] = array_to_json(cert.array);
    if (cert.window) {
        j["window"] = Json{{"lo", cert.window->lo}, {"hi", cert.window->hi}};
    } else {
        j["window"] = nullptr;
    }
    switch (cert.verdict) {
        case Verdict::sat:
            j["payload"] = Json{{"colors", cert.coloring->colors}};
            break;
        case Verdict::periodic:
            j["payload"] =
                Json{{"period", cert.periodic->period}, {"residues", cert.periodic->residues}};
            break;
        case Verdict::unsat:
            j["payload"] = nullptr;
            break;
        case Verdict::unknown:
            j["payload"] = Json{{"reason", cert.unknown_reason},
                                {"nodes", cert.search.nodes},
                                {"node_budget", cert.search.node_budget}};
            break;
    }
    j["search"] = Json{{"nodes", cert.search.nodes},
                       {"exhausted", cert.search.exhausted},
                       {"node_budget", cert.search.node_budget},
                       {"time_budget_s", cert.search.time_budget_s},
                       {"symmetry_breaking", cert.search.symmetry_breaking}};
    if (cert.mt) {
        j["seed"] = cert.mt->seed;
        j["mt"] = Json{{"seed", cert.mt->seed},
                       {"resamples", cert.mt->resamples},
                       {"cap", cert.mt->cap},
                       {"succeeded", cert.mt->succeeded}};
    } else {
        j["seed"] = nullptr;
    }
    j["version"] = cert.version;
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    detail::require_format(j, kCertFormat);
    for (const char* key : {"verdict", "array", "window", "payload", "search", "version"})
        if (!j.contains(key)) throw ParseError("malformed certificate file");
    Certificate cert;
    const std::string v = j["verdict"].get<std::string>();
    if (v == "sat") cert.verdict = Verdict::sat;
    else if (v == "unsat") cert.verdict = Verdict::unsat;
    else if (v == "periodic") cert.verdict = Verdict::periodic;
    else if (v == "unknown") cert.verdict = Verdict::unknown;
    else throw ParseError("malformed certificate file: unknown verdict " + v);

    cert.array = array_from_json(j["array"]);
    if (!j["window"].is_null()) {
        const auto& jw = j["window"];
        if (!jw.contains("lo") || !jw.contains("hi")) throw ParseError("malformed certificate file");
        try {
            cert.window = enumerate_window(cert.array.space, jw["lo"].get<Point>(),
                                           jw["hi"].get<Point>());
        } catch (const DomainError& e) {
            throw ParseError(std::string("malformed certificate file: ") + e.what());
        }
    }

    const auto& js = j["search"];
    cert.search.nodes = js.value("nodes", std::uint64_t{0});
    cert.search.exhausted = js.value("exhausted", false);
    cert.search.node_budget = js.value("node_budget", std::uint64_t{0});
    cert.search.time_budget_s = js.value("time_budget_s", 0.0);
    cert.search.symmetry_breaking = js.value("symmetry_breaking", false);

    const auto& jp = j["payload"];
    switch (cert.verdict) {
        case Verdict::sat: {
            if (!cert.window || !jp.is_object() || !jp.contains("colors"))
                throw ParseError("malformed certificate file: sat payload");
            cert.coloring = Coloring{*cert.window, jp["colors"].get<std::vector<int>>()};
            break;
        }
        case Verdict::periodic: {
            if (!jp.is_object() || !jp.contains("period") || !jp.contains("residues"))
                throw ParseError("malformed certificate file: periodic payload");
            cert.periodic = PeriodicColoring{jp["period"].get<long long>(),
                                             jp["residues"].get<std::vector<int>>()};
            break;
        }
        case Verdict::unsat:
            if (!cert.window) throw ParseError("malformed certificate file: unsat needs a window");
            break;
        case Verdict::unknown:
            if (!jp.is_object() || !jp.contains("reason"))
                throw ParseError("malformed certificate file: unknown payload");
            cert.unknown_reason = jp["reason"].get<std::string>();
            break;
    }

    if (j.contains("mt") && !j["mt"].is_null()) {
        const auto& jm = j["mt"];
        cert.mt = ResampleStats{jm.value("seed", std::uint64_t{0}),
                                jm.value("resamples", std::uint64_t{0}),
                                jm.value("cap", std::uint64_t{0}), jm.value("succeeded", false)};
    }
    cert.version = j["version"].get<std::string>();
    return cert;
}

// ---- point sets ----

inline Json q5_to_json(const Q5& v) {
    if (v.rational()) return detail::rat_to_json(v.a);
    return Json::array({detail::rat_to_json(v.a), detail::rat_to_json(v.b)});
}

inline Q5 q5_from_json(const Json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ParseError("malformed point document: bad q-sqrt5 coordinate");
        return {detail::rat_from_json(j[0], "coordinate"),
                detail::rat_from_json(j[1], "coordinate")};
    }
    return {detail::rat_from_json(j, "coordinate")};
}

inline Json pointset_to_json(const PointSet& ps) {
    Json points = Json::array();
    for (const auto& p : ps.points) {
        Json jp = Json::array();
        for (const auto& c : p) jp.push_back(q5_to_json(c));
        points.push_back(std::move(jp));
    }
    Json j{{"format", kPointsFormat}, {"field", field_name(ps.field)}, {"points", std::move(points)}};
    if (ps.cycle) j["cycle"] = *ps.cycle;
    return j;
}

inline PointSet pointset_from_json(const Json& j) {
    detail::require_format(j, kPointsFormat);
    if (!j.contains("field") || !j.contains("points") || !j["points"].is_array() ||
        j["points"].empty())
        throw ParseError("malformed point document");
    const std::string f = j["field"].get<std::string>();
    Field field;
    if (f == "int") field = Field::integers;
    else if (f == "rat") field = Field::rationals;
    else if (f == "q-sqrt5") field = Field::q_sqrt5;
    else throw ParseError("malformed point document: unknown field " + f);

    std::vector<std::vector<Q5>> points;
    for (const auto& jp : j["points"]) {
        if (!jp.is_array() || jp.empty()) throw ParseError("malformed point document: bad point");
        std::vector<Q5> p;
        for (const auto& jc : jp) p.push_back(q5_from_json(jc));
        points.push_back(std::move(p));
    }
    std::optional<long long> cycle;
    if (j.contains("cycle")) cycle = detail::integral_number(j["cycle"], "cycle");
    const int dim = static_cast<int>(points[0].size());
    try {
        return make_pointset(field, dim, std::move(points), cycle);
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

// ---- vector arrays ----

inline Json vector_array_to_json(const VectorArray& va) {
    Json columns = Json::array();
    for (const auto& col : va.columns) {
        Json jc = Json::array();
        for (const auto& v : col) jc.push_back(v);
        columns.push_back(std::move(jc));
    }
    return Json{{"format", kVectorsFormat}, {"dim", va.dim}, {"columns", std::move(columns)}};
}

inline VectorArray vector_array_from_json(const Json& j) {
    detail::require_format(j, kVectorsFormat);
    if (!j.contains("dim") || !j.contains("columns") || !j["columns"].is_array())
        throw ParseError("malformed vector document");
    const int dim = static_cast<int>(detail::integral_number(j["dim"], "dim"));
    std::vector<std::vector<Point>> columns;
    for (const auto& jc : j["columns"]) {
        if (!jc.is_array() || jc.empty()) throw ParseError("malformed vector document: bad column");
        std::vector<Point> col;
        for (const auto& jv : jc) col.push_back(jv.get<Point>());
        columns.push_back(std::move(col));
    }
    try {
        return make_vector_array(dim, std::move(columns));
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

// ---- files ----

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    try {
        Json j;
        in >> j;
        return j;
    } catch (const Json::exception& e) {
        throw ParseError("malformed document " + path + ": " + e.what());
    }
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace chromacy
