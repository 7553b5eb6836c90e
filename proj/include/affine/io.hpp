#pragma once

// JSON files for grid functions, sphere measures, polytopes, analytic specs,
// corpora and reports. Output is written by a small dumper that keeps key
// order and prints every float with 17 significant digits, so identical runs
// give identical bytes.

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexgeom.hpp"
#include "grid.hpp"
#include "minkowski.hpp"
#include "report.hpp"
#include "sampling.hpp"
#include "sphere.hpp"
#include "verify.hpp"

namespace affine {

/// File could not be read or written (as opposed to malformed content).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    // Keep floats recognisable as floats.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

inline void dump_into(const Json& j, int indent, int depth, std::string& out) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += flat && indent >= 0 ? ", " : ",";
                first = false;
                if (!flat) newline(depth + 1);
                dump_into(v, indent, depth + 1, out);
            }
            if (!flat) newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace detail

/// Serialises with fixed key order and %.17g floats; indent < 0 gives one line.
inline std::string dump_json(const Json& j, int indent = 2) {
    std::string out;
    detail::dump_into(j, indent, 0, out);
    return out;
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string(what) + ": missing field '" + key + "'");
    return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key, const char* what) {
    try {
        return field(j, key, what).get<T>();
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string(what) + ": bad field '" + key + "': " + e.what());
    }
}

/// Rows of equal length, flattened row-major.
inline std::vector<double> flatten_rows(const Json& rows, int& dim, const char* what) {
    if (!rows.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array of vectors");
    std::vector<double> flat;
    for (const auto& r : rows) {
        const auto v = r.get<std::vector<double>>();
        if (dim == 0) dim = static_cast<int>(v.size());
        if (static_cast<int>(v.size()) != dim) throw std::invalid_argument(std::string(what) + ": vectors of unequal length");
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return flat;
}

/// Hand-written files carry rounded unit vectors; normalise them.
inline std::vector<double> normalize_rows(std::vector<double> flat, int dim, const char* what) {
    for (std::size_t i = 0; i < flat.size(); i += static_cast<std::size_t>(dim)) {
        const double len = norm(std::span<const double>(flat.data() + i, static_cast<std::size_t>(dim)));
        if (!(len > 0.0)) throw std::invalid_argument(std::string(what) + ": zero direction");
        for (int k = 0; k < dim; ++k) flat[i + k] /= len;
    }
    return flat;
}

inline Json rows_json(const SpherePoints& pts) {
    Json a = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto v = pts[i];
        a.push_back(std::vector<double>(v.begin(), v.end()));
    }
    return a;
}

inline Json matrix_json(const std::vector<double>& m) {
    const int n = m.size() == 9 ? 3 : 2;
    Json a = Json::array();
    for (int i = 0; i < n; ++i) a.push_back(std::vector<double>(m.begin() + i * n, m.begin() + (i + 1) * n));
    return a;
}

}  // namespace detail

// Grid parameters and grid functions.

inline Json to_json(const GridParams& g) {
    Json j = Json::object();
    j["dim"] = g.dim;
    j["shape"] = g.shape;
    j["origin"] = g.origin;
    j["spacing"] = g.spacing;
    return j;
}

inline GridParams grid_from_json(const Json& j) {
    GridParams g;
    g.dim = detail::get_as<int>(j, "dim", "grid");
    g.shape = detail::get_as<std::vector<int>>(j, "shape", "grid");
    g.origin = detail::get_as<std::vector<double>>(j, "origin", "grid");
    g.spacing = detail::get_as<double>(j, "spacing", "grid");
    g.validate();
    return g;
}

/// Writes the header JSON and a raw little-endian float64 data file. The
/// header stores the data path relative to the header's directory.
inline void save_grid_function(const GridFunction& f, const std::filesystem::path& header, const std::filesystem::path& data) {
    std::ofstream out(data, std::ios::binary);
    if (!out) throw IoError("cannot write " + data.string());
    for (double v : f.values()) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        unsigned char b[8];
        for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
        out.write(reinterpret_cast<const char*>(b), 8);
    }
    if (!out) throw IoError("write failed: " + data.string());
    Json j = to_json(f.grid());
    const auto base = header.has_parent_path() ? header.parent_path() : std::filesystem::path(".");
    j["data"] = std::filesystem::relative(std::filesystem::absolute(data), std::filesystem::absolute(base)).generic_string();
    write_text_file(header, dump_json(j) + "\n");
}

inline GridFunction load_grid_function(const std::filesystem::path& header) {
    const Json j = read_json_file(header);
    const auto grid = grid_from_json(j);
    std::filesystem::path data = detail::get_as<std::string>(j, "data", "grid function");
    if (data.is_relative() && header.has_parent_path()) data = header.parent_path() / data;
    std::ifstream in(data, std::ios::binary);
    if (!in) throw IoError("cannot open " + data.string());
    std::vector<double> vals(grid.cell_count());
    for (double& v : vals) {
        unsigned char b[8];
        if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::invalid_argument(data.string() + ": data file too short");
        std::uint64_t bits = 0;
        for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
        v = std::bit_cast<double>(bits);
    }
    if (in.peek() != std::char_traits<char>::eof()) throw std::invalid_argument(data.string() + ": data file too long");
    return GridFunction(grid, std::move(vals));
}

// Sphere measures and polytopes.

inline Json to_json(const DiscreteSphereMeasure& mu) {
    Json j = Json::object();
    j["dim"] = mu.dim();
    j["directions"] = detail::rows_json(mu.directions);
    j["weights"] = mu.weights;
    return j;
}

inline DiscreteSphereMeasure measure_from_json(const Json& j) {
    int dim = detail::get_as<int>(j, "dim", "measure");
    const int declared = dim;
    auto flat = detail::flatten_rows(detail::field(j, "directions", "measure"), dim, "measure");
    if (dim != declared) throw std::invalid_argument("measure: direction length does not match dim");
    return DiscreteSphereMeasure(dim, detail::normalize_rows(std::move(flat), dim, "measure"),
                                 detail::get_as<std::vector<double>>(j, "weights", "measure"));
}

inline Json to_json(const Polytope& P) {
    Json j = Json::object();
    j["dim"] = P.dim();
    j["normals"] = detail::rows_json(P.normals());
    j["support"] = P.support();
    return j;
}

inline Polytope polytope_from_json(const Json& j) {
    int dim = detail::get_as<int>(j, "dim", "polytope");
    const int declared = dim;
    auto flat = detail::flatten_rows(detail::field(j, "normals", "polytope"), dim, "polytope");
    if (dim != declared) throw std::invalid_argument("polytope: normal length does not match dim");
    return polytope_from_support(dim, detail::normalize_rows(std::move(flat), dim, "polytope"),
                                 detail::get_as<std::vector<double>>(j, "support", "polytope"));
}

inline Json to_json(const SolverResult& r) {
    Json j = Json::object();
    j["support"] = r.polytope.support();
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["volume"] = r.polytope.volume();
    j["normalization_check"] = r.normalization_check;
    j["converged"] = r.converged;
    j["message"] = r.message;
    return j;
}

// Analytic specs and corpora.

inline Json to_json(const AnalyticSpec& s) {
    Json j = Json::object();
    j["family"] = s.family;
    if (s.family == "sheared") {
        if (!s.inner) throw std::invalid_argument("analytic spec: sheared spec without inner spec");
        Json sh = Json::object();
        sh["inner"] = to_json(*s.inner);
        sh["matrix"] = detail::matrix_json(s.matrix);
        j["sheared"] = std::move(sh);
        return j;
    }
    Json params = Json::object();
    for (const auto& [k, v] : s.params) params[k] = v;
    j["params"] = std::move(params);
    if (!s.center.empty()) j["center"] = s.center;
    if (s.family == "bump_sum") {
        Json bumps = Json::array();
        for (const auto& b : s.bumps) {
            Json bj = Json::object();
            bj["center"] = b.center;
            bj["amplitude"] = b.amplitude;
            bj["width"] = b.width;
            bj["profile"] = b.profile;
            bumps.push_back(std::move(bj));
        }
        j["bumps"] = std::move(bumps);
    }
    return j;
}

inline AnalyticSpec spec_from_json(const Json& j) {
    AnalyticSpec s;
    s.family = detail::get_as<std::string>(j, "family", "analytic spec");
    const auto& fams = analytic_families();
    if (std::find(fams.begin(), fams.end(), s.family) == fams.end())
        throw std::invalid_argument("analytic spec: unknown family '" + s.family + "'");
    if (s.family == "sheared") {
        const auto& sh = detail::field(j, "sheared", "analytic spec");
        int cols = 0;
        s.matrix = detail::flatten_rows(detail::field(sh, "matrix", "sheared spec"), cols, "sheared spec");
        if (s.matrix.size() != static_cast<std::size_t>(cols * cols)) throw std::invalid_argument("sheared spec: matrix must be square");
        s.inner = std::make_shared<const AnalyticSpec>(spec_from_json(detail::field(sh, "inner", "sheared spec")));
        return s;
    }
    if (j.contains("params")) s.params = detail::get_as<std::map<std::string, double>>(j, "params", "analytic spec");
    if (j.contains("center")) s.center = detail::get_as<std::vector<double>>(j, "center", "analytic spec");
    if (j.contains("bumps")) {
        for (const auto& bj : detail::field(j, "bumps", "analytic spec")) {
            Bump b;
            b.center = detail::get_as<std::vector<double>>(bj, "center", "bump");
            b.amplitude = detail::get_as<double>(bj, "amplitude", "bump");
            b.width = detail::get_as<double>(bj, "width", "bump");
            if (bj.contains("profile")) b.profile = detail::get_as<std::string>(bj, "profile", "bump");
            s.bumps.push_back(std::move(b));
        }
    }
    return s;
}

inline Json to_json(const CorpusEntry& e) {
    Json j = Json::object();
    j["id"] = e.id;
    j["spec"] = to_json(e.spec);
    j["grid"] = to_json(e.grid);
    return j;
}

inline std::vector<CorpusEntry> corpus_from_json(const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("corpus: expected a JSON array");
    std::vector<CorpusEntry> out;
    for (const auto& e : j) {
        CorpusEntry c{detail::get_as<std::string>(e, "id", "corpus entry"), spec_from_json(detail::field(e, "spec", "corpus entry")),
                      grid_from_json(detail::field(e, "grid", "corpus entry"))};
        detail::Evaluator check(c.spec, c.grid.dim);
        out.push_back(std::move(c));
    }
    return out;
}

// Reports.

inline Json to_json(const InequalityReport& r) {
    Json j = Json::object();
    j["kind"] = r.kind;
    j["n"] = r.n;
    j["p"] = r.p ? Json(*r.p) : Json(nullptr);
    j["q"] = r.q ? Json(*r.q) : Json(nullptr);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["ratio"] = r.ratio;
    j["slack"] = r.slack;
    j["pass"] = r.pass ? Json(*r.pass) : Json(nullptr);
    j["tolerance"] = r.tolerance;
    j["metadata"] = r.metadata;
    return j;
}

inline Json to_json(const std::vector<InequalityReport>& rs) {
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(to_json(r));
    return a;
}

}  // namespace affine
