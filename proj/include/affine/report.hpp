#pragma once

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

namespace affine {

using Json = nlohmann::ordered_json;

/// One checked inequality lhs <= rhs. `pass` is empty when no verdict is
/// possible (e.g. an external constant was not supplied).
struct InequalityReport {
    std::string kind;
    int n = 2;
    std::optional<double> p;
    std::optional<double> q;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double slack = 0.0;
    std::optional<bool> pass;
    double tolerance = 0.0;
    Json metadata = Json::object();
};

/// Fills ratio, slack and pass (lhs <= rhs * (1 + tolerance)).
inline InequalityReport make_report(std::string kind, int n, std::optional<double> p, std::optional<double> q, double lhs,
                                    double rhs, double tolerance) {
    InequalityReport r;
    r.kind = std::move(kind);
    r.n = n;
    r.p = p;
    r.q = q;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = lhs / rhs;
    r.slack = rhs - lhs;
    r.tolerance = tolerance;
    r.pass = lhs <= rhs * (1.0 + tolerance);
    return r;
}

}  // namespace affine
