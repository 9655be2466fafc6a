#include "lfa/json_io.hpp"

#include <cmath>
#include <fstream>

#include "lfa/errors.hpp"

namespace lfa {

cplx complex_from_json(const json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw config_error("expected a number or [re, im] pair, got " + j.dump());
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

ParameterSet params_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c"))
        throw config_error("parameter JSON needs fields a, b, c");
    ParameterSet p;
    p.a = complex_from_json(j.at("a"));
    for (const auto& e : j.at("b")) p.b.push_back(complex_from_json(e));
    for (const auto& e : j.at("c")) p.c.push_back(complex_from_json(e));
    try {
        p.validate();
    } catch (const error& ex) {
        throw config_error(std::string("bad parameter JSON: ") + ex.what());
    }
    return p;
}

json params_to_json(const ParameterSet& p) {
    json j;
    j["a"] = complex_to_json(p.a);
    j["b"] = json::array();
    j["c"] = json::array();
    for (const auto& z : p.b) j["b"].push_back(complex_to_json(z));
    for (const auto& z : p.c) j["c"].push_back(complex_to_json(z));
    return j;
}

Eigen::VectorXcd point_from_json(const json& j) {
    if (j.is_number()) {
        Eigen::VectorXcd x(1);
        x(0) = cplx(j.get<double>(), 0.0);
        return x;
    }
    if (!j.is_array() || j.empty()) throw config_error("point must be a nonempty array");
    // Distinguish [re, im] (a single complex coordinate) from a list of
    // coordinates: a two-element array of bare numbers means one complex value
    // only when requested dimension is 1; to stay unambiguous, a list of
    // numbers is read coordinatewise and pairs must be written as [[re,im],...].
    Eigen::VectorXcd x(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) x(static_cast<int>(i)) = complex_from_json(j[i]);
    return x;
}

json point_to_json(const Eigen::VectorXcd& x) {
    json j = json::array();
    for (int i = 0; i < x.size(); ++i) j.push_back(complex_to_json(x(i)));
    return j;
}

json matrix_to_json(const Eigen::MatrixXcd& mat) {
    json j;
    j["rows"] = mat.rows();
    j["cols"] = mat.cols();
    json data = json::array();
    for (Eigen::Index r = 0; r < mat.rows(); ++r)
        for (Eigen::Index c = 0; c < mat.cols(); ++c) data.push_back(complex_to_json(mat(r, c)));
    j["data"] = std::move(data);
    return j;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw config_error("matrix JSON needs rows, cols, data");
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw config_error("matrix data length does not match rows*cols");
    Eigen::MatrixXcd mat(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) mat(r, c) = complex_from_json(data[idx++]);
    return mat;
}

Path path_from_json(const json& j) {
    if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array())
        throw config_error("path JSON needs a segments array");
    std::optional<Eigen::VectorXcd> current;
    if (j.contains("start")) current = point_from_json(j.at("start"));

    std::optional<PathBuilder> builder;
    if (current) builder.emplace(*current);

    for (const auto& seg : j.at("segments")) {
        if (!seg.is_object() || !seg.contains("type"))
            throw config_error("each path segment needs a type");
        const std::string type = seg.at("type").get<std::string>();
        if (type == "line") {
            if (seg.contains("from")) {
                const Eigen::VectorXcd from = point_from_json(seg.at("from"));
                if (builder && (builder->current() - from).cwiseAbs().maxCoeff() > 1e-9)
                    throw config_error("line segment 'from' does not chain to the previous end");
                if (!builder) builder.emplace(from);
            }
            if (!builder) throw config_error("first line segment needs 'from' or a path 'start'");
            if (!seg.contains("to")) throw config_error("line segment needs 'to'");
            builder->line_to(point_from_json(seg.at("to")));
        } else if (type == "arc") {
            if (!builder)
                throw config_error("an opening arc segment needs a path 'start' point");
            if (!seg.contains("center") || !seg.contains("coordinate"))
                throw config_error("arc segment needs center and coordinate");
            const int k = seg.at("coordinate").get<int>();  // 1-based on the wire
            if (k < 1 || k > builder->current().size())
                throw config_error("arc coordinate out of range");
            const cplx center = complex_from_json(seg.at("center"));
            const double turns = seg.contains("turns") ? seg.at("turns").get<double>() : 1.0;
            if (seg.contains("radius")) {
                const double declared = seg.at("radius").get<double>();
                const double actual = std::abs(builder->current()(k - 1) - center);
                if (std::abs(declared - actual) > 1e-6 * std::max(1.0, std::abs(declared)))
                    throw config_error("arc radius " + std::to_string(declared) +
                                       " does not match start point (distance " +
                                       std::to_string(actual) + ")");
            }
            builder->arc(k - 1, center, turns);
        } else {
            throw config_error("unknown segment type '" + type + "'");
        }
    }
    if (!builder) throw config_error("path has no segments");
    Path path = std::move(*builder).build();
    if (path.segments.empty()) throw config_error("path has no segments");
    if (j.contains("samples")) path.min_samples = j.at("samples").get<int>();
    if (path.min_samples < 1) throw config_error("samples must be at least 1");
    return path;
}

json path_to_json(const Path& path) {
    json j;
    j["segments"] = json::array();
    for (const auto& seg : path.segments) {
        json s;
        if (seg.kind == PathSegment::Kind::line) {
            s["type"] = "line";
            s["from"] = point_to_json(seg.from);
            s["to"] = point_to_json(seg.to);
        } else {
            s["type"] = "arc";
            s["center"] = complex_to_json(seg.center);
            s["coordinate"] = seg.coordinate + 1;
            s["radius"] = seg.radius;
            s["turns"] = seg.turns;
            s["start"] = point_to_json(seg.start());
        }
        j["segments"].push_back(std::move(s));
    }
    j["samples"] = path.min_samples;
    if (!path.segments.empty()) j["start"] = point_to_json(path.start());
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& ex) {
        throw config_error("JSON parse failure in " + path + ": " + ex.what());
    }
}

}  // namespace lfa
