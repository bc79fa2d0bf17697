#include "slicevol/bodyspec.hpp"

#include "slicevol/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace slicevol {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kValidationSeed = 0x51a7eb0d1e5ULL;
constexpr std::size_t kValidationProbes = 512;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError(path, message);
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

double number_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

int int_at(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

Eigen::MatrixXd matrix_at(const json& j, const char* key, int m, const std::string& path) {
    const json& v = require(j, key, path);
    const std::string here = path + "." + key;
    if (!v.is_array() || static_cast<int>(v.size()) != m)
        fail(here, "expected an array of " + std::to_string(m) + " rows");
    Eigen::MatrixXd out(m, m);
    for (int r = 0; r < m; ++r) {
        const json& row = v[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != m)
            fail(here + "[" + std::to_string(r) + "]",
                 "expected a row of " + std::to_string(m) + " numbers");
        for (int c = 0; c < m; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            if (!cell.is_number())
                fail(here + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                     "expected a number");
            out(r, c) = cell.get<double>();
        }
    }
    return out;
}

StarBody parse_node(const json& j, AlgebraKind algebra, int n, const std::string& path) {
    const json& kind_field = require(j, "kind", path);
    if (!kind_field.is_string()) fail(path + ".kind", "expected a string");
    const std::string kind = kind_field.get<std::string>();
    const int m = block_dim(algebra) * n;

    try {
        if (kind == "ball") return StarBody::ball(algebra, n, number_at(j, "r", path));
        if (kind == "ellipsoid")
            return StarBody::ellipsoid(algebra, matrix_at(j, "A", m, path));
        if (kind == "polydisc") {
            const json& radii = require(j, "radii", path);
            if (!radii.is_array() || static_cast<int>(radii.size()) != n)
                fail(path + ".radii", "expected an array of " + std::to_string(n) + " radii");
            std::vector<double> r;
            for (std::size_t i = 0; i < radii.size(); ++i) {
                if (!radii[i].is_number())
                    fail(path + ".radii[" + std::to_string(i) + "]", "expected a number");
                r.push_back(radii[i].get<double>());
            }
            return StarBody::polydisc(algebra, std::move(r));
        }
        if (kind == "lp_ball") {
            const json& p = require(j, "p", path);
            double pv = 0.0;
            if (p.is_string() && (p.get<std::string>() == "inf" || p.get<std::string>() == "infinity"))
                pv = std::numeric_limits<double>::infinity();
            else if (p.is_number())
                pv = p.get<double>();
            else
                fail(path + ".p", "expected a number or \"inf\"");
            return StarBody::lp_ball(algebra, n, pv, number_at(j, "r", path));
        }
        if (kind == "linear_image")
            return StarBody::linear_image(
                matrix_at(j, "T", m, path),
                parse_node(require(j, "inner", path), algebra, n, path + ".inner"));
        if (kind == "intersection" || kind == "union") {
            const json& of = require(j, "of", path);
            if (!of.is_array() || of.size() < 2)
                fail(path + ".of", "expected an array of at least two bodies");
            StarBody acc = parse_node(of[0], algebra, n, path + ".of[0]");
            for (std::size_t i = 1; i < of.size(); ++i) {
                StarBody next =
                    parse_node(of[i], algebra, n, path + ".of[" + std::to_string(i) + "]");
                acc = kind == "intersection"
                          ? StarBody::intersection(std::move(acc), std::move(next))
                          : StarBody::union_of(std::move(acc), std::move(next));
            }
            return acc;
        }
        if (kind == "radial_perturbation") {
            const json& f = require(j, "f", path);
            if (!f.is_string()) fail(path + ".f", "expected a perturbation name");
            return StarBody::radial_perturbation(
                parse_node(require(j, "inner", path), algebra, n, path + ".inner"),
                number_at(j, "epsilon", path), f.get<std::string>());
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(path, e.what()); // constructor rejected a parameter
    }
    fail(path + ".kind", "unknown body kind '" + kind + "'");
}

json serialize_node(const StarBody& body) {
    struct Visitor {
        const StarBody& body;
        json operator()(const BallForm& f) const { return json{{"kind", "ball"}, {"r", f.radius}}; }
        json operator()(const EllipsoidForm& f) const {
            json rows = json::array();
            for (int r = 0; r < f.a.rows(); ++r) {
                json row = json::array();
                for (int c = 0; c < f.a.cols(); ++c) row.push_back(f.a(r, c));
                rows.push_back(std::move(row));
            }
            return json{{"kind", "ellipsoid"}, {"A", std::move(rows)}};
        }
        json operator()(const PolydiscForm& f) const {
            return json{{"kind", "polydisc"}, {"radii", f.radii}};
        }
        json operator()(const LpBallForm& f) const {
            json p = std::isinf(f.p) ? json("inf") : json(f.p);
            return json{{"kind", "lp_ball"}, {"p", std::move(p)}, {"r", f.radius}};
        }
        json operator()(const LinearImageForm& f) const {
            json rows = json::array();
            for (int r = 0; r < f.t.rows(); ++r) {
                json row = json::array();
                for (int c = 0; c < f.t.cols(); ++c) row.push_back(f.t(r, c));
                rows.push_back(std::move(row));
            }
            return json{{"kind", "linear_image"}, {"T", std::move(rows)},
                        {"inner", serialize_node(*f.inner)}};
        }
        json operator()(const IntersectionForm& f) const {
            return json{{"kind", "intersection"},
                        {"of", json::array({serialize_node(*f.left), serialize_node(*f.right)})}};
        }
        json operator()(const UnionForm& f) const {
            return json{{"kind", "union"},
                        {"of", json::array({serialize_node(*f.left), serialize_node(*f.right)})}};
        }
        json operator()(const PerturbationForm& f) const {
            return json{{"kind", "radial_perturbation"}, {"inner", serialize_node(*f.inner)},
                        {"epsilon", f.amplitude}, {"f", f.f.name}};
        }
        json operator()(const CustomRadialForm&) const {
            throw std::invalid_argument("custom bodies have no file representation");
        }
        json operator()(const PhaseAverageForm&) const {
            throw std::invalid_argument("circularized bodies have no file representation");
        }
    };
    return std::visit(Visitor{body}, body.form());
}

} // namespace

StarBody parse_body_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail("", e.what());
    }

    const int d = int_at(j, "d", "");
    if (d != 2 && d != 4) fail("d", "block dimension must be 2 or 4");
    const AlgebraKind algebra = d == 2 ? AlgebraKind::Complex : AlgebraKind::Quaternion;
    const int n = int_at(j, "n", "");
    if (n < 1) fail("n", "block count must be >= 1");

    StarBody body = parse_node(require(j, "body", ""), algebra, n, "body");
    if (auto it = j.find("label"); it != j.end()) {
        if (!it->is_string()) fail("label", "expected a string");
        body = body.with_label(it->get<std::string>());
    }

    const ValidationReport report = validate_body(body, kValidationProbes, kValidationSeed);
    if (!report.ok) {
        std::ostringstream oss;
        oss << "body '" << body.label() << "': " << report.issue << " (direction";
        for (double c : report.worst_direction) oss << ' ' << c;
        oss << ")";
        throw ValidationError(oss.str());
    }
    return body;
}

StarBody parse_body_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string(), "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_body_spec(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + (e.path().empty() ? "" : ":" + e.path()), e.what());
    }
}

std::string serialize_body_spec(const StarBody& body) {
    json out;
    out["d"] = block_dim(body.algebra());
    out["n"] = body.blocks();
    out["label"] = body.label();
    out["body"] = serialize_node(body);
    return out.dump(2);
}

} // namespace slicevol
