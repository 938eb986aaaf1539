#include "h2inv/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace h2inv {

namespace {

using nlohmann::json;

std::pair<int, int> line_column(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw spec_parse_error(path + ": " + msg, 0, 0);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(path, "unknown key '" + it.key() + "'");
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) fail(path, "missing key '" + key + "'");
    if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
    return obj[key].get<double>();
}

Complex get_complex(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object with re/im");
    check_keys(obj, path, {"re", "im"});
    return Complex(get_number(obj, path, "re"), get_number(obj, path, "im"));
}

ZeroGenerator parse_generator(const json& g, const std::string& path) {
    if (!g.is_object()) fail(path, "expected an object");
    if (!g.contains("kind") || !g["kind"].is_string()) fail(path, "missing string key 'kind'");
    const std::string kind = g["kind"].get<std::string>();
    ZeroGenerator gen;
    if (kind == "phi-orbit") {
        check_keys(g, path, {"kind", "z0", "a", "count"});
        gen.kind = ZeroGenerator::Kind::phi_orbit;
        if (!g.contains("z0")) fail(path, "missing key 'z0'");
        gen.z0 = get_complex(g["z0"], path + ".z0");
        gen.a = get_number(g, path, "a");
        if (!(gen.a > 0.0 && gen.a < 1.0)) fail(path + ".a", "a must lie in (0,1)");
        if (!g.contains("count") || !g["count"].is_number_integer())
            fail(path + ".count", "expected an integer");
        gen.count = g["count"].get<int>();
        if (gen.count < 1) fail(path + ".count", "count must be >= 1");
        if (std::abs(gen.z0) >= 1.0) fail(path + ".z0", "|z0| must be < 1");
    } else if (kind == "explicit-sequence") {
        check_keys(g, path, {"kind", "points"});
        gen.kind = ZeroGenerator::Kind::explicit_sequence;
        if (!g.contains("points") || !g["points"].is_array())
            fail(path + ".points", "expected an array");
        int i = 0;
        for (const json& p : g["points"]) {
            const std::string ppath = path + ".points[" + std::to_string(i++) + "]";
            Complex z = get_complex(p, ppath);
            if (std::abs(z) >= 1.0) fail(ppath, "|point| must be < 1");
            gen.points.push_back(z);
        }
        if (gen.points.empty()) fail(path + ".points", "needs at least one point");
    } else {
        fail(path + ".kind", "unsupported generator kind '" + kind + "'");
    }
    return gen;
}

}  // namespace

InnerFunctionSpec parse_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(json_text, e.byte > 0 ? e.byte - 1 : 0);
        throw spec_parse_error(
            "spec parse error at line " + std::to_string(line) + ", column " +
                std::to_string(col) + ": " + e.what(),
            line, col);
    }
    if (!doc.is_object()) throw spec_parse_error("spec document must be a JSON object", 1, 1);
    check_keys(doc, "$", {"unimodular", "zeros", "atoms", "zero_generator", "zero_generators"});

    Complex unimodular(1.0, 0.0);
    if (doc.contains("unimodular")) unimodular = get_complex(doc["unimodular"], "$.unimodular");
    if (std::abs(std::abs(unimodular) - 1.0) > 1e-12)
        fail("$.unimodular", "|lambda| must equal 1 within 1e-12");

    std::vector<Zero> zeros;
    if (doc.contains("zeros")) {
        if (!doc["zeros"].is_array()) fail("$.zeros", "expected an array");
        int i = 0;
        for (const json& z : doc["zeros"]) {
            const std::string path = "$.zeros[" + std::to_string(i++) + "]";
            if (!z.is_object()) fail(path, "expected an object");
            check_keys(z, path, {"re", "im", "mult"});
            Zero zero;
            zero.point = Complex(get_number(z, path, "re"), get_number(z, path, "im"));
            if (std::abs(zero.point) >= 1.0) fail(path, "|zero| must be < 1");
            if (z.contains("mult")) {
                if (!z["mult"].is_number_integer()) fail(path + ".mult", "expected an integer");
                zero.multiplicity = z["mult"].get<int>();
                if (zero.multiplicity < 1) fail(path + ".mult", "mult must be >= 1");
            }
            zeros.push_back(zero);
        }
    }

    std::vector<Atom> atoms;
    if (doc.contains("atoms")) {
        if (!doc["atoms"].is_array()) fail("$.atoms", "expected an array");
        int i = 0;
        for (const json& a : doc["atoms"]) {
            const std::string path = "$.atoms[" + std::to_string(i++) + "]";
            if (!a.is_object()) fail(path, "expected an object");
            check_keys(a, path, {"angle_radians", "mass"});
            Atom atom;
            atom.angle_radians = get_number(a, path, "angle_radians");
            atom.mass = get_number(a, path, "mass");
            if (!(atom.mass > 0.0)) fail(path + ".mass", "mass must be positive");
            atoms.push_back(atom);
        }
    }

    std::vector<ZeroGenerator> generators;
    if (doc.contains("zero_generator"))
        generators.push_back(parse_generator(doc["zero_generator"], "$.zero_generator"));
    if (doc.contains("zero_generators")) {
        if (!doc["zero_generators"].is_array()) fail("$.zero_generators", "expected an array");
        int i = 0;
        for (const json& g : doc["zero_generators"])
            generators.push_back(
                parse_generator(g, "$.zero_generators[" + std::to_string(i++) + "]"));
    }

    try {
        return InnerFunctionSpec(unimodular, std::move(zeros), std::move(atoms),
                                 std::move(generators));
    } catch (const std::invalid_argument& e) {
        throw spec_parse_error(std::string("$: ") + e.what(), 0, 0);
    }
}

InnerFunctionSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spec_parse_error("cannot open spec file: " + path, 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string spec_to_json(const InnerFunctionSpec& spec) {
    json doc;
    doc["unimodular"] = {{"re", spec.unimodular().real()}, {"im", spec.unimodular().imag()}};
    if (!spec.explicit_zeros().empty()) {
        json zs = json::array();
        for (const Zero& z : spec.explicit_zeros())
            zs.push_back({{"re", z.point.real()},
                          {"im", z.point.imag()},
                          {"mult", z.multiplicity}});
        doc["zeros"] = zs;
    }
    if (!spec.atoms().empty()) {
        json as = json::array();
        for (const Atom& a : spec.atoms())
            as.push_back({{"angle_radians", a.angle_radians}, {"mass", a.mass}});
        doc["atoms"] = as;
    }
    if (!spec.generators().empty()) {
        json gs = json::array();
        for (const ZeroGenerator& g : spec.generators()) {
            json gj;
            if (g.kind == ZeroGenerator::Kind::phi_orbit) {
                gj["kind"] = "phi-orbit";
                gj["z0"] = {{"re", g.z0.real()}, {"im", g.z0.imag()}};
                gj["a"] = g.a;
                gj["count"] = g.count;
            } else {
                gj["kind"] = "explicit-sequence";
                json pts = json::array();
                for (const Complex& p : g.points)
                    pts.push_back({{"re", p.real()}, {"im", p.imag()}});
                gj["points"] = pts;
            }
            gs.push_back(gj);
        }
        if (gs.size() == 1)
            doc["zero_generator"] = gs[0];
        else
            doc["zero_generators"] = gs;
    }
    return doc.dump(2) + "\n";
}

void save_spec(const InnerFunctionSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write spec file: " + path);
    out << spec_to_json(spec);
}

}  // namespace h2inv
