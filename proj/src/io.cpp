#include "uqcpac/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace uqcpac {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json complex_to_json(const cx& z) { return json::array({z.real(), z.imag()}); }

cx json_to_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error(field + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

int get_index(const json& g, const char* key, int n, std::size_t pos) {
    const std::string where = "gates[" + std::to_string(pos) + "]." + key;
    if (!g.contains(key) || !g[key].is_number_integer())
        throw parse_error(where + ": missing or non-integer");
    const int q = g[key].get<int>();
    if (q < 0 || q >= n) throw parse_error(where + ": index out of range for n");
    return q;
}

}  // namespace

Circuit parse_circuit(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("circuit JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw parse_error("circuit JSON: missing integer field 'n'");
    Circuit c;
    c.n = doc["n"].get<int>();
    if (c.n < 1) throw parse_error("circuit JSON: n must be >= 1");
    if (!doc.contains("gates") || !doc["gates"].is_array())
        throw parse_error("circuit JSON: missing array field 'gates'");

    std::size_t pos = 0;
    for (const auto& g : doc["gates"]) {
        const std::string where = "gates[" + std::to_string(pos) + "]";
        if (!g.is_object() || !g.contains("type") || !g["type"].is_string())
            throw parse_error(where + ": missing string field 'type'");
        const std::string type = g["type"].get<std::string>();
        if (type == "H") {
            c.gates.push_back(Gate::h(get_index(g, "q", c.n, pos)));
        } else if (type == "RX" || type == "RY" || type == "RZ") {
            if (!g.contains("theta") || !g["theta"].is_number())
                throw parse_error(where + ".theta: missing or non-numeric");
            const int q = get_index(g, "q", c.n, pos);
            const double theta = g["theta"].get<double>();
            if (type == "RX") c.gates.push_back(Gate::rx(q, theta));
            else if (type == "RY") c.gates.push_back(Gate::ry(q, theta));
            else c.gates.push_back(Gate::rz(q, theta));
        } else if (type == "CNOT") {
            const int control = get_index(g, "control", c.n, pos);
            const int target = get_index(g, "target", c.n, pos);
            if (control == target)
                throw parse_error(where + ": CNOT control equals target");
            c.gates.push_back(Gate::cnot(control, target));
        } else if (type == "U1") {
            const int q = get_index(g, "q", c.n, pos);
            if (!g.contains("matrix") || !g["matrix"].is_array() || g["matrix"].size() != 2)
                throw parse_error(where + ".matrix: expected 2 rows");
            Matrix2 m;
            for (int r = 0; r < 2; ++r) {
                const auto& row = g["matrix"][r];
                if (!row.is_array() || row.size() != 2)
                    throw parse_error(where + ".matrix: expected 2 columns per row");
                for (int col = 0; col < 2; ++col)
                    m(r, col) = json_to_complex(row[col], where + ".matrix");
            }
            if (!is_unitary(m))
                throw parse_error(where + ".matrix: not unitary");
            c.gates.push_back(Gate::u1(q, m));
        } else {
            throw parse_error(where + ": unknown gate type '" + type + "'");
        }
        ++pos;
    }
    return c;
}

std::string serialize_circuit(const Circuit& circuit) {
    json gates = json::array();
    for (const Gate& g : circuit.gates) {
        json jg;
        switch (g.kind) {
            case GateKind::H:
                jg = {{"type", "H"}, {"q", g.q}};
                break;
            case GateKind::RX:
                jg = {{"type", "RX"}, {"q", g.q}, {"theta", g.theta}};
                break;
            case GateKind::RY:
                jg = {{"type", "RY"}, {"q", g.q}, {"theta", g.theta}};
                break;
            case GateKind::RZ:
                jg = {{"type", "RZ"}, {"q", g.q}, {"theta", g.theta}};
                break;
            case GateKind::CNOT:
                jg = {{"type", "CNOT"}, {"control", g.control}, {"target", g.target}};
                break;
            case GateKind::U1:
                jg = {{"type", "U1"},
                      {"q", g.q},
                      {"matrix",
                       json::array({json::array({complex_to_json(g.matrix(0, 0)),
                                                 complex_to_json(g.matrix(0, 1))}),
                                    json::array({complex_to_json(g.matrix(1, 0)),
                                                 complex_to_json(g.matrix(1, 1))})})}};
                break;
        }
        gates.push_back(std::move(jg));
    }
    return json{{"n", circuit.n}, {"gates", gates}}.dump(2);
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write file: " + path);
    out << text;
}

}  // namespace

Circuit load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }
void save_circuit(const Circuit& circuit, const std::string& path) {
    write_file(path, serialize_circuit(circuit) + "\n");
}

CompiledAnsatz parse_params(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("params JSON: ") + e.what());
    }
    for (const char* key : {"n", "depth", "layers_used", "global_phase", "theta"})
        if (!doc.contains(key))
            throw parse_error(std::string("params JSON: missing field '") + key + "'");
    CompiledAnsatz out;
    out.shape.n = doc["n"].get<int>();
    out.shape.depth = doc["depth"].get<int>();
    out.layers_used = doc["layers_used"].get<int>();
    out.global_phase = doc["global_phase"].get<double>();
    if (!doc["theta"].is_array())
        throw parse_error("params JSON: 'theta' must be an array");
    out.theta = doc["theta"].get<std::vector<double>>();
    if (out.theta.size() != param_count(out.shape))
        throw parse_error("params JSON: theta length does not match shape");
    return out;
}

std::string serialize_params(const CompiledAnsatz& compiled) {
    return json{{"n", compiled.shape.n},
                {"depth", compiled.shape.depth},
                {"layers_used", compiled.layers_used},
                {"global_phase", compiled.global_phase},
                {"theta", compiled.theta}}
        .dump(2);
}

CompiledAnsatz load_params(const std::string& path) { return parse_params(read_file(path)); }
void save_params(const CompiledAnsatz& compiled, const std::string& path) {
    write_file(path, serialize_params(compiled) + "\n");
}

void save_dataset(const Dataset& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write file: " + path);
    out << s.n << "," << s.pairs.size() << "\n";
    for (const auto& [x, y] : s.pairs) {
        bool first = true;
        auto dump_state = [&](const StateVector& v) {
            for (Eigen::Index i = 0; i < v.amps.size(); ++i) {
                if (!first) out << " ";
                first = false;
                out << format_double(v.amps[i].real()) << " "
                    << format_double(v.amps[i].imag());
            }
        };
        dump_state(x);
        dump_state(y);
        out << "\n";
    }
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw parse_error("dataset: missing header");
    int n = 0;
    std::size_t m = 0;
    if (std::sscanf(header.c_str(), "%d,%zu", &n, &m) != 2 || n < 1)
        throw parse_error("dataset: malformed header, expected 'n,m'");
    Dataset s;
    s.n = n;
    const Eigen::Index dim = Eigen::Index{1} << n;
    for (std::size_t i = 0; i < m; ++i) {
        std::string line;
        if (!std::getline(in, line))
            throw parse_error("dataset: expected " + std::to_string(m) + " pair lines");
        std::istringstream ls(line);
        auto read_state = [&]() {
            StateVector v;
            v.n = n;
            v.amps.resize(dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                double re, im;
                if (!(ls >> re >> im))
                    throw parse_error("dataset: short line " + std::to_string(i));
                v.amps[k] = cx(re, im);
            }
            return v;
        };
        StateVector x = read_state();
        StateVector y = read_state();
        s.pairs.emplace_back(std::move(x), std::move(y));
    }
    return s;
}

}  // namespace uqcpac
