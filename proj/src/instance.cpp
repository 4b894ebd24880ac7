#include "spni/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spni/rng.hpp"

namespace spni {

ProblemInstance generate_grid(int rows, int cols, std::uint64_t seed) {
    if (rows < 2 || cols < 2)
        throw InputError("generate_grid: rows and cols must be >= 2");

    ProblemInstance inst;
    const int grid_nodes = rows * cols;
    inst.network.node_count = grid_nodes + 2;
    inst.source = grid_nodes;
    inst.sink = grid_nodes + 1;
    inst.budget = 0;

    auto node_at = [cols](int r, int c) { return r * cols + c; };
    auto& arcs = inst.network.arcs;
    for (int r = 0; r < rows; ++r)
        arcs.push_back({inst.source, node_at(r, 0), 0, 0});
    for (int r = 0; r < rows; ++r)
        arcs.push_back({node_at(r, cols - 1), inst.sink, 0, 0});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c)
            arcs.push_back({node_at(r, c), node_at(r, c + 1), 0, 0});
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c < cols; ++c)
            arcs.push_back({node_at(r, c), node_at(r + 1, c), 0, 0});

    SplitMix64 rng(seed);
    for (Arc& a : arcs) {
        if (a.tail == inst.source || a.head == inst.sink) continue;
        a.c = 1 + static_cast<Length>(rng.next_below(10));
        a.d = 1 + static_cast<Length>(rng.next_below(10));
    }
    return inst;
}

std::vector<std::string> validate(const ProblemInstance& inst) {
    std::vector<std::string> violations;
    const int n = inst.network.node_count;
    if (n < 2) violations.push_back("node_count must be >= 2");
    for (std::size_t k = 0; k < inst.network.arcs.size(); ++k) {
        const Arc& a = inst.network.arcs[k];
        if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
            violations.push_back("arc " + std::to_string(k) + ": node id out of range");
        if (a.c < 0)
            violations.push_back("arc " + std::to_string(k) + ": negative length c");
        if (a.d < 0)
            violations.push_back("arc " + std::to_string(k) + ": negative interdiction increment d");
    }
    if (inst.source < 0 || inst.source >= n)
        violations.push_back("source id out of range");
    if (inst.sink < 0 || inst.sink >= n)
        violations.push_back("sink id out of range");
    if (inst.source == inst.sink)
        violations.push_back("source and sink must differ");
    if (inst.budget < 0)
        violations.push_back("budget must be nonnegative");
    if (inst.budget > static_cast<int>(inst.network.arcs.size()))
        violations.push_back("budget exceeds arc count");
    return violations;
}

namespace {

using json = nlohmann::ordered_json;

const json& require_field(const json& doc, const char* name) {
    if (!doc.contains(name))
        throw ParseError(std::string("instance: missing field \"") + name + "\"");
    return doc.at(name);
}

std::int64_t require_int(const json& v, const std::string& where) {
    if (!v.is_number_integer())
        throw ParseError("instance: field \"" + where + "\" must be an integer");
    return v.get<std::int64_t>();
}

} // namespace

std::string instance_to_json(const ProblemInstance& inst) {
    json doc;
    doc["node_count"] = inst.network.node_count;
    json arcs = json::array();
    for (const Arc& a : inst.network.arcs)
        arcs.push_back(json::array({a.tail, a.head, a.c, a.d}));
    doc["arcs"] = std::move(arcs);
    doc["source"] = inst.source;
    doc["sink"] = inst.sink;
    doc["budget"] = inst.budget;
    return doc.dump(2) + "\n";
}

ProblemInstance instance_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance: top level must be an object");

    ProblemInstance inst;
    inst.network.node_count = static_cast<int>(require_int(require_field(doc, "node_count"), "node_count"));
    const json& arcs = require_field(doc, "arcs");
    if (!arcs.is_array()) throw ParseError("instance: field \"arcs\" must be an array");
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const json& row = arcs[k];
        const std::string where = "arcs[" + std::to_string(k) + "]";
        if (!row.is_array() || row.size() != 4)
            throw ParseError("instance: " + where + " must be [tail, head, c, d]");
        Arc a;
        a.tail = static_cast<NodeId>(require_int(row[0], where + ".tail"));
        a.head = static_cast<NodeId>(require_int(row[1], where + ".head"));
        a.c = require_int(row[2], where + ".c");
        a.d = require_int(row[3], where + ".d");
        inst.network.arcs.push_back(a);
    }
    inst.source = static_cast<NodeId>(require_int(require_field(doc, "source"), "source"));
    inst.sink = static_cast<NodeId>(require_int(require_field(doc, "sink"), "sink"));
    inst.budget = static_cast<int>(require_int(require_field(doc, "budget"), "budget"));

    const auto violations = validate(inst);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "instance: invalid";
        for (const auto& v : violations) msg << "; " << v;
        throw InputError(msg.str());
    }
    return inst;
}

void write_instance(const ProblemInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << instance_to_json(inst);
    if (!out) throw IoError("write failed: " + path);
}

ProblemInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

} // namespace spni
