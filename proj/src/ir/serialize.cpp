#include "chromac/ir/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chromac/error.hpp"

namespace chromac::ir {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kFormat = "chromac-ir";
constexpr int kVersion = 1;

}  // namespace

std::string to_irj(const Graph& g) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  json nodes = json::array();
  for (NodeId id = 0; id < g.size(); ++id) {
    const Node& n = g.node(id);
    json j;
    j["id"] = id;
    j["op"] = op_name(n.op);
    j["operands"] = n.operands;
    j["shape"] = n.shape.vec();
    j["const"] = n.const_flag;
    j["nonneg"] = n.nonneg;
    if (n.value) j["value"] = std::vector<double>(n.value->data().begin(), n.value->data().end());
    if (n.op == Op::Input) j["name"] = n.name;
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);
  json inputs = json::array();
  for (NodeId id : g.inputs()) inputs.push_back({{"name", g.node(id).name}, {"node", id}});
  doc["inputs"] = std::move(inputs);
  json outputs = json::array();
  for (const auto& [name, id] : g.outputs()) outputs.push_back({{"name", name}, {"node", id}});
  doc["outputs"] = std::move(outputs);
  return doc.dump(1) + "\n";
}

Graph from_irj(const std::string& text) {
  Graph g;
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != kFormat) throw IoError("not a chromac IR document");
    if (doc.at("version") != kVersion) {
      throw IoError("unsupported IR version " + doc.at("version").dump());
    }
    for (const auto& j : doc.at("nodes")) {
      Node n;
      const std::string op = j.at("op");
      const auto parsed = op_from_name(op);
      if (!parsed) throw IoError("unknown op '" + op + "'");
      n.op = *parsed;
      if (j.at("id").get<std::size_t>() != g.size()) throw IoError("node ids must be dense and ordered");
      n.operands = j.at("operands").get<std::vector<NodeId>>();
      n.shape = Shape(j.at("shape").get<std::vector<std::int64_t>>());
      n.const_flag = j.at("const");
      n.nonneg = j.value("nonneg", false);
      if (j.contains("value")) n.value = Tensor(n.shape, j.at("value").get<std::vector<double>>());
      if (n.op == Op::Input) n.name = j.at("name");
      g.push_raw(std::move(n));
    }
    for (const auto& o : doc.at("outputs")) g.add_output(o.at("name"), o.at("node").get<NodeId>());
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed IR document: ") + e.what());
  } catch (const InternalError& e) {
    throw IoError(std::string("malformed IR document: ") + e.what());
  } catch (const InvalidInput& e) {
    throw IoError(std::string("malformed IR document: ") + e.what());
  }
  ir_shape_check(g);
  return g;
}

void save_irj(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_irj(g);
  if (!out) throw IoError("write failed: " + path.string());
}

Graph load_irj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_irj(ss.str());
}

}  // namespace chromac::ir
