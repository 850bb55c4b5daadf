#include "vgqa/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vgqa/errors.hpp"

namespace vgqa {

using ordered_json = nlohmann::ordered_json;

namespace {

int line_of_offset(const std::string& text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

std::string require_string(const ordered_json& j, const std::string& key,
                           const std::string& where) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw DataError(where + ": missing or non-string \"" + key + "\"");
  }
  return j[key].get<std::string>();
}

int require_int(const ordered_json& j, const std::string& key,
                const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw DataError(where + ": missing or non-integer \"" + key + "\"");
  }
  return j[key].get<int>();
}

std::optional<std::string> optional_string(const ordered_json& j,
                                           const std::string& key,
                                           const std::string& where) {
  if (!j.contains(key)) return std::nullopt;
  if (!j[key].is_string()) {
    throw DataError(where + ": non-string \"" + key + "\"");
  }
  return j[key].get<std::string>();
}

StationAttributes parse_attributes(const ordered_json& j,
                                   const std::string& where) {
  StationAttributes a;
  a.size = optional_string(j, "size", where);
  a.architecture = optional_string(j, "architecture", where);
  a.cleanliness = optional_string(j, "cleanliness", where);
  a.disabled_access = optional_string(j, "disabled_access", where);
  a.rail_access = optional_string(j, "rail_access", where);
  a.music = optional_string(j, "music", where);
  return a;
}

ordered_json attributes_to_json(const StationAttributes& a) {
  ordered_json j = ordered_json::object();
  if (a.size) j["size"] = *a.size;
  if (a.architecture) j["architecture"] = *a.architecture;
  if (a.cleanliness) j["cleanliness"] = *a.cleanliness;
  if (a.disabled_access) j["disabled_access"] = *a.disabled_access;
  if (a.rail_access) j["rail_access"] = *a.rail_access;
  if (a.music) j["music"] = *a.music;
  return j;
}

}  // namespace

TransitGraph load_graph(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("graph parse error at line " +
                    std::to_string(line_of_offset(text, e.byte)) + ": " +
                    e.what());
  }
  if (!doc.is_object()) throw DataError("graph document is not an object");
  for (const auto& key : {"stations", "lines", "edges"}) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw DataError(std::string("graph document: missing array \"") + key +
                      "\"");
    }
  }

  TransitGraph g;
  int i = 0;
  for (const auto& js : doc["stations"]) {
    std::string where = "stations[" + std::to_string(i++) + "]";
    Station s;
    s.name = require_string(js, "name", where);
    s.display_name = js.contains("display_name")
                         ? require_string(js, "display_name", where)
                         : s.name;
    if (js.contains("attributes")) {
      if (!js["attributes"].is_object()) {
        throw DataError(where + ": \"attributes\" is not an object");
      }
      s.attributes = parse_attributes(js["attributes"], where);
    }
    g.stations.push_back(std::move(s));
  }
  i = 0;
  for (const auto& jl : doc["lines"]) {
    std::string where = "lines[" + std::to_string(i++) + "]";
    Line l;
    l.id = require_int(jl, "id", where);
    l.name = require_string(jl, "name", where);
    if (!jl.contains("color") || !jl["color"].is_array() ||
        jl["color"].size() != 3) {
      throw DataError(where + ": \"color\" must be [r,g,b]");
    }
    for (int c = 0; c < 3; ++c) {
      const auto& ch = jl["color"][size_t(c)];
      if (!ch.is_number_integer() || ch.get<int>() < 0 || ch.get<int>() > 255) {
        throw DataError(where + ": color channel out of range");
      }
    }
    l.color = Rgb{std::uint8_t(jl["color"][0].get<int>()),
                  std::uint8_t(jl["color"][1].get<int>()),
                  std::uint8_t(jl["color"][2].get<int>())};
    l.built = optional_string(jl, "built", where);
    if (jl.contains("aircon")) {
      if (!jl["aircon"].is_boolean()) {
        throw DataError(where + ": non-boolean \"aircon\"");
      }
      l.aircon = jl["aircon"].get<bool>();
    }
    g.lines.push_back(std::move(l));
  }
  i = 0;
  for (const auto& je : doc["edges"]) {
    std::string where = "edges[" + std::to_string(i++) + "]";
    Edge e;
    e.s1 = require_string(je, "s1", where);
    e.s2 = require_string(je, "s2", where);
    e.line_id = require_int(je, "line_id", where);
    g.edges.push_back(std::move(e));
  }

  ValidationResult v = validate_graph(g);
  if (!v.ok()) {
    std::ostringstream msg;
    msg << "graph validation failed:";
    for (const auto& violation : v.violations) msg << "\n  " << violation;
    throw DataError(msg.str());
  }
  return g;
}

std::string save_graph(const TransitGraph& g) {
  TransitGraph c = g;
  canonicalize(c);

  ordered_json doc;
  doc["stations"] = ordered_json::array();
  for (const auto& s : c.stations) {
    ordered_json js;
    js["name"] = s.name;
    if (s.display_name != s.name) js["display_name"] = s.display_name;
    if (!s.attributes.empty()) js["attributes"] = attributes_to_json(s.attributes);
    doc["stations"].push_back(std::move(js));
  }
  doc["lines"] = ordered_json::array();
  for (const auto& l : c.lines) {
    ordered_json jl;
    jl["id"] = l.id;
    jl["name"] = l.name;
    jl["color"] = {int(l.color.r), int(l.color.g), int(l.color.b)};
    if (l.built) jl["built"] = *l.built;
    if (l.aircon) jl["aircon"] = *l.aircon;
    doc["lines"].push_back(std::move(jl));
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : c.edges) {
    ordered_json je;
    je["s1"] = e.s1;
    je["s2"] = e.s2;
    je["line_id"] = e.line_id;
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2) + "\n";
}

TransitGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

void save_graph_file(const TransitGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write graph file: " + path);
  out << save_graph(g);
}

}  // namespace vgqa
