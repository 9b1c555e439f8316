#include "laminar/serialize.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "laminar/error.hpp"

namespace laminar {

using nlohmann::json;

namespace {

json chords_json(const std::vector<Chord>& chords) {
  json out = json::array();
  for (const auto& c : chords) out.push_back({c.lo().encode(), c.hi().encode()});
  return out;
}

json lamination_json(const LaminationFile& f) {
  std::vector<Chord> chords = f.chords;
  canonicalize(chords);
  return {{"name", f.name}, {"chart", chart_name(f.chart)}, {"depth", f.depth}, {"chords", chords_json(chords)}};
}

json action_json(const ChartAction& g) {
  if (const auto* m = std::get_if<MobiusMap>(&g))
    return {{"type", "mobius"}, {"matrix", {m->p().to_string(), m->q().to_string(), m->r().to_string(), m->s().to_string()}}};
  if (const auto* a = std::get_if<AngleShift>(&g)) return {{"type", "angle_shift"}, {"delta", a->delta.to_string()}};
  const auto& e = std::get<ExpAffine>(g);
  return {{"type", "exp_affine"}, {"eps", e.eps}, {"tau", e.tau.to_string()}};
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

BoundaryPoint point_from(const json& j) {
  if (!j.is_string()) fail("boundary point must be a string");
  return BoundaryPoint::decode(j.get<std::string>());
}

LaminationFile lamination_from(const json& j) {
  LaminationFile f;
  f.name = string_field(j, "name");
  f.chart = parse_chart(string_field(j, "chart"));
  f.depth = int_field(j, "depth");
  const json& chords = field(j, "chords");
  if (!chords.is_array()) fail("'chords' must be an array");
  for (const auto& c : chords) {
    if (!c.is_array() || c.size() != 2) fail("a chord is a pair of boundary points");
    try {
      f.chords.emplace_back(point_from(c[0]), point_from(c[1]));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      fail(std::string("bad chord: ") + e.what());
    }
  }
  return f;
}

ChartAction action_from(const json& j) {
  const std::string type = string_field(j, "type");
  if (type == "mobius") {
    const json& m = field(j, "matrix");
    if (!m.is_array() || m.size() != 4) fail("'matrix' needs four entries");
    std::array<FieldElem, 4> e;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!m[i].is_string()) fail("matrix entries must be strings");
      e[i] = FieldElem::parse(m[i].get<std::string>());
    }
    try {
      return MobiusMap(e[0], e[1], e[2], e[3]);
    } catch (const Error& err) {
      fail(err.what());
    }
  }
  if (type == "angle_shift") return AngleShift(FieldElem::parse(string_field(j, "delta")));
  if (type == "exp_affine") {
    const int eps = int_field(j, "eps");
    if (eps != 1 && eps != -1) fail("'eps' must be 1 or -1");
    return ExpAffine(eps, FieldElem::parse(string_field(j, "tau")));
  }
  fail("unknown action type '" + type + "'");
}

Document document_from(const json& j) {
  const std::string format = string_field(j, "format");
  if (format == "lamination") return lamination_from(j);
  if (format != "collection") fail("unknown format '" + format + "'");
  CollectionFile f;
  f.kind = string_field(j, "kind");
  f.order = int_field(j, "order");
  f.depth = int_field(j, "depth");
  const json& systems = field(j, "systems");
  if (!systems.is_array() || systems.size() != 3) fail("'systems' needs three laminations");
  for (std::size_t i = 0; i < 3; ++i) f.systems[i] = lamination_from(systems[i]);
  const json& gens = field(j, "generators");
  const json& cusps = field(j, "cusps");
  if (!gens.is_array() || !cusps.is_array()) fail("'generators' and 'cusps' must be arrays");
  for (const auto& g : gens) f.generators.push_back(action_from(g));
  for (const auto& c : cusps) f.cusps.push_back(point_from(c));
  return f;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

LaminationFile make_lamination_file(std::string name, Chart chart, int depth, std::vector<Chord> chords) {
  canonicalize(chords);
  return {std::move(name), chart, depth, std::move(chords)};
}

CollectionFile make_collection_file(const Col3Collection& col, int depth) {
  CollectionFile f;
  f.kind = to_string(col.kind);
  f.order = col.order;
  f.depth = depth;
  for (std::size_t i = 0; i < 3; ++i)
    f.systems[i] = make_lamination_file(col.systems[i].name, col.systems[i].chart, depth, col.systems[i].truncation(depth));
  f.generators = col.generators;
  f.cusps = col.cusps;
  return f;
}

std::string serialize(const LaminationFile& file) {
  json j = lamination_json(file);
  j["format"] = "lamination";
  return dump(j);
}

std::string serialize(const CollectionFile& file) {
  json systems = json::array();
  for (const auto& s : file.systems) systems.push_back(lamination_json(s));
  json gens = json::array();
  for (const auto& g : file.generators) gens.push_back(action_json(g));
  std::vector<BoundaryPoint> cusps = file.cusps;
  std::sort(cusps.begin(), cusps.end(), LinearLess{});
  json cj = json::array();
  for (const auto& c : cusps) cj.push_back(c.encode());
  const json j = {{"format", "collection"}, {"kind", file.kind},  {"order", file.order}, {"depth", file.depth},
                  {"systems", systems},     {"generators", gens}, {"cusps", cj}};
  return dump(j);
}

std::string serialize(const Document& doc) {
  return std::visit([](const auto& f) { return serialize(f); }, doc);
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  try {
    return document_from(j);
  } catch (const json::exception& e) {
    fail(e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace laminar
