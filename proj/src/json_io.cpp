#include "trusslab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace trusslab {

namespace {

[[noreturn]] void structure_fail(const std::string& msg) {
  throw StructureError(msg);
}

int int_field(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    structure_fail("missing or non-integer field \"" + key + "\"");
  return j[key].get<int>();
}

// n^3 nested array -> flat, with range checks naming the index path.
std::vector<int> cube_from_json(const json& j, const std::string& key, int n) {
  if (!j.contains(key) || !j[key].is_array() ||
      static_cast<int>(j[key].size()) != n)
    structure_fail("field \"" + key + "\" must be an array of length " +
                   std::to_string(n));
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a) {
    const json& ja = j[key][a];
    if (!ja.is_array() || static_cast<int>(ja.size()) != n)
      structure_fail(key + "[" + std::to_string(a) + "] must have length " +
                     std::to_string(n));
    for (int b = 0; b < n; ++b) {
      const json& jb = ja[b];
      if (!jb.is_array() || static_cast<int>(jb.size()) != n)
        structure_fail(key + "[" + std::to_string(a) + "][" +
                       std::to_string(b) + "] must have length " +
                       std::to_string(n));
      for (int c = 0; c < n; ++c) {
        if (!jb[c].is_number_integer())
          structure_fail(key + " entry is not an integer");
        const int v = jb[c].get<int>();
        if (v < 0 || v >= n)
          structure_fail(key + "[" + std::to_string(a) + "][" +
                         std::to_string(b) + "][" + std::to_string(c) +
                         "] = " + std::to_string(v) + " out of range [0," +
                         std::to_string(n) + ")");
        out.push_back(v);
      }
    }
  }
  return out;
}

std::vector<int> square_from_json(const json& j, const std::string& key,
                                  int rows, int cols, int range) {
  if (!j.contains(key) || !j[key].is_array() ||
      static_cast<int>(j[key].size()) != rows)
    structure_fail("field \"" + key + "\" must be an array of length " +
                   std::to_string(rows));
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(rows) * cols);
  for (int a = 0; a < rows; ++a) {
    const json& ja = j[key][a];
    if (!ja.is_array() || static_cast<int>(ja.size()) != cols)
      structure_fail(key + "[" + std::to_string(a) + "] must have length " +
                     std::to_string(cols));
    for (int b = 0; b < cols; ++b) {
      if (!ja[b].is_number_integer())
        structure_fail(key + " entry is not an integer");
      const int v = ja[b].get<int>();
      if (v < 0 || v >= range)
        structure_fail(key + "[" + std::to_string(a) + "][" +
                       std::to_string(b) + "] = " + std::to_string(v) +
                       " out of range [0," + std::to_string(range) + ")");
      out.push_back(v);
    }
  }
  return out;
}

std::vector<int> list_from_json(const json& j, const std::string& key,
                                int range) {
  if (!j.contains(key) || !j[key].is_array())
    structure_fail("field \"" + key + "\" must be an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j[key].size(); ++i) {
    if (!j[key][i].is_number_integer())
      structure_fail(key + "[" + std::to_string(i) + "] is not an integer");
    const int v = j[key][i].get<int>();
    if (v < 0 || v >= range)
      structure_fail(key + "[" + std::to_string(i) + "] = " +
                     std::to_string(v) + " out of range [0," +
                     std::to_string(range) + ")");
    out.push_back(v);
  }
  return out;
}

json cube_to_json(const std::vector<int>& flat, int n) {
  json out = json::array();
  for (int a = 0; a < n; ++a) {
    json ja = json::array();
    for (int b = 0; b < n; ++b) {
      json jb = json::array();
      for (int c = 0; c < n; ++c)
        jb.push_back(flat[(static_cast<std::size_t>(a) * n + b) * n + c]);
      ja.push_back(std::move(jb));
    }
    out.push_back(std::move(ja));
  }
  return out;
}

json square_to_json(const std::vector<int>& flat, int rows, int cols) {
  json out = json::array();
  for (int a = 0; a < rows; ++a) {
    json ja = json::array();
    for (int b = 0; b < cols; ++b)
      ja.push_back(flat[static_cast<std::size_t>(a) * cols + b]);
    out.push_back(std::move(ja));
  }
  return out;
}

std::string kind_of(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    structure_fail("top-level object must carry a string \"kind\"");
  return j["kind"].get<std::string>();
}

}  // namespace

json heap_to_json(const FiniteHeap& h) {
  json j;
  j["kind"] = "heap";
  j["size"] = h.size;
  j["op"] = cube_to_json(h.op, h.size);
  if (h.declared_abelian) j["abelian"] = true;
  return j;
}

json group_to_json(const FiniteGroup& g) {
  json j;
  j["kind"] = "group";
  j["size"] = g.size;
  j["mul"] = square_to_json(g.mul, g.size, g.size);
  j["id"] = g.id;
  return j;
}

json ring_to_json(const FiniteRing& r) {
  json j;
  j["kind"] = "ring";
  j["size"] = r.size;
  j["add"] = square_to_json(r.add, r.size, r.size);
  j["mul"] = square_to_json(r.mul, r.size, r.size);
  j["zero"] = r.zero;
  if (r.one) j["one"] = *r.one;
  return j;
}

json truss_to_json(const FiniteTruss& t) {
  json j;
  j["kind"] = "truss";
  json hj;
  hj["size"] = t.heap.size;
  hj["op"] = cube_to_json(t.heap.op, t.heap.size);
  j["heap"] = std::move(hj);
  j["mul"] = square_to_json(t.mul, t.size(), t.size());
  if (t.one) j["one"] = *t.one;
  return j;
}

json module_to_json(const FiniteModule& m, const std::string& truss_name) {
  json j;
  j["kind"] = "module";
  if (truss_name.empty())
    j["truss"] = truss_to_json(*m.truss);
  else
    j["truss"] = truss_name;
  j["size"] = m.size();
  j["op"] = cube_to_json(m.heap.op, m.size());
  j["act"] = square_to_json(m.act, m.tsize(), m.size());
  if (m.unital) j["unital"] = true;
  return j;
}

json module_morphism_to_json(const ModuleMorphism& f) {
  json j;
  j["kind"] = "morphism";
  j["role"] = "module";
  j["dom"] = module_to_json(f.dom);
  j["cod"] = module_to_json(f.cod);
  j["map"] = f.map;
  return j;
}

json report_to_json(const ValidationReport& r) {
  json j;
  j["ok"] = r.ok;
  if (!r.ok) {
    j["law"] = r.law;
    j["witness"] = r.witness;
    j["detail"] = r.detail;
  }
  return j;
}

FiniteHeap heap_from_json(const json& j) {
  const int n = int_field(j, "size");
  if (n <= 0) structure_fail("heap size must be positive");
  bool abelian = j.value("abelian", false);
  return make_heap(n, cube_from_json(j, "op", n), abelian);
}

FiniteGroup group_from_json(const json& j) {
  const int n = int_field(j, "size");
  if (n <= 0) structure_fail("group size must be positive");
  std::vector<int> inv;
  if (j.contains("inv")) {
    inv = list_from_json(j, "inv", n);
    if (static_cast<int>(inv.size()) != n)
      structure_fail("inv table must have length size");
  }
  return make_group(n, square_from_json(j, "mul", n, n, n),
                    int_field(j, "id"), std::move(inv));
}

FiniteRing ring_from_json(const json& j) {
  const int n = int_field(j, "size");
  if (n <= 0) structure_fail("ring size must be positive");
  std::optional<int> one;
  if (j.contains("one")) one = int_field(j, "one");
  return make_ring(n, square_from_json(j, "add", n, n, n),
                   square_from_json(j, "mul", n, n, n), int_field(j, "zero"),
                   one);
}

FiniteTruss truss_from_json(const json& j) {
  if (!j.contains("heap") || !j["heap"].is_object())
    structure_fail("truss requires a \"heap\" object");
  FiniteHeap h = heap_from_json(j["heap"]);
  const int n = h.size;
  std::optional<int> one;
  if (j.contains("one")) one = int_field(j, "one");
  return make_truss(std::move(h), square_from_json(j, "mul", n, n, n), one);
}

TrussBundle trusses_from_json(const json& file) {
  TrussBundle out;
  if (!file.is_object() || !file.contains("trusses")) return out;
  if (!file["trusses"].is_object())
    structure_fail("\"trusses\" must be an object of name -> truss");
  for (const auto& [name, tj] : file["trusses"].items())
    out[name] = std::make_shared<const FiniteTruss>(truss_from_json(tj));
  return out;
}

FiniteModule module_from_json(const json& j, const TrussBundle& bundle) {
  std::shared_ptr<const FiniteTruss> truss;
  if (!j.contains("truss")) structure_fail("module requires a \"truss\" field");
  if (j["truss"].is_string()) {
    auto it = bundle.find(j["truss"].get<std::string>());
    if (it == bundle.end())
      structure_fail("unknown truss name \"" + j["truss"].get<std::string>() +
                     "\"");
    truss = it->second;
  } else if (j["truss"].is_object()) {
    truss = std::make_shared<const FiniteTruss>(truss_from_json(j["truss"]));
  } else {
    structure_fail("\"truss\" must be a name or an inline truss object");
  }
  const int m = int_field(j, "size");
  if (m <= 0) structure_fail("module size must be positive");
  FiniteHeap heap = make_heap(m, cube_from_json(j, "op", m), true);
  std::vector<int> act = square_from_json(j, "act", truss->size(), m, m);
  return make_module(std::move(truss), std::move(heap), std::move(act),
                     j.value("unital", false));
}

ModuleMorphism module_morphism_from_json(const json& j, const TrussBundle& bundle) {
  if (!j.contains("dom") || !j.contains("cod"))
    structure_fail("morphism requires \"dom\" and \"cod\"");
  FiniteModule dom = module_from_json(j["dom"], bundle);
  FiniteModule cod = module_from_json(j["cod"], bundle);
  std::vector<int> map = list_from_json(j, "map", cod.size());
  if (static_cast<int>(map.size()) != dom.size())
    structure_fail("morphism map is not total on the domain");
  return ModuleMorphism{std::move(dom), std::move(cod), std::move(map)};
}

Diagram diagram_from_json(const json& file) {
  Diagram d;
  if (!file.contains("shape") || !file["shape"].is_string())
    structure_fail("diagram requires a string \"shape\"");
  d.shape = file["shape"].get<std::string>();
  if (d.shape != "ses" && d.shape != "snake" && d.shape != "grid3x3" &&
      d.shape != "row2x5")
    structure_fail("unknown diagram shape \"" + d.shape + "\"");

  auto bundle = trusses_from_json(file);
  if (!file.contains("modules") || !file["modules"].is_object())
    structure_fail("diagram requires a \"modules\" object");
  for (const auto& [name, mj] : file["modules"].items())
    d.modules.emplace(name, module_from_json(mj, bundle));

  if (!file.contains("rows") || !file["rows"].is_array())
    structure_fail("diagram requires a \"rows\" grid of module names");
  for (const auto& row : file["rows"]) {
    if (!row.is_array()) structure_fail("\"rows\" entries must be arrays");
    std::vector<std::string> names;
    for (const auto& cell : row) {
      if (!cell.is_string()) structure_fail("row cells must be module names");
      const std::string name = cell.get<std::string>();
      if (!d.modules.count(name))
        structure_fail("row references unknown module \"" + name + "\"");
      names.push_back(name);
    }
    d.rows.push_back(std::move(names));
  }

  if (!file.contains("maps") || !file["maps"].is_array())
    structure_fail("diagram requires a \"maps\" array");
  for (const auto& mj : file["maps"]) {
    Diagram::Edge e;
    if (!mj.is_object() || !mj.contains("from") || !mj.contains("to"))
      structure_fail("each map requires \"from\" and \"to\"");
    e.from = mj["from"].get<std::string>();
    e.to = mj["to"].get<std::string>();
    if (!d.modules.count(e.from) || !d.modules.count(e.to))
      structure_fail("map references unknown module");
    e.map = list_from_json(mj, "map", d.modules.at(e.to).size());
    if (static_cast<int>(e.map.size()) != d.modules.at(e.from).size())
      structure_fail("map from \"" + e.from + "\" is not total");
    d.maps.push_back(std::move(e));
  }
  return d;
}

namespace {

// Consumes the first unused edge matching (from,to); duplicated edges are
// resolved positionally in shape order.
struct EdgeResolver {
  const Diagram& d;
  std::vector<bool> used;

  explicit EdgeResolver(const Diagram& dg) : d(dg), used(dg.maps.size(), false) {}

  ModuleMorphism take(const std::string& from, const std::string& to) {
    for (std::size_t i = 0; i < d.maps.size(); ++i) {
      if (used[i] || d.maps[i].from != from || d.maps[i].to != to) continue;
      used[i] = true;
      return ModuleMorphism{d.modules.at(from), d.modules.at(to),
                            d.maps[i].map};
    }
    structure_fail("diagram is missing a map " + from + " -> " + to);
  }

  void expect_all_used() const {
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i])
        structure_fail("diagram has an extra map " + d.maps[i].from + " -> " +
                       d.maps[i].to);
  }
};

void expect_grid(const Diagram& d, std::size_t rows, std::size_t cols) {
  if (d.rows.size() != rows)
    structure_fail("shape \"" + d.shape + "\" requires " +
                   std::to_string(rows) + " rows");
  for (const auto& r : d.rows)
    if (r.size() != cols)
      structure_fail("shape \"" + d.shape + "\" requires rows of length " +
                     std::to_string(cols));
}

}  // namespace

SnakeDiagram to_snake(const Diagram& d) {
  expect_grid(d, 2, 3);
  EdgeResolver er(d);
  SnakeDiagram s;
  s.phi = er.take(d.rows[0][0], d.rows[0][1]);
  s.psi = er.take(d.rows[0][1], d.rows[0][2]);
  s.phi1 = er.take(d.rows[1][0], d.rows[1][1]);
  s.psi1 = er.take(d.rows[1][1], d.rows[1][2]);
  s.fp = er.take(d.rows[0][0], d.rows[1][0]);
  s.f = er.take(d.rows[0][1], d.rows[1][1]);
  s.fpp = er.take(d.rows[0][2], d.rows[1][2]);
  er.expect_all_used();
  return s;
}

NineDiagram to_nine(const Diagram& d) {
  expect_grid(d, 3, 3);
  EdgeResolver er(d);
  NineDiagram n;
  for (int i = 0; i < 3; ++i) {
    n.mods[i][0] = d.modules.at(d.rows[i][0]);
    n.mods[i][1] = d.modules.at(d.rows[i][1]);
    n.mods[i][2] = d.modules.at(d.rows[i][2]);
  }
  for (int i = 0; i < 3; ++i) {
    n.row_maps[i][0] = er.take(d.rows[i][0], d.rows[i][1]);
    n.row_maps[i][1] = er.take(d.rows[i][1], d.rows[i][2]);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      n.col_maps[i][j] = er.take(d.rows[i][j], d.rows[i + 1][j]);
  er.expect_all_used();
  return n;
}

FiveDiagram to_five(const Diagram& d) {
  expect_grid(d, 2, 5);
  EdgeResolver er(d);
  FiveDiagram f;
  for (int i = 0; i < 5; ++i) {
    f.top_mods[i] = d.modules.at(d.rows[0][i]);
    f.bottom_mods[i] = d.modules.at(d.rows[1][i]);
  }
  for (int i = 0; i < 4; ++i) f.top[i] = er.take(d.rows[0][i], d.rows[0][i + 1]);
  for (int i = 0; i < 4; ++i)
    f.bottom[i] = er.take(d.rows[1][i], d.rows[1][i + 1]);
  for (int i = 0; i < 5; ++i) f.vert[i] = er.take(d.rows[0][i], d.rows[1][i]);
  er.expect_all_used();
  return f;
}

std::pair<ModuleMorphism, ModuleMorphism> to_ses(const Diagram& d) {
  expect_grid(d, 1, 3);
  EdgeResolver er(d);
  auto f = er.take(d.rows[0][0], d.rows[0][1]);
  auto g = er.take(d.rows[0][1], d.rows[0][2]);
  er.expect_all_used();
  return {std::move(f), std::move(g)};
}

namespace {

// Emits a diagram file sharing one inline truss under "trusses".
struct DiagramWriter {
  json j;
  json modules = json::object();
  json maps = json::array();
  json rows = json::array();

  explicit DiagramWriter(const std::string& shape, const FiniteTruss& t) {
    j["kind"] = "diagram";
    j["shape"] = shape;
    j["trusses"] = json::object();
    j["trusses"]["T"] = truss_to_json(t);
  }

  void add_module(const std::string& name, const FiniteModule& m) {
    if (modules.contains(name)) return;
    modules[name] = module_to_json(m, "T");
  }

  void add_map(const std::string& from, const std::string& to,
               const std::vector<int>& map) {
    json e;
    e["from"] = from;
    e["to"] = to;
    e["map"] = map;
    maps.push_back(std::move(e));
  }

  json finish() {
    j["modules"] = std::move(modules);
    j["rows"] = std::move(rows);
    j["maps"] = std::move(maps);
    return std::move(j);
  }
};

}  // namespace

json snake_to_json(const SnakeDiagram& d) {
  DiagramWriter w("snake", *d.phi.dom.truss);
  const std::array<std::pair<std::string, const FiniteModule*>, 6> mods{
      {{"Mp", &d.phi.dom}, {"M", &d.psi.dom}, {"Mpp", &d.psi.cod},
       {"Np", &d.phi1.dom}, {"N", &d.psi1.dom}, {"Npp", &d.psi1.cod}}};
  for (const auto& [name, m] : mods) w.add_module(name, *m);
  w.rows = json::array({json::array({"Mp", "M", "Mpp"}),
                        json::array({"Np", "N", "Npp"})});
  w.add_map("Mp", "M", d.phi.map);
  w.add_map("M", "Mpp", d.psi.map);
  w.add_map("Np", "N", d.phi1.map);
  w.add_map("N", "Npp", d.psi1.map);
  w.add_map("Mp", "Np", d.fp.map);
  w.add_map("M", "N", d.f.map);
  w.add_map("Mpp", "Npp", d.fpp.map);
  return w.finish();
}

json nine_to_json(const NineDiagram& d) {
  DiagramWriter w("grid3x3", *d.mods[0][0].truss);
  const char* names[3][3] = {{"A1", "B1", "C1"}, {"A2", "B2", "C2"},
                             {"A3", "B3", "C3"}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w.add_module(names[i][j], d.mods[i][j]);
  w.rows = json::array();
  for (int i = 0; i < 3; ++i)
    w.rows.push_back(json::array({names[i][0], names[i][1], names[i][2]}));
  for (int i = 0; i < 3; ++i) {
    w.add_map(names[i][0], names[i][1], d.row_maps[i][0].map);
    w.add_map(names[i][1], names[i][2], d.row_maps[i][1].map);
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      w.add_map(names[i][j], names[i + 1][j], d.col_maps[i][j].map);
  return w.finish();
}

json five_to_json(const FiveDiagram& d) {
  DiagramWriter w("row2x5", *d.top_mods[0].truss);
  const char* top[5] = {"A1", "A2", "A3", "A4", "A5"};
  const char* bot[5] = {"B1", "B2", "B3", "B4", "B5"};
  for (int i = 0; i < 5; ++i) {
    w.add_module(top[i], d.top_mods[i]);
    w.add_module(bot[i], d.bottom_mods[i]);
  }
  w.rows = json::array({json::array({"A1", "A2", "A3", "A4", "A5"}),
                        json::array({"B1", "B2", "B3", "B4", "B5"})});
  for (int i = 0; i < 4; ++i) {
    w.add_map(top[i], top[i + 1], d.top[i].map);
    w.add_map(bot[i], bot[i + 1], d.bottom[i].map);
  }
  for (int i = 0; i < 5; ++i) w.add_map(top[i], bot[i], d.vert[i].map);
  return w.finish();
}

json ses_to_json(const ModuleMorphism& f, const ModuleMorphism& g) {
  DiagramWriter w("ses", *f.dom.truss);
  w.add_module("M", f.dom);
  w.add_module("N", f.cod);
  w.add_module("P", g.cod);
  w.rows = json::array({json::array({"M", "N", "P"})});
  w.add_map("M", "N", f.map);
  w.add_map("N", "P", g.map);
  return w.finish();
}

Loaded load_value(const json& file) {
  const std::string kind = kind_of(file);
  if (kind == "heap") return heap_from_json(file);
  if (kind == "group") return group_from_json(file);
  if (kind == "ring") return ring_from_json(file);
  if (kind == "truss") return truss_from_json(file);
  if (kind == "module") return module_from_json(file, trusses_from_json(file));
  if (kind == "diagram") return diagram_from_json(file);
  if (kind == "morphism") {
    if (!file.contains("role") || !file["role"].is_string())
      structure_fail("morphism requires a string \"role\"");
    const std::string role = file["role"].get<std::string>();
    auto bundle = trusses_from_json(file);
    LoadedMorphism out;
    out.role = role;
    if (role == "module") {
      out.value = module_morphism_from_json(file, bundle);
    } else if (role == "heap") {
      if (!file.contains("dom") || !file.contains("cod"))
        structure_fail("morphism requires \"dom\" and \"cod\"");
      FiniteHeap dom = heap_from_json(file["dom"]);
      FiniteHeap cod = heap_from_json(file["cod"]);
      std::vector<int> map = list_from_json(file, "map", cod.size);
      if (static_cast<int>(map.size()) != dom.size)
        structure_fail("morphism map is not total on the domain");
      out.value = HeapMorphism{std::move(dom), std::move(cod), std::move(map)};
    } else if (role == "truss") {
      if (!file.contains("dom") || !file.contains("cod"))
        structure_fail("morphism requires \"dom\" and \"cod\"");
      FiniteTruss dom = truss_from_json(file["dom"]);
      FiniteTruss cod = truss_from_json(file["cod"]);
      std::vector<int> map = list_from_json(file, "map", cod.size());
      if (static_cast<int>(map.size()) != dom.size())
        structure_fail("morphism map is not total on the domain");
      out.value = TrussMorphism{std::move(dom), std::move(cod), std::move(map)};
    } else {
      structure_fail("unknown morphism role \"" + role + "\"");
    }
    return out;
  }
  structure_fail("unknown kind \"" + kind + "\"");
}

Loaded load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructureError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw StructureError(std::string("JSON parse error: ") + e.what());
  }
  return load_value(j);
}

}  // namespace trusslab
