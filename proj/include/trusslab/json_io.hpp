#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "trusslab/exact.hpp"
#include "trusslab/module.hpp"

namespace trusslab {

using json = nlohmann::ordered_json;

// Generic diagram as loaded from JSON: a shape tag, a grid of module names
// ("rows"), the named modules, and the maps by endpoint names. Shape-specific
// assembly happens in to_snake / to_nine / to_five / to_ses.
struct Diagram {
  std::string shape;  // "ses" | "snake" | "grid3x3" | "row2x5"
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, FiniteModule> modules;
  struct Edge {
    std::string from, to;
    std::vector<int> map;
  };
  std::vector<Edge> maps;
};

SnakeDiagram to_snake(const Diagram& d);
NineDiagram to_nine(const Diagram& d);
FiveDiagram to_five(const Diagram& d);
std::pair<ModuleMorphism, ModuleMorphism> to_ses(const Diagram& d);

json heap_to_json(const FiniteHeap& h);
json group_to_json(const FiniteGroup& g);
json ring_to_json(const FiniteRing& r);
json truss_to_json(const FiniteTruss& t);
json module_to_json(const FiniteModule& m, const std::string& truss_name = {});
json module_morphism_to_json(const ModuleMorphism& f);
json report_to_json(const ValidationReport& r);

json snake_to_json(const SnakeDiagram& d);
json nine_to_json(const NineDiagram& d);
json five_to_json(const FiveDiagram& d);
json ses_to_json(const ModuleMorphism& f, const ModuleMorphism& g);

FiniteHeap heap_from_json(const json& j);
FiniteGroup group_from_json(const json& j);
FiniteRing ring_from_json(const json& j);
FiniteTruss truss_from_json(const json& j);

// Named trusses visible to "truss": "<name>" references inside the same file.
using TrussBundle = std::map<std::string, std::shared_ptr<const FiniteTruss>>;
TrussBundle trusses_from_json(const json& file);

FiniteModule module_from_json(const json& j, const TrussBundle& bundle);
ModuleMorphism module_morphism_from_json(const json& j, const TrussBundle& bundle);
Diagram diagram_from_json(const json& file);

struct LoadedMorphism {
  std::string role;  // "heap" | "truss" | "module"
  std::variant<HeapMorphism, TrussMorphism, ModuleMorphism> value;
};

using Loaded = std::variant<FiniteHeap, FiniteGroup, FiniteRing, FiniteTruss,
                            FiniteModule, LoadedMorphism, Diagram>;

Loaded load_value(const json& file);
Loaded load_file(const std::string& path);

}  // namespace trusslab
