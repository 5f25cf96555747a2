// Copyright 2026 The EdgeMORE Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgemore/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "edgemore/random.hpp"

namespace edgemore {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) {
    throw SchemaError(fmt::format("{}: expected an object", where));
  }
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw SchemaError(fmt::format("{}: missing field '{}'", where, name));
  }
  return *it;
}

const json& array_field(const json& obj, const char* name,
                        const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_array()) {
    throw SchemaError(fmt::format("{}.{}: expected an array", where, name));
  }
  return v;
}

std::int64_t int_field(const json& obj, const char* name,
                       const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) {
    throw SchemaError(fmt::format("{}.{}: expected an integer", where, name));
  }
  return v.get<std::int64_t>();
}

double number_field(const json& obj, const char* name,
                    const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number()) {
    throw SchemaError(fmt::format("{}.{}: expected a number", where, name));
  }
  return v.get<double>();
}

std::string string_field(const json& obj, const char* name,
                         const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) {
    throw SchemaError(fmt::format("{}.{}: expected a string", where, name));
  }
  return v.get<std::string>();
}

ResourceVector vector_field(const json& obj, const char* name,
                            const std::string& where, std::size_t expected,
                            const std::string& owner) {
  const json& v = array_field(obj, name, where);
  if (v.size() != expected) {
    throw SchemaError(fmt::format("{}.{}: {} has {} entries, expected {}",
                                  where, name, owner, v.size(), expected));
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k].is_number()) {
      throw SchemaError(
          fmt::format("{}.{}[{}]: expected a number", where, name, k));
    }
    out.push_back(v[k].get<double>());
  }
  return ResourceVector(std::move(out));
}

json to_json(const ResourceVector& v) {
  return json(std::vector<double>(v.begin(), v.end()));
}

json parse(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // The library message carries line and column.
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("cannot read '{}'", path.string()));
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  }
  out << text;
  out.flush();
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
}

json params_to_json(const GenParams& p) {
  return {
      {"n_providers", p.n_providers},
      {"n_nodes", p.n_nodes},
      {"options_per_provider", p.options_per_provider},
      {"containers_per_option", p.containers_per_option},
      {"load_factor", p.load_factor},
      {"node_capacity", to_json(p.node_capacity)},
      {"alpha_range", {p.alpha_range.lo, p.alpha_range.hi}},
      {"beta_range", {p.beta_range.lo, p.beta_range.hi}},
      {"demand_spread", p.demand_spread},
      {"seed", p.seed},
  };
}

json scenario_to_json(const Scenario& scenario) {
  json types = json::array();
  for (const ResourceType& t : scenario.resource_types()) {
    types.push_back({{"name", t.name}, {"unit", t.unit}});
  }
  json nodes = json::array();
  for (const NodeSpec& n : scenario.nodes()) {
    nodes.push_back({{"id", n.id.value}, {"capacities", to_json(n.capacities)}});
  }
  json providers = json::array();
  for (const ServiceProvider& sp : scenario.providers()) {
    json options = json::array();
    for (const ConfigOption& opt : sp.options) {
      json containers = json::array();
      for (const ContainerSpec& c : opt.containers) {
        containers.push_back(
            {{"id", c.id.value}, {"demands", to_json(c.demands)}});
      }
      options.push_back({{"id", opt.id.value},
                         {"utility", opt.utility},
                         {"containers", std::move(containers)}});
    }
    providers.push_back({{"id", sp.id.value}, {"options", std::move(options)}});
  }
  return {{"version", kScenarioFormatVersion},
          {"resource_types", std::move(types)},
          {"nodes", std::move(nodes)},
          {"providers", std::move(providers)}};
}

Scenario scenario_from_json(const json& doc) {
  const std::string root = "scenario";
  const std::int64_t version = int_field(doc, "version", root);
  if (version != kScenarioFormatVersion) {
    throw SchemaError(fmt::format("scenario.version: unsupported version {}",
                                  version));
  }

  std::vector<ResourceType> types;
  const json& jtypes = array_field(doc, "resource_types", root);
  for (std::size_t l = 0; l < jtypes.size(); ++l) {
    const std::string where = fmt::format("resource_types[{}]", l);
    types.push_back({string_field(jtypes[l], "name", where),
                     string_field(jtypes[l], "unit", where)});
  }
  const std::size_t L = types.size();

  std::vector<NodeSpec> nodes;
  const json& jnodes = array_field(doc, "nodes", root);
  for (std::size_t m = 0; m < jnodes.size(); ++m) {
    const std::string where = fmt::format("nodes[{}]", m);
    const std::int64_t id = int_field(jnodes[m], "id", where);
    nodes.push_back({NodeId{id},
                     vector_field(jnodes[m], "capacities", where, L,
                                  fmt::format("node {}", id))});
  }

  std::vector<ServiceProvider> providers;
  const json& jproviders = array_field(doc, "providers", root);
  for (std::size_t i = 0; i < jproviders.size(); ++i) {
    const std::string pwhere = fmt::format("providers[{}]", i);
    const json& jp = jproviders[i];
    ServiceProvider sp{ProviderId{int_field(jp, "id", pwhere)}, {}};
    const json& jopts = array_field(jp, "options", pwhere);
    for (std::size_t j = 0; j < jopts.size(); ++j) {
      const std::string owhere = fmt::format("{}.options[{}]", pwhere, j);
      const json& jo = jopts[j];
      ConfigOption opt{OptionId{int_field(jo, "id", owhere)},
                       number_field(jo, "utility", owhere),
                       {}};
      const json& jcs = array_field(jo, "containers", owhere);
      for (std::size_t z = 0; z < jcs.size(); ++z) {
        const std::string cwhere = fmt::format("{}.containers[{}]", owhere, z);
        const std::int64_t cid = int_field(jcs[z], "id", cwhere);
        opt.containers.push_back(
            {ContainerId{cid},
             vector_field(jcs[z], "demands", cwhere, L,
                          fmt::format("provider {} option {} container {}",
                                      sp.id.value, opt.id.value, cid))});
      }
      sp.options.push_back(std::move(opt));
    }
    providers.push_back(std::move(sp));
  }

  try {
    return Scenario(std::move(types), std::move(nodes), std::move(providers));
  } catch (const ModelError& e) {
    throw SchemaError(e.what());
  }
}

json allocation_to_json(const Allocation& alloc) {
  json choices = json::array();
  for (const Choice& c : alloc.choices) {
    choices.push_back({{"provider", c.provider.value},
                       {"option", c.option.value}});
  }
  json placements = json::array();
  for (const Placement& p : alloc.placements) {
    placements.push_back({{"provider", p.provider.value},
                          {"option", p.option.value},
                          {"container", p.container.value},
                          {"node", p.node.value}});
  }
  return {{"choices", std::move(choices)},
          {"placements", std::move(placements)}};
}

Allocation allocation_from_json(const json& doc) {
  Allocation alloc;
  const json& jchoices = array_field(doc, "choices", "allocation");
  for (std::size_t k = 0; k < jchoices.size(); ++k) {
    const std::string where = fmt::format("choices[{}]", k);
    alloc.choices.push_back(
        {ProviderId{int_field(jchoices[k], "provider", where)},
         OptionId{int_field(jchoices[k], "option", where)}});
  }
  const json& jplacements = array_field(doc, "placements", "allocation");
  for (std::size_t k = 0; k < jplacements.size(); ++k) {
    const std::string where = fmt::format("placements[{}]", k);
    const json& jp = jplacements[k];
    alloc.placements.push_back({ProviderId{int_field(jp, "provider", where)},
                                OptionId{int_field(jp, "option", where)},
                                ContainerId{int_field(jp, "container", where)},
                                NodeId{int_field(jp, "node", where)}});
  }
  return alloc;
}

json report_to_json(const SolveReport& r) {
  return {{"solver", r.solver_name},
          {"objective", r.objective},
          {"utility_pct", r.utility_pct},
          {"usage_fraction", to_json(r.usage_fraction)},
          {"runtime_ms", r.runtime_ms},
          {"proven_optimal", r.proven_optimal}};
}

void write_scenario(const std::filesystem::path& path, const Scenario& scenario,
                    const GenParams* params) {
  json doc = scenario_to_json(scenario);
  if (params) {
    doc["generator"] = {{"params", params_to_json(*params)},
                        {"seed", params->seed},
                        {"prng", std::string(kPrngName)}};
  }
  write_text(path, doc.dump(1) + "\n");
}

Scenario read_scenario(const std::filesystem::path& path) {
  const json doc = parse(path);
  try {
    return scenario_from_json(doc);
  } catch (const SchemaError& e) {
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_allocation(const std::filesystem::path& path,
                      const Allocation& alloc, const SolveReport& report) {
  json doc = allocation_to_json(alloc);
  doc["solver"] = report.solver_name;
  doc["objective"] = report.objective;
  write_text(path, doc.dump(1) + "\n");
}

Allocation read_allocation(const std::filesystem::path& path) {
  const json doc = parse(path);
  try {
    return allocation_from_json(doc);
  } catch (const SchemaError& e) {
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_report(const std::filesystem::path& path, const SolveReport& report) {
  write_text(path, report_to_json(report).dump(1) + "\n");
}

}  // namespace edgemore
