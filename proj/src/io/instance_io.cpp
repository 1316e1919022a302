#include <fstream>
#include <sstream>

#include "msm/io.hpp"

namespace msm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InvalidArgument(path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

template <class T>
T get_as(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
}

template <class T>
T field_as(const json& j, const char* key, const std::string& path) {
  return get_as<T>(field(j, key, path), path + "." + key);
}

std::vector<Edge> edges_from(const json& j, const std::string& path) {
  std::vector<Edge> edges;
  for (const auto& pair : get_as<std::vector<std::vector<int>>>(j, path)) {
    if (pair.size() != 2) fail(path, "each edge must be a [u, v] pair");
    edges.emplace_back(pair[0], pair[1]);
  }
  return edges;
}

json edges_to(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const auto& [u, v] : edges) out.push_back({u, v});
  return out;
}

ObjectiveSpec parse_objective(const json& j, const std::string& path) {
  const auto family = field_as<std::string>(j, "family", path);
  if (family == "additive") return AdditiveParams{field_as<std::vector<double>>(j, "weights", path)};
  if (family == "coverage") {
    CoverageParams p;
    p.universe = field_as<int>(j, "universe", path);
    p.covers = field_as<std::vector<std::vector<int>>>(j, "covers", path);
    p.weights = j.contains("weights") ? field_as<std::vector<double>>(j, "weights", path)
                                      : std::vector<double>(static_cast<std::size_t>(std::max(p.universe, 0)), 1.0);
    return p;
  }
  if (family == "influence") {
    InfluenceParams p;
    p.edges = edges_from(field(j, "edges", path), path + ".edges");
    if (j.contains("q")) p.q = field_as<double>(j, "q", path);
    return p;
  }
  if (family == "cut") {
    CutParams p;
    p.edges = edges_from(field(j, "edges", path), path + ".edges");
    if (j.contains("weights")) p.weights = field_as<std::vector<double>>(j, "weights", path);
    return p;
  }
  if (family == "example1") {
    Example1Params p;
    p.n = field_as<int>(j, "n", path);
    p.agent = field_as<int>(j, "agent", path);
    if (j.contains("eps")) {
      const auto eps = field_as<std::vector<double>>(j, "eps", path);
      if (eps.size() != 4) fail(path + ".eps", "expected four values");
      std::copy(eps.begin(), eps.end(), p.eps.begin());
    }
    if (j.contains("layout")) {
      const auto layout = field_as<std::string>(j, "layout", path);
      if (layout == "consistent") {
        p.layout = Example1Layout::consistent;
      } else if (layout == "printed") {
        p.layout = Example1Layout::printed;
      } else {
        fail(path + ".layout", "expected \"consistent\" or \"printed\"");
      }
    }
    return p;
  }
  fail(path + ".family", "unknown objective family \"" + family + "\"");
}

Constraint parse_constraint(const json& j, int m, const std::string& path) {
  const auto family = field_as<std::string>(j, "family", path);
  std::optional<Constraint> c;
  if (family == "cardinality") {
    c = Constraint::cardinality(m, field_as<int>(j, "k", path));
  } else if (family == "unconstrained") {
    c = Constraint::unconstrained(m);
  } else if (family == "partition_matroid") {
    c = Constraint::partition_matroid(m, field_as<std::vector<std::vector<ItemId>>>(j, "parts", path),
                                      field_as<std::vector<int>>(j, "caps", path));
  } else if (family == "graphic_matroid") {
    std::vector<Edge> edges = edges_from(field(j, "edges", path), path + ".edges");
    int vertices = 0;
    for (const auto& [u, v] : edges) vertices = std::max({vertices, u + 1, v + 1});
    if (j.contains("vertices")) vertices = field_as<int>(j, "vertices", path);
    if (static_cast<int>(edges.size()) != m) fail(path, "graphic matroid needs exactly one edge per item");
    c = Constraint::graphic_matroid(vertices, std::move(edges));
  } else if (family == "intersection") {
    const json& members = field(j, "members", path);
    if (!members.is_array()) fail(path + ".members", "expected an array");
    std::vector<Constraint> parsed;
    for (std::size_t k = 0; k < members.size(); ++k) {
      parsed.push_back(parse_constraint(members[k], m, path + ".members[" + std::to_string(k) + "]"));
    }
    c = Constraint::intersection(std::move(parsed));
  } else if (family == "restriction") {
    const Constraint base = parse_constraint(field(j, "base", path), m, path + ".base");
    c = Constraint::restriction(base, ItemSet(field_as<std::vector<ItemId>>(j, "allowed", path)));
  } else {
    fail(path + ".family", "unknown constraint family \"" + family + "\"");
  }
  if (j.contains("p")) c = c->with_declared_p(field_as<int>(j, "p", path));
  return *c;
}

PolicyKind parse_policy(const json& j, int n, const std::string& path) {
  const auto kind = field_as<std::string>(j, "kind", path);
  if (kind == "greedy") return GreedyPolicy{};
  if (kind == "simultaneous_greedy") return SimultaneousGreedyPolicy{};
  if (kind == "scripted") return ScriptedPolicy{field_as<std::vector<ItemId>>(j, "order", path)};
  if (kind == "example1_strategic") return example1_strategic_policy(n);
  fail(path + ".kind", "unknown policy kind \"" + kind + "\"");
}

ProtocolConfig parse_protocol(const json& j, const std::string& path) {
  ProtocolConfig config;
  if (j.contains("order")) config.order = field_as<std::vector<int>>(j, "order", path);
  if (j.contains("rule")) {
    const auto rule = field_as<std::string>(j, "rule", path);
    if (rule == "as_written") {
      config.rule = NegativeMarginalRule::as_written;
    } else if (rule == "skip_nonpositive") {
      config.rule = NegativeMarginalRule::skip_nonpositive;
    } else {
      fail(path + ".rule", "expected \"as_written\" or \"skip_nonpositive\"");
    }
  }
  if (j.contains("rounds")) {
    const auto rounds = field_as<std::string>(j, "rounds", path);
    if (rounds == "ceil_m_over_n") {
      config.rounds = RoundLimit::ceil_m_over_n;
    } else if (rounds == "until_stalled") {
      config.rounds = RoundLimit::until_stalled;
    } else {
      fail(path + ".rounds", "expected \"ceil_m_over_n\" or \"until_stalled\"");
    }
  }
  return config;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  const json doc = parse_document(text);
  const int m = field_as<int>(doc, "m", "$");
  const json& agents = field(doc, "agents", "$");
  if (!agents.is_array() || agents.empty()) fail("$.agents", "expected a non-empty array");
  const int n = static_cast<int>(agents.size());

  std::vector<AgentSpec> specs;
  std::vector<std::optional<PolicyKind>> policies;
  for (int i = 0; i < n; ++i) {
    const std::string path = "$.agents[" + std::to_string(i) + "]";
    const json& a = agents[static_cast<std::size_t>(i)];
    AgentSpec spec = make_agent(parse_objective(field(a, "objective", path), path + ".objective"),
                                parse_constraint(field(a, "constraint", path), m, path + ".constraint"));
    if (a.contains("monotone")) spec.monotone = field_as<bool>(a, "monotone", path);
    specs.push_back(std::move(spec));
    policies.push_back(a.contains("policy") ? std::optional(parse_policy(a["policy"], n, path + ".policy"))
                                            : std::nullopt);
  }

  InstanceFile file{build_instance(GroundSet{m}, std::move(specs)), {}, {}};
  const std::vector<PolicyKind> defaults = default_policies(file.instance);
  for (int i = 0; i < n; ++i) {
    file.policies.push_back(policies[static_cast<std::size_t>(i)].value_or(defaults[static_cast<std::size_t>(i)]));
  }
  if (doc.contains("protocol")) file.config = parse_protocol(doc["protocol"], "$.protocol");
  return file;
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_text_file(path)); }

json objective_to_json(const ObjectiveSpec& spec) {
  return std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, AdditiveParams>) {
          return {{"family", "additive"}, {"weights", p.weights}};
        } else if constexpr (std::is_same_v<P, CoverageParams>) {
          return {{"family", "coverage"}, {"universe", p.universe}, {"covers", p.covers}, {"weights", p.weights}};
        } else if constexpr (std::is_same_v<P, InfluenceParams>) {
          return {{"family", "influence"}, {"edges", edges_to(p.edges)}, {"q", p.q}};
        } else if constexpr (std::is_same_v<P, CutParams>) {
          json j = {{"family", "cut"}, {"edges", edges_to(p.edges)}};
          if (!p.weights.empty()) j["weights"] = p.weights;
          return j;
        } else {
          return {{"family", "example1"},
                  {"n", p.n},
                  {"agent", p.agent},
                  {"eps", p.eps},
                  {"layout", p.layout == Example1Layout::consistent ? "consistent" : "printed"}};
        }
      },
      spec);
}

json constraint_to_json(const Constraint& c) {
  json j = std::visit(
      [](const auto& p) -> json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, CardinalityParams>) {
          return {{"family", "cardinality"}, {"k", p.k}};
        } else if constexpr (std::is_same_v<P, PartitionMatroidParams>) {
          return {{"family", "partition_matroid"}, {"parts", p.parts}, {"caps", p.caps}};
        } else if constexpr (std::is_same_v<P, GraphicMatroidParams>) {
          return {{"family", "graphic_matroid"}, {"vertices", p.vertices}, {"edges", edges_to(p.edges)}};
        } else if constexpr (std::is_same_v<P, IntersectionParams>) {
          json members = json::array();
          for (const Constraint& m : p.members) members.push_back(constraint_to_json(m));
          return {{"family", "intersection"}, {"members", members}};
        } else {
          return {{"family", "restriction"}, {"base", constraint_to_json(*p.base)}, {"allowed", p.allowed.items()}};
        }
      },
      c.params());
  j["p"] = c.declared_p();
  return j;
}

json policy_to_json(const PolicyKind& kind) {
  json j = {{"kind", std::string(policy_name(kind))}};
  if (const auto* s = std::get_if<ScriptedPolicy>(&kind)) j["order"] = s->order;
  return j;
}

std::string instance_to_json(const Instance& instance, const std::vector<PolicyKind>& policies,
                             const ProtocolConfig& config) {
  json agents = json::array();
  for (int i = 0; i < instance.n(); ++i) {
    json a = {{"objective", objective_to_json(instance.agent(i).objective)},
              {"constraint", constraint_to_json(instance.constraint(i))},
              {"monotone", instance.monotone(i)}};
    if (static_cast<std::size_t>(i) < policies.size()) a["policy"] = policy_to_json(policies[static_cast<std::size_t>(i)]);
    agents.push_back(std::move(a));
  }
  json protocol = {{"rule", config.rule == NegativeMarginalRule::as_written ? "as_written" : "skip_nonpositive"},
                   {"rounds", config.rounds == RoundLimit::ceil_m_over_n ? "ceil_m_over_n" : "until_stalled"}};
  if (!config.order.empty()) protocol["order"] = config.order;
  return json{{"m", instance.m()}, {"agents", agents}, {"protocol", protocol}}.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

ExperimentSpec parse_experiment(const std::string& text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("$", "expected an object");
  ExperimentSpec spec;
  if (doc.contains("graph")) {
    const json& g = doc["graph"];
    if (g.contains("vertices")) spec.graph.vertices = field_as<int>(g, "vertices", "$.graph");
    if (g.contains("avg_degree")) spec.graph.avg_degree = field_as<double>(g, "avg_degree", "$.graph");
    if (g.contains("regime")) {
      const auto r = parse_competition_regime(field_as<std::string>(g, "regime", "$.graph"));
      if (!r) fail("$.graph.regime", "expected \"low\", \"medium\" or \"high\"");
      spec.graph.regime = *r;
    }
    if (g.contains("seed")) spec.graph.seed = RngSeed{field_as<std::uint64_t>(g, "seed", "$.graph")};
  }
  if (doc.contains("agents")) spec.agents = field_as<int>(doc, "agents", "$");
  if (doc.contains("cardinality")) spec.cardinality = field_as<int>(doc, "cardinality", "$");
  if (doc.contains("q")) spec.q = field_as<double>(doc, "q", "$");
  if (doc.contains("runs")) spec.runs = field_as<int>(doc, "runs", "$");
  if (doc.contains("sweep")) {
    const auto s = field_as<std::string>(doc, "sweep", "$");
    if (s == "agents") {
      spec.sweep = Sweep::agents;
    } else if (s == "cardinality") {
      spec.sweep = Sweep::cardinality;
    } else {
      fail("$.sweep", "expected \"agents\" or \"cardinality\"");
    }
  }
  if (doc.contains("values")) spec.values = field_as<std::vector<int>>(doc, "values", "$");
  if (doc.contains("protocol")) {
    const auto p = field_as<std::string>(doc, "protocol", "$");
    if (p == "fixed") {
      spec.protocol = ProtocolChoice::fixed;
    } else if (p == "randomized") {
      spec.protocol = ProtocolChoice::randomized;
    } else {
      fail("$.protocol", "expected \"fixed\" or \"randomized\"");
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) { return parse_experiment(read_text_file(path)); }

std::string experiment_to_json(const ExperimentSpec& spec) {
  const json doc = {{"graph",
                     {{"vertices", spec.graph.vertices},
                      {"avg_degree", spec.graph.avg_degree},
                      {"regime", std::string(regime_name(spec.graph.regime))},
                      {"seed", spec.graph.seed.value}}},
                    {"agents", spec.agents},
                    {"cardinality", spec.cardinality},
                    {"q", spec.q},
                    {"runs", spec.runs},
                    {"sweep", spec.sweep == Sweep::agents ? "agents" : "cardinality"},
                    {"values", spec.sweep_values()},
                    {"protocol", spec.protocol == ProtocolChoice::fixed ? "fixed" : "randomized"}};
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace msm
