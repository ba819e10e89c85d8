#include <cmdp/errors.hpp>
#include <cmdp/io.hpp>
#include <cmdp/mdp_ops.hpp>

#include <map>
#include <sstream>

namespace cmdp {

using nlohmann::json;

namespace {

void check_schema(const json& j) {
  if (!j.is_object()) throw InvalidInput("expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion)
    throw InvalidInput("unsupported schema version " + j.at("schema").dump());
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.dump(), 10);
  if (j.is_number_float()) return parse_rational(j.dump());
  throw InvalidInput("expected a probability, got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

StateId state_id_from_json(const json& j) {
  if (j.is_string()) return StateId(j.get<std::string>());
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0)) return StateId(j.dump());
  throw InvalidInput("state ids are strings or nonnegative integers, got " + j.dump());
}

FiniteMdp mdp_from_json(const json& j) {
  check_schema(j);
  std::vector<StateSpec> states;
  std::map<StateId, std::size_t> pos;
  for (const auto& s : field(j, "states")) {
    StateSpec spec;
    spec.id = state_id_from_json(field(s, "id"));
    const std::string kind = s.value("kind", "controller");
    if (kind == "controller")
      spec.kind = StateKind::controller;
    else if (kind == "random")
      spec.kind = StateKind::random;
    else
      throw InvalidInput("state '" + spec.id.str() + "' has unknown kind '" + kind + "'");
    const json& color = s.contains("color") ? s.at("color") : json(0);
    if (!color.is_number_integer() || color.get<long long>() < 0)
      throw InvalidInput("state '" + spec.id.str() + "' needs a nonnegative integer color");
    spec.color = color.get<Color>();
    pos.emplace(spec.id, states.size());
    states.push_back(std::move(spec));
  }
  if (j.contains("transitions")) {
    for (const auto& t : j.at("transitions")) {
      StateId from = state_id_from_json(field(t, "from"));
      auto it = pos.find(from);
      if (it == pos.end()) throw InvalidInput("transition from unknown state '" + from.str() + "'");
      StateSpec& spec = states[it->second];
      Transition tr{state_id_from_json(field(t, "to")), Rational(0)};
      if (spec.kind == StateKind::random) tr.prob = rational_from_json(field(t, "prob"));
      spec.successors.push_back(std::move(tr));
    }
  }
  std::optional<StateId> initial;
  if (j.contains("initial") && !j.at("initial").is_null()) initial = state_id_from_json(j.at("initial"));
  return FiniteMdp(std::move(states), std::move(initial));
}

json mdp_to_json(const FiniteMdp& mdp) {
  json states = json::array();
  json transitions = json::array();
  for (const auto& spec : mdp.specs()) {
    states.push_back({{"id", spec.id.str()}, {"kind", to_string(spec.kind)}, {"color", spec.color}});
    for (const auto& tr : spec.successors) {
      json t = {{"from", spec.id.str()}, {"to", tr.to.str()}};
      if (spec.kind == StateKind::random) t["prob"] = to_string(tr.prob);
      transitions.push_back(std::move(t));
    }
  }
  json out = {{"schema", kSchemaVersion}, {"states", std::move(states)}, {"transitions", std::move(transitions)}};
  if (mdp.declared_initial()) out["initial"] = mdp.declared_initial()->str();
  return out;
}

MdStrategy md_from_json(const json& j) {
  check_schema(j);
  MdStrategy sigma;
  for (const auto& [from, to] : field(j, "choice").items()) sigma.choice.emplace(StateId(from), state_id_from_json(to));
  return sigma;
}

json md_to_json(const MdStrategy& sigma, const std::map<StateId, Rational>* guarantee) {
  json choice = json::object();
  for (const auto& [from, to] : sigma.choice) choice[from.str()] = to.str();
  json out = {{"schema", kSchemaVersion}, {"choice", std::move(choice)}};
  if (guarantee != nullptr) {
    json g = json::object();
    for (const auto& [s, v] : *guarantee) g[s.str()] = to_string(v);
    out["guarantee"] = std::move(g);
  }
  return out;
}

Transducer transducer_from_json(const json& j) {
  check_schema(j);
  Transducer t;
  std::map<std::string, std::size_t> mode_index;
  for (const auto& m : field(j, "modes")) {
    const std::string name = m.get<std::string>();
    if (!mode_index.emplace(name, t.modes.size()).second) throw InvalidInput("duplicate mode '" + name + "'");
    t.modes.push_back(name);
  }
  if (t.modes.empty()) throw InvalidInput("transducer needs at least one mode");
  auto mode_of = [&](const json& v) {
    const std::string name = v.get<std::string>();
    auto it = mode_index.find(name);
    if (it == mode_index.end()) throw InvalidInput("unknown mode '" + name + "'");
    return it->second;
  };
  t.initial = j.contains("initial") ? mode_of(j.at("initial")) : 0;
  t.default_update.assign(t.modes.size(), std::nullopt);
  t.default_successor.assign(t.modes.size(), std::nullopt);

  for (const auto& rule : j.value("update", json::array())) {
    const std::size_t m = mode_of(field(rule, "mode"));
    Distribution<std::size_t> d;
    for (const auto& [name, p] : field(rule, "dist").items()) d.emplace_back(mode_of(json(name)), rational_from_json(p));
    const StateId s = state_id_from_json(field(rule, "state"));
    if (s.str() == "*")
      t.default_update[m] = std::move(d);
    else
      t.update[{m, s}] = std::move(d);
  }
  for (const auto& rule : j.value("successor", json::array())) {
    const std::size_t m = mode_of(field(rule, "mode"));
    Transducer::SuccessorRule r;
    if (rule.contains("dist"))
      for (const auto& [to, p] : rule.at("dist").items()) r.by_id.emplace_back(StateId(to), rational_from_json(p));
    if (rule.contains("ordinal_dist"))
      for (const auto& [ord, p] : rule.at("ordinal_dist").items()) {
        std::size_t pos = 0;
        unsigned long value = 0;
        try {
          value = std::stoul(ord, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos != ord.size() || ord.empty()) throw InvalidInput("ordinal '" + ord + "' is not a nonnegative integer");
        r.by_ordinal.emplace_back(value, rational_from_json(p));
      }
    const StateId s = state_id_from_json(field(rule, "state"));
    if (s.str() == "*")
      t.default_successor[m] = std::move(r);
    else
      t.successor[{m, s}] = std::move(r);
  }
  check_transducer(t);
  return t;
}

json transducer_to_json(const Transducer& t) {
  json update = json::array();
  auto dist_modes = [&](const Distribution<std::size_t>& d) {
    json o = json::object();
    for (const auto& [m, p] : d) o[t.modes.at(m)] = to_string(p);
    return o;
  };
  auto rule_json = [](const Transducer::SuccessorRule& r) {
    json o = json::object();
    if (!r.by_id.empty()) {
      json d = json::object();
      for (const auto& [s, p] : r.by_id) d[s.str()] = to_string(p);
      o["dist"] = std::move(d);
    }
    if (!r.by_ordinal.empty()) {
      json d = json::object();
      for (const auto& [k, p] : r.by_ordinal) d[std::to_string(k)] = to_string(p);
      o["ordinal_dist"] = std::move(d);
    }
    return o;
  };
  for (const auto& [key, d] : t.update)
    update.push_back({{"mode", t.modes.at(key.first)}, {"state", key.second.str()}, {"dist", dist_modes(d)}});
  for (std::size_t m = 0; m < t.default_update.size(); ++m)
    if (t.default_update[m]) update.push_back({{"mode", t.modes[m]}, {"state", "*"}, {"dist", dist_modes(*t.default_update[m])}});
  json successor = json::array();
  for (const auto& [key, r] : t.successor) {
    json o = rule_json(r);
    o["mode"] = t.modes.at(key.first);
    o["state"] = key.second.str();
    successor.push_back(std::move(o));
  }
  for (std::size_t m = 0; m < t.default_successor.size(); ++m) {
    if (!t.default_successor[m]) continue;
    json o = rule_json(*t.default_successor[m]);
    o["mode"] = t.modes[m];
    o["state"] = "*";
    successor.push_back(std::move(o));
  }
  return {{"schema", kSchemaVersion},
          {"modes", t.modes},
          {"initial", t.modes.at(t.initial)},
          {"update", std::move(update)},
          {"successor", std::move(successor)}};
}

namespace {

StatePredicate predicate_from_json(const json& j) {
  if (j.is_string()) {
    if (j == "all") return pred::all();
    if (j == "none") return pred::none();
    return pred::in({StateId(j.get<std::string>())});
  }
  if (j.is_array()) {
    std::set<StateId> ids;
    for (const auto& s : j) ids.insert(state_id_from_json(s));
    return pred::in(std::move(ids));
  }
  if (j.is_object() && j.contains("color")) return pred::color_eq(j.at("color").get<Color>());
  if (j.is_object() && j.contains("not_color")) return pred::color_ne(j.at("not_color").get<Color>());
  throw InvalidInput("cannot read a state predicate from " + j.dump());
}

std::vector<AcceptancePair> pairs_from_json(const json& j) {
  std::vector<AcceptancePair> out;
  for (const auto& p : field(j, "pairs"))
    out.push_back({predicate_from_json(field(p, "e")), predicate_from_json(field(p, "f"))});
  return out;
}

}  // namespace

Objective objective_from_json(const json& j, const std::set<Color>& default_colors) {
  if (!j.is_object()) throw InvalidInput("objective must be a JSON object");
  const std::string type = field(j, "type").get<std::string>();
  Objective obj;
  if (type == "reach") {
    obj = Reach{predicate_from_json(field(j, "target"))};
  } else if (type == "safety") {
    obj = Safety{predicate_from_json(field(j, "avoid"))};
  } else if (type == "parity") {
    std::set<Color> colors = default_colors;
    if (j.contains("colors")) colors = j.at("colors").get<std::set<Color>>();
    obj = Parity{std::move(colors)};
  } else if (type == "rabin") {
    obj = Rabin{pairs_from_json(j)};
  } else if (type == "streett") {
    obj = Streett{pairs_from_json(j)};
  } else {
    throw InvalidInput("unknown objective type '" + type + "'");
  }
  check_objective(obj);
  return obj;
}

AnyStrategy strategy_from_json(const json& j) {
  check_schema(j);
  if (j.contains("modes")) return transducer_from_json(j);
  if (j.contains("choice")) return md_from_json(j);
  throw InvalidInput("a strategy needs either \"choice\" (memoryless) or \"modes\" (transducer)");
}

std::string to_dot(const FiniteMdp& mdp, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (const auto& spec : mdp.specs()) {
    const std::string id = dot_escape(spec.id.str());
    os << "  \"" << id << "\" [shape=" << (spec.kind == StateKind::controller ? "box" : "circle");
    if (spec.id == kSinkId) os << ", style=dashed";
    if (mdp.declared_initial() && *mdp.declared_initial() == spec.id) os << ", penwidth=2";
    os << ", label=\"" << id << "\\ncol " << spec.color << "\"];\n";
  }
  for (const auto& spec : mdp.specs()) {
    for (const auto& tr : spec.successors) {
      os << "  \"" << dot_escape(spec.id.str()) << "\" -> \"" << dot_escape(tr.to.str()) << "\"";
      if (spec.kind == StateKind::random) os << " [label=\"" << to_string(tr.prob) << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace cmdp
