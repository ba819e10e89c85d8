#include <cmdp/cmdp.h>

#include "acceptance/criteria.hpp"

#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/io.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/synthesis.hpp>
#include <cmdp/values.hpp>

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

struct cmdp_mdp {
  cmdp::FiniteMdp mdp;
};

struct cmdp_gallery {
  cmdp::GalleryEntry entry;
};

namespace {

using nlohmann::json;
using namespace cmdp;

thread_local std::string last_error;

cmdp_status fail(cmdp_status status, const std::string& message) {
  last_error = message;
  return status;
}

cmdp_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return CMDP_INVALID_ARGUMENT;
    case ErrorCode::precondition: return CMDP_PRECONDITION;
    case ErrorCode::not_converged: return CMDP_NOT_CONVERGED;
    case ErrorCode::not_found: return CMDP_NOT_FOUND;
    case ErrorCode::internal: return CMDP_INTERNAL;
  }
  return CMDP_INTERNAL;
}

template <class F>
cmdp_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CMDP_OK;
  } catch (const NotConverged& e) {
    std::ostringstream os;
    os << e.what() << " (residual " << e.residual() << ")";
    return fail(CMDP_NOT_CONVERGED, os.str());
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const json::parse_error& e) {
    return fail(CMDP_PARSE_ERROR, e.what());
  } catch (const json::exception& e) {
    return fail(CMDP_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CMDP_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CMDP_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidInput(std::string(what) + " must not be NULL");
}

json parse(const char* text, const char* what) {
  if (text == nullptr || *text == '\0') return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
  return j;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, json j) {
  require(out, "output pointer");
  j["schema"] = kSchemaVersion;
  *out = dup(j.dump(2));
}

Rational rational_field(const json& j, const char* key, const Rational& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return parse_rational(v.dump());
  throw InvalidInput(std::string("'") + key + "' must be a number or a rational string");
}

std::set<Color> colors_of(const FiniteMdp& mdp) {
  std::set<Color> out;
  for (std::size_t i = 0; i < mdp.size(); ++i) out.insert(mdp.color(i));
  return out;
}

// Listed state ids must exist; a typo would otherwise read as an empty set.
void check_ids(const json& predicate, const FiniteMdp& mdp) {
  auto known = [&](const json& id) {
    const StateId s = state_id_from_json(id);
    if (!mdp.find(s)) throw NotFound("objective mentions unknown state '" + s.str() + "'");
  };
  if (predicate.is_array())
    for (const auto& id : predicate) known(id);
  else if (predicate.is_string() && predicate != "all" && predicate != "none")
    known(predicate);
}

Objective objective_for(const json& req, const FiniteMdp& mdp) {
  if (!req.contains("objective")) throw InvalidInput("request needs an \"objective\"");
  const json& o = req.at("objective");
  if (o.is_object()) {
    for (const char* key : {"target", "avoid"})
      if (o.contains(key)) check_ids(o.at(key), mdp);
    if (o.contains("pairs") && o.at("pairs").is_array())
      for (const auto& p : o.at("pairs"))
        for (const char* key : {"e", "f"})
          if (p.is_object() && p.contains(key)) check_ids(p.at(key), mdp);
  }
  return objective_from_json(o, colors_of(mdp));
}

SolverOptions solver_options(const json& req) {
  SolverOptions o;
  if (req.contains("backend")) o.backend = backend_from_string(req.at("backend").get<std::string>());
  o.tolerance = req.value("tolerance", o.tolerance);
  o.max_sweeps = req.value("max_sweeps", o.max_sweeps);
  if (!(o.tolerance > 0)) throw InvalidInput("tolerance must be positive");
  return o;
}

json values_json(const FiniteMdp& mdp, const ValueVector& v) {
  json values = json::object();
  for (std::size_t i = 0; i < mdp.size(); ++i) {
    if (v.backend == Backend::rational)
      values[mdp.id(i).str()] = to_string(v.exact[i]);
    else
      values[mdp.id(i).str()] = v.approx[i];
  }
  json out = {{"backend", to_string(v.backend)}, {"values", std::move(values)}};
  if (v.backend == Backend::floating) out["sweeps"] = v.sweeps;
  return out;
}

json map_json(const std::map<StateId, Rational>& m) {
  json out = json::object();
  for (const auto& [s, q] : m) out[s.str()] = to_string(q);
  return out;
}

json synthesis_json(const std::string& method, const SynthesisResult& r) {
  json trace = json::object();
  for (const auto& [s, t] : r.trace) trace[s.str()] = t;
  return {{"method", method},
          {"backend", to_string(r.backend)},
          {"strategy", md_to_json(r.strategy)},
          {"guarantee", map_json(r.guarantee)},
          {"trace", std::move(trace)},
          {"metadata", r.metadata},
          {"warnings", r.warnings}};
}

SynthesisResult with_values(const FiniteMdp& mdp, MdStrategy sigma, const Objective& obj) {
  SynthesisResult r;
  const std::vector<Rational> v = md_value(mdp, sigma, obj).exact;
  for (std::size_t i = 0; i < mdp.size(); ++i) r.guarantee[mdp.id(i)] = v[i];
  r.strategy = std::move(sigma);
  return r;
}

SynthesisResult synthesize_finite(const FiniteMdp& mdp, const std::string& method, const json& req) {
  if (method == "as_buchi") return with_values(mdp, as_buchi_md(mdp), Parity{{1, 2}});
  if (method == "as_parity012") return with_values(mdp, as_parity012_md(mdp), Parity{{0, 1, 2}});

  const Objective obj = objective_for(req, mdp);
  const Rational eps = rational_field(req, "epsilon", Rational(1, 20));
  if (method == "optimal") {
    if (const auto* p = std::get_if<Parity>(&obj)) return optimal_parity_md(mdp, *p);
    if (const auto* r = std::get_if<Reach>(&obj)) return eps_optimal_reach_md(mdp, mask_of(mdp, r->target), 0.0);
    if (const auto* s = std::get_if<Safety>(&obj)) return with_values(mdp, sigma_opt_av(mdp, mask_of(mdp, s->avoid)), obj);
    throw InvalidInput("optimal synthesis supports Reach, Safety and Parity objectives");
  }
  if (method == "opt_av") {
    const auto* s = std::get_if<Safety>(&obj);
    if (s == nullptr) throw InvalidInput("opt_av needs a safety objective");
    return with_values(mdp, sigma_opt_av(mdp, mask_of(mdp, s->avoid)), obj);
  }
  if (method == "as_reach") {
    const auto* r = std::get_if<Reach>(&obj);
    if (r == nullptr) throw InvalidInput("as_reach needs a reach objective");
    return with_values(mdp, as_reach_md(mdp, mask_of(mdp, r->target)), obj);
  }
  if (method == "eps_reach") {
    const auto* r = std::get_if<Reach>(&obj);
    if (r == nullptr) throw InvalidInput("eps_reach needs a reach objective");
    return eps_optimal_reach_md(mdp, mask_of(mdp, r->target), eps.get_d());
  }
  if (method == "cobuchi") return eps_optimal_cobuchi_md(mdp, eps);
  throw InvalidInput("unknown synthesis method '" + method + "'");
}

std::vector<StateId> ids_field(const json& req, const char* key) {
  std::vector<StateId> out;
  if (req.contains(key))
    for (const auto& s : req.at(key)) out.push_back(state_id_from_json(s));
  return out;
}

SimulationOptions simulation_options(const json& req) {
  SimulationOptions o;
  o.horizon = req.value("horizon", o.horizon);
  o.episodes = req.value("episodes", o.episodes);
  o.seed = req.value("seed", o.seed);
  o.threads = req.value("threads", o.threads);
  o.cycle_events = req.value("cycle_events", o.cycle_events);
  return o;
}

json report_json(const SimulationReport& r) {
  json events = json::array();
  for (const auto& e : r.events)
    events.push_back({{"name", e.name}, {"count", e.count}, {"frequency", e.frequency}, {"std_error", e.std_error}});
  json visits = json::object();
  for (const auto& [s, c] : r.visits) visits[s.str()] = c;
  return {{"episodes", r.episodes}, {"horizon", r.horizon},     {"seed", r.seed},
          {"rng", r.rng},           {"events", std::move(events)}, {"aborted", r.aborted},
          {"diagnostics", r.diagnostics}, {"visits", std::move(visits)}};
}

std::vector<int> suite_ids(const char* suite) {
  const std::string s = suite == nullptr ? "all" : suite;
  if (s.empty() || s == "all") return acceptance::criterion_ids();
  std::vector<int> ids;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      ids.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidInput("suite must be \"all\" or comma-separated criterion ids, got '" + s + "'");
    }
  }
  return ids;
}

}  // namespace

extern "C" {

const char* cmdp_version(void) { return "0.1.0"; }

const char* cmdp_status_name(cmdp_status status) {
  switch (status) {
    case CMDP_OK: return "ok";
    case CMDP_INVALID_ARGUMENT: return "invalid argument";
    case CMDP_PARSE_ERROR: return "parse error";
    case CMDP_PRECONDITION: return "precondition violated";
    case CMDP_NOT_CONVERGED: return "not converged";
    case CMDP_NOT_FOUND: return "not found";
    case CMDP_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cmdp_last_error(void) { return last_error.c_str(); }

void cmdp_string_free(char* s) { std::free(s); }

cmdp_status cmdp_mdp_from_json(const char* text, cmdp_mdp** out) {
  return guarded([&] {
    require(out, "output pointer");
    require(text, "json");
    FiniteMdp mdp = mdp_from_json(json::parse(text));
    require_valid(mdp);
    *out = new cmdp_mdp{std::move(mdp)};
  });
}

void cmdp_mdp_free(cmdp_mdp* mdp) { delete mdp; }

size_t cmdp_mdp_size(const cmdp_mdp* mdp) { return mdp == nullptr ? 0 : mdp->mdp.size(); }

cmdp_status cmdp_mdp_to_json(const cmdp_mdp* mdp, char** out) {
  return guarded([&] {
    require(mdp, "mdp");
    emit(out, mdp_to_json(mdp->mdp));
  });
}

cmdp_status cmdp_mdp_to_dot(const cmdp_mdp* mdp, char** out) {
  return guarded([&] {
    require(mdp, "mdp");
    require(out, "output pointer");
    *out = dup(to_dot(mdp->mdp));
  });
}

cmdp_status cmdp_validate_json(const char* text, char** out) {
  return guarded([&] {
    require(text, "json");
    const FiniteMdp mdp = mdp_from_json(json::parse(text));
    const ValidationReport rep = validate(mdp);
    json violations = json::array();
    for (const auto& v : rep.violations) violations.push_back({{"state", v.state.str()}, {"message", v.message}});
    emit(out, {{"ok", rep.ok()}, {"states", mdp.size()}, {"violations", std::move(violations)}});
  });
}

cmdp_status cmdp_value(const cmdp_mdp* mdp, const char* request, char** out) {
  return guarded([&] {
    require(mdp, "mdp");
    const json req = parse(request, "request");
    const Objective obj = objective_for(req, mdp->mdp);
    json res = values_json(mdp->mdp, objective_value(mdp->mdp, obj, solver_options(req)));
    res["objective"] = describe(obj);
    emit(out, std::move(res));
  });
}

cmdp_status cmdp_synthesize(const cmdp_mdp* mdp, const char* request, char** out) {
  return guarded([&] {
    require(mdp, "mdp");
    const json req = parse(request, "request");
    const std::string method = req.value("method", std::string("optimal"));
    emit(out, synthesis_json(method, synthesize_finite(mdp->mdp, method, req)));
  });
}

cmdp_status cmdp_evaluate(const cmdp_mdp* mdp, const char* strategy, const char* request, char** out) {
  return guarded([&] {
    require(mdp, "mdp");
    const json req = parse(request, "request");
    const Objective obj = objective_for(req, mdp->mdp);
    const AnyStrategy sigma = strategy_from_json(parse(strategy, "strategy"));
    json res;
    if (const auto* md = std::get_if<MdStrategy>(&sigma)) {
      res = values_json(mdp->mdp, md_value(mdp->mdp, *md, obj));
    } else if (const auto* t = std::get_if<Transducer>(&sigma)) {
      // Evaluate on the product chain; predicates see the underlying state.
      const ProductChain pc = product(mdp->mdp, *t);
      std::map<StateId, StateId> origin;
      for (std::size_t i = 0; i < pc.chain.size(); ++i) origin.emplace(pc.chain.id(i), pc.origin[i].second);
      auto lift = [&](const StatePredicate& p) -> StatePredicate {
        return [p, origin](const StateId& s, Color c) {
          auto it = origin.find(s);
          return p(it == origin.end() ? s : it->second, c);
        };
      };
      auto lift_pairs = [&](std::vector<AcceptancePair> pairs) {
        for (auto& pr : pairs) pr = {lift(pr.e), lift(pr.f)};
        return pairs;
      };
      Objective lifted = obj;
      if (const auto* r = std::get_if<Reach>(&obj)) lifted = Reach{lift(r->target)};
      if (const auto* s = std::get_if<Safety>(&obj)) lifted = Safety{lift(s->avoid)};
      if (const auto* r = std::get_if<Rabin>(&obj)) lifted = Rabin{lift_pairs(r->pairs)};
      if (const auto* s = std::get_if<Streett>(&obj)) lifted = Streett{lift_pairs(s->pairs)};
      const ValueVector v = md_value(pc.chain, MdStrategy{}, lifted);
      res = values_json(pc.chain, v);
      if (pc.chain.declared_initial())
        res["initial"] = {{"state", pc.chain.declared_initial()->str()},
                          {"value", to_string(v.exact[pc.chain.index(*pc.chain.declared_initial())])}};
      res["product_states"] = pc.chain.size();
    } else {
      throw InvalidInput("counter strategies cannot be given as JSON");
    }
    res["objective"] = describe(obj);
    emit(out, std::move(res));
  });
}

cmdp_status cmdp_simulate_mdp(const cmdp_mdp* mdp, const char* request, char** out) {
  return guarded([&] {
    require(mdp, "mdp");
    const json req = parse(request, "request");
    if (!req.contains("strategy")) throw InvalidInput("request needs a \"strategy\"");
    const AnyStrategy sigma = strategy_from_json(req.at("strategy"));
    const FiniteAsCountable view(std::make_shared<const FiniteMdp>(mdp->mdp));
    std::optional<StateId> anchor;
    if (req.contains("anchor")) anchor = state_id_from_json(req.at("anchor"));
    StatePredicate fatal;
    if (req.contains("fatal")) {
      const std::vector<StateId> ids = ids_field(req, "fatal");
      fatal = pred::in(std::set<StateId>(ids.begin(), ids.end()));
    }
    emit(out, report_json(simulate(view, sigma, simulation_options(req), anchor, fatal)));
  });
}

cmdp_status cmdp_gallery_list(char** out) {
  return guarded([&] {
    json entries = json::array();
    for (const auto& name : gallery_names()) {
      const GalleryEntry e = gallery_entry(name);
      json strategies = json::array();
      for (const auto& s : e.strategies) strategies.push_back(s.name);
      entries.push_back({{"name", name}, {"summary", e.summary}, {"strategies", std::move(strategies)}});
    }
    emit(out, {{"entries", std::move(entries)}});
  });
}

cmdp_status cmdp_gallery_open(const char* name, const char* param, cmdp_gallery** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "output pointer");
    std::optional<Rational> p;
    if (param != nullptr) p = parse_rational(param);
    *out = new cmdp_gallery{gallery_entry(name, p)};
  });
}

void cmdp_gallery_free(cmdp_gallery* g) { delete g; }

cmdp_status cmdp_gallery_describe(const cmdp_gallery* g, char** out) {
  return guarded([&] {
    require(g, "gallery");
    const GalleryEntry& e = g->entry;
    json strategies = json::array();
    for (const auto& s : e.strategies) strategies.push_back(s.name);
    json res = {{"name", e.name},
                {"summary", e.summary},
                {"objective", describe(e.objective)},
                {"initial", e.mdp->initial().str()},
                {"strategies", std::move(strategies)},
                {"claims", e.claims}};
    if (e.anchor) res["anchor"] = e.anchor->str();
    emit(out, std::move(res));
  });
}

cmdp_status cmdp_gallery_truncate(const cmdp_gallery* g, const char* request, cmdp_mdp** out) {
  return guarded([&] {
    require(g, "gallery");
    require(out, "output pointer");
    const json req = parse(request, "request");
    if (!req.contains("radius")) throw InvalidInput("truncation needs a \"radius\"");
    TruncationOptions opts;
    opts.radius = req.at("radius").get<std::size_t>();
    const std::string boundary = req.value("boundary", std::string("pessimistic"));
    if (boundary == "optimistic")
      opts.boundary = Boundary::optimistic;
    else if (boundary != "pessimistic")
      throw InvalidInput("boundary is 'pessimistic' or 'optimistic', got '" + boundary + "'");
    if (req.contains("branch_cap")) opts.branch_cap = req.at("branch_cap").get<std::size_t>();
    Truncation tr = truncate(*g->entry.mdp, g->entry.objective, opts);
    *out = new cmdp_mdp{std::move(tr.mdp)};
  });
}

cmdp_status cmdp_value_bounds(const cmdp_gallery* g, const char* request, char** out) {
  return guarded([&] {
    require(g, "gallery");
    const json req = parse(request, "request");
    if (!req.contains("radius")) throw InvalidInput("value bounds need a \"radius\"");
    const Objective obj = req.contains("objective") ? objective_from_json(req.at("objective")) : g->entry.objective;
    std::optional<std::size_t> cap;
    if (req.contains("branch_cap")) cap = req.at("branch_cap").get<std::size_t>();
    const ValueBounds b = value_bounds(*g->entry.mdp, obj, req.at("radius").get<std::size_t>(), cap);
    json states = json::array();
    for (std::size_t i = 0; i < b.states.size(); ++i)
      states.push_back({{"id", b.states[i].str()}, {"lower", to_string(b.lower[i])}, {"upper", to_string(b.upper[i])}});
    emit(out, {{"entry", g->entry.name},
               {"objective", describe(obj)},
               {"radius", b.radius},
               {"branch_cap", b.branch_cap},
               {"states", std::move(states)}});
  });
}

cmdp_status cmdp_synthesize_gallery(const cmdp_gallery* g, const char* request, char** out) {
  return guarded([&] {
    require(g, "gallery");
    const json req = parse(request, "request");
    const std::string method = req.value("method", std::string("eps_reach"));
    const Rational eps = rational_field(req, "epsilon", Rational(1, 20));
    CountableSynthesisOptions opts;
    opts.queried = ids_field(req, "queried");
    opts.initial_radius = req.value("initial_radius", opts.initial_radius);
    opts.max_radius = req.value("max_radius", opts.max_radius);
    if (req.contains("branch_cap")) opts.branch_cap = req.at("branch_cap").get<std::size_t>();
    SynthesisResult r;
    if (method == "eps_reach") {
      const Objective obj = req.contains("objective") ? objective_from_json(req.at("objective")) : g->entry.objective;
      const auto* reach = std::get_if<Reach>(&obj);
      if (reach == nullptr) throw InvalidInput("eps_reach needs a reach objective");
      r = eps_optimal_reach_md(*g->entry.mdp, reach->target, eps.get_d(), opts);
    } else if (method == "cobuchi") {
      r = eps_optimal_cobuchi_md(*g->entry.mdp, eps, opts);
    } else {
      throw InvalidInput("countable synthesis methods are eps_reach and cobuchi, got '" + method + "'");
    }
    emit(out, synthesis_json(method, r));
  });
}

cmdp_status cmdp_simulate(const cmdp_gallery* g, const char* request, char** out) {
  return guarded([&] {
    require(g, "gallery");
    const json req = parse(request, "request");
    if (!req.contains("strategy")) throw InvalidInput("request needs a \"strategy\"");
    const json& s = req.at("strategy");
    std::optional<AnyStrategy> sigma;
    if (s.is_string()) {
      sigma = find_strategy(g->entry, s.get<std::string>());
      if (!sigma) throw NotFound("entry '" + g->entry.name + "' has no strategy named '" + s.get<std::string>() + "'");
    } else {
      sigma = strategy_from_json(s);
    }
    json res = report_json(simulate(g->entry, *sigma, simulation_options(req)));
    res["entry"] = g->entry.name;
    emit(out, std::move(res));
  });
}

cmdp_status cmdp_borel_cantelli(const cmdp_gallery* g, const char* request, char** out) {
  return guarded([&] {
    require(g, "gallery");
    const json req = parse(request, "request");
    if (!req.contains("strategy")) throw InvalidInput("request needs a \"strategy\"");
    const BorelCantelliResult r =
        borel_cantelli_sum(g->entry, req.at("strategy").get<std::string>(), req.value("cutoff", 60u));
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back(to_string(t));
    json res = {{"entry", r.entry},
                {"strategy", r.strategy},
                {"cutoff", r.cutoff},
                {"terms", std::move(terms)},
                {"partial_sum", to_string(r.partial_sum)},
                {"partial_sum_approx", r.partial_sum.get_d()},
                {"limit", r.limit ? json(to_string(*r.limit)) : json()},
                {"limit_is_bound", r.limit_is_bound},
                {"event_partial_sum", to_string(r.event_partial_sum)},
                {"survival_lower_bound", r.survival_lower_bound ? json(to_string(*r.survival_lower_bound)) : json()},
                {"survival_lower_bound_approx", r.survival_lower_bound ? json(r.survival_lower_bound->get_d()) : json()}};
    emit(out, std::move(res));
  });
}

cmdp_status cmdp_futility(const cmdp_gallery* g, const char* transducer, const char* request, char** out) {
  return guarded([&] {
    require(g, "gallery");
    require(transducer, "transducer");
    const json req = parse(request, "request");
    const Transducer t = transducer_from_json(json::parse(transducer));
    const FutilityCertificate c = fr_futility(g->entry, t, req.value("max_states", std::size_t{50'000}));
    json anchors = json::array();
    for (const auto& a : c.anchors)
      anchors.push_back({{"mode", a.mode},
                         {"fatal_before_return", to_string(a.fatal_before_return)},
                         {"return_prob", to_string(a.return_prob)}});
    emit(out, {{"entry", c.entry},
               {"product_states", c.product_states},
               {"anchors", std::move(anchors)},
               {"c", to_string(c.c)},
               {"c_approx", c.c.get_d()},
               {"conclusion", c.conclusion},
               {"case_split", c.case_split},
               {"note", c.note}});
  });
}

cmdp_status cmdp_accept(const char* suite, cmdp_accept_callback callback, void* user, int* failures) {
  return guarded([&] {
    const std::vector<int> ids = suite_ids(suite);
    int failed = 0;
    acceptance::run_suite(ids, [&](const acceptance::CriterionResult& r) {
      failed += r.pass ? 0 : 1;
      if (callback != nullptr) callback(acceptance::format_line(r).c_str(), r.pass ? 1 : 0, user);
    });
    if (failures != nullptr) *failures = failed;
  });
}

}  // extern "C"
