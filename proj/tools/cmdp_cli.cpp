// cmdp: command-line front end over the C API in libcmdp.
//
// Exit codes: 0 success, 1 domain error (bad model, failed precondition,
// failed acceptance criterion), 2 usage error.

#include <cmdp/cmdp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolved configuration: built-in defaults, then --config file, then the
// CMDP_SEED / CMDP_BACKEND environment, then explicit flags.
struct Config {
  std::string backend = "rational";
  double tolerance = 1e-9;
  std::size_t max_sweeps = 1'000'000;
  std::size_t radius = 8;
  std::optional<std::size_t> branch_cap;
  std::uint64_t seed = 0;
};

struct Globals {
  std::string format = "text";
  std::string config_file;
  std::optional<std::string> backend;
  std::optional<double> tolerance;
  std::optional<std::size_t> max_sweeps;
  std::optional<std::uint64_t> seed;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Config resolve(const Globals& g) {
  Config c;
  if (!g.config_file.empty()) {
    json j;
    try {
      j = json::parse(read_file(g.config_file));
    } catch (const json::exception& e) {
      throw UsageError("config file '" + g.config_file + "': " + e.what());
    }
    c.backend = j.value("backend", c.backend);
    c.tolerance = j.value("tolerance", c.tolerance);
    c.max_sweeps = j.value("max_sweeps", c.max_sweeps);
    c.radius = j.value("radius", c.radius);
    if (j.contains("branch_cap")) c.branch_cap = j.at("branch_cap").get<std::size_t>();
    c.seed = j.value("seed", c.seed);
  }
  if (const char* s = std::getenv("CMDP_SEED"); s != nullptr && *s != '\0') {
    try {
      c.seed = std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("CMDP_SEED is not an unsigned integer: ") + s);
    }
  }
  if (const char* b = std::getenv("CMDP_BACKEND"); b != nullptr && *b != '\0') c.backend = b;
  if (g.backend) c.backend = *g.backend;
  if (g.tolerance) c.tolerance = *g.tolerance;
  if (g.max_sweeps) c.max_sweeps = *g.max_sweeps;
  if (g.seed) c.seed = *g.seed;
  if (c.backend != "rational" && c.backend != "float") throw UsageError("backend must be 'rational' or 'float'");
  if (!(c.tolerance > 0)) throw UsageError("tolerance must be positive");
  return c;
}

// --- C API plumbing -------------------------------------------------------

void check(cmdp_status st) {
  if (st == CMDP_OK) return;
  throw DomainError(std::string(cmdp_status_name(st)) + ": " + cmdp_last_error());
}

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  cmdp_string_free(s);
  return out;
}

template <class F>
json call_json(F&& f) {
  char* out = nullptr;
  check(f(&out));
  return json::parse(take(out));
}

struct MdpDeleter {
  void operator()(cmdp_mdp* m) const { cmdp_mdp_free(m); }
};
struct GalleryDeleter {
  void operator()(cmdp_gallery* g) const { cmdp_gallery_free(g); }
};
using MdpHandle = std::unique_ptr<cmdp_mdp, MdpDeleter>;
using GalleryHandle = std::unique_ptr<cmdp_gallery, GalleryDeleter>;

MdpHandle load_mdp(const std::string& path) {
  cmdp_mdp* m = nullptr;
  check(cmdp_mdp_from_json(read_file(path).c_str(), &m));
  return MdpHandle(m);
}

GalleryHandle open_gallery(const std::string& name, const std::string& param) {
  cmdp_gallery* g = nullptr;
  check(cmdp_gallery_open(name.c_str(), param.empty() ? nullptr : param.c_str(), &g));
  return GalleryHandle(g);
}

// --- objective flags --------------------------------------------------------

struct ObjectiveFlags {
  std::string type;
  std::vector<std::string> target;
  std::vector<std::string> avoid;
  std::vector<unsigned> colors;
  std::string file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--objective", type, "reach | safety | parity (rabin/streett via --objective-file)")
        ->check(CLI::IsMember({"reach", "safety", "parity"}));
    cmd->add_option("--target", target, "target state ids for reach")->delimiter(',');
    cmd->add_option("--avoid", avoid, "avoided state ids for safety")->delimiter(',');
    cmd->add_option("--colors", colors, "parity color set (default: colors of the model)")->delimiter(',');
    cmd->add_option("--objective-file", file, "objective as JSON");
  }

  bool given() const { return !type.empty() || !file.empty(); }

  json to_json() const {
    if (!file.empty()) {
      try {
        return json::parse(read_file(file));
      } catch (const json::parse_error& e) {
        throw DomainError("objective file: " + std::string(e.what()));
      }
    }
    if (type.empty()) throw UsageError("an objective is required (--objective or --objective-file)");
    json o = {{"type", type}};
    if (type == "reach") {
      if (target.empty()) throw UsageError("--objective reach needs --target");
      o["target"] = target;
    } else if (type == "safety") {
      if (avoid.empty()) throw UsageError("--objective safety needs --avoid");
      o["avoid"] = avoid;
    } else if (!colors.empty()) {
      o["colors"] = colors;
    }
    return o;
  }
};

// --- text rendering ---------------------------------------------------------

void print_values(const json& r) {
  std::cout << "objective: " << r.value("objective", "") << "  backend: " << r.value("backend", "") << '\n';
  std::size_t width = 5;
  for (const auto& [k, v] : r.at("values").items()) width = std::max(width, k.size());
  for (const auto& [k, v] : r.at("values").items()) {
    std::cout << "  " << std::left << std::setw(static_cast<int>(width)) << k << "  ";
    if (v.is_string())
      std::cout << v.get<std::string>();
    else
      std::cout << std::setprecision(12) << v.get<double>();
    std::cout << '\n';
  }
  if (r.contains("initial"))
    std::cout << "initial " << r["initial"]["state"].get<std::string>() << ": " << r["initial"]["value"].get<std::string>()
              << '\n';
}

void print_synthesis(const json& r) {
  std::cout << "method: " << r.value("method", "") << '\n';
  for (const auto& [s, t] : r["strategy"]["choice"].items()) {
    std::cout << "  " << s << " -> " << t.get<std::string>();
    if (r["guarantee"].contains(s)) std::cout << "   (value " << r["guarantee"][s].get<std::string>() << ")";
    std::cout << '\n';
  }
  for (const auto& [k, v] : r["metadata"].items()) std::cout << "  " << k << ": " << v.get<std::string>() << '\n';
  for (const auto& w : r["warnings"]) std::cout << "warning: " << w.get<std::string>() << '\n';
}

void print_simulation(const json& r) {
  std::cout << "episodes " << r["episodes"] << ", horizon " << r["horizon"] << ", seed " << r["seed"] << '\n';
  for (const auto& e : r["events"])
    std::cout << "  " << std::left << std::setw(22) << e["name"].get<std::string>() << std::right << std::setw(9)
              << e["count"].get<std::uint64_t>() << "  freq " << std::fixed << std::setprecision(6)
              << e["frequency"].get<double>() << "  se " << e["std_error"].get<double>() << '\n';
  std::cout.unsetf(std::ios::floatfield);
  if (r["aborted"].get<std::uint64_t>() > 0) std::cout << "aborted episodes: " << r["aborted"] << '\n';
  for (const auto& d : r["diagnostics"]) std::cout << "  " << d.get<std::string>() << '\n';
}

void emit(const std::string& format, const json& r, void (*text)(const json&)) {
  if (format == "json")
    std::cout << r.dump(2) << '\n';
  else
    text(r);
}

std::optional<std::string> strategy_json_if_file(const std::string& s) {
  std::ifstream probe(s);
  if (!probe) return std::nullopt;
  return read_file(s);
}

// --- subcommands ------------------------------------------------------------

struct Cli {
  CLI::App app{"Strategy synthesis and analysis for countable MDPs with parity-type objectives", "cmdp"};
  Globals globals;

  // shared option storage
  std::string mdp_path, gallery, param, strategy, transducer, out_path, method = "optimal", boundary = "pessimistic",
                                                                            suite = "all", epsilon = "1/20";
  std::optional<std::size_t> radius, branch_cap;
  std::uint64_t horizon = 1000, episodes = 1000;
  unsigned threads = 0, cutoff = 60;
  std::size_t max_states = 50'000, cycle_events = 16;
  std::vector<std::string> fatal, queried;
  std::string anchor;
  bool dot = false;
  ObjectiveFlags obj;

  CLI::App *gallery_cmd, *gallery_list, *gallery_show, *value_cmd, *synth_cmd, *eval_cmd, *sim_cmd, *fut_cmd,
      *trunc_cmd, *export_cmd, *accept_cmd;

  Cli() {
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", globals.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--config", globals.config_file, "JSON config: backend, tolerance, max_sweeps, radius, branch_cap, seed");
    app.add_option_function<std::string>("--backend", [this](const std::string& b) { globals.backend = b; },
                                         "rational or float (env CMDP_BACKEND)");
    app.add_option_function<double>("--tolerance", [this](double t) { globals.tolerance = t; }, "float backend tolerance");
    app.add_option_function<std::size_t>("--max-sweeps", [this](std::size_t n) { globals.max_sweeps = n; },
                                         "float backend sweep cap");
    app.add_option_function<std::uint64_t>("--seed", [this](std::uint64_t s) { globals.seed = s; },
                                           "simulation seed (env CMDP_SEED)");

    gallery_cmd = app.add_subcommand("gallery", "built-in counterexample models");
    gallery_cmd->require_subcommand(1);
    gallery_list = gallery_cmd->add_subcommand("list", "list gallery entries");
    gallery_show = gallery_cmd->add_subcommand("show", "describe an entry and its claims");
    gallery_show->add_option("name", gallery, "entry name")->required();
    gallery_show->add_option("--param", param, "parameter p for gamblers_ruin");

    value_cmd = app.add_subcommand("value", "optimal values of a finite MDP, or truncation bounds of a gallery entry");
    add_model(value_cmd);
    obj.attach(value_cmd);
    value_cmd->add_option("--radius", radius, "truncation radius (gallery)");
    value_cmd->add_option("--branch-cap", branch_cap, "successor cap at infinitely branching states (gallery)");

    synth_cmd = app.add_subcommand("synthesize", "synthesize a memoryless deterministic strategy");
    add_model(synth_cmd);
    obj.attach(synth_cmd);
    synth_cmd->add_option("--method", method,
                          "optimal | opt_av | as_reach | as_buchi | as_parity012 | eps_reach | cobuchi");
    synth_cmd->add_option("--epsilon", epsilon, "epsilon for eps_reach / cobuchi, e.g. 1/20");
    synth_cmd->add_option("--queried", queried, "states the countable guarantee must cover")->delimiter(',');
    synth_cmd->add_option("--out", out_path, "write the strategy JSON here");

    eval_cmd = app.add_subcommand("evaluate", "exact value of a given strategy; Borel-Cantelli series on gallery entries");
    add_model(eval_cmd);
    obj.attach(eval_cmd);
    eval_cmd->add_option("--strategy", strategy, "strategy JSON file, or a bundled strategy name with --gallery")
        ->required();
    eval_cmd->add_option("--cutoff", cutoff, "number of series terms (gallery)");

    sim_cmd = app.add_subcommand("simulate", "seeded Monte Carlo simulation");
    add_model(sim_cmd);
    sim_cmd->add_option("--strategy", strategy, "bundled strategy name or strategy JSON file")->required();
    sim_cmd->add_option("--horizon", horizon, "steps per episode");
    sim_cmd->add_option("--episodes", episodes, "number of episodes")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
    sim_cmd->add_option("--cycle-events", cycle_events, "number of anchor-cycle events to track");
    sim_cmd->add_option("--fatal", fatal, "fatal states (--mdp)")->delimiter(',');
    sim_cmd->add_option("--anchor", anchor, "anchor state (--mdp)");
    sim_cmd->add_option("--report", globals.format, "alias of --format")->check(CLI::IsMember({"text", "json"}));

    fut_cmd = app.add_subcommand("futility", "certificate that a finite-memory strategy loses almost surely");
    fut_cmd->add_option("--gallery", gallery, "gallery entry")->required();
    fut_cmd->add_option("--transducer", transducer, "transducer JSON file")->required();
    fut_cmd->add_option("--max-states", max_states, "exploration cap per anchor mode");

    trunc_cmd = app.add_subcommand("truncate", "finite truncation of a gallery entry as model JSON");
    trunc_cmd->add_option("--gallery", gallery, "gallery entry")->required();
    trunc_cmd->add_option("--param", param, "parameter p for gamblers_ruin");
    trunc_cmd->add_option("--radius", radius, "BFS radius")->required();
    trunc_cmd->add_option("--boundary", boundary, "pessimistic or optimistic")
        ->check(CLI::IsMember({"pessimistic", "optimistic"}));
    trunc_cmd->add_option("--branch-cap", branch_cap, "successor cap at infinitely branching states");
    trunc_cmd->add_option("--out", out_path, "output file");

    export_cmd = app.add_subcommand("export", "export a model (or a gallery truncation) as DOT or JSON");
    add_model(export_cmd);
    export_cmd->add_option("--radius", radius, "truncation radius (required with --gallery)");
    export_cmd->add_option("--boundary", boundary, "pessimistic or optimistic")
        ->check(CLI::IsMember({"pessimistic", "optimistic"}));
    export_cmd->add_option("--branch-cap", branch_cap, "successor cap at infinitely branching states");
    export_cmd->add_flag("--dot,!--json", dot, "DOT (default) or JSON");
    export_cmd->add_option("--out", out_path, "output file");
    dot = true;

    accept_cmd = app.add_subcommand("accept", "run the acceptance criteria");
    accept_cmd->add_option("--suite", suite, "all, or comma-separated criterion ids");
  }

  void add_model(CLI::App* cmd) {
    auto* m = cmd->add_option("--mdp", mdp_path, "finite MDP JSON file ('-' for stdin)");
    auto* g = cmd->add_option("--gallery", gallery, "gallery entry");
    m->excludes(g);
    cmd->add_option("--param", param, "parameter p for gamblers_ruin");
  }

  void require_model(const CLI::App* cmd) const {
    if (mdp_path.empty() && gallery.empty()) throw UsageError(cmd->get_name() + " needs --mdp or --gallery");
  }

  json truncation_request(const Config& c) const {
    json req = {{"radius", radius.value_or(c.radius)}, {"boundary", boundary}};
    if (branch_cap || c.branch_cap) req["branch_cap"] = branch_cap ? *branch_cap : *c.branch_cap;
    return req;
  }

  int run() {
    const Config cfg = resolve(globals);
    const std::string& fmt = globals.format;

    if (*gallery_list) {
      const json r = call_json([](char** o) { return cmdp_gallery_list(o); });
      emit(fmt, r, [](const json& r) {
        for (const auto& e : r["entries"])
          std::cout << std::left << std::setw(15) << e["name"].get<std::string>() << e["summary"].get<std::string>()
                    << '\n';
      });
      return 0;
    }
    if (*gallery_show) {
      const GalleryHandle g = open_gallery(gallery, param);
      const json r = call_json([&](char** o) { return cmdp_gallery_describe(g.get(), o); });
      emit(fmt, r, [](const json& r) {
        std::cout << r["name"].get<std::string>() << ": " << r["summary"].get<std::string>() << '\n'
                  << "objective: " << r["objective"].get<std::string>() << "\ninitial: " << r["initial"].get<std::string>()
                  << "\nstrategies:";
        for (const auto& s : r["strategies"]) std::cout << ' ' << s.get<std::string>();
        std::cout << "\nclaims: " << r["claims"].dump() << '\n';
      });
      return 0;
    }
    if (*value_cmd) {
      require_model(value_cmd);
      if (!gallery.empty()) {
        const GalleryHandle g = open_gallery(gallery, param);
        json req = truncation_request(cfg);
        if (obj.given()) req["objective"] = obj.to_json();
        const std::string body = req.dump();
        const json r = call_json([&](char** o) { return cmdp_value_bounds(g.get(), body.c_str(), o); });
        emit(fmt, r, [](const json& r) {
          std::cout << r["entry"].get<std::string>() << "  " << r["objective"].get<std::string>() << "  radius "
                    << r["radius"] << "  branch cap " << r["branch_cap"] << '\n';
          for (const auto& s : r["states"])
            std::cout << "  " << std::left << std::setw(10) << s["id"].get<std::string>() << " ["
                      << s["lower"].get<std::string>() << ", " << s["upper"].get<std::string>() << "]\n";
        });
        return 0;
      }
      const MdpHandle m = load_mdp(mdp_path);
      const std::string body = json{{"objective", obj.to_json()},
                                    {"backend", cfg.backend},
                                    {"tolerance", cfg.tolerance},
                                    {"max_sweeps", cfg.max_sweeps}}
                                   .dump();
      emit(fmt, call_json([&](char** o) { return cmdp_value(m.get(), body.c_str(), o); }), print_values);
      return 0;
    }
    if (*synth_cmd) {
      require_model(synth_cmd);
      json req = {{"method", method}, {"epsilon", epsilon}};
      if (obj.given()) req["objective"] = obj.to_json();
      if (!queried.empty()) req["queried"] = queried;
      json r;
      if (!gallery.empty()) {
        const GalleryHandle g = open_gallery(gallery, param);
        if (method == "optimal") req["method"] = "eps_reach";
        const std::string body = req.dump();
        r = call_json([&](char** o) { return cmdp_synthesize_gallery(g.get(), body.c_str(), o); });
      } else {
        const MdpHandle m = load_mdp(mdp_path);
        const std::string body = req.dump();
        r = call_json([&](char** o) { return cmdp_synthesize(m.get(), body.c_str(), o); });
      }
      if (!out_path.empty()) write_output(out_path, r["strategy"].dump(2));
      emit(fmt, r, print_synthesis);
      return 0;
    }
    if (*eval_cmd) {
      require_model(eval_cmd);
      if (!gallery.empty()) {
        const GalleryHandle g = open_gallery(gallery, param);
        const std::string body = json{{"strategy", strategy}, {"cutoff", cutoff}}.dump();
        const json r = call_json([&](char** o) { return cmdp_borel_cantelli(g.get(), body.c_str(), o); });
        emit(fmt, r, [](const json& r) {
          std::cout << r["entry"].get<std::string>() << " " << r["strategy"].get<std::string>() << ", K = " << r["cutoff"]
                    << "\n  partial sum  " << r["partial_sum"].get<std::string>() << "\n  limit        "
                    << (r["limit"].is_null() ? std::string("(no closed form)") : r["limit"].get<std::string>())
                    << (r["limit_is_bound"].get<bool>() ? "  (sum of per-cycle bounds)" : "") << '\n';
          if (!r["survival_lower_bound"].is_null())
            std::cout << "  survival >= " << std::setprecision(15) << r["survival_lower_bound_approx"].get<double>()
                      << "  (exact: " << r["survival_lower_bound"].get<std::string>() << ")\n";
        });
        return 0;
      }
      const MdpHandle m = load_mdp(mdp_path);
      const std::string sigma = read_file(strategy);
      const std::string body = json{{"objective", obj.to_json()}}.dump();
      emit(fmt, call_json([&](char** o) { return cmdp_evaluate(m.get(), sigma.c_str(), body.c_str(), o); }),
           print_values);
      return 0;
    }
    if (*sim_cmd) {
      require_model(sim_cmd);
      json req = {{"horizon", horizon},
                  {"episodes", episodes},
                  {"seed", cfg.seed},
                  {"threads", threads},
                  {"cycle_events", cycle_events}};
      const std::optional<std::string> file = strategy_json_if_file(strategy);
      if (file) {
        try {
          req["strategy"] = json::parse(*file);
        } catch (const json::parse_error& e) {
          throw DomainError("strategy file: " + std::string(e.what()));
        }
      } else {
        req["strategy"] = strategy;
      }
      json r;
      if (!gallery.empty()) {
        const GalleryHandle g = open_gallery(gallery, param);
        const std::string body = req.dump();
        r = call_json([&](char** o) { return cmdp_simulate(g.get(), body.c_str(), o); });
      } else {
        if (!file) throw UsageError("--strategy must be a JSON file with --mdp");
        if (!fatal.empty()) req["fatal"] = fatal;
        if (!anchor.empty()) req["anchor"] = anchor;
        const MdpHandle m = load_mdp(mdp_path);
        const std::string body = req.dump();
        r = call_json([&](char** o) { return cmdp_simulate_mdp(m.get(), body.c_str(), o); });
      }
      if (fmt == "json") r.erase("visits");
      emit(fmt, r, print_simulation);
      return 0;
    }
    if (*fut_cmd) {
      const GalleryHandle g = open_gallery(gallery, "");
      const std::string t = read_file(transducer);
      const std::string body = json{{"max_states", max_states}}.dump();
      const json r = call_json([&](char** o) { return cmdp_futility(g.get(), t.c_str(), body.c_str(), o); });
      emit(fmt, r, [](const json& r) {
        const std::string c = r["c"].get<std::string>();
        std::cout << r["entry"].get<std::string>() << ": c = " << c;
        if (c.size() > 20) std::cout << " (~" << r["c_approx"].get<double>() << ")";
        std::cout << " over "
                  << r["product_states"] << " product states\n";
        for (const auto& a : r["anchors"])
          std::cout << "  mode " << a["mode"].get<std::string>() << ": fatal before return "
                    << a["fatal_before_return"].get<std::string>() << ", safe return " << a["return_prob"].get<std::string>()
                    << '\n';
        std::cout << "conclusion: " << r["conclusion"].get<std::string>() << '\n';
        if (!r["note"].get<std::string>().empty()) std::cout << "note: " << r["note"].get<std::string>() << '\n';
      });
      return 0;
    }
    if (*trunc_cmd || *export_cmd) {
      const bool exporting = export_cmd->parsed();
      if (exporting) require_model(export_cmd);
      MdpHandle m;
      if (!gallery.empty()) {
        if (exporting && !radius) throw UsageError("gallery models are infinite; export needs --radius");
        const GalleryHandle g = open_gallery(gallery, param);
        const std::string body = truncation_request(cfg).dump();
        cmdp_mdp* raw = nullptr;
        check(cmdp_gallery_truncate(g.get(), body.c_str(), &raw));
        m.reset(raw);
      } else {
        m = load_mdp(mdp_path);
      }
      char* text = nullptr;
      check(exporting && dot ? cmdp_mdp_to_dot(m.get(), &text) : cmdp_mdp_to_json(m.get(), &text));
      write_output(out_path, take(text));
      return 0;
    }
    if (*accept_cmd) {
      int failures = 0;
      check(cmdp_accept(
          suite.c_str(),
          [](const char* line, int, void*) { std::cout << line << std::endl; }, nullptr, &failures));
      return failures == 0 ? 0 : kDomainError;
    }
    throw UsageError("no subcommand given");
  }
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  try {
    cli.app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return cli.app.exit(e);
  } catch (const CLI::ParseError& e) {
    cli.app.exit(e);
    std::cerr << cli.app.help();
    return kUsageError;
  }
  try {
    return cli.run();
  } catch (const UsageError& e) {
    std::cerr << "cmdp: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "cmdp: " << e.what() << '\n';
    return kDomainError;
  } catch (const json::exception& e) {
    std::cerr << "cmdp: malformed response: " << e.what() << '\n';
    return kDomainError;
  }
}
