#include "hkc/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include "hkc/analysis.hpp"
#include "hkc/graph.hpp"

namespace hkc {

namespace {

using nlohmann::json;

std::string child(const std::string& pointer, std::string_view key) {
  return pointer + "/" + std::string(key);
}

void allow_keys(const json& obj, const std::string& pointer,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(pointer, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(child(pointer, key), "unknown key");
  }
}

const json& require(const json& obj, std::string_view key, const std::string& pointer) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) throw ConfigError(child(pointer, key), "missing required key");
  return *it;
}

double as_real(const json& v, const std::string& pointer) {
  if (!v.is_number()) throw ConfigError(pointer, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(pointer, "expected a finite number");
  return d;
}

std::uint64_t as_count(const json& v, const std::string& pointer) {
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    throw ConfigError(pointer, "expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> as_vector(const json& v, const std::string& pointer) {
  if (!v.is_array() || v.empty()) throw ConfigError(pointer, "expected a nonempty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(v[i], child(pointer, std::to_string(i))));
  return out;
}

// Runs `f`, turning library precondition failures into errors at `pointer`.
template <typename F>
auto at(const std::string& pointer, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const UsageError& e) {
    throw ConfigError(pointer, e.what());
  } catch (const ParseError& e) {
    throw ConfigError(pointer, e.what());
  } catch (const ValidationError& e) {
    throw ConfigError(pointer, e.what());
  }
}

struct GraphResult {
  SocialGraph graph;
  ordered_json echo;
};

GraphResult parse_graph(const json& spec, const std::filesystem::path& base_dir,
                        std::uint64_t master_seed) {
  const std::string p = "/graph";
  if (!spec.is_object()) throw ConfigError(p, "expected an object");
  ordered_json echo;
  if (spec.contains("file")) {
    allow_keys(spec, p, {"file"});
    const json& file = spec["file"];
    if (!file.is_string()) throw ConfigError(p + "/file", "expected a path string");
    std::filesystem::path path = file.get<std::string>();
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(p + "/file", "cannot open '" + path.string() + "'");
    SocialGraph g = at(p + "/file", [&] { return parse_edge_list(in); });
    echo["file"] = file.get<std::string>();
    echo["vertex_count"] = g.vertex_count();
    echo["edge_count"] = g.edge_count();
    return {std::move(g), std::move(echo)};
  }

  const json& kind_json = require(spec, "kind", p);
  if (!kind_json.is_string()) throw ConfigError(p + "/kind", "expected a string");
  const std::string kind = kind_json.get<std::string>();
  const auto count = [&](std::string_view key) {
    return static_cast<std::size_t>(as_count(require(spec, key, p), child(p, key)));
  };

  GraphKind gk;
  std::optional<std::uint64_t> graph_seed;
  echo["kind"] = kind;
  if (kind == "path" || kind == "cycle" || kind == "complete") {
    allow_keys(spec, p, {"kind", "n"});
    const std::size_t n = count("n");
    echo["n"] = n;
    if (kind == "path") gk = PathGraph{n};
    if (kind == "cycle") gk = CycleGraph{n};
    if (kind == "complete") gk = CompleteGraph{n};
  } else if (kind == "grid") {
    allow_keys(spec, p, {"kind", "w", "h"});
    gk = GridGraph{count("w"), count("h")};
    echo["w"] = std::get<GridGraph>(gk).width;
    echo["h"] = std::get<GridGraph>(gk).height;
  } else if (kind == "erdos_renyi") {
    allow_keys(spec, p, {"kind", "n", "p", "seed"});
    const double prob = as_real(require(spec, "p", p), p + "/p");
    gk = ErdosRenyiGraph{count("n"), prob};
    if (spec.contains("seed")) graph_seed = as_count(spec["seed"], p + "/seed");
    echo["n"] = std::get<ErdosRenyiGraph>(gk).n;
    echo["p"] = prob;
  } else {
    throw ConfigError(p + "/kind",
                      "unknown graph kind '" + kind +
                          "' (expected path, cycle, complete, grid or erdos_renyi)");
  }
  RandomStream rng = graph_seed ? RandomStream(*graph_seed)
                                : RandomStream(master_seed, kGraphStream);
  SocialGraph g = at(p, [&] { return generate(gk, rng); });
  if (graph_seed) echo["seed"] = *graph_seed;
  echo["vertex_count"] = g.vertex_count();
  echo["edge_count"] = g.edge_count();
  return {std::move(g), std::move(echo)};
}

struct SpaceResult {
  OpinionSpace space;
  ordered_json echo;
};

SpaceResult parse_space(const json& spec) {
  const std::string p = "/space";
  allow_keys(spec, p, {"dim", "norm", "shape"});
  const auto dim = static_cast<std::size_t>(as_count(require(spec, "dim", p), p + "/dim"));
  if (dim == 0 || dim > kMaxDimension) {
    throw ConfigError(p + "/dim", "dimension must be between 1 and " + std::to_string(kMaxDimension));
  }
  const json& norm_json = require(spec, "norm", p);
  if (!norm_json.is_string()) throw ConfigError(p + "/norm", "expected \"l1\", \"l2\" or \"linf\"");
  const Norm norm = at(p + "/norm", [&] { return parse_norm(norm_json.get<std::string>()); });

  const std::string sp = p + "/shape";
  const json& shape_json = require(spec, "shape", p);
  allow_keys(shape_json, sp, {"ball", "box"});
  if (shape_json.size() != 1) throw ConfigError(sp, "expected exactly one of \"ball\" or \"box\"");
  ConvexShape shape;
  ordered_json shape_echo;
  if (shape_json.contains("ball")) {
    const std::string bp = sp + "/ball";
    const json& ball = shape_json["ball"];
    allow_keys(ball, bp, {"center", "radius"});
    const auto center = as_vector(require(ball, "center", bp), bp + "/center");
    const double radius = as_real(require(ball, "radius", bp), bp + "/radius");
    shape = Ball{OpinionVector(center), radius};
    shape_echo["ball"] = {{"center", center}, {"radius", radius}};
  } else {
    const std::string bp = sp + "/box";
    const json& box = shape_json["box"];
    allow_keys(box, bp, {"lo", "hi"});
    const auto lo = as_vector(require(box, "lo", bp), bp + "/lo");
    const auto hi = as_vector(require(box, "hi", bp), bp + "/hi");
    shape = Box{OpinionVector(lo), OpinionVector(hi)};
    shape_echo["box"] = {{"lo", lo}, {"hi", hi}};
  }
  if (dimension(shape) != dim) throw ConfigError(sp, "shape dimension does not match dim");
  OpinionSpace space = at(sp, [&] { return OpinionSpace(norm, shape); });

  ordered_json echo;
  echo["dim"] = dim;
  echo["norm"] = std::string(to_string(norm));
  echo["shape"] = std::move(shape_echo);
  echo["center"] = std::vector<double>(space.center().coords().begin(), space.center().coords().end());
  echo["radius"] = space.radius();
  return {std::move(space), std::move(echo)};
}

InitialDistribution parse_init(const json& spec, const OpinionSpace& space, ordered_json& echo) {
  const std::string p = "/init";
  if (spec.is_string()) {
    if (spec.get<std::string>() != "uniform") {
      throw ConfigError(p, "expected \"uniform\" or {\"point_masses\": [...]}");
    }
    echo = "uniform";
    return UniformShape{};
  }
  allow_keys(spec, p, {"point_masses"});
  const std::string mp = p + "/point_masses";
  const json& list = require(spec, "point_masses", p);
  if (!list.is_array() || list.empty()) throw ConfigError(mp, "expected a nonempty array");
  PointMasses masses;
  ordered_json atoms = ordered_json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ap = child(mp, std::to_string(i));
    allow_keys(list[i], ap, {"point", "prob"});
    const auto point = as_vector(require(list[i], "point", ap), ap + "/point");
    const double prob = as_real(require(list[i], "prob", ap), ap + "/prob");
    masses.atoms.push_back({OpinionVector(point), prob});
    atoms.push_back({{"point", point}, {"prob", prob}});
  }
  InitialDistribution dist = masses;
  at(mp, [&] {
    validate(dist, space);
    return 0;
  });
  echo = {{"point_masses", std::move(atoms)}};
  return dist;
}

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json optional_bool(const std::optional<bool>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

void dump_number(std::string& out, double d) {
  if (!std::isfinite(d)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  out += buf;
  // Keep a marker that the value is real-valued.
  if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
}

void dump_value(std::string& out, const ordered_json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case ordered_json::value_t::number_float:
      dump_number(out, v.get<double>());
      return;
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += ordered_json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_value(out, item, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_value(out, item, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

CliConfig parse_config(const json& doc, const std::filesystem::path& base_dir,
                       std::optional<std::uint64_t> seed_override) {
  allow_keys(doc, "", {"graph", "space", "init", "tau", "alpha", "eps_prime", "trials", "seed",
                       "max_events"});
  const std::uint64_t seed =
      seed_override ? *seed_override
                    : (doc.contains("seed") ? as_count(doc["seed"], "/seed") : std::uint64_t{0});
  if (seed_override && doc.contains("seed")) as_count(doc["seed"], "/seed");

  auto [graph, graph_echo] = parse_graph(require(doc, "graph", ""), base_dir, seed);
  auto [space, space_echo] = parse_space(require(doc, "space", ""));
  ordered_json init_echo;
  InitialDistribution init =
      doc.contains("init") ? parse_init(doc["init"], space, init_echo) : InitialDistribution{UniformShape{}};
  if (!doc.contains("init")) init_echo = "uniform";

  ModelParams params;
  params.tau = as_real(require(doc, "tau", ""), "/tau");
  if (doc.contains("alpha")) params.alpha = as_real(doc["alpha"], "/alpha");
  if (!(params.tau > 0.0)) throw ConfigError("/tau", "must be positive");
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
    throw ConfigError("/alpha", "must lie in [0, 1]");
  }

  const double eps_prime = doc.contains("eps_prime") ? as_real(doc["eps_prime"], "/eps_prime")
                                                     : default_eps_prime(params.tau, space.radius());
  const std::uint64_t max_events =
      doc.contains("max_events") ? as_count(doc["max_events"], "/max_events") : kDefaultMaxEvents;
  if (max_events == 0) throw ConfigError("/max_events", "must be positive");
  const StoppingSpec stopping = StoppingSpec::from_eps_prime(eps_prime, graph.vertex_count(), max_events);
  at("/eps_prime", [&] {
    stopping.validate(params.tau);
    return 0;
  });
  const std::uint64_t trials = doc.contains("trials") ? as_count(doc["trials"], "/trials") : 1;
  if (trials == 0) throw ConfigError("/trials", "must be >= 1");

  ordered_json echo;
  echo["graph"] = std::move(graph_echo);
  echo["space"] = std::move(space_echo);
  echo["init"] = std::move(init_echo);
  echo["tau"] = params.tau;
  echo["alpha"] = params.alpha;
  echo["eps_prime"] = stopping.eps_prime;
  echo["eps"] = stopping.eps;
  echo["max_events"] = stopping.max_events;
  echo["trials"] = trials;

  return CliConfig{
      ExperimentSpec{std::move(graph), std::move(space), std::move(init), params, stopping,
                     static_cast<std::size_t>(trials), seed},
      std::move(echo)};
}

CliConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir,
                            std::optional<std::uint64_t> seed_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, base_dir, seed_override);
}

CliConfig load_config_file(const std::filesystem::path& path,
                           std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path.parent_path(), seed_override);
}

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("HKC_SEED");
  if (raw == nullptr) return std::nullopt;
  const std::string text(raw);
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
  if (text.empty() || text.front() == '-' || errno != 0 || end != text.c_str() + text.size()) {
    throw ConfigError("/seed", "HKC_SEED must be an unsigned 64-bit integer");
  }
  return static_cast<std::uint64_t>(value);
}

ordered_json report_to_json(const MonteCarloReport& r, const CliConfig& config) {
  ordered_json out;
  out["classification"] = "T_eps_proxy";
  out["trials"] = r.trials;
  out["consensus_count"] = r.consensus_count;
  out["undetermined_count"] = r.undetermined_count;
  out["absorbed_count"] = r.absorbed_count;
  out["p_hat"] = optional_number(r.p_hat);
  out["ci_low"] = optional_number(r.ci_low);
  out["ci_high"] = optional_number(r.ci_high);
  out["ci_level"] = 0.95;
  out["bound"] = optional_number(r.bound);
  out["bound_applicable"] = r.bound.has_value();
  out["expected_center_distance"] = r.expected_center_distance;
  out["rho"] = r.rho;
  out["event_A_count"] = r.event_A_count;
  out["event_A_and_consensus_count"] = r.event_A_and_consensus_count;
  out["mean_stop_time"] = r.mean_stop_time;
  out["mean_events"] = r.mean_events;
  out["undetermined_warning"] = r.undetermined_warning;
  out["seed"] = r.master_seed;
  out["parameters"] = config.echo;
  return out;
}

ordered_json trial_to_json(const TrialOutcome& t, const CliConfig& config) {
  const auto& exp = config.experiment;
  const Norm norm = exp.space.norm();
  ordered_json out;
  out["classification"] = "T_eps_proxy";
  out["stopped"] = t.stopped;
  out["absorbed"] = t.absorbed;
  out["stop_time"] = t.stop_time;
  out["events"] = t.events;
  out["consensus"] = optional_bool(t.consensus);
  out["event_A"] = optional_bool(t.event_A);
  out["x_center_initial"] = t.x_samples.empty() ? ordered_json(nullptr) : ordered_json(t.x_samples.front().value);
  out["x_center_final"] = total_disagreement(t.final, exp.space.center(), norm);
  out["x_sample_count"] = t.x_samples.size();
  out["max_pair_dist"] = max_pair_distance(t.final, norm);
  ordered_json opinions = ordered_json::array();
  for (VertexId x = 0; x < t.final.vertex_count(); ++x) {
    const auto op = t.final.opinion(x);
    opinions.push_back(std::vector<double>(op.begin(), op.end()));
  }
  out["final"] = std::move(opinions);
  out["seed"] = exp.master_seed;
  out["trial_index"] = 0;
  out["parameters"] = config.echo;
  return out;
}

ordered_json bound_to_json(const CliConfig& config) {
  const auto& exp = config.experiment;
  RandomStream rng(exp.master_seed, kExpectationStream);
  const double expected = expected_center_distance(exp.init, exp.space, exp.expectation_samples, rng);
  const double rho = exp.space.radius();
  ordered_json out;
  const bool applicable = bound_applicable(exp.params.tau, rho);
  out["bound"] = applicable ? ordered_json(theoretical_bound({expected, exp.params.tau, rho}))
                            : ordered_json(nullptr);
  out["bound_applicable"] = applicable;
  out["expected_center_distance"] = expected;
  out["rho"] = rho;
  out["tau"] = exp.params.tau;
  out["seed"] = exp.master_seed;
  out["parameters"] = config.echo;
  return out;
}

std::string dump_json(const ordered_json& value, int indent) {
  std::string out;
  dump_value(out, value, indent, 0);
  return out;
}

}  // namespace hkc
