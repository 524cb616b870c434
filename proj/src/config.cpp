#include "lstrimer/config.hpp"

#include "lstrimer/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

namespace lstrimer {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }
std::string join(const std::string& base, std::size_t index) { return base + "[" + std::to_string(index) + "]"; }

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& field) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(join(field, key), "unknown key");
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
  return j;
}

double number_at(const json& obj, const std::string& key, const std::string& field) {
  const std::string path = join(field, key);
  if (!obj.contains(key)) throw ConfigError(path, "missing required number");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

double number_or(const json& obj, const std::string& key, const std::string& field, double fallback) {
  return obj.contains(key) ? number_at(obj, key, field) : fallback;
}

std::size_t count_at(const json& obj, const std::string& key, const std::string& field) {
  const std::string path = join(field, key);
  if (!obj.contains(key)) throw ConfigError(path, "missing required integer");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

// Either a number or the string "auto".
std::optional<double> number_or_auto(const json& obj, const std::string& key, const std::string& field) {
  const std::string path = join(field, key);
  if (!obj.contains(key)) throw ConfigError(path, "missing (number or \"auto\")");
  const json& v = obj.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() == "auto") return std::nullopt;
    throw ConfigError(path, "expected a number or \"auto\"");
  }
  return number_at(obj, key, field);
}

Complex complex_from_json(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_object()) {
    reject_unknown(v, {"re", "im"}, field);
    return {number_at(v, "re", field), number_or(v, "im", field, 0.0)};
  }
  throw ConfigError(field, "expected a number, [re, im] or {\"re\":..,\"im\":..}");
}

InitialState initial_state_from_json(const json& v, const std::string& field) {
  InitialState s;
  if (v.is_string()) {
    const std::string name = v.get<std::string>();
    if (name == "dark") {
      s.kind = InitialState::Kind::Dark;
    } else if (name == "bright") {
      s.kind = InitialState::Kind::Bright;
    } else if (name.rfind("site:", 0) == 0) {
      s.kind = InitialState::Kind::Site;
      const std::string digits = name.substr(5);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError(field, "expected site:<k> with a 0-based integer k");
      }
      s.site = std::stoul(digits);
    } else {
      throw ConfigError(field, "expected \"dark\", \"bright\", \"site:<k>\" or an amplitude list");
    }
    return s;
  }
  if (v.is_array()) {
    s.kind = InitialState::Kind::Explicit;
    for (std::size_t k = 0; k < v.size(); ++k) s.amplitudes.push_back(complex_from_json(v[k], join(field, k)));
    if (s.amplitudes.empty()) throw ConfigError(field, "amplitude list is empty");
    return s;
  }
  throw ConfigError(field, "expected a string or an amplitude list");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Evolve: return "evolve";
    case Command::Sweep: return "sweep";
    case Command::Cospectral: return "cospectral";
  }
  return "spectrum";
}

Command parse_command(std::string_view name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "evolve") return Command::Evolve;
  if (name == "sweep") return Command::Sweep;
  if (name == "cospectral") return Command::Cospectral;
  throw ConfigError("command", "unknown command '" + std::string(name) + "'");
}

OutputFormat parse_format(std::string_view name, const std::string& field) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError(field, "format must be \"csv\" or \"json\"");
}

NetworkHamiltonian RunConfig::hamiltonian() const {
  if (trimer) return build_trimer(*trimer);
  return *network;
}

TrimerParams trimer_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, {"omega", "gamma", "mu", "kappa", "chi", "omega3", "gamma3"}, field);
  TrimerParams p;
  p.omega = number_at(j, "omega", field);
  p.gamma = number_at(j, "gamma", field);
  p.mu = number_at(j, "mu", field);
  p.kappa = number_at(j, "kappa", field);
  p.chi = number_or(j, "chi", field, 0.0);
  const auto omega3 = number_or_auto(j, "omega3", field);
  const auto gamma3 = number_or_auto(j, "gamma3", field);
  if (!(p.mu > 0.0)) throw ConfigError(join(field, "mu"), "must be > 0");
  if (!(p.kappa > 0.0)) throw ConfigError(join(field, "kappa"), "must be > 0");
  const TrimerParams pt = apply_reality_conditions(p);
  p.omega3 = omega3.value_or(pt.omega3);
  p.gamma3 = gamma3.value_or(pt.gamma3);
  return p;
}

json trimer_to_json(const TrimerParams& p) {
  return json{{"omega", p.omega}, {"gamma", p.gamma},   {"mu", p.mu},        {"kappa", p.kappa},
              {"chi", p.chi},     {"omega3", p.omega3}, {"gamma3", p.gamma3}};
}

NetworkHamiltonian network_from_json(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown(j, {"sites", "couplings"}, field);
  const std::string sites_field = join(field, "sites");
  if (!j.contains("sites") || !j.at("sites").is_array()) throw ConfigError(sites_field, "expected an array");
  std::vector<SiteSpec> sites;
  for (std::size_t k = 0; k < j.at("sites").size(); ++k) {
    const std::string f = join(sites_field, k);
    const json& s = require_object(j.at("sites")[k], f);
    reject_unknown(s, {"omega", "gamma"}, f);
    sites.push_back({number_or(s, "omega", f, 0.0), number_or(s, "gamma", f, 0.0)});
  }
  if (sites.empty()) throw ConfigError(sites_field, "at least one site required");

  const std::string coup_field = join(field, "couplings");
  std::vector<CouplingSpec> couplings;
  if (j.contains("couplings")) {
    if (!j.at("couplings").is_array()) throw ConfigError(coup_field, "expected an array");
    for (std::size_t k = 0; k < j.at("couplings").size(); ++k) {
      const std::string f = join(coup_field, k);
      const json& c = require_object(j.at("couplings")[k], f);
      reject_unknown(c, {"from", "to", "g"}, f);
      couplings.push_back({count_at(c, "from", f), count_at(c, "to", f), number_at(c, "g", f)});
    }
  }
  try {
    return build_hamiltonian(sites, couplings);
  } catch (const InputError& e) {
    throw ConfigError(coup_field, e.what());
  }
}

json network_to_json(const NetworkHamiltonian& h) {
  json sites = json::array();
  for (const auto& s : h.sites()) sites.push_back({{"omega", s.omega}, {"gamma", s.gamma}});
  json couplings = json::array();
  for (const auto& c : h.coupling_list()) couplings.push_back({{"from", c.from}, {"to", c.to}, {"g", c.g}});
  return json{{"sites", std::move(sites)}, {"couplings", std::move(couplings)}};
}

RunConfig parse_config(const json& doc, Command command) {
  require_object(doc, "<root>");
  reject_unknown(doc,
                 {"command", "trimer", "network", "initial_state", "grid", "sweep", "output", "tol", "normalize"},
                 "");
  RunConfig cfg;
  cfg.command = command;
  if (doc.contains("command")) {
    if (!doc.at("command").is_string()) throw ConfigError("command", "expected a string");
    if (parse_command(doc.at("command").get<std::string>()) != command) {
      throw ConfigError("command", "config is for '" + doc.at("command").get<std::string>() +
                                       "' but the '" + std::string(to_string(command)) + "' command was invoked");
    }
  }

  const bool has_trimer = doc.contains("trimer");
  const bool has_network = doc.contains("network");
  if (has_trimer == has_network) throw ConfigError("trimer", "exactly one of \"trimer\" or \"network\" is required");
  if (has_trimer) cfg.trimer = trimer_from_json(doc.at("trimer"), "trimer");
  if (has_network) cfg.network = network_from_json(doc.at("network"), "network");

  if (doc.contains("initial_state")) cfg.initial_state = initial_state_from_json(doc.at("initial_state"), "initial_state");
  if (doc.contains("grid")) {
    const json& g = require_object(doc.at("grid"), "grid");
    reject_unknown(g, {"t_start", "t_end", "steps"}, "grid");
    cfg.grid = TimeGrid{number_or(g, "t_start", "grid", 0.0), number_at(g, "t_end", "grid"), count_at(g, "steps", "grid")};
    try {
      cfg.grid.validate();
    } catch (const InputError& e) {
      throw ConfigError("grid", e.what());
    }
  }
  if (doc.contains("sweep")) {
    const json& s = require_object(doc.at("sweep"), "sweep");
    reject_unknown(s, {"gamma_min", "gamma_max", "steps"}, "sweep");
    cfg.sweep = SweepRange{number_at(s, "gamma_min", "sweep"), number_at(s, "gamma_max", "sweep"),
                           count_at(s, "steps", "sweep")};
    if (cfg.sweep.steps < 2) throw ConfigError("sweep.steps", "must be >= 2");
    if (!(cfg.sweep.gamma_max > cfg.sweep.gamma_min)) throw ConfigError("sweep.gamma_max", "must exceed gamma_min");
  } else if (command == Command::Sweep) {
    throw ConfigError("sweep", "missing sweep range");
  }
  if (doc.contains("output")) {
    const json& o = require_object(doc.at("output"), "output");
    reject_unknown(o, {"path", "format"}, "output");
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw ConfigError("output.path", "expected a string");
      cfg.output_path = o.at("path").get<std::string>();
    }
    if (o.contains("format")) {
      if (!o.at("format").is_string()) throw ConfigError("output.format", "expected a string");
      cfg.format = parse_format(o.at("format").get<std::string>(), "output.format");
    }
  }
  if (doc.contains("tol")) {
    cfg.tol = number_at(doc, "tol", "");
    if (!(cfg.tol > 0.0)) throw ConfigError("tol", "must be > 0");
  }
  if (doc.contains("normalize")) {
    if (!doc.at("normalize").is_boolean()) throw ConfigError("normalize", "expected a boolean");
    cfg.normalize = doc.at("normalize").get<bool>();
  }

  const bool sector_state = cfg.initial_state.kind == InitialState::Kind::Dark ||
                            cfg.initial_state.kind == InitialState::Kind::Bright;
  if (command == Command::Evolve && sector_state && !cfg.trimer) {
    throw ConfigError("initial_state", "\"dark\"/\"bright\" require a trimer model");
  }
  if (command == Command::Sweep && !cfg.trimer) throw ConfigError("trimer", "sweep requires a trimer model");
  if (command == Command::Cospectral && cfg.hamiltonian().site_count() < 2) {
    throw ConfigError("network.sites", "cospectral analysis needs at least 2 sites");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path, Command command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, command);
}

StateVector initial_state_vector(const RunConfig& cfg) {
  const std::size_t n = cfg.hamiltonian().site_count();
  StateVector psi;
  switch (cfg.initial_state.kind) {
    case InitialState::Kind::Dark:
      if (!cfg.trimer) throw ConfigError("initial_state", "\"dark\" requires a trimer model");
      psi = dark_state(*cfg.trimer);
      break;
    case InitialState::Kind::Bright:
      if (!cfg.trimer) throw ConfigError("initial_state", "\"bright\" requires a trimer model");
      psi = bright_state(*cfg.trimer);
      break;
    case InitialState::Kind::Site: {
      if (cfg.initial_state.site >= n) {
        throw ConfigError("initial_state", "site " + std::to_string(cfg.initial_state.site) + " out of range (n = " +
                                               std::to_string(n) + ")");
      }
      std::vector<Complex> a(n, 0.0);
      a[cfg.initial_state.site] = 1.0;
      psi = StateVector(std::move(a));
      break;
    }
    case InitialState::Kind::Explicit:
      if (cfg.initial_state.amplitudes.size() != n) {
        throw ConfigError("initial_state", "has " + std::to_string(cfg.initial_state.amplitudes.size()) +
                                               " amplitudes but the model has " + std::to_string(n) + " sites");
      }
      try {
        psi = StateVector(cfg.initial_state.amplitudes);
      } catch (const InputError& e) {
        throw ConfigError("initial_state", e.what());
      }
      break;
  }
  if (cfg.normalize) {
    try {
      psi = psi.normalized();
    } catch (const InputError& e) {
      throw ConfigError("initial_state", e.what());
    }
  }
  return psi;
}

unsigned thread_count_from_env() {
  const char* raw = std::getenv("LSTRIMER_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("LSTRIMER_THREADS", "expected a non-negative integer, got '" + s + "'");
  }
  return static_cast<unsigned>(std::stoul(s));
}

}  // namespace lstrimer
