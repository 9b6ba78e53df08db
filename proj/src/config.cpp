#include "ncnls/config.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ncnls/errors.hpp"

namespace ncnls {

std::string_view to_string(StudyKind s) {
  switch (s) {
    case StudyKind::single: return "single";
    case StudyKind::spatial: return "spatial";
    case StudyKind::temporal: return "temporal";
    case StudyKind::balance: return "balance";
  }
  return "?";
}

StudyKind parse_study(std::string_view text) {
  for (StudyKind s : {StudyKind::single, StudyKind::spatial, StudyKind::temporal, StudyKind::balance})
    if (to_string(s) == text) return s;
  throw ConfigError("unknown study '" + std::string(text) + "' (expected single, spatial, temporal or balance)");
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::u: return "u";
    case Target::phi: return "phi";
    case Target::mass: return "mass";
    case Target::energy: return "energy";
  }
  return "?";
}

Target parse_target(std::string_view text) {
  for (Target t : {Target::u, Target::phi, Target::mass, Target::energy})
    if (to_string(t) == text) return t;
  throw ConfigError("unknown target '" + std::string(text) + "' (expected u, phi, mass or energy)");
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& key, std::string_view value, const char* expected) {
  throw ConfigError("config key '" + key + "': cannot parse '" + std::string(value) + "' as " + expected);
}

double to_double(const std::string& key, std::string_view value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d)) bad_value(key, value, "a number");
  return d;
}

long to_integer(const std::string& key, std::string_view value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const long n = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) bad_value(key, value, "an integer");
  return n;
}

std::vector<double> to_double_list(const std::string& key, std::string_view value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(to_double(key, item));
  if (out.empty()) bad_value(key, value, "a comma separated list of numbers");
  return out;
}

template <class F>
auto rethrow_with_key(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind("config key", 0) == 0) throw;
    throw ConfigError("config key '" + key + "': " + what);
  }
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"study", [](auto& c, auto& k, auto v) { c.study = rethrow_with_key(k, [&] { return parse_study(trim(v)); }); }},
      {"scheme", [](auto& c, auto& k, auto v) { c.scheme = rethrow_with_key(k, [&] { return parse_scheme(trim(v)); }); }},
      {"scenario",
       [](auto& c, auto& k, auto v) { c.scenario = rethrow_with_key(k, [&] { return parse_scenario(trim(v)); }); }},
      {"scenarios",
       [](auto& c, auto& k, auto v) {
         c.scenarios.clear();
         for (const auto& item : split_list(v))
           c.scenarios.push_back(rethrow_with_key(k, [&] { return parse_scenario(item); }));
         if (c.scenarios.empty()) bad_value(k, v, "a list of scenarios");
       }},
      {"a", [](auto& c, auto& k, auto v) { c.a = to_double(k, v); }},
      {"b", [](auto& c, auto& k, auto v) { c.b = to_double(k, v); }},
      {"M", [](auto& c, auto& k, auto v) { c.elements = static_cast<int>(to_integer(k, v)); }},
      {"h", [](auto& c, auto& k, auto v) { c.h_request = to_double(k, v); }},
      {"ell", [](auto& c, auto& k, auto v) { c.ell = static_cast<int>(to_integer(k, v)); }},
      {"bc",
       [](auto& c, auto& k, auto v) { c.bc = rethrow_with_key(k, [&] { return parse_boundary_condition(trim(v)); }); }},
      {"T", [](auto& c, auto& k, auto v) { c.T = to_double(k, v); }},
      {"k", [](auto& c, auto& k, auto v) { c.k = to_double(k, v); }},
      {"h_list", [](auto& c, auto& k, auto v) { c.h_list = to_double_list(k, v); }},
      {"k_list", [](auto& c, auto& k, auto v) { c.k_list = to_double_list(k, v); }},
      {"targets",
       [](auto& c, auto& k, auto v) {
         c.targets.clear();
         for (const auto& item : split_list(v)) c.targets.push_back(rethrow_with_key(k, [&] { return parse_target(item); }));
         if (c.targets.empty()) bad_value(k, v, "a list of targets");
       }},
      {"omega", [](auto& c, auto& k, auto v) { c.omega = to_double(k, v); }},
      {"theta0", [](auto& c, auto& k, auto v) { c.theta0 = to_double(k, v); }},
      {"mu", [](auto& c, auto& k, auto v) { c.mu = to_double(k, v); }},
      {"init", [](auto& c, auto& k, auto v) { c.init = rethrow_with_key(k, [&] { return parse_init_mode(trim(v)); }); }},
      {"newton.newton_steps", [](auto& c, auto& k, auto v) { c.newton.newton_steps = static_cast<int>(to_integer(k, v)); }},
      {"newton.inner_steps", [](auto& c, auto& k, auto v) { c.newton.inner_steps = static_cast<int>(to_integer(k, v)); }},
      {"newton.fallback_tol", [](auto& c, auto& k, auto v) { c.newton.fallback_tol = to_double(k, v); }},
      {"newton.fallback_max_iters",
       [](auto& c, auto& k, auto v) { c.newton.fallback_max_iters = static_cast<int>(to_integer(k, v)); }},
      {"output_dir", [](auto& c, auto&, auto v) { c.output_dir = trim(v); }},
      {"run_id", [](auto& c, auto&, auto v) { c.run_id = trim(v); }},
      {"stride",
       [](auto& c, auto& k, auto v) {
         const long s = to_integer(k, v);
         if (s < 1) throw ConfigError("config key 'stride': must be at least 1");
         c.stride = static_cast<std::size_t>(s);
       }},
      {"workers", [](auto& c, auto& k, auto v) { c.workers = static_cast<int>(to_integer(k, v)); }},
  };
  return table;
}

void set_key(ExperimentConfig& cfg, const std::string& key, std::string_view value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(cfg, key, value);
  cfg.explicit_keys.insert(key);
}

bool divides(double length, double step, long* count) {
  const double ratio = length / step;
  const double n = std::round(ratio);
  if (n < 1 || std::abs(ratio - n) > 1e-6 * n) return false;
  *count = static_cast<long>(n);
  return true;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [key, setter] : setters()) out.push_back(key);
    return out;
  }();
  return keys;
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig cfg) {
  std::istringstream in{std::string(text)};
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3)
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(std::string_view(body).substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(body).substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    set_key(cfg, key, std::string_view(body).substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
  set_key(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

ExperimentConfig finalize(ExperimentConfig cfg) {
  if (cfg.study == StudyKind::spatial && !cfg.is_explicit("k")) cfg.k = 1e-5;
  if (cfg.study == StudyKind::temporal && !cfg.is_explicit("ell")) cfg.ell = 5;

  if (!(cfg.a < cfg.b)) throw ConfigError("config keys 'a', 'b': need a < b");
  if (cfg.h_request) {
    long m = 0;
    if (!(*cfg.h_request > 0) || !divides(cfg.b - cfg.a, *cfg.h_request, &m))
      throw ConfigError("config key 'h': must divide b - a into whole elements");
    if (cfg.is_explicit("M") && m != cfg.elements)
      throw ConfigError("config keys 'h', 'M': inconsistent (h gives M = " + std::to_string(m) + ")");
    cfg.elements = static_cast<int>(m);
    cfg.h_request.reset();
  }
  if (cfg.elements < 2) throw ConfigError("config key 'M': need at least 2 elements");
  if (cfg.ell < 1 || cfg.ell > 5) throw ConfigError("config key 'ell': must be in 1..5");
  if (!(cfg.T > 0)) throw ConfigError("config key 'T': must be positive");

  auto check_step = [&](double k, const char* key) {
    long n = 0;
    if (!(k > 0)) throw ConfigError(std::string("config key '") + key + "': must be positive");
    if (k > cfg.T) throw ConfigError(std::string("config key '") + key + "': step exceeds T");
    if (!divides(cfg.T, k, &n)) throw ConfigError(std::string("config key '") + key + "': T/k must be an integer");
  };
  check_step(cfg.k, "k");
  for (double k : cfg.k_list) check_step(k, "k_list");
  for (double h : cfg.h_list) {
    long m = 0;
    if (!(h > 0) || !divides(cfg.b - cfg.a, h, &m) || m < 2)
      throw ConfigError("config key 'h_list': every h must divide b - a into at least 2 elements");
  }
  if (cfg.study == StudyKind::spatial && cfg.h_list.size() < 2)
    throw ConfigError("config key 'h_list': a spatial study needs at least two entries");
  if (cfg.study == StudyKind::temporal && cfg.k_list.size() < 2)
    throw ConfigError("config key 'k_list': a temporal study needs at least two entries");
  for (Target t : cfg.targets)
    if (t == Target::phi && cfg.scheme != SchemeKind::relaxation)
      throw ConfigError("config key 'targets': phi is only defined for the relaxation scheme");
  if (!(cfg.omega >= 0)) throw ConfigError("config key 'omega': must be non-negative");
  if (!(cfg.mu > 0)) throw ConfigError("config key 'mu': must be positive");
  if (cfg.workers < 1) throw ConfigError("config key 'workers': must be at least 1");
  try {
    cfg.newton.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config section 'newton': ") + e.what());
  }
  return cfg;
}

namespace {

std::string number(double v) {
  // shortest form that parses back to the same double
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <class T, class F>
std::string join(const std::vector<T>& items, F f) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += f(items[i]);
  }
  return out;
}

}  // namespace

std::string to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "study = " << to_string(cfg.study) << "\n"
      << "scheme = " << to_string(cfg.scheme) << "\n"
      << "scenario = " << to_string(cfg.scenario) << "\n"
      << "scenarios = " << join(cfg.scenarios, [](Scenario s) { return std::string(to_string(s)); }) << "\n"
      << "a = " << number(cfg.a) << "\n"
      << "b = " << number(cfg.b) << "\n"
      << "M = " << cfg.elements << "\n"
      << "ell = " << cfg.ell << "\n"
      << "bc = " << to_string(cfg.bc) << "\n"
      << "T = " << number(cfg.T) << "\n"
      << "k = " << number(cfg.k) << "\n";
  if (!cfg.h_list.empty()) out << "h_list = " << join(cfg.h_list, number) << "\n";
  if (!cfg.k_list.empty()) out << "k_list = " << join(cfg.k_list, number) << "\n";
  out << "targets = " << join(cfg.targets, [](Target t) { return std::string(to_string(t)); }) << "\n"
      << "omega = " << number(cfg.omega) << "\n"
      << "theta0 = " << number(cfg.theta0) << "\n"
      << "mu = " << number(cfg.mu) << "\n"
      << "init = " << to_string(cfg.init) << "\n"
      << "output_dir = " << cfg.output_dir << "\n";
  if (!cfg.run_id.empty()) out << "run_id = " << cfg.run_id << "\n";
  out << "stride = " << cfg.stride << "\n"
      << "workers = " << cfg.workers << "\n"
      << "\n[newton]\n"
      << "newton_steps = " << cfg.newton.newton_steps << "\n"
      << "inner_steps = " << cfg.newton.inner_steps << "\n"
      << "fallback_tol = " << number(cfg.newton.fallback_tol) << "\n"
      << "fallback_max_iters = " << cfg.newton.fallback_max_iters << "\n";
  return out.str();
}

}  // namespace ncnls
