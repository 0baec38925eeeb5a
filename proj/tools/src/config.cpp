#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace clebsch::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

const std::map<std::string, std::string> kEmptySection;

}  // namespace

IniFile IniFile::parse(std::istream& in, const std::string& source) {
  IniFile ini;
  std::string current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(where() + "unterminated section header");
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty()) throw ParseError(where() + "empty section name");
      ini.data_[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(where() + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(where() + "empty key");
    auto& sec = ini.data_[current];
    if (sec.count(key)) {
      throw ParseError(where() + "duplicate key '" + key + "'");
    }
    sec[key] = trim(line.substr(eq + 1));
  }
  return ini;
}

IniFile IniFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  return parse(in, path);
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  return get(section, key).has_value();
}

std::optional<std::string> IniFile::get(const std::string& section,
                                        const std::string& key) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return std::nullopt;
  const auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

const std::map<std::string, std::string>& IniFile::section(
    const std::string& name) const {
  const auto s = data_.find(name);
  return s == data_.end() ? kEmptySection : s->second;
}

std::vector<std::string> IniFile::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, keys] : data_) out.push_back(name);
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(what + ": expected a number, got '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(what + ": expected an integer, got '" + text + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
  return out;
}

ExperimentConfig ExperimentConfig::from_ini(const IniFile& ini) {
  static const std::map<std::string, std::vector<std::string>> known{
      {"experiment",
       {"preset", "sign", "dt", "t_end", "integrator", "newton_tolerance",
        "max_newton_iterations", "sample_stride", "out"}},
      {"system", {"structure_constants", "hamiltonian", "weights", "mu0"}},
      {"params", {}},
      {"pinning", {"strategy", "seed", "q", "tolerance"}},
      {"diagnostics", {"drift_factor", "drift_floor", "check_tolerance"}},
      {"convergence", {"t_end", "dts"}},
  };
  for (const auto& name : ini.sections()) {
    const auto k = known.find(name);
    if (k == known.end()) {
      throw ParseError("unknown config section '[" + name + "]'");
    }
    if (name == "params") continue;
    for (const auto& [key, value] : ini.section(name)) {
      if (std::find(k->second.begin(), k->second.end(), key) == k->second.end()) {
        throw ParseError("unknown key '" + key + "' in [" + name + "]");
      }
    }
  }

  ExperimentConfig cfg;
  auto str = [&](const std::string& s, const std::string& k, std::string& dst) {
    if (auto v = ini.get(s, k)) dst = *v;
  };
  auto num = [&](const std::string& s, const std::string& k, auto& dst) {
    if (auto v = ini.get(s, k)) dst = parse_double(*v, s + "." + k);
  };

  str("experiment", "preset", cfg.preset);
  if (auto v = ini.get("experiment", "sign")) cfg.sign = parse_sign(*v);
  num("experiment", "dt", cfg.dt);
  num("experiment", "t_end", cfg.t_end);
  str("experiment", "integrator", cfg.integrator);
  num("experiment", "newton_tolerance", cfg.newton_tolerance);
  if (auto v = ini.get("experiment", "max_newton_iterations"))
    cfg.max_newton_iterations = parse_int(*v, "max_newton_iterations");
  if (auto v = ini.get("experiment", "sample_stride"))
    cfg.sample_stride = parse_int(*v, "sample_stride");
  str("experiment", "out", cfg.out);

  str("system", "structure_constants", cfg.structure_file);
  if (auto v = ini.get("system", "hamiltonian"); v && *v != "quadratic") {
    throw ParseError("system.hamiltonian: only 'quadratic' is supported, got '" +
                     *v + "'");
  }
  if (auto v = ini.get("system", "weights")) cfg.weights = parse_list(*v, "system.weights");
  if (auto v = ini.get("system", "mu0")) cfg.mu0 = parse_list(*v, "system.mu0");

  for (const auto& [key, value] : ini.section("params")) {
    cfg.params[key] = parse_double(value, "params." + key);
  }

  if (auto v = ini.get("pinning", "strategy")) {
    if (*v == "preset") cfg.pinning = PinningMode::preset;
    else if (*v == "gauss_newton") cfg.pinning = PinningMode::gauss_newton;
    else if (*v == "fixed_q") cfg.pinning = PinningMode::fixed_q;
    else throw ParseError("pinning.strategy: expected preset|gauss_newton|fixed_q");
  }
  if (auto v = ini.get("pinning", "seed")) {
    const int seed = parse_int(*v, "pinning.seed");
    if (seed < 0) throw ParseError("pinning.seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto v = ini.get("pinning", "q")) cfg.fixed_q = parse_list(*v, "pinning.q");
  num("pinning", "tolerance", cfg.pinning_tolerance);

  num("diagnostics", "drift_factor", cfg.drift.factor);
  num("diagnostics", "drift_floor", cfg.drift.floor);
  num("diagnostics", "check_tolerance", cfg.check_tolerance);

  num("convergence", "t_end", cfg.convergence_t_end);
  if (auto v = ini.get("convergence", "dts"))
    cfg.convergence_dts = parse_list(*v, "convergence.dts");
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  ExperimentConfig cfg = from_ini(IniFile::load(path));
  if (!cfg.structure_file.empty()) {
    const std::filesystem::path file(cfg.structure_file);
    if (file.is_relative()) {
      cfg.structure_file =
          (std::filesystem::path(path).parent_path() / file).string();
    }
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (preset.empty() == structure_file.empty()) {
    throw ContractViolation(
        "exactly one of experiment.preset and system.structure_constants is required");
  }
  if (!structure_file.empty() && !params.empty()) {
    throw ContractViolation("[params] overrides apply to presets only");
  }
  if (dt && !(*dt > 0.0)) throw ContractViolation("dt must be positive");
  if (t_end && !(*t_end >= 0.0)) throw ContractViolation("t_end must be non-negative");
  tableau_by_name(integrator);
  if (sample_stride < 1) throw ContractViolation("sample_stride must be >= 1");
  if (pinning == PinningMode::fixed_q && fixed_q.empty()) {
    throw ContractViolation("pinning.strategy = fixed_q needs pinning.q");
  }
  if (!(convergence_t_end > 0.0) || convergence_dts.size() < 3) {
    throw ContractViolation("convergence needs t_end > 0 and at least three dts");
  }
}

namespace {

SystemPreset build_system(const ExperimentConfig& cfg) {
  if (!cfg.preset.empty()) return make_preset(cfg.preset, cfg.params);
  LieAlgebra algebra = load_structure_constants(cfg.structure_file);
  DualPoint mu0 = DualPoint::zeros(algebra.dimension());
  if (!cfg.mu0.empty()) {
    algebra.require_dimension(static_cast<Eigen::Index>(cfg.mu0.size()),
                              "system.mu0");
    mu0 = Eigen::Map<const Eigen::VectorXd>(
        cfg.mu0.data(), static_cast<Eigen::Index>(cfg.mu0.size()));
  }
  return quadratic_system(algebra, cfg.weights,
                          cfg.sign.value_or(BracketSign::plus), mu0,
                          cfg.seed.value_or(1));
}

}  // namespace

ResolvedSystem resolve(const ExperimentConfig& cfg) {
  cfg.validate();
  ResolvedSystem out{build_system(cfg)};
  SystemPreset& p = out.preset;
  out.sign = cfg.sign.value_or(p.sign);
  out.dt = cfg.dt.value_or(p.recommended_dt);
  out.t_end = cfg.t_end.value_or(p.recommended_t_end);

  out.pinning = p.pinning;
  out.pinning.tolerance = cfg.pinning_tolerance;
  switch (cfg.pinning) {
    case PinningMode::preset:
      if (cfg.seed) {
        // Keep the preset's constraints but start from a random point.
        if (auto* gn = std::get_if<GaussNewton>(&out.pinning.strategy)) {
          gn->seed.reset();
          gn->random_seed = *cfg.seed;
        }
      }
      break;
    case PinningMode::gauss_newton: {
      GaussNewton gn;
      gn.random_seed = cfg.seed.value_or(1);
      out.pinning.strategy = gn;
      break;
    }
    case PinningMode::fixed_q: {
      p.algebra.require_dimension(static_cast<Eigen::Index>(cfg.fixed_q.size()),
                                  "pinning.q");
      FixedQ f;
      f.q = Eigen::Map<const Eigen::VectorXd>(
          cfg.fixed_q.data(), static_cast<Eigen::Index>(cfg.fixed_q.size()));
      out.pinning.strategy = f;
      break;
    }
  }
  return out;
}

}  // namespace clebsch::cli
