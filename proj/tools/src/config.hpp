#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clebsch/clebsch.hpp"

namespace clebsch::cli {

/// Parsed `key = value` file with `[section]` headers. Keys before the first
/// header belong to section "". Values keep internal whitespace.
class IniFile {
 public:
  static IniFile parse(std::istream& in, const std::string& source = "<input>");
  static IniFile load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section,
                                 const std::string& key) const;
  const std::map<std::string, std::string>& section(const std::string& name) const;
  std::vector<std::string> sections() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

double parse_double(const std::string& text, const std::string& what);
int parse_int(const std::string& text, const std::string& what);
std::vector<double> parse_list(const std::string& text, const std::string& what);

enum class PinningMode { preset, gauss_newton, fixed_q };

struct ExperimentConfig {
  // Either a named preset or an inline system.
  std::string preset;
  std::string structure_file;            // inline: structure-constant file
  std::vector<double> weights;           // inline: h = 1/2 sum w_i mu_i^2
  std::vector<double> mu0;               // inline: initial point
  std::map<std::string, double> params;  // preset overrides

  std::optional<BracketSign> sign;  // overrides the preset sign
  std::optional<double> dt;         // preset recommendation when absent
  std::optional<double> t_end;
  std::string integrator = "gl4";
  double newton_tolerance = 1e-13;
  int max_newton_iterations = 25;
  int sample_stride = 1;
  std::string out = "clebsch-out";

  PinningMode pinning = PinningMode::preset;
  std::optional<std::uint64_t> seed;  // random start for gauss_newton
  std::vector<double> fixed_q;
  double pinning_tolerance = 1e-12;

  DriftThresholds drift;

  double convergence_t_end = 1.0;
  std::vector<double> convergence_dts{0.1, 0.05, 0.025, 0.0125};

  double check_tolerance = 1e-10;

  static ExperimentConfig from_ini(const IniFile& ini);
  /// Like from_ini; a relative structure-constant path is taken relative to
  /// the config file's directory.
  static ExperimentConfig load(const std::string& path);
  void validate() const;
};

/// A preset or inline system with every config override applied.
struct ResolvedSystem {
  SystemPreset preset;
  BracketSign sign = BracketSign::plus;
  double dt = 0.01;
  double t_end = 1.0;
  PinningSpec pinning = {};
};

ResolvedSystem resolve(const ExperimentConfig& cfg);

}  // namespace clebsch::cli
