#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcq/decoherence.hpp"
#include "mcq/entangle.hpp"
#include "mcq/pulse.hpp"
#include "mcq/readout.hpp"

namespace mcq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully validated run parameters mirroring the module domain types.
struct RunConfig {
  ClusterParams cluster;
  ReadoutParams readout;
  LatticeParams lattice;
  double temperature = 2.0;       // K
  double omega_fi = -1;           // rad/ps, < 0 means 2KS/hbar
  double j_coupling = 0.01;       // meV, qubit-qubit coupling
  int n_qubits = 3;
  std::vector<double> couplings;  // chain couplings, length n_qubits-1
  int route_control = 0;
  int route_target = 2;
  std::vector<double> sweep_s_list = {5, 10, 15, 20};
  std::vector<double> sweep_t_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double drive_phase = 0;        // rad
  double drive_duration = -1;    // ps, < 0 means one pi rotation
  double dt = -1;                // ps, < 0 means (2 pi / w0)/100
  std::vector<std::string> applied_defaults;

  ChainSpec chain() const {
    ChainSpec c;
    c.qubits.assign(n_qubits, cluster);
    c.couplings = couplings;
    return c;
  }
  DecoherenceQuery decoherence_query() const {
    DecoherenceQuery q;
    q.cluster = cluster;
    q.lattice = lattice;
    q.temperature = temperature;
    q.omega_fi = omega_fi;
    return q;
  }
};

namespace detail {

struct ConfigEntry {
  std::string raw;
  int line = 0;
  bool used = false;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class ConfigReader {
 public:
  explicit ConfigReader(std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty() || val.empty())
        throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
      if (entries_.count(key))
        throw ConfigError("line " + std::to_string(line_no) + ": duplicate key `" + key +
                          "` (first on line " + std::to_string(entries_[key].line) + ")");
      entries_[key] = {val, line_no, false};
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  double number(const std::string& key, double fallback,
                std::vector<std::string>* defaults = nullptr) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      if (defaults)
        defaults->push_back(key + " = " + format_number(fallback) + " (default)");
      return fallback;
    }
    it->second.used = true;
    return parse_number(key, it->second);
  }

  std::optional<double> optional_number(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return parse_number(key, it->second);
  }

  std::vector<double> number_list(const std::string& key,
                                  const std::vector<double>& fallback,
                                  std::vector<std::string>* defaults = nullptr) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      if (defaults) defaults->push_back(key + " = (default list)");
      return fallback;
    }
    it->second.used = true;
    std::string v = it->second.raw;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
      throw ConfigError("line " + std::to_string(it->second.line) + ": key `" + key +
                        "` expects a [a, b, ...] list");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    std::istringstream parts(v);
    std::string item;
    while (std::getline(parts, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      ConfigEntry fake{item, it->second.line, true};
      out.push_back(parse_number(key, fake));
    }
    if (out.empty())
      throw ConfigError("line " + std::to_string(it->second.line) + ": key `" + key +
                        "` list is empty");
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, entry] : entries_)
      if (!entry.used)
        throw ConfigError("line " + std::to_string(entry.line) + ": unknown key `" +
                          key + "`");
  }

 private:
  static double parse_number(const std::string& key, const ConfigEntry& entry) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(entry.raw, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != entry.raw.size())
      throw ConfigError("line " + std::to_string(entry.line) + ": key `" + key +
                        "`: `" + entry.raw + "` is not a number");
    return v;
  }

  std::map<std::string, ConfigEntry> entries_;
};

}  // namespace detail

inline RunConfig parse_config_stream(std::istream& in) {
  detail::ConfigReader reader(in);
  RunConfig cfg;
  auto* defs = &cfg.applied_defaults;

  const auto require = [&](const char* key) {
    if (!reader.has(key)) throw ConfigError(std::string("missing required key `") + key + "`");
  };
  for (const char* key : {"S", "K", "g", "B0", "B1"}) require(key);

  const double s = reader.number("S", 0);
  try {
    cfg.cluster.s = SpinValue::from_s(s);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("key `S`: ") + e.what());
  }
  cfg.cluster.k_aniso = reader.number("K", 0);
  cfg.cluster.g = reader.number("g", 0);
  cfg.cluster.b0 = reader.number("B0", 0);
  cfg.cluster.b1 = reader.number("B1", 0);
  cfg.cluster.zeeman_sign = static_cast<int>(reader.number("zeeman_sign", 1, defs));
  if (auto w = reader.optional_number("omega_mf")) cfg.cluster.omega_mf = *w;

  cfg.readout.cluster = cfg.cluster;
  cfg.readout.eps_lumo = reader.number("eps_lumo", 0, defs);
  cfg.readout.j_lumo = reader.number("J_lumo", 0.01, defs);
  cfg.readout.u_ee = reader.number("u_ee", 0, defs);
  cfg.readout.g_e = reader.number("g_e", -1, nullptr);
  if (cfg.readout.g_e < 0)
    defs->push_back("g_e = g (default)");

  cfg.lattice.cell_mass = reader.number("M_cell", 1.66e-25, defs);
  cfg.lattice.lattice_const = reader.number("l_c", 3e-10, defs);
  if (auto v = reader.optional_number("cell_volume")) cfg.lattice.cell_volume = *v;
  else defs->push_back("cell_volume = l_c^3 (default)");
  if (auto v = reader.optional_number("sound_speed")) cfg.lattice.sound_speed = *v;
  else defs->push_back("sound_speed = omega_fi*l_c (default)");
  cfg.temperature = reader.number("T", 2.0, defs);
  if (auto v = reader.optional_number("omega_fi")) cfg.omega_fi = *v;
  else defs->push_back("omega_fi = 2KS/hbar (default)");

  cfg.j_coupling = reader.number("J_coupling", 0.01, defs);
  cfg.n_qubits = static_cast<int>(reader.number("n_qubits", 3, defs));
  if (cfg.n_qubits < 2 || cfg.n_qubits > 10)
    throw ConfigError("key `n_qubits` must be in 2..10");
  cfg.couplings = reader.number_list(
      "couplings", std::vector<double>(cfg.n_qubits - 1, cfg.j_coupling), defs);
  if (static_cast<int>(cfg.couplings.size()) != cfg.n_qubits - 1)
    throw ConfigError("key `couplings`: expected " + std::to_string(cfg.n_qubits - 1) +
                      " entries for a " + std::to_string(cfg.n_qubits) + "-qubit chain, got " +
                      std::to_string(cfg.couplings.size()));
  cfg.route_control = static_cast<int>(reader.number("control", 0, defs));
  cfg.route_target = static_cast<int>(reader.number("target", cfg.n_qubits - 1, defs));
  if (cfg.route_control == cfg.route_target || cfg.route_control < 0 ||
      cfg.route_target < 0 || cfg.route_control >= cfg.n_qubits ||
      cfg.route_target >= cfg.n_qubits)
    throw ConfigError("keys `control`/`target` must be distinct qubit indices");

  cfg.sweep_s_list = reader.number_list("s_list", cfg.sweep_s_list, defs);
  cfg.sweep_t_grid = reader.number_list("T_grid", cfg.sweep_t_grid, defs);
  cfg.drive_phase = reader.number("drive_phase", 0, defs);
  if (auto v = reader.optional_number("drive_duration")) cfg.drive_duration = *v;
  else defs->push_back("drive_duration = pi rotation (default)");
  if (auto v = reader.optional_number("dt")) cfg.dt = *v;
  else defs->push_back("dt = auto, drift-budgeted, capped at (2pi/w0)/100 (default)");

  reader.reject_unknown();

  try {
    cfg.cluster.validate();
    cfg.readout.validate();
    cfg.lattice.validate();
    cfg.chain().validate();
    if (cfg.temperature <= 0) throw std::invalid_argument("T must be > 0");
  } catch (const std::exception& e) {
    throw ConfigError(std::string("validation: ") + e.what());
  }
  return cfg;
}

inline RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config_stream(in);
}

}  // namespace mcq
