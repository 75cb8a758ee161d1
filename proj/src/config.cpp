#include "dimerg2/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace dimerg2 {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || t.empty())
    throw ConfigError(key, "malformed number '" + text + "'");
  return v;
}

class KeyValueMap {
public:
  explicit KeyValueMap(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
      kv_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
  }

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  std::string require(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(key, "missing key");
    used_.insert({key, true});
    return it->second;
  }
  std::string get(const std::string& key, const std::string& fallback) {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    used_.insert({key, true});
    return it->second;
  }
  double get_double(const std::string& key, double fallback) {
    return has(key) ? parse_double(key, require(key)) : fallback;
  }
  double require_double(const std::string& key) {
    return parse_double(key, require(key));
  }
  Complex get_complex(const std::string& key, Complex fallback) {
    if (!has(key)) return fallback;
    const std::string raw = require(key);
    try {
      return parse_complex(raw);
    } catch (const std::exception&) {
      throw ConfigError(key, "malformed complex number '" + raw + "'");
    }
  }

  void check_all_used() const {
    for (const auto& [key, value] : kv_)
      if (!used_.count(key)) throw ConfigError(key, "unknown key");
  }

private:
  std::map<std::string, std::string> kv_;
  std::map<std::string, bool> used_;
};

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty complex literal");
  if (t.back() != 'i' && t.back() != 'I') return Complex(parse_double("", t), 0.0);
  t.pop_back();  // strip the trailing i; what remains is "a+b" / "a-b" / "b"
  // Split at the last +/- that is not part of an exponent and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return Complex(0.0, parse_double("", t));
  const double re = parse_double("", t.substr(0, split));
  std::string imag = t.substr(split);
  if (imag == "+" || imag == "-") imag += "1";
  return Complex(re, parse_double("", imag));
}

ParsedConfig parse_config(const std::string& text) {
  KeyValueMap kv(text);
  ParsedConfig cfg;

  const std::string envname = kv.get("geometry.env", "free");
  if (envname == "free") cfg.env.kind = EnvKind::FreeSpace;
  else if (envname == "mirror") cfg.env.kind = EnvKind::PerfectMirror;
  else if (envname == "substrate") cfg.env.kind = EnvKind::Substrate;
  else if (envname == "sphere") cfg.env.kind = EnvKind::Sphere;
  else throw ConfigError("geometry.env", "unknown environment '" + envname + "'");

  cfg.dimer.gamma0 = kv.get_double("dimer.gamma0", 1.0);
  cfg.dimer.omega0_ev = kv.get_double("dimer.energy_ev", 0.0);
  const double lam_nm = cfg.dimer.lambda0_nm();
  auto length = [&](const std::string& key, bool required,
                    double fallback = 0.0) {
    if (kv.has(key)) return kv.require_double(key);
    if (kv.has(key + "_nm")) {
      if (lam_nm <= 0.0)
        throw ConfigError(key + "_nm", "nm lengths require dimer.energy_ev");
      return kv.require_double(key + "_nm") / lam_nm;
    }
    if (required) throw ConfigError(key, "missing key");
    return fallback;
  };

  if (cfg.env.kind == EnvKind::Substrate || cfg.env.kind == EnvKind::Sphere)
    cfg.env.epsilon = kv.get_complex("geometry.epsilon", Complex(1.0, 0.0));

  if (cfg.env.kind == EnvKind::Sphere) {
    cfg.env.radius = length("geometry.radius", true);
    if (kv.has("geometry.gap") || kv.has("geometry.gap_nm"))
      cfg.env.offset = cfg.env.radius + length("geometry.gap", true);
    else
      cfg.env.offset = length("geometry.offset", true);
  } else {
    cfg.dimer.z1 = length("dimer.z1", cfg.env.kind != EnvKind::FreeSpace);
    cfg.dimer.z2 = length("dimer.z2", cfg.env.kind != EnvKind::FreeSpace);
  }

  if (kv.has("dimer.orientation")) {
    const std::string raw = kv.require("dimer.orientation");
    double xyz[3];
    int n = 0;
    std::istringstream in(raw);
    std::string part;
    while (std::getline(in, part, ',') && n < 3)
      xyz[n++] = parse_double("dimer.orientation", part);
    if (n != 3) throw ConfigError("dimer.orientation", "expected 'x,y,z'");
    Eigen::Vector3d mu(xyz[0], xyz[1], xyz[2]);
    if (mu.norm() == 0.0) throw ConfigError("dimer.orientation", "zero vector");
    cfg.dimer.orientation = mu / mu.norm();
  }

  cfg.drive.detuning = kv.get_double("drive.detuning", 0.0);
  cfg.drive.omega1 = kv.get_complex("drive.omega1", Complex(0.0, 0.0));
  cfg.drive.omega2 = kv.get_complex("drive.omega2", Complex(0.0, 0.0));

  AngularGrid dflt = AngularGrid::default_for(cfg.env);
  cfg.grid.theta_min = kv.get_double("grid.theta_min", dflt.theta_min);
  cfg.grid.theta_max = kv.get_double("grid.theta_max", dflt.theta_max);
  cfg.grid.n_theta = static_cast<int>(kv.get_double("grid.n", dflt.n_theta));

  kv.check_all_used();

  cfg.env.validate();
  cfg.dimer.validate(cfg.env);
  cfg.drive.validate();
  cfg.grid.validate(cfg.env);
  return cfg;
}

ParsedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open configuration file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ParsedConfig& cfg) {
  std::ostringstream out;
  out << "geometry.env = " << to_string(cfg.env.kind) << "\n";
  if (cfg.env.kind == EnvKind::Substrate || cfg.env.kind == EnvKind::Sphere)
    out << "geometry.epsilon = " << format_complex(cfg.env.epsilon) << "\n";
  if (cfg.env.kind == EnvKind::Sphere) {
    out << "geometry.radius = " << format_double(cfg.env.radius) << "\n";
    out << "geometry.offset = " << format_double(cfg.env.offset) << "\n";
  } else {
    out << "dimer.z1 = " << format_double(cfg.dimer.z1) << "\n";
    out << "dimer.z2 = " << format_double(cfg.dimer.z2) << "\n";
  }
  out << "dimer.orientation = " << format_double(cfg.dimer.orientation.x()) << ","
      << format_double(cfg.dimer.orientation.y()) << ","
      << format_double(cfg.dimer.orientation.z()) << "\n";
  out << "dimer.gamma0 = " << format_double(cfg.dimer.gamma0) << "\n";
  if (cfg.dimer.omega0_ev > 0.0)
    out << "dimer.energy_ev = " << format_double(cfg.dimer.omega0_ev) << "\n";
  out << "drive.detuning = " << format_double(cfg.drive.detuning) << "\n";
  out << "drive.omega1 = " << format_complex(cfg.drive.omega1) << "\n";
  out << "drive.omega2 = " << format_complex(cfg.drive.omega2) << "\n";
  out << "grid.theta_min = " << format_double(cfg.grid.theta_min) << "\n";
  out << "grid.theta_max = " << format_double(cfg.grid.theta_max) << "\n";
  out << "grid.n = " << cfg.grid.n_theta << "\n";
  return out.str();
}

}  // namespace dimerg2
