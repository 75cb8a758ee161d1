#pragma once

#include <string>

#include "dimerg2/types.hpp"

// Flat key-value configuration format. One "key = value" pair per line,
// '#' starts a comment. Lengths are given in lambda0 units via the plain
// keys (dimer.z1, geometry.radius, ...) or in nanometers via the *_nm keys,
// which require dimer.energy_ev to fix lambda0. Complex values use the
// "a+bi" form. The full grammar is documented in the README.
namespace dimerg2 {

struct ParsedConfig {
  DimerConfig dimer;
  Environment env;
  DriveConfig drive;
  AngularGrid grid;
};

// Throws ConfigError with the offending key path on missing keys,
// malformed numbers, and non-physical values.
ParsedConfig parse_config(const std::string& text);

ParsedConfig load_config_file(const std::string& path);

// Canonical serialization; parse_config(serialize_config(c)) reproduces the
// configuration bit-for-bit.
std::string serialize_config(const ParsedConfig& cfg);

Complex parse_complex(const std::string& text);  // "a", "a+bi", "a-bi", "bi"

}  // namespace dimerg2
