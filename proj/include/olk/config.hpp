#ifndef OLK_CONFIG_HPP
#define OLK_CONFIG_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "olk/norms.hpp"

namespace olk {

/// Value in the space-config document: number, string, array or inline table.
struct ConfigValue {
  enum class Kind { Number, String, Array, Table };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::string text;
  std::vector<ConfigValue> items;
  std::vector<std::pair<std::string, ConfigValue>> fields;
};

/// Parses the key/value subset used by space files:
///
///   # comment
///   key = 1.5 | "text" | [v, v, ...] | { key = v, ... }
///
/// Arrays and inline tables may span lines. Returns the top-level fields in
/// document order. Throws ParseError naming the offending key.
std::vector<std::pair<std::string, ConfigValue>> parse_config_document(std::string_view text);

/// Space config: `phi`, `omega`, `gamma` (required), `tol_root`, `tol_norm`,
/// `k_horizon`, `delta2` (optional).
SpaceConfig parse_space_config(std::string_view text);
SpaceConfig load_space_config(const std::string& path);

StepFunction load_steps(const std::string& path, double domain_len);

std::string read_text_file(const std::string& path);

}  // namespace olk

#endif  // OLK_CONFIG_HPP
