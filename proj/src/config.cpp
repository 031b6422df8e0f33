#include "olk/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "olk/error.hpp"

namespace olk {

namespace {

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : text_(text) {}

  std::vector<std::pair<std::string, ConfigValue>> parse() {
    std::vector<std::pair<std::string, ConfigValue>> out;
    std::set<std::string> seen;
    skip_space();
    while (!at_end()) {
      const std::string key = parse_key();
      skip_space();
      expect('=', key);
      skip_space();
      ConfigValue value = parse_value(key);
      if (!seen.insert(key).second) fail(key, "duplicate key '" + key + "'");
      out.emplace_back(key, std::move(value));
      skip_space();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ParseError(key, "config line " + std::to_string(line()) + ": " + message);
  }

  std::size_t line() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') ++n;
    }
    return n;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c, const std::string& key) {
    if (peek() != c) fail(key, std::string("expected '") + c + "' after '" + key + "'");
    ++pos_;
  }

  std::string parse_key() {
    if (peek() == '"') return parse_string("key");
    std::string key;
    while (!at_end()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        key += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (key.empty()) {
      std::string near(text_.substr(pos_, 12));
      fail(near, "expected a key near '" + near + "'");
    }
    return key;
  }

  std::string parse_string(const std::string& key) {
    ++pos_;  // opening quote
    std::string out;
    while (!at_end() && text_[pos_] != '"') {
      if (text_[pos_] == '\n') fail(key, "unterminated string");
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (at_end()) fail(key, "unterminated string");
    ++pos_;
    return out;
  }

  ConfigValue parse_value(const std::string& key) {
    ConfigValue v;
    const char c = peek();
    if (c == '"') {
      v.kind = ConfigValue::Kind::String;
      v.text = parse_string(key);
    } else if (c == '[') {
      ++pos_;
      v.kind = ConfigValue::Kind::Array;
      skip_space();
      while (peek() != ']') {
        if (at_end()) fail(key, "unterminated array");
        v.items.push_back(parse_value(key));
        skip_space();
        if (peek() == ',') {
          ++pos_;
          skip_space();
        } else if (peek() != ']') {
          fail(key, "expected ',' or ']' in array");
        }
      }
      ++pos_;
    } else if (c == '{') {
      ++pos_;
      v.kind = ConfigValue::Kind::Table;
      std::set<std::string> seen;
      skip_space();
      while (peek() != '}') {
        if (at_end()) fail(key, "unterminated table");
        const std::string field = parse_key();
        const std::string path = key + "." + field;
        skip_space();
        expect('=', path);
        skip_space();
        ConfigValue inner = parse_value(path);
        if (!seen.insert(field).second) fail(path, "duplicate key '" + path + "'");
        v.fields.emplace_back(field, std::move(inner));
        skip_space();
        if (peek() == ',') {
          ++pos_;
          skip_space();
        } else if (peek() != '}') {
          fail(path, "expected ',' or '}' in table");
        }
      }
      ++pos_;
    } else {
      std::string token;
      while (!at_end()) {
        const char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '.' || d == '+' ||
            d == '-' || d == '_') {
          token += d;
          ++pos_;
        } else {
          break;
        }
      }
      if (token == "inf" || token == "+inf") {
        v.number = HUGE_VAL;
      } else {
        std::string cleaned;
        for (char d : token) {
          if (d != '_') cleaned += d;
        }
        char* end = nullptr;
        v.number = std::strtod(cleaned.c_str(), &end);
        if (cleaned.empty() || *end != '\0' || std::isnan(v.number)) {
          fail(key, "cannot parse value '" + token + "' for '" + key + "'");
        }
      }
      v.kind = ConfigValue::Kind::Number;
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

using Fields = std::vector<std::pair<std::string, ConfigValue>>;

const ConfigValue* find(const Fields& fields, const std::string& name) {
  for (const auto& [k, v] : fields) {
    if (k == name) return &v;
  }
  return nullptr;
}

void reject_unknown(const Fields& fields, const std::string& prefix,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : fields) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) {
      const std::string path = prefix.empty() ? k : prefix + "." + k;
      throw ParseError(path, "unknown key '" + path + "'");
    }
  }
}

double as_number(const ConfigValue& v, const std::string& key) {
  if (v.kind == ConfigValue::Kind::Number) return v.number;
  if (v.kind == ConfigValue::Kind::String &&
      (v.text == "inf" || v.text == "+inf" || v.text == "infinity")) {
    return kInfinity;
  }
  throw ParseError(key, "'" + key + "' must be a number");
}

double number_or(const Fields& fields, const std::string& prefix, const char* name,
                 double fallback) {
  const ConfigValue* v = find(fields, name);
  return v ? as_number(*v, prefix + "." + name) : fallback;
}

double required_number(const Fields& fields, const std::string& prefix, const char* name) {
  const ConfigValue* v = find(fields, name);
  if (!v) {
    throw ParseError(prefix + "." + name, "missing key '" + prefix + "." + name + "'");
  }
  return as_number(*v, prefix + "." + name);
}

const Fields& as_table(const ConfigValue& v, const std::string& key) {
  if (v.kind != ConfigValue::Kind::Table) {
    throw ParseError(key, "'" + key + "' must be an inline table");
  }
  return v.fields;
}

std::string family_of(const Fields& table, const std::string& key) {
  const ConfigValue* f = find(table, "family");
  if (!f || f->kind != ConfigValue::Kind::String) {
    throw ParseError(key + ".family", "missing string key '" + key + ".family'");
  }
  return f->text;
}

std::vector<std::pair<double, double>> number_pairs(const ConfigValue& v,
                                                    const std::string& key) {
  if (v.kind != ConfigValue::Kind::Array) {
    throw ParseError(key, "'" + key + "' must be an array of pairs");
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& item : v.items) {
    if (item.kind != ConfigValue::Kind::Array || item.items.size() != 2) {
      throw ParseError(key, "'" + key + "' entries must be two-element arrays");
    }
    out.emplace_back(as_number(item.items[0], key), as_number(item.items[1], key));
  }
  return out;
}

template <class Build>
auto wrap(const std::string& key, Build&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(key, "invalid '" + key + "': " + e.what());
  }
}

OrliczFunction build_phi(const ConfigValue& value) {
  const Fields& t = as_table(value, "phi");
  const std::string family = family_of(t, "phi");
  return wrap("phi", [&] {
    if (family == "power") {
      reject_unknown(t, "phi", {"family", "p"});
      return OrliczFunction::power(required_number(t, "phi", "p"));
    }
    if (family == "exp_minus_linear") {
      reject_unknown(t, "phi", {"family"});
      return OrliczFunction::exp_minus_linear();
    }
    if (family == "log_linear") {
      reject_unknown(t, "phi", {"family"});
      return OrliczFunction::log_linear();
    }
    if (family == "tabulated") {
      reject_unknown(t, "phi", {"family", "nodes"});
      const ConfigValue* nodes = find(t, "nodes");
      if (!nodes) throw ParseError("phi.nodes", "missing key 'phi.nodes'");
      std::vector<DerivativeNode> out;
      for (const auto& [u, p] : number_pairs(*nodes, "phi.nodes")) out.push_back({u, p});
      return OrliczFunction::tabulated(std::move(out));
    }
    throw ParseError("phi.family", "unknown Orlicz family '" + family + "'");
  });
}

Weight build_omega(const ConfigValue& value, double gamma) {
  const Fields& t = as_table(value, "omega");
  const std::string family = family_of(t, "omega");
  return wrap("omega", [&] {
    if (family == "constant") {
      reject_unknown(t, "omega", {"family", "c"});
      return Weight::constant(number_or(t, "omega", "c", 1.0), gamma);
    }
    if (family == "truncated") {
      reject_unknown(t, "omega", {"family", "c", "alpha"});
      return Weight::truncated(number_or(t, "omega", "c", 1.0),
                               required_number(t, "omega", "alpha"), gamma);
    }
    if (family == "power_decay") {
      reject_unknown(t, "omega", {"family", "a"});
      return Weight::power_decay(required_number(t, "omega", "a"), gamma);
    }
    if (family == "exp") {
      reject_unknown(t, "omega", {"family", "lambda"});
      return Weight::exp_decay(number_or(t, "omega", "lambda", 1.0), gamma);
    }
    if (family == "step") {
      reject_unknown(t, "omega", {"family", "pieces"});
      const ConfigValue* pieces = find(t, "pieces");
      if (!pieces) throw ParseError("omega.pieces", "missing key 'omega.pieces'");
      std::vector<WeightPiece> out;
      for (const auto& [len, val] : number_pairs(*pieces, "omega.pieces")) {
        out.push_back({len, val});
      }
      return Weight::step(std::move(out), gamma);
    }
    throw ParseError("omega.family", "unknown weight family '" + family + "'");
  });
}

}  // namespace

std::vector<std::pair<std::string, ConfigValue>> parse_config_document(std::string_view text) {
  return DocumentParser(text).parse();
}

SpaceConfig parse_space_config(std::string_view text) {
  const Fields doc = parse_config_document(text);
  reject_unknown(doc, "",
                 {"phi", "omega", "gamma", "tol_root", "tol_norm", "k_horizon", "delta2"});

  const ConfigValue* gamma_value = find(doc, "gamma");
  if (!gamma_value) throw ParseError("gamma", "missing key 'gamma'");
  const double gamma = as_number(*gamma_value, "gamma");
  if (gamma != 1.0 && !std::isinf(gamma)) {
    throw ParseError("gamma", "'gamma' must be 1 or \"inf\"");
  }

  const ConfigValue* phi_value = find(doc, "phi");
  if (!phi_value) throw ParseError("phi", "missing key 'phi'");
  const ConfigValue* omega_value = find(doc, "omega");
  if (!omega_value) throw ParseError("omega", "missing key 'omega'");

  const OrliczFunction phi = build_phi(*phi_value);
  const Weight omega = build_omega(*omega_value, gamma);

  Delta2Options delta2;
  if (const ConfigValue* d = find(doc, "delta2")) {
    const Fields& t = as_table(*d, "delta2");
    reject_unknown(t, "delta2", {"u0", "u0_all", "horizon", "points", "ratio_cap"});
    delta2.u0_large = number_or(t, "delta2", "u0", delta2.u0_large);
    delta2.u0_all = number_or(t, "delta2", "u0_all", delta2.u0_all);
    delta2.horizon = number_or(t, "delta2", "horizon", delta2.horizon);
    delta2.grid_points =
        static_cast<int>(number_or(t, "delta2", "points", delta2.grid_points));
    delta2.ratio_cap = number_or(t, "delta2", "ratio_cap", delta2.ratio_cap);
    if (!(delta2.u0_large > 0.0) || !(delta2.u0_all > 0.0) ||
        !(delta2.horizon > delta2.u0_large) || delta2.grid_points < 2) {
      throw ParseError("delta2", "invalid 'delta2' grid");
    }
  }

  const double tol_root = find(doc, "tol_root") ? as_number(*find(doc, "tol_root"), "tol_root") : 1e-12;
  const double tol_norm = find(doc, "tol_norm") ? as_number(*find(doc, "tol_norm"), "tol_norm") : 1e-10;
  const double k_horizon =
      find(doc, "k_horizon") ? as_number(*find(doc, "k_horizon"), "k_horizon") : 1e8;
  return wrap("tolerances", [&] {
    return SpaceConfig::make(phi, omega, tol_root, tol_norm, k_horizon, delta2);
  });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SpaceConfig load_space_config(const std::string& path) {
  return parse_space_config(read_text_file(path));
}

StepFunction load_steps(const std::string& path, double domain_len) {
  return parse_steps(read_text_file(path), domain_len);
}

}  // namespace olk
