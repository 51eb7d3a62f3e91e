#include "lvie/problem_config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace lvie {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Drops a trailing '#' comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string unquote(std::string_view value, int line) {
  value = trim(value);
  if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
    throw ConfigError("expected a quoted string, got '" + std::string(value) + "'", line);
  }
  return std::string(value.substr(1, value.size() - 2));
}

double number(std::string_view value, int line) {
  value = trim(value);
  try {
    const expr::Expr e = expr::parse(value);
    if (e.references_t() || e.references_s()) {
      throw ConfigError("numeric value must not reference t or s", line);
    }
    return e.eval(0.0);
  } catch (const expr::SyntaxError& e) {
    throw ConfigError(std::string("bad number: ") + e.what(), line);
  } catch (const expr::EvalError& e) {
    throw ConfigError(std::string("bad number: ") + e.what(), line);
  }
}

ScalarFunction function(std::string_view value, int arity, int line) {
  const std::string text = unquote(value, line);
  try {
    return ScalarFunction::from_expr(expr::parse(text), arity);
  } catch (const expr::SyntaxError& e) {
    throw ConfigError(e.what(), line);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what(), line);
  }
}

// Splits "a = 1, b = \"x, y\"" on commas outside quotes.
std::vector<std::string_view> split_fields(std::string_view body) {
  std::vector<std::string_view> out;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '"') quoted = !quoted;
    if (body[i] == ',' && !quoted) {
      out.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(body.substr(start));
  return out;
}

std::pair<std::string_view, std::string_view> split_key(std::string_view entry, int line) {
  const auto eq = entry.find('=');
  if (eq == std::string_view::npos) throw ConfigError("expected key = value", line);
  return {trim(entry.substr(0, eq)), trim(entry.substr(eq + 1))};
}

LoadTerm parse_load(std::string_view value, int line) {
  value = trim(value);
  if (value.size() < 2 || value.front() != '{' || value.back() != '}') {
    throw ConfigError("load must be written as { point = ..., coeff = \"...\" }", line);
  }
  std::optional<double> point;
  std::optional<ScalarFunction> coeff;
  for (std::string_view field : split_fields(value.substr(1, value.size() - 2))) {
    if (trim(field).empty()) continue;
    auto [key, v] = split_key(field, line);
    if (key == "point") {
      point = number(v, line);
    } else if (key == "coeff") {
      coeff = function(v, 1, line);
    } else {
      throw ConfigError("unknown load field '" + std::string(key) + "'", line);
    }
  }
  if (!point || !coeff) throw ConfigError("load needs both point and coeff", line);
  return {*point, *coeff};
}

}  // namespace

Problem parse_problem_config(std::string_view text, std::string name) {
  Problem p;
  p.name = std::move(name);
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view content = trim(strip_comment(raw));
    if (content.empty()) continue;
    auto [key_view, value] = split_key(content, line);
    const std::string key(key_view);
    if (key != "load" && !seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line);

    if (key == "name") {
      p.name = unquote(value, line);
    } else if (key == "t0") {
      p.t0 = number(value, line);
    } else if (key == "T") {
      p.t_end = number(value, line);
    } else if (key == "lambda") {
      p.lambda = number(value, line);
    } else if (key == "a0") {
      p.a0 = function(value, 1, line);
    } else if (key == "kernel") {
      p.kernel = function(value, 2, line);
    } else if (key == "f") {
      p.rhs = function(value, 1, line);
    } else if (key == "exact") {
      p.exact = function(value, 1, line);
    } else if (key == "load") {
      p.loads.push_back(parse_load(value, line));
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }
  for (const char* required : {"t0", "T", "lambda", "a0", "kernel", "f"}) {
    if (!seen.count(required)) throw ConfigError(std::string("missing required key '") + required + "'", 0);
  }
  return p;
}

Problem load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_config(buf.str(), path.stem().string());
}

}  // namespace lvie
