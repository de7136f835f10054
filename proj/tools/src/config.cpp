#include "mgraphon_cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>

namespace mgraphon::cli {

namespace pt = boost::property_tree;

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = boost::algorithm::trim_copy(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw ConfigError(what + ": not a number: '" + text + "'");
  return value;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  const std::string t = boost::algorithm::trim_copy(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    throw ConfigError(what + ": not a non-negative integer: '" + text + "'");
  return value;
}

Config Config::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  Config c;
  std::istringstream in(text);
  try {
    pt::read_ini(in, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + assignment + "'");
  set(boost::algorithm::trim_copy(assignment.substr(0, eq)), boost::algorithm::trim_copy(assignment.substr(eq + 1)));
}

void Config::set(const std::string& key, const std::string& value) { tree_.put(key, value); }

bool Config::has(const std::string& key) const { return static_cast<bool>(tree_.get_optional<std::string>(key)); }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto v = tree_.get_optional<std::string>(key);
  return v ? boost::algorithm::trim_copy(*v) : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? parse_double(get_string(key, ""), key) : fallback;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
  return has(key) ? parse_uint(get_string(key, ""), key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key, "");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key + ": not a boolean: '" + v + "'");
}

std::vector<std::string> Config::get_list(const std::string& key, const std::vector<std::string>& fallback) const {
  return has(key) ? split_list(get_string(key, "")) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(get_string(key, ""))) out.push_back(parse_double(item, key));
  return out;
}

std::vector<std::uint64_t> Config::get_uints(const std::string& key,
                                             const std::vector<std::uint64_t>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(get_string(key, ""))) out.push_back(parse_uint(item, key));
  return out;
}

}  // namespace mgraphon::cli
