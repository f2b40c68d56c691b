#include "polyfermion/config.hpp"

#include <fstream>
#include <sstream>

#include "polyfermion/error.hpp"

namespace polyfermion {

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

template <class T>
T number(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  T out{};
  if (!(is >> out) || !(is >> std::ws).eof())
    throw Error(Errc::parse_error, "bad value for " + key + ": '" + v + "'");
  return out;
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "precision_bits")
    precision_bits = number<unsigned>(key, value);
  else if (key == "sim_cap")
    sim_cap = number<int>(key, value);
  else if (key == "cost_c")
    cost_c = number<double>(key, value);
  else if (key == "cost_c_prime")
    cost_c_prime = number<double>(key, value);
  else if (key == "qsp_digits")
    qsp_digits = number<int>(key, value);
  else if (key == "jobs")
    jobs = number<int>(key, value);
  else
    throw Error(Errc::parse_error, "unknown config key '" + key + "'");
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::parse_error, "config line " + std::to_string(lineno) + ": expected key = value");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Config::to_string() const {
  std::ostringstream os;
  os << "precision_bits = " << precision_bits << "\n"
     << "sim_cap = " << sim_cap << "\n"
     << "cost_c = " << cost_c << "\n"
     << "cost_c_prime = " << cost_c_prime << "\n"
     << "qsp_digits = " << qsp_digits << "\n"
     << "jobs = " << jobs << "\n";
  return os.str();
}

}  // namespace polyfermion
