#pragma once

#include <map>
#include <string>

namespace polyfermion {

// Flat "key = value" settings; '#' starts a comment.
struct Config {
  unsigned precision_bits = 0;  // 0 picks the default for the degree
  int sim_cap = 24;
  double cost_c = 2;
  double cost_c_prime = 1;
  int qsp_digits = 30;
  int jobs = 1;

  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  void set(const std::string& key, const std::string& value);
  std::string to_string() const;
};

}  // namespace polyfermion
