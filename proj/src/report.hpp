#pragma once

#include <string>
#include <utility>
#include <vector>

#include "torus.hpp"

// Ordered key=value report consumed by the CLI and the C API. Keys are stable
// (golden-file friendly); insertion order is the presentation order.

namespace rf7 {

struct Report {
  std::vector<std::pair<std::string, std::string>> items;

  void add(const std::string& key, const std::string& value) {
    items.emplace_back(key, value);
  }
  void add(const std::string& key, u64 value) {
    items.emplace_back(key, std::to_string(value));
  }
  void add_pass(const std::string& key, bool pass) {
    items.emplace_back(key, pass ? "pass" : "fail");
  }

  const std::string* find(const std::string& key) const;
  std::string to_text() const;  // one key=value per line
};

}  // namespace rf7
