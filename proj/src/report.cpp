#include "report.hpp"

namespace rf7 {

const std::string* Report::find(const std::string& key) const {
  for (const auto& kv : items)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& kv : items) {
    out += kv.first;
    out += '=';
    out += kv.second;
    out += '\n';
  }
  return out;
}

}  // namespace rf7
