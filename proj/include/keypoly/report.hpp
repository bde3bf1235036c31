#pragma once

#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "keypoly/ext_value.hpp"

namespace keypoly {

using Json = nlohmann::ordered_json;

// One checked statement inside a report.
struct Clause {
  std::string id;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

inline Json to_json(const ExtValue& v) { return v.str(); }

inline Json to_json(const std::vector<ExtValue>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(v.str());
  return a;
}

template <class T>
Json to_json(const std::set<T>& s) {
  Json a = Json::array();
  for (const auto& v : s) a.push_back(v);
  return a;
}

inline Json to_json(const Clause& c) {
  Json j{{"id", c.id}, {"applicable", c.applicable}, {"pass", c.pass}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Json to_json(const std::vector<Clause>& cs) {
  Json a = Json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

inline bool all_pass(const std::vector<Clause>& cs) {
  for (const auto& c : cs)
    if (c.applicable && !c.pass) return false;
  return true;
}

// Throws AssertionFailure naming the first failed clause.
void require_all(const std::vector<Clause>& cs, const std::string& context);

}  // namespace keypoly
