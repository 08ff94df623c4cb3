#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ramsey/exactnum.hpp"

namespace ramsey {

using json = nlohmann::json;

inline json to_json(const BigRational& r) { return r.str(); }
inline json to_json(const BigInt& n) { return n.get_str(); }
inline json to_json(const Q5Number& x) { return {{"a", x.a().str()}, {"b", x.b().str()}}; }
inline json to_json(const RatInterval& i) { return {{"lo", i.lo.str()}, {"hi", i.hi.str()}}; }

inline BigRational rational_from_json(const json& j) {
  if (j.is_number_integer()) return BigRational(BigInt(j.dump()));
  if (!j.is_string()) throw InputError("expected rational string \"p/q\", got " + j.dump());
  return BigRational::parse(j.get<std::string>());
}

inline Q5Number q5_from_json(const json& j) {
  if (j.is_object()) {
    return {rational_from_json(j.at("a")), j.contains("b") ? rational_from_json(j.at("b")) : BigRational(0)};
  }
  if (j.is_string()) return Q5Number::parse(j.get<std::string>());
  return {rational_from_json(j)};
}

// How far a passing verdict reaches.
enum class ProofStatus {
  range,              // checked on the recorded finite range only
  periodic_complete,  // finite check covers a full period: holds for all n
};

inline const char* to_string(ProofStatus s) {
  return s == ProofStatus::range ? "range" : "periodic_complete";
}

/// Machine-checkable record of one verified claim.
struct Certificate {
  std::string claim;
  json parameters = json::object();
  json verified_range = json::object();
  bool pass = false;
  json counterexample = nullptr;
  ProofStatus status = ProofStatus::range;
  std::vector<Certificate> components;
  std::string note;
};

inline json to_json(const Certificate& c) {
  json j = {
      {"claim", c.claim},
      {"parameters", c.parameters},
      {"verified_range", c.verified_range},
      {"verdict", c.pass ? "pass" : "fail"},
      {"counterexample", c.counterexample},
      {"proof_status", to_string(c.status)},
  };
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.components.empty()) {
    j["components"] = json::array();
    for (const auto& sub : c.components) j["components"].push_back(to_json(sub));
  }
  return j;
}

}  // namespace ramsey
