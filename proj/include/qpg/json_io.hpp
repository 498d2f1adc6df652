#pragma once

// ============================================================================
// json_io.hpp -- JSON export of algebra elements (test fixtures, tooling)
// ============================================================================

#include <json.hpp>

#include "qpg/pg_algebra.hpp"

namespace qpg {

/// Canonical JSON form of an element: context parameters plus one object
/// per stored term, in the element's deterministic term order.
inline nlohmann::json pg_to_json(const PGElement& e) {
  nlohmann::json j;
  j["k"] = e.context().k();
  j["m"] = e.context().modes();
  j["alpha"] = e.context().alpha();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : e.terms()) {
    nlohmann::json term;
    term["n"] = t.n;
    term["nb"] = t.nb;
    term["re"] = t.coeff.real();
    term["im"] = t.coeff.imag();
    j["terms"].push_back(std::move(term));
  }
  return j;
}

}  // namespace qpg
