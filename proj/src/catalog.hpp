#pragma once

// Built-in fixture maps, each with the values a correct classification must
// reproduce.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "classifier.hpp"
#include "manifest.hpp"

namespace bieigen {

/// Where an expected value comes from.
enum class Source {
  Published,   // stated for this example in the literature
  Derived,     // hand computation, checked by an independent oracle
  Elementary,  // immediate from the definitions
};

std::string_view to_string(Source s);

/// Report key (lambda_hat, mu_hat, rho_hat, c_hat, eta_norm) and its value;
/// an empty value means the report must carry null.
struct ExpectedConstant {
  std::string key;
  std::optional<double> value;
  Source source;
};

/// Report key (is_harmonic, is_biharmonic, ...) and its boolean.
struct ExpectedVerdict {
  std::string key;
  bool value;
  Source source;
};

struct ExpectedStatus {
  Theorem theorem;
  Status status;
  Source source;
};

struct CatalogEntry {
  std::string name;
  Manifest manifest;
  std::string note;
  std::vector<ExpectedConstant> constants;
  std::vector<ExpectedVerdict> verdicts;
  std::vector<ExpectedStatus> theorems;  // one per theorem
};

/// Fixed order; built once.
const std::vector<CatalogEntry>& catalog_list();

/// nullptr for unknown names.
const CatalogEntry* catalog_find(std::string_view name);

}  // namespace bieigen
