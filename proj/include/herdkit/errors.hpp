#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace herdkit {

// Malformed input data: wrong field, wrong shape, unparsable number.
// `path` is a JSON-pointer-style location of the offending field.
struct SchemaError : std::runtime_error {
  std::string path;
  SchemaError(std::string path_, const std::string& what_)
      : std::runtime_error(path_ + ": " + what_), path(std::move(path_)) {}
};

// A square matrix that was required to be invertible is not.
struct SingularError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// factor_through_surjection: the map does not vanish on ker(p), so no
// factorization exists. In the reconstruction pipeline this is raised only
// when an internal invariant is broken, never on bad user input.
struct FactorizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Set-level table fails a heap/group axiom where a valid table is required.
struct HeapAxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linearized carrier fails a herd axiom where a valid herd is required.
struct HerdAxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coaction data fails a comodule axiom where a valid comodule is required.
struct ComoduleAxiomError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A map defined on representatives disagrees across one equivalence class.
struct WellDefinednessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No basis vector with nonzero counit, so no splitting vector exists.
struct ZeroCounitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A composite carrier required by the coend construction does not occur
// among the diagram's objects.
struct MissingObjectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace herdkit
