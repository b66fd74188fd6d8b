#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "wedgekit/coalgebra.hpp"
#include "wedgekit/field.hpp"
#include "wedgekit/matrix.hpp"
#include "wedgekit/subspace.hpp"
#include "wedgekit/wedge.hpp"

namespace wedgekit {

inline constexpr std::int64_t kSchemaVersion = 1;

/// A coalgebra over either supported scalar type, as read from a document.
using AnyCoalgebra = std::variant<Coalgebra<Rat>, Coalgebra<Fp>>;

/// Parse a coalgebra document. The axioms are validated before returning,
/// so a successful parse is a lawful coalgebra and a failing one names the
/// violated identity. ParseError for malformed text, FieldError for bad
/// moduli or non-exact literals, AxiomError for lawless structure
/// constants, SizeCapExceeded when dim^2 exceeds the cap.
AnyCoalgebra parse_coalgebra(const std::string& text,
                             std::size_t size_cap = kDefaultSizeCap);

/// Structurally identical to parse_coalgebra but skips the axiom check, for
/// tooling that reports on the axioms itself.
AnyCoalgebra parse_coalgebra_unchecked(const std::string& text,
                                       std::size_t size_cap = kDefaultSizeCap);

/// Canonical serialization: fixed key order; per-element delta triples
/// sorted by (i, j) with zero coefficients omitted; lowest-terms exact
/// coefficients; two-space indentation; trailing newline. Byte-stable.
std::string serialize(const Coalgebra<Rat>& c);
std::string serialize(const Coalgebra<Fp>& c);

/// Subspace from a command-line basis spec: comma-separated generators,
/// each either a basis label or a linear combination like "1/2*c0+c1".
/// The empty spec (or "0") is the zero subspace.
Subspace<Rat> parse_basis_spec(const Coalgebra<Rat>& c, const std::string& spec);
Subspace<Fp> parse_basis_spec(const Coalgebra<Fp>& c, const std::string& spec);

/// Parse a morphism document {schema_version, target, matrix} against a
/// known source coalgebra. The matrix rows are indexed by the target basis,
/// columns by the source basis; the morphism laws are checked on
/// construction (MorphismError otherwise).
CoalgebraMorphism<Rat> parse_morphism(const std::string& text,
                                      const Coalgebra<Rat>& source);
CoalgebraMorphism<Fp> parse_morphism(const std::string& text,
                                     const Coalgebra<Fp>& source);

std::string serialize_morphism(const CoalgebraMorphism<Rat>& f);
std::string serialize_morphism(const CoalgebraMorphism<Fp>& f);

}  // namespace wedgekit
