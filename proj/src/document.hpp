#pragma once

// Problem documents: one field, one algebra with involution, named forms,
// reference tuples and an optional extension field.
//
//   field { extend: 2 }
//   algebra { division: quaternion(-1, -1) m: 1 epsilon0: 1 phi0: [[1]] }
//   extension { extend: 3 }
//   form h { diagonal: [1, r1] }
//   form g { over: extension gram: [[r2]] }
//   reference H { h, -g }
//
// Expressions: rationals p/q, generators r1..rn, units i, j, k (quaternion)
// or s (quadratic), + - * / and parentheses. '#' starts a comment.

#include <optional>
#include <string>
#include <vector>

#include "signature.hpp"

namespace hsig {

struct FormSpec {
  std::string name;
  bool collapsed = false;
  bool over_extension = false;
  std::optional<DMatrix> gram;
  std::vector<DMatrix> diagonal;  // m×m entries (1×1 when m = 1 or collapsed)
  std::optional<HermForm> form;
};

struct ReferenceItem {
  std::string form;
  bool negate = false;
};

struct ReferenceSpec {
  std::string name;
  std::vector<ReferenceItem> items;
};

struct ProblemDocument {
  FieldTower field;
  std::optional<Algebra> algebra;
  std::optional<FieldTower> extension;  // extends field
  std::optional<Algebra> extended;      // algebra ⊗ extension
  std::vector<FormSpec> forms;
  std::vector<ReferenceSpec> references;

  const FormSpec* find_form(const std::string& name) const;
  const ReferenceSpec* find_reference(const std::string& name) const;
  // Resolve a reference block to forms over the base algebra.
  ReferenceTuple reference_tuple(const ReferenceSpec& spec) const;
};

// ParseError (with line:column) or ValidationError (naming the block).
ProblemDocument parse_document(const std::string& text);
std::string serialize_document(const ProblemDocument& doc);

// One element expression evaluated in f (ParseError / ValidationError).
FieldElement parse_field_element(const std::string& text, const FieldTower& f);

std::string matrix_to_string(const DMatrix& x);
std::string form_block(const std::string& name, const FormSpec& spec, std::size_t m);

}  // namespace hsig
