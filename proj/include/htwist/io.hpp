#pragma once

// JSON input documents: parsing with line/field diagnostics, validation of
// index ranges and symmetry types, canonical re-serialization, content hash.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "htwist/l2alg.hpp"
#include "htwist/pq3.hpp"
#include "htwist/twistcore.hpp"

namespace htwist::io {

struct TwistedDoc {
  std::string name;
  TwistedLieAlgebra algebra;
  std::vector<Rational> B;  // optional n x n symmetric, empty when absent
};

struct SplitDoc {
  std::string name;
  pq3::SplitData data;
};

struct PQ3Doc {
  std::string name;
  std::vector<std::string> variables;
  pq3::PQ3Data data;
};

struct CourantDoc {
  std::string name;
  std::vector<std::string> variables;
  pq3::CourantData data;
};

struct MorphismDoc {
  std::string name;
  TwistedLieAlgebra source;
  TwistedLieAlgebra target;
  L2Morphism morphism;
};

using InputDocument = std::variant<TwistedDoc, SplitDoc, PQ3Doc, CourantDoc, MorphismDoc>;

std::string_view kind_name(const InputDocument& doc);

/// Throws Error(ParseError) with "line L" for syntax errors and a field path
/// such as "/bracket/2/1" for schema, index or symmetry problems.
InputDocument parse_document(std::string_view text);
InputDocument load_document(const std::string& path, std::string* raw = nullptr);

/// Canonical JSON: entries with sorted indices, nonzero only, rationals as "p/q".
std::string serialize(const InputDocument& doc);

bool equivalent(const InputDocument& a, const InputDocument& b);

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace htwist::io
