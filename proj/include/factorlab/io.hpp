#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "factorlab/algebra.hpp"
#include "factorlab/error.hpp"
#include "factorlab/formula.hpp"
#include "factorlab/variety.hpp"

namespace factorlab {

/// The input file could not be read.
class IoError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::filesystem::path& path);

/// Algebra files are JSON:
///   { "name": "Z6", "size": 6,
///     "ops": { "+": { "arity": 2, "table": [ ... ] }, ... } }
/// Operation order follows the file. Tables are row-major. An optional
/// integer "l" sets the 0/1 tuple length (default 1).
FiniteAlgebra parse_algebra(std::string_view json_text, std::size_t tuple_length = 0);
FiniteAlgebra load_algebra(const std::filesystem::path& path);
std::string algebra_to_json(const FiniteAlgebra& a);

/// Command-line replacements for a context file's pool settings.
struct PoolOverride {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> max_size;
};

/// Variety-context files are JSON:
///   { "generator": "z6.alg.json" | { inline algebra },
///     "l": 1, "zero": ["0"], "one": ["1"],
///     "pool": { "depth": 1, "max_size": 8 } }
/// Generator paths are relative to the context file. The pool is generated
/// on load; set fields of `pool_override` replace the file's settings.
VarietyContext load_context(const std::filesystem::path& path,
                            const PoolOverride& pool_override = {});
VarietyContext parse_context(std::string_view json_text, const std::filesystem::path& base_dir,
                             const PoolOverride& pool_override = {});

ExistentialDnf load_formula(const std::filesystem::path& path, const VarietyContext& ctx);

}  // namespace factorlab
