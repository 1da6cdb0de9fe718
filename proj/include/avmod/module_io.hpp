#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>
#include "avmod/module.hpp"

namespace avmod {

/// The file does not match the module-definition schema.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// {name, dim, rank, order, terms: [{i, alpha, matrix}]} with 1-based i,
/// alpha of length dim and matrix entries as polynomial strings. Zero
/// matrices are omitted on output.
nlohmann::json module_to_json(const ModuleData& data);
/// Throws SchemaError or ParseError; does not validate.
ModuleData module_from_json(const nlohmann::json& j);

/// Reads, parses and validates; validation failures throw InvalidModule.
AVModule load_module_file(const std::filesystem::path& path);

}  // namespace avmod
