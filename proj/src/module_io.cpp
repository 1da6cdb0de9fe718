#include "avmod/module_io.hpp"

#include <fstream>

namespace avmod {

using nlohmann::json;

json module_to_json(const ModuleData& data) {
  json terms = json::array();
  for (const auto& [key, mat] : data.tensor) {
    if (mat.is_zero()) continue;
    json rows = json::array();
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(to_string(mat(r, c)));
      rows.push_back(std::move(row));
    }
    terms.push_back({{"i", key.direction + 1}, {"alpha", key.alpha.entries()}, {"matrix", std::move(rows)}});
  }
  return {{"name", data.name},
          {"dim", data.dim},
          {"rank", data.rank},
          {"order", data.order},
          {"terms", std::move(terms)}};
}

namespace {

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(where + ": missing field '" + name + "'");
  return j.at(name);
}

std::size_t natural(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw SchemaError(where + ": '" + name + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

ModuleData module_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("module definition must be a JSON object");
  ModuleData data;
  data.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "module";
  data.dim = natural(j, "dim", "module");
  data.rank = natural(j, "rank", "module");
  data.order = static_cast<unsigned>(natural(j, "order", "module"));
  if (data.dim < 1 || 2 * data.dim > kMaxVariables)
    throw SchemaError("module: dim must lie in 1.." + std::to_string(kMaxVariables / 2));
  if (data.rank < 1) throw SchemaError("module: rank must be at least 1");
  const json& terms = field(j, "terms", "module");
  if (!terms.is_array()) throw SchemaError("module: 'terms' must be an array");

  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "terms[" + std::to_string(t) + "]";
    const json& term = terms[t];
    const std::size_t i = natural(term, "i", where);
    if (i < 1 || i > data.dim) throw SchemaError(where + ": direction i out of range 1.." + std::to_string(data.dim));
    const json& alpha_j = field(term, "alpha", where);
    if (!alpha_j.is_array() || alpha_j.size() != data.dim)
      throw SchemaError(where + ": alpha must be an array of length dim");
    std::vector<unsigned> entries;
    for (const auto& a : alpha_j) {
      if (!a.is_number_integer() || a.get<long long>() < 0)
        throw SchemaError(where + ": alpha entries must be nonnegative integers");
      entries.push_back(a.get<unsigned>());
    }
    MultiIndex alpha(std::move(entries));
    if (alpha.order() > data.order)
      throw SchemaError(where + ": |alpha| = " + std::to_string(alpha.order()) + " exceeds order " +
                        std::to_string(data.order));
    const json& rows = field(term, "matrix", where);
    if (!rows.is_array() || rows.size() != data.rank)
      throw SchemaError(where + ": matrix must have rank rows");
    PolyMatrix mat(data.dim, data.rank, data.rank);
    for (std::size_t r = 0; r < data.rank; ++r) {
      if (!rows[r].is_array() || rows[r].size() != data.rank)
        throw SchemaError(where + ": matrix row " + std::to_string(r + 1) + " must have rank entries");
      for (std::size_t c = 0; c < data.rank; ++c) {
        const json& cell = rows[r][c];
        if (cell.is_string()) {
          mat(r, c) = parse_poly(cell.get<std::string>(), data.dim);
        } else if (cell.is_number_integer()) {
          mat(r, c) = Poly::constant(data.dim, Rational(cell.get<long>()));
        } else {
          throw SchemaError(where + ": matrix entries must be polynomial strings");
        }
      }
    }
    TensorKey key{i - 1, std::move(alpha)};
    if (data.tensor.contains(key)) throw SchemaError(where + ": duplicate (i, alpha) entry");
    data.tensor.emplace(std::move(key), std::move(mat));
  }
  return data;
}

AVModule load_module_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open module file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("module file " + path.string() + " is not valid JSON: " + e.what());
  }
  return AVModule::create(module_from_json(j));
}

}  // namespace avmod
