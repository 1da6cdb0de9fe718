#include "avmod/zoo.hpp"

namespace avmod {

namespace {

void check_dim(std::size_t dim) {
  if (dim < 1 || 2 * dim > kMaxVariables)
    throw std::invalid_argument("dim must lie in 1.." + std::to_string(kMaxVariables / 2));
}

PolyMatrix& slot(ModuleData& data, std::size_t i, MultiIndex alpha) {
  return data.tensor
      .try_emplace(TensorKey{i, std::move(alpha)}, PolyMatrix(data.dim, data.rank, data.rank))
      .first->second;
}

}  // namespace

AVModule trivial_dmodule(std::size_t dim, std::size_t rank, const std::vector<PolyMatrix>& connection) {
  check_dim(dim);
  if (rank < 1) throw std::invalid_argument("rank must be at least 1");
  if (!connection.empty() && connection.size() != dim)
    throw std::invalid_argument("connection needs one matrix per direction");
  ModuleData data;
  data.name = "trivial_dmodule(" + std::to_string(dim) + "," + std::to_string(rank) + ")";
  data.dim = dim;
  data.rank = rank;
  for (std::size_t i = 0; i < connection.size(); ++i) slot(data, i, MultiIndex::zero(dim)) = connection[i];
  return AVModule::create(normalized(std::move(data)));
}

AVModule differential_forms(std::size_t dim) {
  check_dim(dim);
  ModuleData data;
  data.name = "differential_forms(" + std::to_string(dim) + ")";
  data.dim = dim;
  data.rank = dim;
  data.order = 1;
  // L_{g∂_i}(dx_j) = δ_ij Σ_k ∂_k g dx_k.
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) slot(data, i, MultiIndex::unit(dim, k))(k, i) = Poly::constant(dim, 1);
  return AVModule::create(std::move(data));
}

AVModule tangent_adjoint(std::size_t dim) {
  check_dim(dim);
  ModuleData data;
  data.name = "tangent_adjoint(" + std::to_string(dim) + ")";
  data.dim = dim;
  data.rank = dim;
  data.order = 1;
  // [g∂_i, a∂_k] = g∂_i(a)∂_k − a∂_k(g)∂_i.
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) slot(data, i, MultiIndex::unit(dim, k))(i, k) = Poly::constant(dim, -1);
  return AVModule::create(std::move(data));
}

AVModule jet_module(std::size_t dim, unsigned n) {
  check_dim(dim);
  const auto basis = MultiIndex::up_to(dim, n);
  std::map<MultiIndex, std::size_t> index;
  for (std::size_t b = 0; b < basis.size(); ++b) index[basis[b]] = b;

  ModuleData data;
  data.name = "jet_module(" + std::to_string(dim) + "," + std::to_string(n) + ")";
  data.dim = dim;
  data.rank = basis.size();
  data.order = n;
  // ∂^α(g ∂_i h) = Σ_β C(α,β) ∂^β g ∂^{α−β+e_i} h: the β = 0 term is the
  // symbol, the others shift coordinate α−β+e_i into slot α.
  for (std::size_t i = 0; i < dim; ++i)
    for (const auto& beta : basis) {
      if (beta.order() == 0) continue;
      for (const auto& alpha : basis) {
        if (!beta.below(alpha)) continue;
        const MultiIndex source = alpha - beta + MultiIndex::unit(dim, i);
        if (source.order() > n) continue;
        slot(data, i, beta)(index.at(alpha), index.at(source)) = Poly::constant(dim, binomial(alpha, beta));
      }
    }
  return AVModule::create(normalized(std::move(data)));
}

AVModule twist(const Rational& lambda) {
  ModuleData data;
  data.name = "twist(" + to_string(lambda) + ")";
  data.dim = 1;
  data.rank = 1;
  slot(data, 0, MultiIndex::unit(1, 0))(0, 0) = Poly::constant(1, lambda);
  return AVModule::create(normalized(std::move(data)));
}

AVModule zoo(const std::string& name, const ZooParams& params) {
  if (name == "trivial_dmodule" || name == "dmodule") return trivial_dmodule(params.dim, params.rank);
  if (name == "differential_forms" || name == "forms") return differential_forms(params.dim);
  if (name == "tangent_adjoint" || name == "adjoint") return tangent_adjoint(params.dim);
  if (name == "jet_module" || name == "jets") return jet_module(params.dim, params.n);
  if (name == "twist") {
    if (params.dim != 1) throw std::invalid_argument("twist is defined for dim 1 only");
    return twist(params.lambda);
  }
  throw UnknownModule("unknown zoo module: " + name);
}

std::vector<AVModule> zoo_catalog() {
  std::vector<AVModule> out;
  for (std::size_t d = 1; d <= 2; ++d) {
    out.push_back(trivial_dmodule(d, 2));
    out.push_back(differential_forms(d));
    out.push_back(tangent_adjoint(d));
  }
  for (unsigned n = 0; n <= 3; ++n) out.push_back(jet_module(1, n));
  for (unsigned n = 0; n <= 2; ++n) out.push_back(jet_module(2, n));
  for (long lambda : {-2L, 0L, 1L, 3L}) out.push_back(twist(Rational(lambda)));
  out.push_back(twist(Rational(1, 2)));
  out.push_back(tensor_product(differential_forms(2), tangent_adjoint(2)));
  return out;
}

}  // namespace avmod
