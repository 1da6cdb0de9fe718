#include "avmod/smash.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace avmod {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || 2 * dim > kMaxVariables)
    throw std::invalid_argument("smash product dimension must be in 1.." +
                                std::to_string(kMaxVariables / 2));
}

Poly x_block(const Poly& p) { return lift(p, 2 * p.nvars(), 0); }
Poly y_block(const Poly& p) { return lift(p, 2 * p.nvars(), p.nvars()); }

std::vector<std::size_t> diagonal_map(std::size_t dim) {
  std::vector<std::size_t> map(2 * dim);
  for (std::size_t k = 0; k < 2 * dim; ++k) map[k] = k % dim;
  return map;
}

// Σ_{|β|<=order} ∂^β h(x) t^β / β! in variables (x, t).
Poly taylor_shift(const Poly& h, unsigned order) {
  const std::size_t d = h.nvars();
  Poly out(2 * d);
  for (const auto& beta : MultiIndex::up_to(d, order)) {
    Poly coeff = h.partial(beta);
    if (coeff.is_zero()) continue;
    out += x_block(coeff).times_monomial(beta.as_monomial(d), 1 / beta.factorial());
  }
  return out;
}

// Truncated product in (x, t), dropping t-degree > order.
Poly truncated_product(const Poly& a, const Poly& b, std::size_t d, unsigned order) {
  return truncate_block(a * b, d, 2 * d, order);
}

// Converts Σ c_α(x) t^α (t-degree <= order) into diagonal y-derivative values
// α!·c_α(x).
DiagonalJet jet_from_taylor(const std::vector<Poly>& comps, std::size_t d, unsigned order) {
  DiagonalJet jet(d, order);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::vector<Poly::Term>> buckets(jet.indices().size());
    for (const auto& t : comps[i].terms()) {
      std::vector<unsigned> alpha(d);
      Monomial xpart;
      for (std::size_t k = 0; k < d; ++k) {
        alpha[k] = t.mono[d + k];
        xpart.set(k, t.mono[k]);
      }
      MultiIndex a(std::move(alpha));
      if (a.order() > order) continue;
      buckets[jet.slot(a)].push_back({xpart, t.coef * a.factorial()});
    }
    for (std::size_t s = 0; s < buckets.size(); ++s)
      jet.value(i, s) = Poly::from_terms(d, std::move(buckets[s]));
  }
  return jet;
}

}  // namespace

// ---------------------------------------------------------------------------
// SmashElement

SmashElement::SmashElement(std::size_t dim) : dim_(dim) {
  check_dim(dim);
  components_.assign(dim, Poly(2 * dim));
}

SmashElement::SmashElement(std::size_t dim, std::vector<Poly> components)
    : dim_(dim), components_(std::move(components)) {
  check_dim(dim);
  if (components_.size() != dim) throw DimensionMismatch("smash element needs dim components");
  for (const auto& c : components_)
    if (c.nvars() != 2 * dim) throw DimensionMismatch("smash component must use 2*dim variables");
}

bool SmashElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Poly& p) { return p.is_zero(); });
}

void SmashElement::require_same(const SmashElement& other) const {
  if (dim_ != other.dim_) throw DimensionMismatch("smash elements of different dimension");
}

SmashElement SmashElement::operator-() const {
  SmashElement r = *this;
  for (auto& c : r.components_) c = -c;
  return r;
}

SmashElement& SmashElement::operator+=(const SmashElement& other) {
  require_same(other);
  for (std::size_t i = 0; i < dim_; ++i) components_[i] += other.components_[i];
  return *this;
}

SmashElement& SmashElement::operator-=(const SmashElement& other) {
  require_same(other);
  for (std::size_t i = 0; i < dim_; ++i) components_[i] -= other.components_[i];
  return *this;
}

SmashElement operator*(const Rational& c, SmashElement u) {
  for (auto& p : u.components_) p *= c;
  return u;
}

// ---------------------------------------------------------------------------
// Constructors and brackets

SmashElement from_term(const Poly& f, const Derivation& e) {
  if (f.nvars() != e.dim()) throw DimensionMismatch("from_term: f and e differ in dimension");
  const std::size_t d = e.dim();
  SmashElement u(d);
  if (f.is_zero()) return u;
  Poly fx = x_block(f);
  std::vector<Poly> comps;
  comps.reserve(d);
  for (std::size_t i = 0; i < d; ++i) comps.push_back(fx * y_block(e[i]));
  return SmashElement(d, std::move(comps));
}

Poly diagonal(const SmashElement& u, std::size_t i) {
  auto map = diagonal_map(u.dim());
  return rename_variables(u.component(i), map, u.dim());
}

SmashElement smash_bracket(const SmashElement& u, const SmashElement& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("smash_bracket: dimension mismatch");
  const std::size_t d = u.dim();
  // [u,v]_j = Σ_i  u_i ∂_{y_i} v_j − v_i ∂_{y_i} u_j
  //              + u_i(x,x) ∂_{x_i} v_j − v_i(x,x) ∂_{x_i} u_j
  std::vector<Poly> u_diag, v_diag;
  for (std::size_t i = 0; i < d; ++i) {
    u_diag.push_back(x_block(diagonal(u, i)));
    v_diag.push_back(x_block(diagonal(v, i)));
  }
  std::vector<Poly> out;
  out.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    Poly acc(2 * d);
    const Poly& uj = u.component(j);
    const Poly& vj = v.component(j);
    for (std::size_t i = 0; i < d; ++i) {
      const Poly& ui = u.component(i);
      const Poly& vi = v.component(i);
      if (!ui.is_zero()) acc += ui * vj.partial(d + i);
      if (!vi.is_zero()) acc -= vi * uj.partial(d + i);
      if (!u_diag[i].is_zero()) acc += u_diag[i] * vj.partial(i);
      if (!v_diag[i].is_zero()) acc -= v_diag[i] * uj.partial(i);
    }
    out.push_back(std::move(acc));
  }
  return SmashElement(d, std::move(out));
}

SmashElement omega(unsigned p, const Poly& f, const Derivation& e) {
  if (f.nvars() != e.dim()) throw DimensionMismatch("omega: f and e differ in dimension");
  const std::size_t d = e.dim();
  Poly delta_p = (x_block(f) - y_block(f)).pow(p);
  std::vector<Poly> comps;
  comps.reserve(d);
  for (std::size_t i = 0; i < d; ++i) comps.push_back(delta_p * y_block(e[i]));
  return SmashElement(d, std::move(comps));
}

SmashElement omega_by_definition(unsigned p, const Poly& f, const Derivation& e) {
  if (f.nvars() != e.dim()) throw DimensionMismatch("omega: f and e differ in dimension");
  SmashElement acc(e.dim());
  mpz_class c;
  for (unsigned k = 0; k <= p; ++k) {
    mpz_bin_uiui(c.get_mpz_t(), p, k);
    Rational coeff(k % 2 == 0 ? mpz_class(c) : mpz_class(-c));
    acc += coeff * from_term(f.pow(p - k), f.pow(k) * e);
  }
  return acc;
}

SmashElement omega_multi(std::span<const Poly> fs, const Derivation& e) {
  if (fs.empty()) throw std::invalid_argument("omega_multi needs at least one function");
  const std::size_t d = e.dim();
  Poly prod = Poly::constant(2 * d, 1);
  for (const auto& f : fs) {
    if (f.nvars() != d) throw DimensionMismatch("omega_multi: function dimension mismatch");
    prod *= x_block(f) - y_block(f);
  }
  std::vector<Poly> comps;
  comps.reserve(d);
  for (std::size_t i = 0; i < d; ++i) comps.push_back(prod * y_block(e[i]));
  return SmashElement(d, std::move(comps));
}

SmashElement tensor_act(const Poly& a, const Poly& b, const SmashElement& u) {
  if (a.nvars() != u.dim() || b.nvars() != u.dim())
    throw DimensionMismatch("tensor_act: dimension mismatch");
  Poly factor = x_block(a) * y_block(b);
  std::vector<Poly> comps;
  comps.reserve(u.dim());
  for (const auto& c : u.components()) comps.push_back(factor * c);
  return SmashElement(u.dim(), std::move(comps));
}

SmashElement left_multiply(const Poly& a, const SmashElement& u) {
  return tensor_act(a, Poly::constant(a.nvars(), 1), u);
}

Poly commutator_with_function(const SmashElement& u, const Poly& g) {
  if (g.nvars() != u.dim()) throw DimensionMismatch("commutator_with_function: dimension mismatch");
  Poly acc(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) acc += diagonal(u, i) * g.partial(i);
  return acc;
}

// ---------------------------------------------------------------------------
// Diagonal jets

DiagonalJet::DiagonalJet(std::size_t dim, unsigned order)
    : dim_(dim), order_(order), indices_(MultiIndex::up_to(dim, order)) {
  check_dim(dim);
  values_.assign(dim, std::vector<Poly>(indices_.size(), Poly(dim)));
}

std::size_t DiagonalJet::slot(const MultiIndex& alpha) const {
  auto it = std::find(indices_.begin(), indices_.end(), alpha);
  if (it == indices_.end()) throw std::out_of_range("multi-index beyond jet order");
  return static_cast<std::size_t>(it - indices_.begin());
}

bool DiagonalJet::is_zero() const {
  for (const auto& row : values_)
    for (const auto& p : row)
      if (!p.is_zero()) return false;
  return true;
}

DiagonalJet diagonal_jet(const SmashElement& u, unsigned order) {
  const std::size_t d = u.dim();
  DiagonalJet jet(d, order);
  auto map = diagonal_map(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Poly& c = u.component(i);
    if (c.is_zero()) continue;
    for (std::size_t s = 0; s < jet.indices().size(); ++s)
      jet.value(i, s) = rename_variables(c.partial(jet.indices()[s], d), map, d);
  }
  return jet;
}

DiagonalJet omega_multi_jet(std::span<const Poly> fs, const Derivation& e, unsigned order) {
  if (fs.empty()) throw std::invalid_argument("omega_multi needs at least one function");
  const std::size_t d = e.dim();
  check_dim(d);
  Poly prod = Poly::constant(2 * d, 1);
  for (const auto& f : fs) {
    if (f.nvars() != d) throw DimensionMismatch("omega: function dimension mismatch");
    // f(x) − f(x+t), whose t-order is at least one.
    Poly diff = x_block(f) - taylor_shift(f, order);
    prod = truncated_product(prod, diff, d, order);
    if (prod.is_zero()) break;
  }
  std::vector<Poly> comps;
  comps.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (prod.is_zero() || e[i].is_zero()) {
      comps.emplace_back(2 * d);
    } else {
      comps.push_back(truncated_product(prod, taylor_shift(e[i], order), d, order));
    }
  }
  return jet_from_taylor(comps, d, order);
}

DiagonalJet omega_jet(unsigned p, const Poly& f, const Derivation& e, unsigned order) {
  if (f.nvars() != e.dim()) throw DimensionMismatch("omega: f and e differ in dimension");
  const std::size_t d = e.dim();
  check_dim(d);
  if (p == 0) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < d; ++i) comps.push_back(taylor_shift(e[i], order));
    return jet_from_taylor(comps, d, order);
  }
  // Each factor f(x) − f(x+t) has t-order >= 1, so a product of order+1 of
  // them is already zero in the truncation and further factors change nothing.
  std::vector<Poly> fs(std::min<unsigned>(p, order + 1), f);
  return omega_multi_jet(fs, e, order);
}

std::vector<std::string> to_strings(const SmashElement& u) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < u.dim(); ++k) names.push_back("x" + std::to_string(k + 1));
  for (std::size_t k = 0; k < u.dim(); ++k) names.push_back("y" + std::to_string(k + 1));
  std::vector<std::string> out;
  for (const auto& c : u.components()) out.push_back(to_string(c, names));
  return out;
}

}  // namespace avmod
