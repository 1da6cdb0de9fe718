#include "avmod/module.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace avmod {

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(std::size_t nvars, std::size_t rows, std::size_t cols)
    : nvars_(nvars), rows_(rows), cols_(cols), data_(rows * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(std::size_t nvars, std::size_t n) {
  PolyMatrix m(nvars, n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Poly::constant(nvars, 1);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
}

namespace {
void require_shape(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.nvars() != b.nvars())
    throw DimensionMismatch("matrix shapes differ");
}
}  // namespace

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& other) {
  require_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& other) {
  require_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows() || a.nvars() != b.nvars())
    throw DimensionMismatch("matrix product shapes differ");
  PolyMatrix out(a.nvars(), a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Poly& ark = a(r, k);
      if (ark.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (!b(k, c).is_zero()) out(r, c) += ark * b(k, c);
    }
  return out;
}

PolyMatrix operator*(const Poly& g, PolyMatrix m) {
  for (auto& p : m.data_)
    if (!p.is_zero()) p *= g;
  return m;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix out = *this;
  for (auto& p : out.data_) p = -p;
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix out(nvars_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

std::strong_ordering operator<=>(const TensorKey& a, const TensorKey& b) {
  if (auto c = a.direction <=> b.direction; c != 0) return c;
  return a.alpha <=> b.alpha;
}

// ------------------------------------------------------------- ModuleElement

ModuleElement::ModuleElement(std::size_t dim, std::size_t rank)
    : dim_(dim), entries_(rank, Poly(dim)) {}

ModuleElement::ModuleElement(std::vector<Poly> entries, std::size_t dim)
    : dim_(dim), entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (e.nvars() != dim_) throw DimensionMismatch("module element entry has wrong dimension");
}

ModuleElement ModuleElement::basis(std::size_t dim, std::size_t rank, std::size_t k) {
  ModuleElement m(dim, rank);
  m.entries_.at(k) = Poly::constant(dim, 1);
  return m;
}

bool ModuleElement::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  if (other.rank() != rank() || other.dim_ != dim_) throw DimensionMismatch("module elements differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  if (other.rank() != rank() || other.dim_ != dim_) throw DimensionMismatch("module elements differ");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ModuleElement operator*(const Poly& g, ModuleElement m) {
  for (auto& p : m.entries_)
    if (!p.is_zero()) p *= g;
  return m;
}

ModuleElement operator*(const PolyMatrix& a, const ModuleElement& m) {
  if (a.cols() != m.rank()) throw DimensionMismatch("matrix does not match module rank");
  ModuleElement out(m.dim(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!a(r, c).is_zero() && !m[c].is_zero()) out[r] += a(r, c) * m[c];
  return out;
}

ModuleElement ModuleElement::operator-() const {
  ModuleElement out = *this;
  for (auto& p : out.entries_) p = -p;
  return out;
}

ModuleElement ModuleElement::partial(std::size_t i) const {
  ModuleElement out = *this;
  for (auto& p : out.entries_) p = p.partial(i);
  return out;
}

std::vector<std::string> to_strings(const ModuleElement& m) {
  std::vector<std::string> out;
  for (const auto& p : m.entries()) out.push_back(to_string(p));
  return out;
}

// ------------------------------------------------------------------- action

namespace {

/// ρ(e)v straight from the tensor; shared by validation and AVModule.
ModuleElement apply_tensor(const ModuleData& data, const Derivation& e, const ModuleElement& v) {
  if (e.dim() != data.dim || v.dim() != data.dim) throw DimensionMismatch("dimension mismatch");
  if (v.rank() != data.rank) throw DimensionMismatch("rank mismatch");
  ModuleElement out(data.dim, data.rank);
  for (std::size_t i = 0; i < data.dim; ++i) {
    const Poly& g = e[i];
    if (g.is_zero()) continue;
    out += g * v.partial(i);
    auto it = data.tensor.lower_bound(TensorKey{i, MultiIndex()});
    for (; it != data.tensor.end() && it->first.direction == i; ++it) {
      Poly dg = g.partial(it->first.alpha);
      if (!dg.is_zero()) out += dg * (it->second * v);
    }
  }
  return out;
}

std::string describe_field(const Poly& g, std::size_t i) {
  return to_string(Derivation::along(g, i));
}

std::vector<Poly> monomials_up_to(std::size_t dim, unsigned degree) {
  std::vector<Poly> out;
  for (const auto& a : MultiIndex::up_to(dim, degree)) out.push_back(Poly::monomial(dim, a.as_monomial()));
  return out;
}

}  // namespace

VerificationReport validate_module(const ModuleData& data) {
  VerificationReport report;
  report.identity = "module-validation";
  report.inputs = {{"name", data.name},
                   {"dim", std::to_string(data.dim)},
                   {"rank", std::to_string(data.rank)},
                   {"order", std::to_string(data.order)}};
  auto fail = [&](std::string why) {
    report.fail_with({why}, "structural check failed");
    return report;
  };

  if (data.dim < 1 || 2 * data.dim > kMaxVariables)
    return fail("dim must lie in 1.." + std::to_string(kMaxVariables / 2));
  if (data.rank < 1) return fail("rank must be at least 1");
  bool tight = data.order == 0;
  for (const auto& [key, mat] : data.tensor) {
    std::ostringstream where;
    where << "entry (i=" << key.direction + 1 << ", |alpha|=" << key.alpha.order() << ")";
    if (key.direction >= data.dim) return fail(where.str() + ": direction out of range");
    if (key.alpha.size() != data.dim) return fail(where.str() + ": alpha has wrong length");
    if (key.alpha.order() > data.order) return fail(where.str() + ": |alpha| exceeds order");
    if (mat.rows() != data.rank || mat.cols() != data.rank)
      return fail(where.str() + ": matrix is not rank x rank");
    if (mat.nvars() != data.dim) return fail(where.str() + ": matrix entries have wrong dimension");
    if (key.alpha.order() == data.order && !mat.is_zero()) tight = true;
  }
  if (!tight) return fail("order is not tight: every D_{i,alpha} with |alpha| = order is zero");

  // Test fields (i, g) with g a monomial; the defect is antisymmetric, so
  // unordered pairs suffice.
  struct Field {
    std::size_t i;
    Poly g;
    Derivation e;
  };
  std::vector<Field> fields;
  for (const auto& g : monomials_up_to(data.dim, data.order + 2))
    for (std::size_t i = 0; i < data.dim; ++i) fields.push_back({i, g, Derivation::along(g, i)});

  std::vector<std::pair<std::string, ModuleElement>> vectors;
  for (std::size_t k = 0; k < data.rank; ++k) {
    ModuleElement b = ModuleElement::basis(data.dim, data.rank, k);
    vectors.emplace_back("e" + std::to_string(k + 1), b);
    for (std::size_t v = 0; v < data.dim; ++v)
      vectors.emplace_back("x" + std::to_string(v + 1) + "*e" + std::to_string(k + 1),
                           Poly::variable(data.dim, v) * b);
  }

  for (const auto& [label, vec] : vectors) {
    std::vector<ModuleElement> once;
    once.reserve(fields.size());
    for (const auto& f : fields) once.push_back(apply_tensor(data, f.e, vec));
    for (std::size_t a = 0; a < fields.size(); ++a)
      for (std::size_t b = a + 1; b < fields.size(); ++b) {
        ModuleElement defect = apply_tensor(data, fields[a].e, once[b]) -
                               apply_tensor(data, fields[b].e, once[a]) -
                               apply_tensor(data, derivation_bracket(fields[a].e, fields[b].e), vec);
        if (!defect.is_zero()) {
          std::vector<std::string> witness = {
              "[rho(" + describe_field(fields[a].g, fields[a].i) + "), rho(" +
                  describe_field(fields[b].g, fields[b].i) + ")] - rho(bracket) on " + label};
          for (auto& s : to_strings(defect)) witness.push_back(std::move(s));
          report.fail_with(std::move(witness), "action is not bracket compatible");
          return report;
        }
      }
  }
  return report;
}

ModuleData normalized(ModuleData data) {
  unsigned order = 0;
  for (auto it = data.tensor.begin(); it != data.tensor.end();) {
    if (it->second.is_zero()) {
      it = data.tensor.erase(it);
    } else {
      order = std::max(order, it->first.alpha.order());
      ++it;
    }
  }
  data.order = order;
  return data;
}

AVModule AVModule::create(ModuleData data) {
  auto report = std::make_shared<VerificationReport>(validate_module(data));
  if (!report->passed) {
    std::string what = "module '" + data.name + "' is invalid";
    if (!report->note.empty()) what += ": " + report->note;
    if (!report->witness.empty()) what += ": " + report->witness.front();
    throw InvalidModule(what, *report);
  }
  // Explicit zero matrices carry no information; keep only the support.
  unsigned order = data.order;
  data = normalized(std::move(data));
  data.order = order;
  return AVModule(std::make_shared<const ModuleData>(std::move(data)), std::move(report));
}

AVModule AVModule::zero(std::size_t dim) {
  ModuleData data;
  data.name = "zero";
  data.dim = dim;
  data.rank = 0;
  auto report = std::make_shared<VerificationReport>();
  report->identity = "module-validation";
  report->note = "rank-0 sentinel";
  return AVModule(std::make_shared<const ModuleData>(std::move(data)), std::move(report));
}

const PolyMatrix* AVModule::coefficient(std::size_t i, const MultiIndex& alpha) const {
  auto it = data_->tensor.find(TensorKey{i, alpha});
  return it == data_->tensor.end() ? nullptr : &it->second;
}

bool operator==(const AVModule& a, const AVModule& b) {
  const auto& x = a.data();
  const auto& y = b.data();
  return x.dim == y.dim && x.rank == y.rank && x.order == y.order && x.tensor == y.tensor;
}

ModuleElement act_derivation(const AVModule& m, const Derivation& e, const ModuleElement& v) {
  return apply_tensor(m.data(), e, v);
}

ModuleElement act_jet(const AVModule& m, const DiagonalJet& jet, const ModuleElement& v) {
  if (jet.dim() != m.dim() || v.dim() != m.dim()) throw DimensionMismatch("dimension mismatch");
  if (v.rank() != m.rank()) throw DimensionMismatch("rank mismatch");
  ModuleElement out = zeroth_order_part(m, jet) * v;
  const std::size_t symbol = jet.slot(MultiIndex::zero(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (!jet.value(i, symbol).is_zero()) out += jet.value(i, symbol) * v.partial(i);
  return out;
}

ModuleElement act_smash(const AVModule& m, const SmashElement& u, const ModuleElement& v) {
  return act_jet(m, diagonal_jet(u, m.order()), v);
}

PolyMatrix zeroth_order_part(const AVModule& m, const DiagonalJet& jet) {
  if (jet.order() < m.order())
    throw std::invalid_argument("diagonal jet is shorter than the module order");
  PolyMatrix out(m.dim(), m.rank(), m.rank());
  for (const auto& [key, mat] : m.data().tensor) {
    const Poly& c = jet.value(key.direction, jet.slot(key.alpha));
    if (!c.is_zero()) out += c * mat;
  }
  return out;
}

bool annihilates(const AVModule& m, const DiagonalJet& jet) {
  if (m.is_zero_module()) return true;
  const std::size_t symbol = jet.slot(MultiIndex::zero(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (!jet.value(i, symbol).is_zero()) return false;
  return zeroth_order_part(m, jet).is_zero();
}

bool annihilates(const AVModule& m, const SmashElement& u) {
  return annihilates(m, diagonal_jet(u, m.order()));
}

bool annihilates_omega(const AVModule& m, unsigned p, const Poly& f, const Derivation& e) {
  return annihilates(m, omega_jet(p, f, e, m.order()));
}

bool annihilates_omega_multi(const AVModule& m, std::span<const Poly> fs, const Derivation& e) {
  return annihilates(m, omega_multi_jet(fs, e, m.order()));
}

unsigned min_annihilating_order(const AVModule& m, const Poly& f, const Derivation& e) {
  if (f.is_constant()) return 1;
  // Every Ω_q with q > order vanishes on the diagonal up to the module order,
  // so only q <= order needs checking, from the top down.
  for (unsigned p = m.order(); p >= 1; --p)
    if (!annihilates_omega(m, p, f, e)) return p + 1;
  return 1;
}

unsigned lie_map_order(const AVModule& m) {
  unsigned order = 0;
  for (const auto& [key, mat] : m.data().tensor)
    if (!mat.is_zero()) order = std::max(order, key.alpha.order());
  return order;
}

OracleResult oracle_order(const AVModule& m, unsigned n_max) {
  if (m.is_zero_module()) return {0, std::nullopt};
  const std::size_t d = m.dim();
  // Jets are taken up to the largest |α| present in the tensor itself, so the
  // stored order field plays no role in the decision.
  unsigned reach = 0;
  for (const auto& [key, mat] : m.data().tensor) reach = std::max(reach, key.alpha.order());
  const auto monomials = monomials_up_to(d, reach + 1);

  std::string last_failure;
  for (unsigned n = 0; n <= n_max; ++n) {
    bool ok = true;
    std::vector<std::size_t> pick(n + 1, 0);  // non-decreasing coordinate indices
    for (;;) {
      std::vector<Poly> fs;
      for (auto k : pick) fs.push_back(Poly::variable(d, k));
      for (std::size_t i = 0; i < d && ok; ++i)
        for (const auto& g : monomials) {
          if (!annihilates(m, omega_multi_jet(fs, Derivation::along(g, i), reach))) {
            std::ostringstream why;
            why << "n=" << n << ": Omega((";
            for (std::size_t j = 0; j < pick.size(); ++j) why << (j ? "," : "") << "x" << pick[j] + 1;
            why << "), " << to_string(Derivation::along(g, i)) << ") does not annihilate";
            last_failure = why.str();
            ok = false;
            break;
          }
        }
      if (!ok) break;
      std::size_t pos = pick.size();
      while (pos > 0 && pick[pos - 1] + 1 == d) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t j = pos; j < pick.size(); ++j) pick[j] = pick[pos - 1];
    }
    if (ok) return {n, std::nullopt};
  }
  return {n_max + 1, "no n <= " + std::to_string(n_max) + " annihilates; last failure " + last_failure};
}

// ------------------------------------------------------------------ functors

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k);
  for (std::size_t j = 0; j < k; ++j) cur[j] = j;
  for (;;) {
    out.push_back(cur);
    std::size_t pos = k;
    while (pos > 0 && cur[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++cur[pos - 1];
    for (std::size_t j = pos; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

AVModule exterior_power(const AVModule& m, unsigned k) {
  if (k < 1) throw std::invalid_argument("exterior power needs k >= 1");
  if (k > m.rank()) return AVModule::zero(m.dim());
  if (k == 1) return m;
  const auto basis = subsets(m.rank(), k);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t b = 0; b < basis.size(); ++b) index[basis[b]] = b;

  ModuleData out;
  out.name = "wedge" + std::to_string(k) + "(" + m.name() + ")";
  out.dim = m.dim();
  out.rank = basis.size();
  // A derivation of the wedge algebra: D acts on one factor at a time.
  for (const auto& [key, mat] : m.data().tensor) {
    PolyMatrix w(m.dim(), out.rank, out.rank);
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const auto& s = basis[col];
      for (std::size_t pos = 0; pos < k; ++pos)
        for (std::size_t t = 0; t < m.rank(); ++t) {
          const Poly& c = mat(t, s[pos]);
          if (c.is_zero()) continue;
          if (t != s[pos] && std::find(s.begin(), s.end(), t) != s.end()) continue;
          std::vector<std::size_t> target = s;
          target[pos] = t;
          const std::size_t lo = std::min(t, s[pos]), hi = std::max(t, s[pos]);
          std::size_t between = 0;
          for (auto x : s)
            if (x > lo && x < hi) ++between;
          std::sort(target.begin(), target.end());
          Poly term = between % 2 ? -c : c;
          w(index.at(target), col) += term;
        }
    }
    out.tensor.emplace(key, std::move(w));
  }
  return AVModule::create(normalized(std::move(out)));
}

AVModule tensor_product(const AVModule& a, const AVModule& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("tensor product of modules of different dim");
  ModuleData out;
  out.name = a.name() + "(x)" + b.name();
  out.dim = a.dim();
  out.rank = a.rank() * b.rank();
  auto entry = [&](const TensorKey& key) -> PolyMatrix& {
    return out.tensor.try_emplace(key, PolyMatrix(out.dim, out.rank, out.rank)).first->second;
  };
  // D ⊗ I + I ⊗ D′ with basis index (s, t) ↦ s·rank(b) + t.
  for (const auto& [key, mat] : a.data().tensor) {
    PolyMatrix& w = entry(key);
    for (std::size_t r = 0; r < a.rank(); ++r)
      for (std::size_t c = 0; c < a.rank(); ++c)
        if (!mat(r, c).is_zero())
          for (std::size_t t = 0; t < b.rank(); ++t) w(r * b.rank() + t, c * b.rank() + t) += mat(r, c);
  }
  for (const auto& [key, mat] : b.data().tensor) {
    PolyMatrix& w = entry(key);
    for (std::size_t s = 0; s < a.rank(); ++s)
      for (std::size_t r = 0; r < b.rank(); ++r)
        for (std::size_t c = 0; c < b.rank(); ++c)
          if (!mat(r, c).is_zero()) w(s * b.rank() + r, s * b.rank() + c) += mat(r, c);
  }
  return AVModule::create(normalized(std::move(out)));
}

AVModule dual(const AVModule& m) {
  ModuleData out;
  out.name = "dual(" + m.name() + ")";
  out.dim = m.dim();
  out.rank = m.rank();
  // (ρ*(η)φ)(v) = η(φ(v)) − φ(ρ(η)v) gives D* = −Dᵀ.
  for (const auto& [key, mat] : m.data().tensor) out.tensor.emplace(key, -mat.transpose());
  return AVModule::create(normalized(std::move(out)));
}

}  // namespace avmod
