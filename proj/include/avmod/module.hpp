#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "avmod/poly.hpp"
#include "avmod/smash.hpp"
#include "avmod/verification.hpp"

namespace avmod {

/// Dense matrix of polynomials in a fixed number of variables.
class PolyMatrix {
 public:
  PolyMatrix(std::size_t nvars, std::size_t rows, std::size_t cols);
  static PolyMatrix identity(std::size_t nvars, std::size_t n);

  std::size_t nvars() const { return nvars_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Poly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  bool is_zero() const;

  PolyMatrix& operator+=(const PolyMatrix& other);
  PolyMatrix& operator-=(const PolyMatrix& other);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& g, PolyMatrix m);
  PolyMatrix operator-() const;
  PolyMatrix transpose() const;

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  std::size_t nvars_, rows_, cols_;
  std::vector<Poly> data_;
};

/// Index (i, α) of an action-tensor entry D_{i,α}; i is 0-based.
struct TensorKey {
  std::size_t direction;
  MultiIndex alpha;
  friend bool operator==(const TensorKey&, const TensorKey&) = default;
  friend std::strong_ordering operator<=>(const TensorKey& a, const TensorKey& b);
};

/// Raw description of a finite free A𝒱-module: the action
/// ρ(g∂_i)m = g·∂_i m + Σ_{|α|<=order} ∂^α g · D_{i,α} m on A^rank.
/// Omitted keys are zero matrices.
struct ModuleData {
  std::string name;
  std::size_t dim = 1;
  std::size_t rank = 1;
  unsigned order = 0;
  std::map<TensorKey, PolyMatrix> tensor;
};

/// Element of A^rank, written in the standard basis.
class ModuleElement {
 public:
  ModuleElement(std::size_t dim, std::size_t rank);
  explicit ModuleElement(std::vector<Poly> entries, std::size_t dim);
  static ModuleElement basis(std::size_t dim, std::size_t rank, std::size_t k);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return entries_.size(); }
  const Poly& operator[](std::size_t k) const { return entries_[k]; }
  Poly& operator[](std::size_t k) { return entries_[k]; }
  const std::vector<Poly>& entries() const { return entries_; }
  bool is_zero() const;

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const Poly& g, ModuleElement m);
  friend ModuleElement operator*(const PolyMatrix& a, const ModuleElement& m);
  ModuleElement operator-() const;
  ModuleElement partial(std::size_t i) const;

  friend bool operator==(const ModuleElement&, const ModuleElement&) = default;

 private:
  std::size_t dim_;
  std::vector<Poly> entries_;
};

std::vector<std::string> to_strings(const ModuleElement& m);

class InvalidModule : public std::invalid_argument {
 public:
  InvalidModule(const std::string& what, VerificationReport report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  const VerificationReport& report() const { return report_; }

 private:
  VerificationReport report_;
};

/// Structural checks, then the bracket defect
/// [ρ(g∂_i), ρ(h∂_j)] − ρ([g∂_i, h∂_j]) on every pair of monomial fields of
/// total degree <= order+2, applied to the basis and to x_k·basis.
VerificationReport validate_module(const ModuleData& data);

/// A validated module. Copies share the immutable data.
class AVModule {
 public:
  /// Validates; throws InvalidModule carrying the failing report.
  static AVModule create(ModuleData data);
  /// The rank-0 module, produced only by exterior powers above the rank.
  static AVModule zero(std::size_t dim);

  const ModuleData& data() const { return *data_; }
  const std::string& name() const { return data_->name; }
  std::size_t dim() const { return data_->dim; }
  std::size_t rank() const { return data_->rank; }
  unsigned order() const { return data_->order; }
  bool is_zero_module() const { return data_->rank == 0; }
  /// The memoized validation report.
  const VerificationReport& validation() const { return *report_; }

  /// D_{i,α}, or nullptr when it is zero.
  const PolyMatrix* coefficient(std::size_t i, const MultiIndex& alpha) const;

  friend bool operator==(const AVModule& a, const AVModule& b);

 private:
  AVModule(std::shared_ptr<const ModuleData> data, std::shared_ptr<const VerificationReport> report)
      : data_(std::move(data)), report_(std::move(report)) {}

  std::shared_ptr<const ModuleData> data_;
  std::shared_ptr<const VerificationReport> report_;
};

/// Drops zero matrices and lowers `order` to the largest |α| left.
ModuleData normalized(ModuleData data);

ModuleElement act_derivation(const AVModule& m, const Derivation& e, const ModuleElement& v);
ModuleElement act_smash(const AVModule& m, const SmashElement& u, const ModuleElement& v);
/// Action of any element given by its diagonal jet (order >= module order).
ModuleElement act_jet(const AVModule& m, const DiagonalJet& jet, const ModuleElement& v);

/// The zeroth-order part Σ_{i,α} jet_{i,α} D_{i,α} of the operator of `jet`.
PolyMatrix zeroth_order_part(const AVModule& m, const DiagonalJet& jet);

bool annihilates(const AVModule& m, const SmashElement& u);
bool annihilates(const AVModule& m, const DiagonalJet& jet);
bool annihilates_omega(const AVModule& m, unsigned p, const Poly& f, const Derivation& e);
bool annihilates_omega_multi(const AVModule& m, std::span<const Poly> fs, const Derivation& e);

/// Smallest p >= 1 with Ω_q(f,e) annihilating for every q >= p.
unsigned min_annihilating_order(const AVModule& m, const Poly& f, const Derivation& e);

/// max{|α| : D_{i,α} != 0}, 0 if the tensor is zero.
unsigned lie_map_order(const AVModule& m);

struct OracleResult {
  unsigned order;
  std::optional<std::string> diagnostic;
};

/// Grothendieck-criterion order: the smallest n <= n_max such that every
/// Ω((x_{k_0},…,x_{k_n}), g∂_i) annihilates, over all index choices, all
/// directions i and all monomials g of degree <= order+1. Returns n_max+1
/// with a diagnostic when none does.
OracleResult oracle_order(const AVModule& m, unsigned n_max);

/// Λ^k M; the zero module for k > rank. Throws for k < 1.
AVModule exterior_power(const AVModule& m, unsigned k);
AVModule tensor_product(const AVModule& a, const AVModule& b);
AVModule dual(const AVModule& m);

}  // namespace avmod
