#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace avmod {

using Rational = mpq_class;

/// Upper bound on the number of variables of a single polynomial. The doubled
/// (x;y) representation of the smash product needs 2d of them, so module
/// dimensions are capped at kMaxVariables / 2.
inline constexpr std::size_t kMaxVariables = 8;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent vector of a monomial. Unused trailing slots stay zero.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t index, unsigned power = 1);

  unsigned operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned exponent);
  unsigned degree() const;
  unsigned degree_in(std::size_t begin, std::size_t end) const;
  bool is_one() const { return degree() == 0; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Graded-lex with x1 > x2 > ...
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Multi-index α used for iterated partials ∂^α.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {}
  static MultiIndex zero(std::size_t size) { return MultiIndex(std::vector<unsigned>(size, 0)); }
  static MultiIndex unit(std::size_t size, std::size_t i);

  std::size_t size() const { return entries_.size(); }
  unsigned operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<unsigned>& entries() const { return entries_; }
  unsigned order() const;

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise <=.
  bool below(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;

  Rational factorial() const;
  Monomial as_monomial(std::size_t offset = 0) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

  /// All α of length `size` with |α| <= max_order, by increasing order and
  /// then lexicographically decreasing.
  static std::vector<MultiIndex> up_to(std::size_t size, unsigned max_order);

 private:
  std::vector<unsigned> entries_;
};

/// Multivariate binomial C(α, β) = Π C(α_i, β_i); zero unless β <= α.
Rational binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// Exact rational polynomial in a fixed number of variables. Terms are kept
/// sorted by decreasing graded-lex order with no zero coefficients.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit Poly(std::size_t nvars);
  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(std::size_t nvars, const Monomial& m, const Rational& c = 1);
  /// Combines duplicates and drops zeros; input order is irrelevant.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  unsigned degree() const;
  Rational coefficient(const Monomial& m) const;
  const Term& leading_term() const { return terms_.front(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  Poly pow(unsigned exponent) const;
  /// ∂/∂x_index (0-based).
  Poly partial(std::size_t index) const;
  /// ∂^α over the variables offset .. offset+|α|-1.
  Poly partial(const MultiIndex& alpha, std::size_t offset = 0) const;
  Poly times_monomial(const Monomial& m, const Rational& c = 1) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void require_same(const Poly& other) const;

  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// 0-based variable index; throws std::out_of_range.
Poly partial_derivative(const Poly& p, std::size_t index);

/// Re-homes p (in p.nvars() variables) into nvars variables, variable k
/// becoming variable offset + k.
Poly lift(const Poly& p, std::size_t nvars, std::size_t offset);

/// Substitutes x_k -> x_{target[k]} and returns a polynomial in result_vars
/// variables. Non-injective maps merge variables, e.g. restricting a
/// doubled-variable polynomial to the diagonal y = x.
Poly rename_variables(const Poly& p, std::span<const std::size_t> target,
                      std::size_t result_vars);

/// Drops every term whose degree in variables [begin, end) exceeds max_degree.
Poly truncate_block(const Poly& p, std::size_t begin, std::size_t end, unsigned max_degree);

/// Quotient if divisor divides p exactly, std::nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& p, const Poly& divisor);

/// Vector field Σ g_i ∂_i on d variables.
class Derivation {
 public:
  explicit Derivation(std::vector<Poly> coeffs);
  static Derivation zero(std::size_t dim);
  /// The coordinate field ∂_index (0-based).
  static Derivation coordinate(std::size_t dim, std::size_t index);
  /// g ∂_index.
  static Derivation along(const Poly& g, std::size_t index);

  std::size_t dim() const { return coeffs_.size(); }
  const Poly& operator[](std::size_t i) const { return coeffs_[i]; }
  const std::vector<Poly>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  Derivation operator-() const;
  Derivation& operator+=(const Derivation& other);
  Derivation& operator-=(const Derivation& other);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Poly& g, const Derivation& e);
  friend Derivation operator*(const Rational& c, const Derivation& e);

  friend bool operator==(const Derivation&, const Derivation&) = default;

 private:
  std::vector<Poly> coeffs_;
};

Poly apply_derivation(const Derivation& e, const Poly& p);
Derivation derivation_bracket(const Derivation& a, const Derivation& b);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: terms joined by + / -; term := [sign] [rational "*"] factor ("*"
/// factor)* or a bare rational; factor := "x"<index>["^"<exponent>]; indices
/// are 1-based; whitespace is ignored; no parentheses.
Poly parse_poly(std::string_view text, std::size_t dim);
/// Same grammar, with every term carrying exactly one extra factor d<index>.
Derivation parse_derivation(std::string_view text, std::size_t dim);

std::string to_string(const Poly& p);
std::string to_string(const Poly& p, std::span<const std::string> names);
std::string to_string(const Derivation& e);
std::string to_string(const Rational& q);

}  // namespace avmod
