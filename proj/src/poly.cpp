#include "avmod/poly.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace avmod {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned exponent) {
  if (i >= kMaxVariables) throw std::out_of_range("monomial variable index out of range");
  if (exponent > std::numeric_limits<std::uint16_t>::max())
    throw std::overflow_error("monomial exponent overflow");
  exps_[i] = static_cast<std::uint16_t>(exponent);
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exps_) d += e;
  return d;
}

unsigned Monomial::degree_in(std::size_t begin, std::size_t end) const {
  unsigned d = 0;
  for (std::size_t i = begin; i < end; ++i) d += exps_[i];
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned e = unsigned{exps_[i]} + other.exps_[i];
    if (e > std::numeric_limits<std::uint16_t>::max())
      throw std::overflow_error("monomial exponent overflow");
    r.exps_[i] = static_cast<std::uint16_t>(e);
  }
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - divisor.exps_[i]);
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.exps_ <=> b.exps_;
}

std::size_t Monomial::hash() const {
  std::uint64_t words[2];
  static_assert(sizeof(words) == sizeof(exps_));
  std::memcpy(words, exps_.data(), sizeof(words));
  std::uint64_t h = words[0] * 0x9E3779B97F4A7C15ULL;
  h ^= (words[1] + 0x632BE59BD9B4E019ULL) + (h << 6) + (h >> 2);
  h ^= h >> 31;
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex MultiIndex::unit(std::size_t size, std::size_t i) {
  MultiIndex m = zero(size);
  m.entries_.at(i) = 1;
  return m;
}

unsigned MultiIndex::order() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0u);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch("multi-index length mismatch");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] += other.entries_[i];
  return r;
}

bool MultiIndex::below(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionMismatch("multi-index length mismatch");
  for (std::size_t i = 0; i < size(); ++i)
    if (entries_[i] > other.entries_[i]) return false;
  return true;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!other.below(*this)) throw std::domain_error("multi-index subtraction underflow");
  MultiIndex r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.entries_[i] -= other.entries_[i];
  return r;
}

Rational MultiIndex::factorial() const {
  mpz_class acc = 1;
  for (auto e : entries_) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), e);
    acc *= f;
  }
  return Rational(acc);
}

Monomial MultiIndex::as_monomial(std::size_t offset) const {
  Monomial m;
  for (std::size_t i = 0; i < size(); ++i) m.set(offset + i, entries_[i]);
  return m;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  return a.entries_ <=> b.entries_;
}

std::vector<MultiIndex> MultiIndex::up_to(std::size_t size, unsigned max_order) {
  std::vector<MultiIndex> out;
  std::vector<unsigned> cur(size, 0);
  // Enumerate by order, then lexicographically decreasing within an order.
  for (unsigned n = 0; n <= max_order; ++n) {
    std::vector<MultiIndex> level;
    auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
      if (pos + 1 == size) {
        cur[pos] = remaining;
        level.emplace_back(cur);
        return;
      }
      for (unsigned e = remaining + 1; e-- > 0;) {
        cur[pos] = e;
        self(self, pos + 1, remaining - e);
      }
    };
    if (size == 0) {
      if (n == 0) level.emplace_back(std::vector<unsigned>{});
    } else {
      rec(rec, 0, n);
    }
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Rational binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (!beta.below(alpha)) return 0;
  mpz_class acc = 1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), alpha[i], beta[i]);
    acc *= b;
  }
  return Rational(acc);
}

// ---------------------------------------------------------------------------
// Poly

namespace {

void check_nvars(std::size_t nvars) {
  if (nvars == 0 || nvars > kMaxVariables)
    throw std::invalid_argument("polynomial variable count must be in 1.." +
                                std::to_string(kMaxVariables));
}

bool descending(const Poly::Term& a, const Poly::Term& b) { return a.mono > b.mono; }

}  // namespace

Poly::Poly(std::size_t nvars) : nvars_(nvars) { check_nvars(nvars); }

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  return monomial(nvars, Monomial::variable(index), 1);
}

Poly Poly::monomial(std::size_t nvars, const Monomial& m, const Rational& c) {
  Poly p(nvars);
  for (std::size_t i = nvars; i < kMaxVariables; ++i)
    if (m[i] != 0) throw std::out_of_range("monomial uses a variable beyond nvars");
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  Poly p(nvars);
  std::sort(terms.begin(), terms.end(), descending);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one());
}

unsigned Poly::degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

Rational Poly::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

void Poly::require_same(const Poly& other) const {
  if (nvars_ != other.nvars_)
    throw DimensionMismatch("polynomials live in different variable counts (" +
                            std::to_string(nvars_) + " vs " + std::to_string(other.nvars_) + ")");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

namespace {

template <bool Subtract>
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back(b[j++]);
      if constexpr (Subtract) out.back().coef = -out.back().coef;
    } else {
      Rational c = Subtract ? Rational(a[i].coef - b[j].coef) : Rational(a[i].coef + b[j].coef);
      if (c != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  require_same(other);
  if (other.terms_.empty()) return *this;
  terms_ = merge<false>(terms_, other.terms_);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same(other);
  if (other.terms_.empty()) return *this;
  terms_ = merge<true>(terms_, other.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else if (c != 1) {
    for (auto& t : terms_) t.coef *= c;
  }
  return *this;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  Poly r(nvars_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves graded-lex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_same(b);
  if (a.terms_.empty() || b.terms_.empty()) return Poly(a.nvars_);
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);

  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Rational prod;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      mpq_mul(prod.get_mpq_t(), s.coef.get_mpq_t(), t.coef.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(s.mono * t.mono);
      if (inserted) {
        it->second = prod;
      } else {
        mpq_add(it->second.get_mpq_t(), it->second.get_mpq_t(), prod.get_mpq_t());
      }
    }
  }
  Poly r(a.nvars_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(), descending);
  return r;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Poly Poly::partial(std::size_t index) const {
  if (index >= nvars_) throw std::out_of_range("partial derivative index out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    unsigned e = t.mono[index];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(index, e - 1);
    out.push_back({m, t.coef * e});
  }
  // Lowering one exponent of every surviving term keeps them sorted.
  Poly r(nvars_);
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::partial(const MultiIndex& alpha, std::size_t offset) const {
  if (offset + alpha.size() > nvars_) throw std::out_of_range("multi-index exceeds variables");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    mpz_class factor = 1;
    bool vanishes = false;
    for (std::size_t i = 0; i < alpha.size() && !vanishes; ++i) {
      unsigned e = m[offset + i];
      unsigned k = alpha[i];
      if (k > e) {
        vanishes = true;
        break;
      }
      for (unsigned s = 0; s < k; ++s) factor *= (e - s);
      m.set(offset + i, e - k);
    }
    if (!vanishes) out.push_back({m, t.coef * factor});
  }
  Poly r(nvars_);
  r.terms_ = std::move(out);
  return r;
}

Poly partial_derivative(const Poly& p, std::size_t index) { return p.partial(index); }

Poly lift(const Poly& p, std::size_t nvars, std::size_t offset) {
  if (offset + p.nvars() > nvars) throw std::out_of_range("lift target too small");
  std::vector<std::size_t> target(p.nvars());
  std::iota(target.begin(), target.end(), offset);
  return rename_variables(p, target, nvars);
}

Poly rename_variables(const Poly& p, std::span<const std::size_t> target,
                      std::size_t result_vars) {
  if (target.size() != p.nvars()) throw DimensionMismatch("variable map has wrong length");
  for (auto t : target)
    if (t >= result_vars) throw std::out_of_range("variable map target out of range");
  std::vector<Poly::Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (std::size_t k = 0; k < target.size(); ++k)
      if (t.mono[k] != 0) m.set(target[k], m[target[k]] + t.mono[k]);
    out.push_back({m, t.coef});
  }
  return Poly::from_terms(result_vars, std::move(out));
}

Poly truncate_block(const Poly& p, std::size_t begin, std::size_t end, unsigned max_degree) {
  std::vector<Poly::Term> out;
  for (const auto& t : p.terms())
    if (t.mono.degree_in(begin, end) <= max_degree) out.push_back(t);
  return Poly::from_terms(p.nvars(), std::move(out));
}

std::optional<Poly> divide_exact(const Poly& p, const Poly& divisor) {
  if (p.nvars() != divisor.nvars()) throw DimensionMismatch("division across variable counts");
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  Poly remainder = p;
  std::vector<Poly::Term> quotient;
  const auto& lead = divisor.leading_term();
  while (!remainder.is_zero()) {
    const auto& r = remainder.leading_term();
    if (!lead.mono.divides(r.mono)) return std::nullopt;
    Monomial m = r.mono / lead.mono;
    Rational c = r.coef / lead.coef;
    quotient.push_back({m, c});
    remainder -= divisor.times_monomial(m, c);
  }
  return Poly::from_terms(p.nvars(), std::move(quotient));
}

// ---------------------------------------------------------------------------
// Derivation

Derivation::Derivation(std::vector<Poly> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("derivation needs at least one component");
  for (const auto& c : coeffs_)
    if (c.nvars() != coeffs_.size())
      throw DimensionMismatch("derivation coefficients must live in dim variables");
}

Derivation Derivation::zero(std::size_t dim) { return Derivation(std::vector<Poly>(dim, Poly(dim))); }

Derivation Derivation::coordinate(std::size_t dim, std::size_t index) {
  return along(Poly::constant(dim, 1), index);
}

Derivation Derivation::along(const Poly& g, std::size_t index) {
  if (index >= g.nvars()) throw std::out_of_range("derivation direction out of range");
  std::vector<Poly> c(g.nvars(), Poly(g.nvars()));
  c[index] = g;
  return Derivation(std::move(c));
}

bool Derivation::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
}

Derivation Derivation::operator-() const {
  Derivation r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Derivation& Derivation::operator+=(const Derivation& other) {
  if (dim() != other.dim()) throw DimensionMismatch("derivation dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) {
  if (dim() != other.dim()) throw DimensionMismatch("derivation dimension mismatch");
  for (std::size_t i = 0; i < dim(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Derivation operator*(const Poly& g, const Derivation& e) {
  if (g.nvars() != e.dim()) throw DimensionMismatch("scalar and derivation dimension mismatch");
  Derivation r = e;
  for (auto& c : r.coeffs_) c = g * c;
  return r;
}

Derivation operator*(const Rational& c, const Derivation& e) {
  Derivation r = e;
  for (auto& p : r.coeffs_) p *= c;
  return r;
}

Poly apply_derivation(const Derivation& e, const Poly& p) {
  if (e.dim() != p.nvars()) throw DimensionMismatch("derivation applied across dimensions");
  Poly out(p.nvars());
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (e[i].is_zero()) continue;
    out += e[i] * p.partial(i);
  }
  return out;
}

Derivation derivation_bracket(const Derivation& a, const Derivation& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("bracket of derivations across dimensions");
  std::vector<Poly> c;
  c.reserve(a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    c.push_back(apply_derivation(a, b[j]) - apply_derivation(b, a[j]));
  return Derivation(std::move(c));
}

// ---------------------------------------------------------------------------
// Text form

ParseError::ParseError(std::size_t position, const std::string& what)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
      position_(position) {}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  std::size_t pos() const { return pos_; }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  // Accepts '-' and U+2212.
  bool take_minus() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }
  bool take(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool digit_next() {
    char c = peek();
    return c >= '0' && c <= '9';
  }
  mpz_class integer() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail(start, "expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }
  unsigned small_integer(const char* what) {
    std::size_t at = pos();
    mpz_class v = integer();
    if (!v.fits_uint_p() || v > 65535) fail(at, std::string(what) + " too large");
    return static_cast<unsigned>(v.get_ui());
  }
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const { throw ParseError(at, msg); }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

struct ParsedTerm {
  Monomial mono;
  Rational coef = 1;
  std::optional<std::size_t> direction;
};

// One signed term; the sign has already been consumed by the caller.
ParsedTerm parse_term(Scanner& s, std::size_t dim, bool allow_direction) {
  ParsedTerm term;
  bool have_factor = false;
  bool first = true;
  auto parse_factor = [&]() {
    std::size_t at = s.pos();
    char c = s.peek();
    if (c == 'x') {
      s.take('x');
      std::size_t idx_at = s.pos();
      unsigned idx = s.small_integer("variable index");
      if (idx < 1 || idx > dim)
        s.fail(idx_at, "variable index x" + std::to_string(idx) + " out of range 1.." +
                           std::to_string(dim));
      unsigned exponent = 1;
      if (s.take('^')) exponent = s.small_integer("exponent");
      term.mono.set(idx - 1, term.mono[idx - 1] + exponent);
    } else if (c == 'd' && allow_direction) {
      s.take('d');
      std::size_t idx_at = s.pos();
      unsigned idx = s.small_integer("direction index");
      if (idx < 1 || idx > dim)
        s.fail(idx_at, "direction index d" + std::to_string(idx) + " out of range 1.." +
                           std::to_string(dim));
      if (term.direction) s.fail(at, "term has more than one direction factor");
      term.direction = idx - 1;
    } else if (c == '(' || c == ')') {
      s.fail(at, "parentheses are not supported");
    } else {
      s.fail(at, c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
    }
    have_factor = true;
  };

  if (s.digit_next()) {
    mpz_class num = s.integer();
    mpz_class den = 1;
    if (s.take('/')) {
      std::size_t at = s.pos();
      den = s.integer();
      if (den == 0) s.fail(at, "zero denominator");
    }
    term.coef = Rational(num, den);
    term.coef.canonicalize();
    if (!s.take('*')) return term;  // bare rational
  }
  do {
    if (!first && s.peek() == '\0') s.fail("dangling '*'");
    first = false;
    parse_factor();
  } while (s.take('*'));
  (void)have_factor;
  return term;
}

template <typename OnTerm>
void parse_sum(std::string_view text, std::size_t dim, bool allow_direction, OnTerm on_term) {
  Scanner s(text);
  if (s.at_end()) s.fail("empty input");
  bool first = true;
  while (!s.at_end()) {
    bool negative = false;
    if (s.take('+')) {
      if (first) s.fail(s.pos() - 1, "leading '+' is not allowed");
    } else if (s.take_minus()) {
      negative = true;
    } else if (!first) {
      s.fail("expected '+' or '-'");
    }
    if (s.at_end()) s.fail("dangling sign");
    ParsedTerm t = parse_term(s, dim, allow_direction);
    if (negative) t.coef = -t.coef;
    on_term(std::move(t), s);
    first = false;
  }
}

}  // namespace

Poly parse_poly(std::string_view text, std::size_t dim) {
  check_nvars(dim);
  std::vector<Poly::Term> terms;
  parse_sum(text, dim, false, [&](ParsedTerm t, Scanner&) { terms.push_back({t.mono, t.coef}); });
  return Poly::from_terms(dim, std::move(terms));
}

Derivation parse_derivation(std::string_view text, std::size_t dim) {
  check_nvars(dim);
  std::vector<std::vector<Poly::Term>> terms(dim);
  parse_sum(text, dim, true, [&](ParsedTerm t, Scanner& s) {
    if (!t.direction) {
      // A bare "0" is the zero field.
      if (t.coef == 0 && t.mono.is_one()) return;
      s.fail("derivation term without a d<index> factor");
    }
    terms[*t.direction].push_back({t.mono, t.coef});
  });
  std::vector<Poly> coeffs;
  for (auto& t : terms) coeffs.push_back(Poly::from_terms(dim, std::move(t)));
  return Derivation(std::move(coeffs));
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

std::string monomial_text(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

// Emits "c*m" pieces of a signed sum; `extra` is an optional trailing factor.
void append_term(std::string& out, const Rational& c, const std::string& mono, bool first) {
  Rational mag = abs(c);
  if (first) {
    if (c < 0) out += '-';
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (mono.empty()) {
    out += mag.get_str();
  } else if (mag == 1) {
    out += mono;
  } else {
    out += mag.get_str() + '*' + mono;
  }
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

}  // namespace

std::string to_string(const Poly& p, std::span<const std::string> names) {
  if (names.size() != p.nvars()) throw DimensionMismatch("variable name list has wrong length");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    append_term(out, t.coef, monomial_text(t.mono, names), first);
    first = false;
  }
  return out;
}

std::string to_string(const Poly& p) {
  auto names = default_names(p.nvars());
  return to_string(p, names);
}

std::string to_string(const Derivation& e) {
  auto names = default_names(e.dim());
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < e.dim(); ++i) {
    std::string dir = "d" + std::to_string(i + 1);
    for (const auto& t : e[i].terms()) {
      std::string mono = monomial_text(t.mono, names);
      append_term(out, t.coef, mono.empty() ? dir : mono + '*' + dir, first);
      first = false;
    }
  }
  return first ? "0" : out;
}

}  // namespace avmod
