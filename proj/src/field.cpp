#include "dilation/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dilation/fp_linalg.hpp"

namespace dilation {

namespace {

using Poly = std::vector<int>; // ascending coefficients over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, std::int64_t p) {
  trim(a);
  while (a.size() >= m.size()) {
    const int lead = fp::mul(a.back(), fp::inv(m.back(), p), p);
    const std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j)
      a[shift + j] = fp::sub(a[shift + j], fp::mul(lead, m[j], p), p);
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// t^(p^k) mod f, computed by k successive p-th powers.
Poly t_pth_power_mod(const Poly& f, std::int64_t p, int k, Poly start) {
  Poly x = std::move(start);
  for (int step = 0; step < k; ++step) {
    Poly acc{1};
    Poly base = x;
    std::int64_t e = p;
    while (e > 0) {
      if (e & 1) acc = poly_mod(poly_mul(acc, base, p), f, p);
      base = poly_mod(poly_mul(base, base, p), f, p);
      e >>= 1;
    }
    x = std::move(acc);
  }
  return x;
}

} // namespace

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

bool is_irreducible(const std::vector<int>& poly, std::int64_t p) {
  Poly f = poly;
  trim(f);
  if (f.size() < 2) return false; // constants are not irreducible
  const int n = static_cast<int>(f.size()) - 1;
  if (n == 1) return true;
  Poly x{0, 1};
  for (int k = 1; k <= n / 2; ++k) {
    x = t_pth_power_mod(f, p, 1, x); // now t^(p^k) mod f
    Poly diff = x;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = fp::sub(diff[1], 1, p);
    Poly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(Token, std::int64_t p, int n, std::vector<int> modulus)
    : p_(p), n_(n), mod_(std::move(modulus)) {
  order_ = 1;
  for (int i = 0; i < n_; ++i) order_ *= static_cast<std::uint64_t>(p_);
}

FieldPtr Field::with_modulus(std::int64_t p, std::vector<int> modulus) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (modulus.size() < 2) throw std::invalid_argument("Field: modulus degree must be >= 1");
  const int n = static_cast<int>(modulus.size()) - 1;
  if (n > 62 || static_cast<double>(n) * std::log2(static_cast<double>(p)) > 62.0)
    throw std::invalid_argument("Field: p^n too large");
  for (int c : modulus)
    if (c < 0 || c >= p) throw std::invalid_argument("Field: modulus digit out of range");
  if (modulus.back() != 1) throw std::invalid_argument("Field: modulus must be monic");
  if (!is_irreducible(modulus, p))
    throw std::invalid_argument("Field: modulus is reducible");
  return std::make_shared<Field>(Token{}, p, n, std::move(modulus));
}

FieldPtr Field::make(std::int64_t p, int n) {
  if (!is_prime(p)) throw std::invalid_argument("Field: p must be prime");
  if (n < 1) throw std::invalid_argument("Field: n must be >= 1");
  if (static_cast<double>(n) * std::log2(static_cast<double>(p)) > 62.0)
    throw std::invalid_argument("Field: p^n too large");
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= static_cast<std::uint64_t>(p);
  for (std::uint64_t k = 0; k < count; ++k) {
    std::vector<int> cand(static_cast<std::size_t>(n) + 1, 0);
    std::uint64_t v = k;
    for (int i = 0; i < n; ++i) {
      cand[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(p));
      v /= static_cast<std::uint64_t>(p);
    }
    cand[static_cast<std::size_t>(n)] = 1;
    if (is_irreducible(cand, p))
      return std::make_shared<Field>(Token{}, p, n, std::move(cand));
  }
  throw std::logic_error("Field: no irreducible polynomial found"); // unreachable
}

std::vector<int> Field::reduce(std::vector<int> poly) const {
  poly = poly_mod(std::move(poly), mod_, p_);
  poly.resize(static_cast<std::size_t>(n_), 0);
  return poly;
}

std::vector<int> Field::mul_digits(const std::vector<int>& a, const std::vector<int>& b) const {
  return reduce(poly_mul(a, b, p_));
}

Element Field::zero() const {
  return Element(shared_from_this(), std::vector<int>(static_cast<std::size_t>(n_), 0));
}

Element Field::one() const { return from_int(1); }

Element Field::gen() const { return from_poly({0, 1}); }

Element Field::from_digits(std::vector<int> digits) const {
  if (digits.size() > static_cast<std::size_t>(n_))
    throw std::invalid_argument("Field: too many digits");
  for (int d : digits)
    if (d < 0 || d >= p_) throw std::invalid_argument("Field: digit out of range");
  digits.resize(static_cast<std::size_t>(n_), 0);
  return Element(shared_from_this(), std::move(digits));
}

Element Field::from_poly(const std::vector<int>& coeffs) const {
  std::vector<int> c = coeffs;
  for (auto& d : c) d = static_cast<int>(((d % p_) + p_) % p_);
  return Element(shared_from_this(), reduce(std::move(c)));
}

Element Field::from_index(std::uint64_t idx) const {
  if (idx >= order_) throw std::invalid_argument("Field: index out of range");
  std::vector<int> c(static_cast<std::size_t>(n_), 0);
  for (int i = 0; i < n_; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::uint64_t>(p_));
    idx /= static_cast<std::uint64_t>(p_);
  }
  return Element(shared_from_this(), std::move(c));
}

namespace {
int hex_digit_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}
char hex_digit_char(int v) {
  return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10);
}
} // namespace

Element Field::from_string(std::string_view s) const {
  if (s.empty() || s.size() > static_cast<std::size_t>(n_))
    throw std::invalid_argument("Field: bad element string length");
  std::vector<int> c;
  c.reserve(s.size());
  for (char ch : s) {
    const int v = hex_digit_value(ch);
    if (v < 0 || v >= p_) throw std::invalid_argument("Field: bad element digit");
    c.push_back(v);
  }
  return from_digits(std::move(c));
}

Element Field::from_int(std::int64_t k) const {
  std::vector<int> c(static_cast<std::size_t>(n_), 0);
  c[0] = static_cast<int>(((k % p_) + p_) % p_);
  return Element(shared_from_this(), std::move(c));
}

std::vector<Element> Field::subfield_basis(int m) const {
  if (m < 1 || n_ % m != 0)
    throw std::invalid_argument("Field: subfield degree must divide n");
  // Fixed points of a -> a^(p^m) form F_{p^m}; solve (Frob^m - id) x = 0.
  fp::Mat eqs(static_cast<std::size_t>(n_), fp::Row(static_cast<std::size_t>(n_), 0));
  for (int j = 0; j < n_; ++j) {
    std::vector<int> e(static_cast<std::size_t>(n_), 0);
    e[static_cast<std::size_t>(j)] = 1;
    Element img = Element(shared_from_this(), std::move(e)).frobenius(m);
    for (int i = 0; i < n_; ++i) {
      int v = img.digits()[static_cast<std::size_t>(i)];
      if (i == j) v = fp::sub(v, 1, p_);
      eqs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  }
  fp::Mat ker = fp::kernel(eqs, p_);
  if (static_cast<int>(ker.size()) != m)
    throw std::logic_error("Field: subfield kernel has wrong dimension");
  std::vector<Element> basis;
  basis.reserve(ker.size());
  for (auto& row : ker) basis.push_back(Element(shared_from_this(), std::move(row)));
  return basis;
}

std::vector<Element> Field::subfield_elements(int m) const {
  const std::vector<Element> basis = subfield_basis(m);
  std::vector<Element> out;
  out.push_back(zero());
  for (const auto& b : basis) {
    const std::size_t sz = out.size();
    Element scaled = b;
    for (int lambda = 1; lambda < p_; ++lambda) {
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] + scaled);
      if (lambda + 1 < p_) scaled = scaled + b;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Field::same_as(const Field& o) const {
  return p_ == o.p_ && n_ == o.n_ && mod_ == o.mod_;
}

void require_same_field(const Element& a, const Element& b) {
  if (!a.valid() || !b.valid())
    throw std::invalid_argument("Element: uninitialised operand");
  if (a.field().get() != b.field().get() && !a.field()->same_as(*b.field()))
    throw std::invalid_argument("Element: mismatched field contexts");
}

bool Element::is_zero() const {
  for (int d : c_)
    if (d != 0) return false;
  return true;
}

std::uint64_t Element::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = c_.size(); i-- > 0;)
    idx = idx * static_cast<std::uint64_t>(f_->p()) + static_cast<std::uint64_t>(c_[i]);
  return idx;
}

std::string Element::str() const {
  std::string s;
  s.reserve(c_.size());
  for (int d : c_) s.push_back(hex_digit_char(d));
  return s;
}

Element Element::operator+(const Element& o) const {
  require_same_field(*this, o);
  std::vector<int> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp::add(c_[i], o.c_[i], f_->p());
  return Element(f_, std::move(r));
}

Element Element::operator-(const Element& o) const {
  require_same_field(*this, o);
  std::vector<int> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp::sub(c_[i], o.c_[i], f_->p());
  return Element(f_, std::move(r));
}

Element Element::operator-() const {
  if (!valid()) throw std::invalid_argument("Element: uninitialised operand");
  std::vector<int> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = fp::neg(c_[i], f_->p());
  return Element(f_, std::move(r));
}

Element Element::operator*(const Element& o) const {
  require_same_field(*this, o);
  return Element(f_, f_->mul_digits(c_, o.c_));
}

Element Element::operator/(const Element& o) const { return *this * o.inverse(); }

bool Element::operator==(const Element& o) const {
  require_same_field(*this, o);
  return c_ == o.c_;
}

Element Element::inverse() const {
  if (!valid()) throw std::invalid_argument("Element: uninitialised operand");
  if (is_zero()) throw std::domain_error("Element: zero has no inverse");
  return pow(static_cast<std::int64_t>(f_->order()) - 2);
}

Element Element::pow(std::int64_t e) const {
  if (!valid()) throw std::invalid_argument("Element: uninitialised operand");
  if (is_zero()) {
    if (e < 0) throw std::domain_error("Element: zero to a negative power");
    return e == 0 ? f_->one() : *this;
  }
  const std::int64_t group = static_cast<std::int64_t>(f_->order()) - 1;
  std::int64_t r = e % group;
  if (r < 0) r += group;
  Element acc = f_->one();
  Element base = *this;
  while (r > 0) {
    if (r & 1) acc = acc * base;
    base = base * base;
    r >>= 1;
  }
  return acc;
}

Element Element::frobenius(int s) const {
  if (!valid()) throw std::invalid_argument("Element: uninitialised operand");
  if (s < 0) throw std::invalid_argument("Element: negative Frobenius power");
  s %= f_->n();
  Element r = *this;
  for (int i = 0; i < s; ++i) r = r.pow(f_->p());
  return r;
}

} // namespace dilation
