#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dilation {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// An element of GF(p^n), stored as the coefficient vector of its
// representative polynomial in ascending degree order (length n).
class Element {
 public:
  Element() = default;

  const std::vector<int>& digits() const { return c_; }
  const FieldPtr& field() const { return f_; }
  bool valid() const { return f_ != nullptr; }
  bool is_zero() const;

  // Base-p integer encoding, little-endian: sum c_i p^i.
  std::uint64_t index() const;
  // One hex digit per coefficient, degree 0 first ("12" = 1 + 2t).
  std::string str() const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element operator-() const;
  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }
  // Total order by index(); used for canonical sorting only.
  bool operator<(const Element& o) const { return index() < o.index(); }

  Element inverse() const;
  // a^e with e allowed to be negative for invertible a. For a != 0 the
  // exponent is reduced mod p^n - 1, so very large exponents are fine.
  Element pow(std::int64_t e) const;
  // a^(p^s), the s-fold Frobenius.
  Element frobenius(int s) const;

 private:
  friend class Field;
  Element(FieldPtr f, std::vector<int> c) : f_(std::move(f)), c_(std::move(c)) {}
  FieldPtr f_;
  std::vector<int> c_;
};

// Immutable context for GF(p^n): prime p, degree n, and the monic
// irreducible modulus used for all element arithmetic.
class Field : public std::enable_shared_from_this<Field> {
 public:
  // Deterministic: picks the monic irreducible degree-n polynomial over F_p
  // whose coefficient encoding sum c_i p^i is smallest.
  static FieldPtr make(std::int64_t p, int n);
  // Explicit modulus (ascending coefficients, length n+1, monic); validated.
  static FieldPtr with_modulus(std::int64_t p, std::vector<int> modulus);

  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  const std::vector<int>& modulus() const { return mod_; }
  std::uint64_t order() const { return order_; }

  Element zero() const;
  Element one() const;
  // The class of t, reduced mod the modulus (equals -c_0 when n = 1).
  Element gen() const;

  // Digits may be shorter than n (padded) but must lie in [0, p).
  Element from_digits(std::vector<int> digits) const;
  // Arbitrary-degree polynomial in t, reduced mod the modulus.
  Element from_poly(const std::vector<int>& coeffs) const;
  Element from_index(std::uint64_t idx) const;
  Element from_string(std::string_view s) const;
  Element from_int(std::int64_t k) const; // image of the integer k

  // F_p-basis of the subfield F_{p^m} (requires m | n), then its full
  // element list, sorted by index. Computed as the kernel of Frob^m - id.
  std::vector<Element> subfield_basis(int m) const;
  std::vector<Element> subfield_elements(int m) const;

  bool same_as(const Field& o) const;

 private:
  struct Token {};

 public:
  Field(Token, std::int64_t p, int n, std::vector<int> modulus);

 private:
  friend class Element;
  std::vector<int> reduce(std::vector<int> poly) const;
  std::vector<int> mul_digits(const std::vector<int>& a, const std::vector<int>& b) const;

  std::int64_t p_;
  int n_;
  std::vector<int> mod_;
  std::uint64_t order_;
};

// Throws std::invalid_argument unless both elements belong to equal fields.
void require_same_field(const Element& a, const Element& b);

bool is_prime(std::int64_t p);

// Irreducibility of a monic polynomial over F_p (ascending coefficients),
// via gcd(f, t^{p^k} - t) = 1 for all k <= deg(f)/2.
bool is_irreducible(const std::vector<int>& poly, std::int64_t p);

} // namespace dilation
