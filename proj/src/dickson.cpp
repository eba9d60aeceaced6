#include "dilation/dickson.hpp"

#include <algorithm>
#include <stdexcept>

#include "dilation/fp_linalg.hpp"

namespace dilation {

FieldPtr field_of(const Basis& basis) {
  if (basis.empty()) throw std::invalid_argument("basis: empty");
  const FieldPtr& f = basis.front().field();
  if (!f) throw std::invalid_argument("basis: uninitialised element");
  for (const auto& e : basis) require_same_field(basis.front(), e);
  return f;
}

int rank(const Basis& basis) {
  const FieldPtr f = field_of(basis);
  fp::Mat rows;
  rows.reserve(basis.size());
  for (const auto& e : basis) rows.push_back(e.digits());
  return fp::rank(std::move(rows), f->p());
}

std::vector<Element> subgroup_elements(const Basis& basis) {
  const FieldPtr f = field_of(basis);
  std::vector<Element> span{f->zero()};
  for (const auto& c : basis) {
    // grow only if c is new, keeping the element count at p^rank
    bool seen = false;
    for (const auto& x : span)
      if (x == c) {
        seen = true;
        break;
      }
    if (seen) continue;
    const std::size_t sz = span.size();
    Element scaled = c;
    for (std::int64_t lambda = 1; lambda < f->p(); ++lambda) {
      for (std::size_t i = 0; i < sz; ++i) span.push_back(span[i] + scaled);
      if (lambda + 1 < f->p()) scaled = scaled + c;
    }
  }
  std::sort(span.begin(), span.end());
  span.erase(std::unique(span.begin(), span.end()), span.end());
  return span;
}

Element AdditivePoly::eval(const Element& x) const {
  Element acc = field->zero();
  Element xp = x; // runs through x^(p^i)
  for (int i = 0; i <= r; ++i) {
    if (i == r)
      acc = acc + xp;
    else if (!coeffs[static_cast<std::size_t>(i)].is_zero())
      acc = acc + coeffs[static_cast<std::size_t>(i)] * xp;
    if (i < r) xp = xp.pow(field->p());
  }
  return acc;
}

Element DicksonVector::get(int i) const {
  if (i == 0) return field->one();
  if (i < 0 || i > r) return field->zero();
  return d[static_cast<std::size_t>(i - 1)];
}

AdditivePoly DicksonVector::poly() const {
  AdditivePoly f;
  f.field = field;
  f.r = r;
  f.coeffs.resize(static_cast<std::size_t>(r) + 1);
  for (int i = 0; i < r; ++i) f.coeffs[static_cast<std::size_t>(i)] = get(r - i);
  f.coeffs[static_cast<std::size_t>(r)] = field->one();
  return f;
}

AdditivePoly norm_poly(const Basis& basis) {
  const FieldPtr f = field_of(basis);
  const int r = static_cast<int>(basis.size());
  if (rank(basis) != r) throw std::invalid_argument("norm_poly: dependent basis");

  const std::vector<Element> pts = subgroup_elements(basis);
  // dense product of (t - c) over the span; coeff[k] multiplies t^k
  std::vector<Element> coeff{f->one()};
  coeff.reserve(pts.size() + 1);
  for (const auto& c : pts) {
    coeff.push_back(f->zero());
    for (std::size_t k = coeff.size(); k-- > 0;) {
      Element shifted = k > 0 ? coeff[k - 1] : f->zero();
      coeff[k] = shifted - c * coeff[k];
    }
  }

  AdditivePoly out;
  out.field = f;
  out.r = r;
  out.coeffs.resize(static_cast<std::size_t>(r) + 1, f->zero());
  std::uint64_t ppow = 1; // p^next, the next admissible exponent
  int next = 0;
  for (std::size_t deg = 0; deg < coeff.size(); ++deg) {
    if (next <= r && deg == ppow) {
      out.coeffs[static_cast<std::size_t>(next)] = coeff[deg];
      ++next;
      ppow *= static_cast<std::uint64_t>(f->p());
    } else if (!coeff[deg].is_zero()) {
      throw std::logic_error("norm_poly: product is not a p-polynomial");
    }
  }
  if (!(out.coeffs.back() == f->one()))
    throw std::logic_error("norm_poly: product is not monic");
  return out;
}

DicksonVector dickson_values(const Basis& basis) {
  const FieldPtr f = field_of(basis);
  const int r = static_cast<int>(basis.size());
  DicksonVector dv;
  dv.field = f;
  dv.r = 0;
  for (int s = 0; s < r; ++s) {
    // h = F_s(c_{s+1})^(p-1) with F_s the current stage polynomial
    const Element h = dv.poly().eval(basis[static_cast<std::size_t>(s)]).pow(f->p() - 1);
    std::vector<Element> next(static_cast<std::size_t>(s) + 1);
    for (int i = 1; i <= s + 1; ++i)
      next[static_cast<std::size_t>(i - 1)] =
          dv.get(i).pow(f->p()) - dv.get(i - 1) * h;
    dv.d = std::move(next);
    dv.r = s + 1;
  }
  return dv;
}

DicksonVector dickson_eval(const Basis& basis) {
  DicksonVector dv = dickson_values(basis);
  if (dv.get(dv.r).is_zero())
    throw std::invalid_argument("dickson_eval: dependent basis (top invariant vanishes)");
  return dv;
}

Basis omega_map(int s, const Basis& basis) {
  const FieldPtr f = field_of(basis);
  if (s < 1) throw std::invalid_argument("omega_map: s must be >= 1");
  for (const auto& x : subgroup_elements(basis))
    if (!x.is_zero() && x.frobenius(s) == x)
      throw std::invalid_argument("omega_map: span meets the kernel of omega_s");
  Basis out;
  out.reserve(basis.size());
  for (const auto& c : basis) out.push_back(c.frobenius(s) - c);
  if (rank(out) != rank(basis)) throw std::logic_error("omega_map: rank not preserved");
  return out;
}

} // namespace dilation
