#pragma once

#include <vector>

#include "dilation/field.hpp"

namespace dilation {

// Ordered tuple of elements of one field, spanning a finite subgroup of
// (GF(p^n), +). Tuples are allowed to be linearly dependent unless an
// operation says otherwise.
using Basis = std::vector<Element>;

// Common field of a non-empty basis; throws on mismatched contexts.
FieldPtr field_of(const Basis& basis);

// F_p-dimension of the span.
int rank(const Basis& basis);

// Every F_p-linear combination, sorted by index; size p^rank.
std::vector<Element> subgroup_elements(const Basis& basis);

// A monic p-polynomial: coefficient i multiplies t^(p^i), with the top
// coefficient (i = r) equal to one.
struct AdditivePoly {
  FieldPtr field;
  int r = 0;
  std::vector<Element> coeffs; // length r+1, coeffs[r] == 1

  Element eval(const Element& x) const;
};

// The vector (d_{1,r}, ..., d_{r,r}) of Dickson invariants evaluated on a
// basis tuple. get() extends by the conventions d_0 = 1 and d_i = 0 for
// i < 0 or i > r.
struct DicksonVector {
  FieldPtr field;
  int r = 0;
  std::vector<Element> d; // d[i-1] = d_i

  Element get(int i) const;
  // The associated p-polynomial: t^(p^r) + sum_i d_{r-i} t^(p^i).
  AdditivePoly poly() const;
};

// prod_{c in span(basis)} (t - c), expanded by brute-force multiplication
// and then re-read as a p-polynomial. Requires an independent basis.
AdditivePoly norm_poly(const Basis& basis);

// Dickson invariants by the triangular recursion
//   d_{i,s+1} = d_{i,s}^p - d_{i-1,s} * h_s,  h_s = F_s(c_{s+1})^(p-1),
// where F_s is the stage-s p-polynomial. Exact for dependent tuples too.
DicksonVector dickson_values(const Basis& basis);

// Same, but requires an independent basis (d_{r,r} != 0) and throws
// std::invalid_argument otherwise.
DicksonVector dickson_eval(const Basis& basis);

// Image of the basis under omega_s(x) = x^(p^s) - x. Requires that the
// span meets the kernel of omega_s (the subfield fixed by Frob^s) only
// in zero; rank is then preserved.
Basis omega_map(int s, const Basis& basis);

} // namespace dilation
