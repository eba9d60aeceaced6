#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dilation {

using BigInt = boost::multiprecision::cpp_int;

// Exponent vector (a_1, ..., a_r) over a fixed prime p. A vector is a
// "solution" when
//   sum_{i<r} a_i p^(r-i) (p^i - 1) = a_r (p^r - 1),
// the condition for d_1^{a_1} ... d_{r-1}^{a_{r-1}} d_r^{-a_r} to have
// dilation weight zero.
struct ExponentVec {
  std::int64_t p = 0;
  std::vector<std::int64_t> a;

  int r() const { return static_cast<int>(a.size()); }
  bool operator==(const ExponentVec& o) const { return p == o.p && a == o.a; }
  bool operator<(const ExponentVec& o) const { return a < o.a; }
};

// w_i = p^(r-i) (p^i - 1) for i = 1..r-1, and the right-hand weight
// W = p^r - 1, all as exact big integers.
std::vector<BigInt> solution_weights(std::int64_t p, int r);

bool is_solution(const ExponentVec& v);

// sum_{i<r} a_i - a_r; equals the pole order at the top invariant.
std::int64_t height(const ExponentVec& v);

// Substituted coordinates for r = 4 and r = 5:
//   a_r = p b_r,  a_{r-1} = p b_{r-1} + b_r,  a_i = p b_i - b_{i+1} (i <= r-2).
// Solutions satisfy sum_{i<r} b_i = b_r and b_1 = height.
struct TildeVec {
  std::int64_t p = 0;
  std::vector<std::int64_t> b;
};

TildeVec to_tilde(const ExponentVec& v);
ExponentVec from_tilde(const TildeVec& t);

struct PrimitiveEnumeration {
  std::int64_t p = 0;
  int r = 0;
  std::int64_t cap = 0;
  std::vector<ExponentVec> primitives; // graded by a_r, then lexicographic
  // true when some primitive has a coordinate equal to the cap, in which
  // case larger primitives may exist beyond it
  bool touches_cap = false;
};

// All primitive (indecomposable) nonzero solutions with every coordinate
// <= cap, by graded enumeration over a_r with domination filtering.
// Exact for the returned range: a solution within the cap is primitive
// globally iff it is primitive among the enumerated ones.
PrimitiveEnumeration enumerate_primitive(std::int64_t p, int r, std::int64_t cap);

struct FamilyMember {
  ExponentVec v;
  std::string tag;
};

// Closed-form generating families for r = 3, 4, 5 (duplicates across the
// constituent families removed, first tag kept).
std::vector<FamilyMember> generating_family(std::int64_t p, int r);

std::size_t family_cardinality(std::int64_t p, int r);

} // namespace dilation
