#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dilation/dickson.hpp"
#include "dilation/monoid.hpp"
#include "dilation/subspace.hpp"

namespace dilation {

// A dilation-invariant monomial in the Dickson invariants,
//   d_j^(extra) * d_i^(a) * d_r^(-b),
// encoded by its full exponent vector (a solution of the weight equation).
enum class InvariantKind { Vi, Vij, Uij };

struct InvariantSpec {
  InvariantKind kind = InvariantKind::Vi;
  std::int64_t p = 0;
  int r = 0;
  int i = 0;
  int j = 0; // unused for Vi
  ExponentVec exponents;
  std::string label;
};

// v_i = d_i^a d_r^(-b) with a = (p^r-1)/l, b = p^(r-i)(p^i-1)/l,
// l = gcd(p^i-1, p^r-1). Defined for 1 <= i < r.
InvariantSpec v_exponents(std::int64_t p, int r, int i);

// v_ij = d_j d_i^a d_r^(-b) with (a, b) the minimal positive solution of
// p^(r-j)(p^j-1) = b(p^r-1) - a p^(r-i)(p^i-1). Exists iff gcd(r,i) | j.
InvariantSpec vij_exponents(std::int64_t p, int r, int i, int j);

// u_ij = d_j^(p+1) d_i^a d_r^(-b), for gcd(r,i) = 2 and odd j, with (a, b)
// minimal positive for (p+1) p^(r-j)(p^j-1) = b(p^r-1) - a p^(r-i)(p^i-1).
InvariantSpec uij_exponents(std::int64_t p, int r, int i, int j);

// The separating set used for rank r, 2 <= r <= 11.
std::vector<InvariantSpec> separating_set(std::int64_t p, int r);

// Evaluate on a rank-r subgroup; the negative power of d_r is realized by
// field inversion (d_r never vanishes on an independent basis).
Element eval_invariant(const InvariantSpec& spec, const Basis& basis);
Element eval_invariant(const InvariantSpec& spec, const DicksonVector& dv);

struct SeparatingReport {
  std::int64_t p = 0;
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> invariant_labels;
  std::uint64_t orbit_count = 0;
  // orbit rep row codes alongside the fingerprint (one value per invariant)
  std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::string>>> fingerprints;
  // pairs of orbit indices whose fingerprints collide; expected empty
  std::vector<std::pair<std::size_t, std::size_t>> unseparated_pairs;
  bool dilation_invariance_ok = true;
  std::string note;
};

// Evaluate the separating set on every dilation orbit of rank-r subgroups
// of GF(p^n) and compare fingerprints across orbits. Also spot-checks
// dilation invariance on a seeded sample of each orbit.
SeparatingReport separation_check(const Field& F, int r, std::uint64_t seed);

} // namespace dilation
