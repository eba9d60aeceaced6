#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dilation/dickson.hpp"
#include "dilation/field.hpp"

namespace dilation {

// A subgroup of (GF(p^n), +) in canonical form: the reduced row echelon
// basis of its coefficient matrix over F_p. Two subgroups are equal iff
// their canonical rows are equal.
struct Subspace {
  int r = 0;
  int n = 0;
  std::vector<std::vector<int>> rows; // r x n, RREF

  // Base-p integer encoding of each row; the vector orders subspaces.
  std::vector<std::uint64_t> row_codes(std::int64_t p) const;
  bool operator==(const Subspace& o) const { return r == o.r && n == o.n && rows == o.rows; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
};

// Deterministic total order (by rank, then row codes).
struct SubspaceLess {
  std::int64_t p;
  bool operator()(const Subspace& a, const Subspace& b) const;
};

Subspace canonicalize(const Field& F, const std::vector<Element>& gens);
Basis basis_of(const Field& F, const Subspace& V);
bool contains(const Field& F, const Subspace& V, const Element& x);
// A <= B as subgroups.
bool subspace_leq(const Field& F, const Subspace& A, const Subspace& B);
std::vector<Element> elements_of(const Field& F, const Subspace& V);

// All rank-r subgroups of GF(p^n), enumerated by pivot pattern and sorted
// canonically; the count is the Gaussian binomial [n choose r]_p.
std::vector<Subspace> enumerate_subspaces(const Field& F, int r);
// Streaming variant; return false from the callback to stop early.
void for_each_subspace(const Field& F, int r,
                       const std::function<bool(const Subspace&)>& fn);
// Rank-s subgroups contained in V.
std::vector<Subspace> subspaces_of(const Field& F, const Subspace& V, int s);

// alpha * V for alpha != 0.
Subspace dilate(const Field& F, const Element& alpha, const Subspace& V);

// Order q of the stabilizer {alpha : alpha V = V} together with 0; always
// the subfield F_q for some q = p^s with s | n, which is verified.
std::uint64_t stabilizer_order(const Field& F, const Subspace& V);

struct OrbitEntry {
  Subspace rep; // least member of the orbit
  std::uint64_t orbit_size = 0;
  std::uint64_t stabilizer_q = 0;
};

struct OrbitTable {
  int r = 0;
  std::vector<OrbitEntry> entries;
};

// Orbits of the dilation action of the multiplicative group on rank-r
// subgroups, with least representatives, sizes and stabilizers.
OrbitTable dilation_orbit_reps(const Field& F, int r);

// Weakly decreasing part sizes of a direct-sum decomposition.
using Partition = std::vector<int>;

// Dilated subfields alpha*F_{p^s} contained in V, each with one witness
// dilation factor. Empty when s does not divide n.
std::vector<std::pair<Element, Subspace>> dilated_subfields_in(const Field& F,
                                                               const Subspace& V, int s);

// Memo shared across partition searches on one field.
class PartitionCache {
 public:
  Partition* find(const Subspace& V);
  void store(const Subspace& V, Partition value);
  std::set<Partition>* find_all(const Subspace& V);
  void store_all(const Subspace& V, std::set<Partition> value);

 private:
  std::map<std::vector<std::uint64_t>, Partition> memo_;
  std::map<std::vector<std::uint64_t>, std::set<Partition>> memo_all_;

 public:
  std::int64_t p = 0;
};

// The lexicographically greatest partition realized by a decomposition of V
// into dilated subfields, found by full recursive search over summands and
// complements.
Partition partition_of(const Field& F, const Subspace& V);
Partition partition_of(const Field& F, const Subspace& V, PartitionCache& cache);

// Every realized decomposition type, not just the greatest one.
std::set<Partition> realized_partitions(const Field& F, const Subspace& V);
std::set<Partition> realized_partitions(const Field& F, const Subspace& V,
                                        PartitionCache& cache);

// Gaussian binomial [n choose r]_p as an exact integer.
std::uint64_t gaussian_binomial(int n, int r, std::int64_t p);

} // namespace dilation
