#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "dilation/field.hpp"
#include "dilation/subspace.hpp"

using namespace dilation;

namespace {

// q-Pascal recurrence, written independently of the library implementation.
std::uint64_t gauss_oracle(int n, int r, std::int64_t p) {
  if (r < 0 || r > n) return 0;
  std::map<std::pair<int, int>, std::uint64_t> memo;
  std::function<std::uint64_t(int, int)> go = [&](int nn, int rr) -> std::uint64_t {
    if (rr == 0 || rr == nn) return 1;
    const auto key = std::make_pair(nn, rr);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint64_t pr = 1;
    for (int i = 0; i < rr; ++i) pr *= static_cast<std::uint64_t>(p);
    const std::uint64_t val = go(nn - 1, rr - 1) + pr * go(nn - 1, rr);
    memo[key] = val;
    return val;
  };
  return go(n, r);
}

Subspace random_subspace(const Field& F, int r, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(1, F.order() - 1);
  while (true) {
    std::vector<Element> gens;
    for (int i = 0; i < r; ++i) gens.push_back(F.from_index(pick(rng)));
    const Subspace V = canonicalize(F, gens);
    if (V.r == r) return V;
  }
}

} // namespace

TEST_CASE("gaussian binomials match the q-Pascal recurrence") {
  for (const std::int64_t p : {2, 3, 5}) {
    for (int n = 0; n <= 8; ++n)
      for (int r = 0; r <= n; ++r)
        CHECK(gaussian_binomial(n, r, p) == gauss_oracle(n, r, p));
  }
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(6, 3, 2) == 1395);
}

TEST_CASE("enumeration hits every subgroup exactly once") {
  const FieldPtr F = Field::make(2, 4);
  for (int r = 0; r <= 4; ++r) {
    const std::vector<Subspace> all = enumerate_subspaces(*F, r);
    CHECK(all.size() == gauss_oracle(4, r, 2));
    std::set<std::vector<std::uint64_t>> seen;
    for (const Subspace& V : all) {
      CHECK(V.r == r);
      seen.insert(V.row_codes(2));
    }
    CHECK(seen.size() == all.size());
  }
  // the streaming variant visits the same family and honours early stop
  std::uint64_t visited = 0;
  for_each_subspace(*F, 2, [&](const Subspace&) { return ++visited < 10; });
  CHECK(visited == 10);
}

TEST_CASE("canonical form depends only on the span") {
  std::mt19937_64 rng(7);
  const FieldPtr F = Field::make(3, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace V = random_subspace(*F, 2, rng);
    const Basis basis = basis_of(*F, V);
    const Basis mixed = {basis[0] + basis[1], basis[1]};
    CHECK(canonicalize(*F, mixed) == V);
    for (const Element& x : elements_of(*F, V)) CHECK(contains(*F, V, x));
    CHECK(elements_of(*F, V).size() == 9);
  }
  CHECK(canonicalize(*F, {F->zero()}).r == 0);
}

TEST_CASE("membership and inclusion agree with element sets") {
  const FieldPtr F = Field::make(2, 4);
  const Subspace V = canonicalize(*F, F->subfield_basis(2));
  for (const Subspace& S : subspaces_of(*F, V, 1)) {
    CHECK(subspace_leq(*F, S, V));
    for (const Element& x : elements_of(*F, S)) CHECK(contains(*F, V, x));
  }
  CHECK(subspaces_of(*F, V, 1).size() == 3);
  const Subspace W = canonicalize(*F, {F->gen()});
  CHECK_FALSE(subspace_leq(*F, V, W));
}

TEST_CASE("dilation is a group action") {
  std::mt19937_64 rng(8);
  const FieldPtr F = Field::make(2, 6);
  std::uniform_int_distribution<std::uint64_t> pick(1, F->order() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    const Subspace V = random_subspace(*F, 3, rng);
    const Element a = F->from_index(pick(rng));
    const Element b = F->from_index(pick(rng));
    CHECK(dilate(*F, F->one(), V) == V);
    CHECK(dilate(*F, a, dilate(*F, b, V)) == dilate(*F, a * b, V));
    CHECK(dilate(*F, a.inverse(), dilate(*F, a, V)) == V);
  }
  CHECK_THROWS_AS(dilate(*F, F->zero(), random_subspace(*F, 2, rng)),
                  std::invalid_argument);
}

TEST_CASE("stabilizers are subfields of the expected order") {
  const FieldPtr F = Field::make(2, 6);
  CHECK(stabilizer_order(*F, canonicalize(*F, F->subfield_basis(2))) == 4);
  CHECK(stabilizer_order(*F, canonicalize(*F, F->subfield_basis(3))) == 8);
  CHECK(stabilizer_order(*F, canonicalize(*F, {F->one()})) == 2);
  // a line is stabilized exactly by the prime field
  const FieldPtr G = Field::make(3, 3);
  CHECK(stabilizer_order(*G, canonicalize(*G, {G->gen()})) == 3);
}

TEST_CASE("orbit sizes satisfy orbit times stabilizer") {
  for (const auto& [p, n, r] :
       {std::tuple<std::int64_t, int, int>{2, 6, 2}, {2, 6, 3}, {3, 4, 2}}) {
    const FieldPtr F = Field::make(p, n);
    const OrbitTable table = dilation_orbit_reps(*F, r);
    std::uint64_t covered = 0;
    std::set<std::vector<std::uint64_t>> reps;
    for (const OrbitEntry& e : table.entries) {
      covered += e.orbit_size;
      CHECK(e.orbit_size * (e.stabilizer_q - 1) == F->order() - 1);
      CHECK(e.stabilizer_q == stabilizer_order(*F, e.rep));
      reps.insert(e.rep.row_codes(p));
    }
    CHECK(covered == gauss_oracle(n, r, p));
    CHECK(reps.size() == table.entries.size());
  }
}

TEST_CASE("orbit representatives are least in their orbit") {
  const FieldPtr F = Field::make(2, 6);
  const OrbitTable table = dilation_orbit_reps(*F, 2);
  const SubspaceLess less{2};
  for (const OrbitEntry& e : table.entries) {
    for (std::uint64_t i = 1; i < F->order(); ++i) {
      const Subspace im = dilate(*F, F->from_index(i), e.rep);
      CHECK_FALSE(less(im, e.rep));
    }
  }
}

TEST_CASE("partitions of the basic spans") {
  const FieldPtr F = Field::make(2, 6);
  const Subspace line = canonicalize(*F, {F->one()});
  CHECK(partition_of(*F, line) == Partition{1});
  const Subspace f4 = canonicalize(*F, F->subfield_basis(2));
  CHECK(partition_of(*F, f4) == Partition{2});
  const Subspace f8 = canonicalize(*F, F->subfield_basis(3));
  CHECK(partition_of(*F, f8) == Partition{3});

  std::vector<Element> gens = F->subfield_basis(3);
  for (const Element& x : F->subfield_basis(2)) gens.push_back(x);
  const Subspace sum = canonicalize(*F, gens);
  REQUIRE(sum.r == 4);
  CHECK(partition_of(*F, sum) == Partition{3, 1});
}

TEST_CASE("partition is a dilation invariant") {
  std::mt19937_64 rng(9);
  const FieldPtr F = Field::make(2, 6);
  std::uniform_int_distribution<std::uint64_t> pick(1, F->order() - 1);
  PartitionCache cache;
  cache.p = 2;
  for (int trial = 0; trial < 12; ++trial) {
    const Subspace V = random_subspace(*F, 3, rng);
    const Element alpha = F->from_index(pick(rng));
    CHECK(partition_of(*F, V, cache) ==
          partition_of(*F, dilate(*F, alpha, V), cache));
  }
}

TEST_CASE("dilated subfield search finds witnesses") {
  const FieldPtr F = Field::make(2, 6);
  const Subspace f4 = canonicalize(*F, F->subfield_basis(2));
  const Element alpha = F->gen().pow(5);
  const Subspace moved = dilate(*F, alpha, f4);

  const auto hits = dilated_subfields_in(*F, moved, 2);
  REQUIRE(hits.size() == 1);
  CHECK(dilate(*F, hits[0].first, canonicalize(*F, F->subfield_basis(2))) == moved);
  CHECK(hits[0].second == moved);

  CHECK(dilated_subfields_in(*F, moved, 4).empty()); // 4 does not divide 6
  CHECK(dilated_subfields_in(*F, moved, 3).empty()); // rank too small
}

TEST_CASE("all realized decompositions are reported") {
  const FieldPtr F = Field::make(2, 6);
  const Subspace f4 = canonicalize(*F, F->subfield_basis(2));
  const std::set<Partition> parts = realized_partitions(*F, f4);
  CHECK(parts == std::set<Partition>{{2}, {1, 1}});

  // a rank-2 subgroup that is not a dilated subfield only splits into lines
  const FieldPtr G = Field::make(2, 4);
  for (const Subspace& V : enumerate_subspaces(*G, 2)) {
    const std::set<Partition> rp = realized_partitions(*G, V);
    CHECK(rp.count({1, 1}) == 1);
    const bool top = partition_of(*G, V) == Partition{2};
    CHECK(rp.count({2}) == static_cast<std::size_t>(top));
  }
}
