#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"

#include "dilation/dickson.hpp"
#include "dilation/field.hpp"
#include "dilation/separating.hpp"
#include "dilation/structure.hpp"
#include "dilation/subspace.hpp"

using namespace dilation;

namespace {

Subspace mixed_subfield_sum(const Field& F) {
  // rank-4 sum of the two proper subfields of GF(2^6)
  std::vector<Element> gens = F.subfield_basis(3);
  for (const Element& x : F.subfield_basis(2)) gens.push_back(x);
  return canonicalize(F, gens);
}

} // namespace

TEST_CASE("v1j values with the top convention") {
  const FieldPtr F = Field::make(2, 6);
  const Subspace V = mixed_subfield_sum(*F);
  REQUIRE(V.r == 4);
  const DicksonVector dv = dickson_eval(basis_of(*F, V));

  CHECK(v1j_value(dv, 4) == F->one());
  CHECK(v1j_value(dv, 2).is_zero());
  CHECK(v1j_value(dv, 3) == F->one());
  // same values along the independent minimal-pair route
  for (const int j : {2, 3})
    CHECK(v1j_value(dv, j) == eval_invariant(vij_exponents(2, 4, 1, j), dv));
  CHECK_THROWS_AS(v1j_value(dv, 5), std::invalid_argument);
}

TEST_CASE("scalar closure criterion on landmark subgroups") {
  const FieldPtr F = Field::make(2, 6);
  const DicksonVector f4 = dickson_eval(F->subfield_basis(2));
  CHECK(fq_space_criterion(f4, 2));
  CHECK(fq_space_direct(*F, canonicalize(*F, F->subfield_basis(2)), 2));

  const Subspace sum = mixed_subfield_sum(*F);
  const DicksonVector dv = dickson_eval(basis_of(*F, sum));
  CHECK_FALSE(fq_space_criterion(dv, 2));
  CHECK_FALSE(fq_space_direct(*F, sum, 2));
  CHECK_THROWS_AS(fq_space_criterion(dv, 3), std::invalid_argument);
}

TEST_CASE("scalar closure criterion sweeps clean") {
  const FieldPtr F4 = Field::make(2, 4);
  CHECK(verify_fq_space(*F4, 2, 2) == 35);
  const FieldPtr F6 = Field::make(2, 6);
  CHECK(verify_fq_space(*F6, 2, 2) == 651);
  CHECK(verify_fq_space(*F6, 3, 3) == 1395);
  CHECK(verify_fq_space(*F6, 2, 4) == 651);
  const FieldPtr G = Field::make(3, 4);
  CHECK(verify_fq_space(*G, 2, 2) == 130);
}

TEST_CASE("composition identity instances and sweep") {
  const FieldPtr F = Field::make(2, 6);
  // W spanned by the field generator: t is in no proper subfield
  CHECK(composition_identity_holds(*F, canonicalize(*F, {F->gen()}), 2));
  CHECK(composition_identity_holds(*F, canonicalize(*F, {F->gen()}), 3));
  // W meeting the subfield is rejected
  CHECK_THROWS_AS(
      composition_identity_holds(*F, canonicalize(*F, {F->one()}), 2),
      std::invalid_argument);

  const FieldPtr F4 = Field::make(2, 4);
  CHECK(verify_composition(*F4) > 0);
  const FieldPtr G = Field::make(3, 4);
  CHECK(verify_composition(*G) > 0);
}

TEST_CASE("codimension-one split detection") {
  const FieldPtr F = Field::make(2, 6);
  // positive: subfield of order 4 plus an outside line
  std::vector<Element> gens = F->subfield_basis(2);
  gens.push_back(F->gen());
  const Subspace split = canonicalize(*F, gens);
  REQUIRE(split.r == 3);
  CHECK(codim1_criterion(dickson_eval(basis_of(*F, split))));
  CHECK(codim1_direct(*F, split));
  CHECK(partition_of(*F, split) == Partition{2, 1});

  // negative: the full cubic subfield has partition (3)
  const Subspace f8 = canonicalize(*F, F->subfield_basis(3));
  CHECK_FALSE(codim1_criterion(dickson_eval(basis_of(*F, f8))));
  CHECK_FALSE(codim1_direct(*F, f8));

  CHECK(verify_codim1(*F, 2) == 1395);
}

TEST_CASE("embedding chain criterion against the dilation scan") {
  const FieldPtr F = Field::make(2, 6);
  // rank 2 inside a dilated cubic subfield: positive instance
  const Element alpha = F->gen().pow(3);
  const std::vector<Element> f8 = F->subfield_basis(3);
  const Subspace inside = canonicalize(*F, {alpha * f8[0], alpha * f8[1]});
  CHECK(embedding_criterion(dickson_eval(basis_of(*F, inside))));
  const std::optional<bool> direct = embedding_direct(*F, inside);
  REQUIRE(direct.has_value());
  CHECK(*direct);

  // negative instance: a plane generated by the field generator
  const Subspace outside = canonicalize(*F, {F->one(), F->gen()});
  CHECK_FALSE(embedding_criterion(dickson_eval(basis_of(*F, outside))));
  CHECK_FALSE(*embedding_direct(*F, outside));

  CHECK(verify_embedding(*F, 2) == 651);
  // rank 5 in degree 6: every subgroup lies in the full field, so the
  // criterion must hold identically
  CHECK(verify_embedding(*F, 5) == 63);
  CHECK_THROWS_AS(verify_embedding(*F, 3), std::invalid_argument);
}

TEST_CASE("embedding chain with an inert middle equation") {
  // degree 8, rank 3: the subfield of order 16 is proper, so the scan is
  // decisive and exercises the terminal equation of the chain
  const FieldPtr F = Field::make(2, 8);
  CHECK(verify_embedding(*F, 3) == 97155);
}

TEST_CASE("rank-4 quadratic subfield detector") {
  const FieldPtr F = Field::make(2, 6);
  // positive: F_4 plus two further independent directions chosen to keep
  // the quadratic subfield inside
  std::vector<Element> gens = F->subfield_basis(2);
  gens.push_back(F->subfield_basis(3)[1]);
  gens.push_back(F->subfield_basis(3)[2]);
  const Subspace V = canonicalize(*F, gens);
  REQUIRE(V.r == 4);
  CHECK(rank4_h_value(dickson_eval(basis_of(*F, V))).is_zero());
  CHECK(rank4_contains_fp2_direct(*F, V));

  const Subspace sum = mixed_subfield_sum(*F);
  CHECK(rank4_contains_fp2_direct(*F, sum));
  CHECK(rank4_h_value(dickson_eval(basis_of(*F, sum))).is_zero());

  CHECK(verify_rank4_fp2(*F) == 651);
  // odd degree has no quadratic subfield at all, so the detector must
  // report a nonzero value on every rank-4 subgroup
  const FieldPtr F5 = Field::make(2, 5);
  CHECK(verify_rank4_fp2(*F5) == 31);
}

TEST_CASE("detector and its weight-zero scaling agree on every rank-4 subgroup") {
  // clearing denominators in (v_12 - v_13^p)^p v_13 - v_1 must reproduce
  // the detector polynomial times d_1^(p^3+p)
  for (const std::int64_t p : {2, 3}) {
    const FieldPtr F = Field::make(p, 6);
    const std::int64_t e = p * p * p + p;
    for (const Subspace& V : enumerate_subspaces(*F, 4)) {
      const DicksonVector dv = dickson_eval(basis_of(*F, V));
      const Element v12 = v1j_value(dv, 2);
      const Element v13 = v1j_value(dv, 3);
      const Element v1 = eval_invariant(v_exponents(p, 4, 1), dv);
      const Element scaled = (v12 - v13.pow(p)).pow(p) * v13 - v1;
      CHECK(rank4_h_value(dv) * dv.get(1).pow(e) == scaled * dv.get(4).pow(e));
    }
  }
}

TEST_CASE("rank-4 rule matches the search in odd characteristic") {
  const FieldPtr F = Field::make(3, 6);
  PartitionCache cache;
  cache.p = 3;

  // one constructed instance per split shape
  const std::vector<Element> quad = F->subfield_basis(2);
  std::vector<Element> gens = quad;
  gens.push_back(F->gen());
  gens.push_back(F->subfield_basis(3)[1]);
  const Subspace split = canonicalize(*F, gens);
  REQUIRE(split.r == 4);
  CHECK(classify_rank4(dickson_eval(basis_of(*F, split))) == Partition{2, 1, 1});
  CHECK(partition_of(*F, split, cache) == Partition{2, 1, 1});

  std::vector<Element> pair;
  for (const Element& x : quad) {
    pair.push_back(x);
    pair.push_back(x * F->gen());
  }
  const Subspace twice = canonicalize(*F, pair);
  REQUIRE(twice.r == 4);
  CHECK(classify_rank4(dickson_eval(basis_of(*F, twice))) == Partition{2, 2});
  CHECK(partition_of(*F, twice, cache) == Partition{2, 2});

  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::uint64_t> pick(1, F->order() - 1);
  int seen = 0;
  while (seen < 40) {
    std::vector<Element> sample;
    for (int i = 0; i < 4; ++i) sample.push_back(F->from_index(pick(rng)));
    const Subspace V = canonicalize(*F, sample);
    if (V.r != 4) continue;
    ++seen;
    CHECK(classify_rank4(dickson_eval(basis_of(*F, V))) == partition_of(*F, V, cache));
  }
}

TEST_CASE("rank-2 dichotomy is exact") {
  for (const std::int64_t p : {2, 3}) {
    const FieldPtr F = Field::make(p, 4);
    for (const Subspace& V : enumerate_subspaces(*F, 2)) {
      const DicksonVector dv = dickson_eval(basis_of(*F, V));
      const Partition part = classify_rank2(dv);
      CHECK(part == partition_of(*F, V));
      const bool is_dilated_subfield = !dilated_subfields_in(*F, V, 2).empty();
      CHECK((part == Partition{2}) == is_dilated_subfield);
      CHECK(dv.get(1).is_zero() == is_dilated_subfield);
    }
  }
}

TEST_CASE("closed-form classification sweeps clean") {
  const FieldPtr F = Field::make(2, 6);
  PartitionCache cache;
  cache.p = 2;
  CHECK(verify_classification(*F, 2, &cache) == 651);
  CHECK(verify_classification(*F, 3, &cache) == 1395);
  CHECK(verify_classification(*F, 4, &cache) == 651);
  CHECK(verify_classification(*F, 5, &cache) == 63);

  const FieldPtr G = Field::make(3, 4);
  PartitionCache gcache;
  gcache.p = 3;
  CHECK(verify_classification(*G, 2, &gcache) == 130);
  CHECK(verify_classification(*G, 3, &gcache) == 40);
  CHECK(verify_classification(*G, 4, &gcache) == 1);

  CHECK_THROWS_AS(verify_classification(*F, 1), std::invalid_argument);
}

TEST_CASE("rank-5 rule decides the split cases and defers the rest") {
  const FieldPtr F = Field::make(2, 6);
  // the full degree-5 pure case never occurs inside degree 6, but the
  // subfield-plus-line case does: F_16 is absent here, so build (4,1)
  // inside degree 8 instead
  const FieldPtr F8 = Field::make(2, 8);
  std::vector<Element> gens = F8->subfield_basis(4);
  gens.push_back(F8->gen());
  const Subspace V = canonicalize(*F8, gens);
  REQUIRE(V.r == 5);
  const std::optional<Partition> part = classify_rank5(dickson_eval(basis_of(*F8, V)));
  REQUIRE(part.has_value());
  CHECK(*part == Partition{4, 1});

  // a mixed sum is out of scope for the rule and falls back to the search
  std::vector<Element> mixed = F->subfield_basis(3);
  mixed.push_back(F->subfield_basis(2)[1]);
  mixed.push_back(F->gen());
  const Subspace M = canonicalize(*F, mixed);
  REQUIRE(M.r == 5);
  const auto [mp, decided] = classify(*F, M);
  CHECK_FALSE(decided);
  CHECK(mp == partition_of(*F, M));
}

TEST_CASE("classify dispatcher reports closed-form coverage") {
  const FieldPtr F = Field::make(2, 6);
  const Subspace f4 = canonicalize(*F, F->subfield_basis(2));
  const auto [part, decided] = classify(*F, f4);
  CHECK(part == Partition{2});
  CHECK(decided);
  CHECK_THROWS_AS(classify_rank3(dickson_eval(basis_of(*F, f4))),
                  std::invalid_argument);
}

TEST_CASE("conjectural generator families hold on the small sweep") {
  const FieldPtr F = Field::make(2, 6);
  for (const ConjectureId id :
       {ConjectureId::Fp3Module, ConjectureId::RankFourSubmodule, ConjectureId::Fp2Module}) {
    const ConjectureOutcome out = check_conjecture(id, *F);
    CHECK(out.checked == 63);
    CHECK(out.reverse_mismatches.empty());
    CHECK(out.forward_counterexamples.empty());
  }
  CHECK(conjecture_from_name("fp3") == ConjectureId::Fp3Module);
  CHECK(conjecture_name(ConjectureId::Fp2Module) == "fp2");
  CHECK_THROWS_AS(conjecture_from_name("bogus"), std::invalid_argument);
  const FieldPtr F5 = Field::make(2, 5);
  CHECK_THROWS_AS(check_conjecture(ConjectureId::Fp3Module, *F5),
                  std::invalid_argument);
}

TEST_CASE("conjecture generator values respond to structure") {
  const FieldPtr F = Field::make(2, 6);
  // rank 5 containing the cubic subfield: the first family must vanish
  std::vector<Element> gens = F->subfield_basis(3);
  gens.push_back(F->subfield_basis(2)[1]);
  gens.push_back(F->gen());
  const Subspace V = canonicalize(*F, gens);
  REQUIRE(V.r == 5);
  REQUIRE(conjecture_structure_holds(ConjectureId::Fp3Module, *F, V));
  for (const Element& val :
       conjecture_values(ConjectureId::Fp3Module, dickson_eval(basis_of(*F, V))))
    CHECK(val.is_zero());
}
