#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dilation/dickson.hpp"
#include "dilation/subspace.hpp"

namespace dilation {

// Criterion-based structure tests for additive subgroups, each paired with a
// direct check so the two routes can be compared point by point.

// Value v_1j used by the codimension-one and chain tests, with the convention
// v_1r = 1. Requires d_r != 0.
Element v1j_value(const DicksonVector& dv, int j);

// Scalar multiplication closure: is V a module over the subfield of order p^s?
// The criterion inspects which Dickson coordinates vanish; the direct route
// multiplies basis vectors by subfield scalars and tests containment.
bool fq_space_criterion(const DicksonVector& dv, int s);
bool fq_space_direct(const Field& F, const Subspace& V, int s);

// Composition identity: for V = (subfield of order p^s) + W with trivial
// intersection, the rank-r invariants of V are differences of invariants of
// the omega_s image of W. Returns true when every coordinate matches.
bool composition_identity_holds(const Field& F, const Subspace& W, int s);

// Codimension-one test: rank s+1 subgroup splits as subfield + line.
bool codim1_criterion(const DicksonVector& dv);
bool codim1_direct(const Field& F, const Subspace& V);

// Chain test for rank r splitting as subfield of order p^(r-1) plus a line,
// using the full equation list from the inductive argument. The direct route
// scans dilation factors and is available only when (r+1) divides n; it
// returns nullopt otherwise.
bool embedding_criterion(const DicksonVector& dv);
std::optional<bool> embedding_direct(const Field& F, const Subspace& V);

// Rank-4 test for containing a dilated copy of the order-p^2 subfield.
Element rank4_h_value(const DicksonVector& dv);
bool rank4_contains_fp2_direct(const Field& F, const Subspace& V);

// Closed-form partition classification for ranks 2..4 and the partial rank-5
// rule. classify_* throw std::invalid_argument on a rank mismatch;
// classify_rank5 returns nullopt on the cases the rule leaves open.
Partition classify_rank2(const DicksonVector& dv);
Partition classify_rank3(const DicksonVector& dv);
Partition classify_rank4(const DicksonVector& dv);
std::optional<Partition> classify_rank5(const DicksonVector& dv);

// Dispatcher: closed-form rule when one applies, otherwise the recursive
// decomposition search. The bool reports whether the closed form decided.
std::pair<Partition, bool> classify(const Field& F, const Subspace& V,
                                    PartitionCache* cache = nullptr);

// Conjectural generator families evaluated on rank-5 subgroups.
enum class ConjectureId { Fp3Module, RankFourSubmodule, Fp2Module };

ConjectureId conjecture_from_name(const std::string& name);
std::string conjecture_name(ConjectureId id);

std::vector<Element> conjecture_values(ConjectureId id, const DicksonVector& dv);
bool conjecture_structure_holds(ConjectureId id, const Field& F, const Subspace& V);

struct ConjectureOutcome {
  std::uint64_t checked = 0;
  // all generators vanish but the structure is absent
  std::vector<Subspace> reverse_mismatches;
  // the structure is present but some generator is nonzero
  std::vector<Subspace> forward_counterexamples;
};

ConjectureOutcome check_conjecture(ConjectureId id, const Field& F);

// Exhaustive two-route comparisons used by the verify driver. Each returns
// the number of subgroups checked and throws std::logic_error with a witness
// description on the first disagreement.
std::uint64_t verify_fq_space(const Field& F, int s, int r);
std::uint64_t verify_composition(const Field& F);
std::uint64_t verify_codim1(const Field& F, int s);
std::uint64_t verify_embedding(const Field& F, int r);
std::uint64_t verify_rank4_fp2(const Field& F);
std::uint64_t verify_classification(const Field& F, int r,
                                    PartitionCache* cache = nullptr);

} // namespace dilation
