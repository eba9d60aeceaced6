#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

#include "dilation/dickson.hpp"
#include "dilation/field.hpp"
#include "dilation/separating.hpp"
#include "dilation/subspace.hpp"

using namespace dilation;

namespace {

BigInt bpow(std::int64_t p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

// The defining search: smallest b >= 1 such that bW - c is a positive
// multiple of w_i. Written as a plain upward scan.
std::pair<BigInt, BigInt> scan_pair(std::int64_t p, int r, int i, const BigInt& c) {
  const BigInt W = bpow(p, r) - 1;
  const BigInt wi = bpow(p, r - i) * (bpow(p, i) - 1);
  for (BigInt b = 1; b <= W * W; ++b) {
    const BigInt num = b * W - c;
    if (num >= wi && num % wi == 0) return {num / wi, b};
  }
  throw std::runtime_error("scan_pair: no solution below the cap");
}

std::vector<std::int64_t> coords(const InvariantSpec& s) { return s.exponents.a; }

std::set<std::string> labels(const std::vector<InvariantSpec>& specs) {
  std::set<std::string> out;
  for (const InvariantSpec& s : specs) out.insert(s.label);
  return out;
}

} // namespace

TEST_CASE("pinned closed forms of the basic invariants") {
  for (const std::int64_t p : {2, 3, 5, 13}) {
    CHECK(coords(v_exponents(p, 2, 1)) == std::vector<std::int64_t>{p + 1, p});
    CHECK(coords(vij_exponents(p, 3, 1, 2)) == std::vector<std::int64_t>{p, 1, p});
    CHECK(coords(vij_exponents(p, 4, 1, 3)) ==
          std::vector<std::int64_t>{p, 0, 1, p});
    CHECK(coords(vij_exponents(p, 5, 1, 4)) ==
          std::vector<std::int64_t>{p, 0, 0, 1, p});
    CHECK(coords(uij_exponents(p, 4, 2, 3)) ==
          std::vector<std::int64_t>{0, p * p, p + 1, p * p + p});
  }
}

TEST_CASE("v_i exponents follow the gcd formula") {
  for (const std::int64_t p : {2, 3, 13}) {
    for (int r = 2; r <= 8; ++r) {
      for (int i = 1; i < r; ++i) {
        const InvariantSpec s = v_exponents(p, r, i);
        const BigInt W = bpow(p, r) - 1;
        const BigInt l = bpow(p, std::gcd(i, r)) - 1;
        REQUIRE(s.exponents.a.size() == static_cast<std::size_t>(r));
        CHECK(BigInt(s.exponents.a[static_cast<std::size_t>(i - 1)]) == W / l);
        CHECK(BigInt(s.exponents.a[static_cast<std::size_t>(r - 1)]) ==
              bpow(p, r - i) * (bpow(p, i) - 1) / l);
        CHECK(is_solution(s.exponents));
      }
    }
  }
}

TEST_CASE("minimal pairs match the upward scan") {
  for (const std::int64_t p : {2, 3}) {
    for (int r = 4; r <= 6; ++r) {
      for (int i = 1; i < r; ++i) {
        for (int j = 1; j < r; ++j) {
          if (i == j) continue;
          if (j % std::gcd(r, i) == 0) {
            const InvariantSpec s = vij_exponents(p, r, i, j);
            const auto [a, b] = scan_pair(p, r, i, bpow(p, r - j) * (bpow(p, j) - 1));
            CHECK(BigInt(s.exponents.a[static_cast<std::size_t>(i - 1)]) == a);
            CHECK(BigInt(s.exponents.a[static_cast<std::size_t>(r - 1)]) == b);
            CHECK(s.exponents.a[static_cast<std::size_t>(j - 1)] == 1);
            CHECK(is_solution(s.exponents));
          }
          if (std::gcd(r, i) == 2 && j % 2 == 1) {
            const InvariantSpec s = uij_exponents(p, r, i, j);
            const auto [a, b] =
                scan_pair(p, r, i, (p + 1) * bpow(p, r - j) * (bpow(p, j) - 1));
            CHECK(BigInt(s.exponents.a[static_cast<std::size_t>(i - 1)]) == a);
            CHECK(BigInt(s.exponents.a[static_cast<std::size_t>(r - 1)]) == b);
            CHECK(s.exponents.a[static_cast<std::size_t>(j - 1)] == p + 1);
            CHECK(is_solution(s.exponents));
          }
        }
      }
    }
  }
}

TEST_CASE("set shapes by rank") {
  CHECK(separating_set(2, 2).size() == 1);
  CHECK(separating_set(2, 3).size() == 3);
  CHECK(separating_set(2, 4).size() == 6);
  CHECK(separating_set(2, 5).size() == 10);
  CHECK(separating_set(2, 7).size() == 21);
  CHECK(separating_set(3, 4).size() == 6);

  CHECK(labels(separating_set(2, 4)) ==
        std::set<std::string>{"v_1", "v_2", "v_3", "v_1_2", "v_1_3", "v_3_2"});
  CHECK(labels(separating_set(2, 5)) ==
        std::set<std::string>{"v_1", "v_2", "v_3", "v_4", "v_1_2", "v_1_3",
                              "v_1_4", "v_2_3", "v_2_4", "v_3_4"});
  const auto l6 = labels(separating_set(2, 6));
  CHECK(l6.count("u_2_3") == 1);
  CHECK(l6.count("u_4_3") == 1);
  CHECK(l6.count("v_5_4") == 1);
  CHECK(l6.count("v_2_4") == 1);
  CHECK(l6.count("v_2_3") == 0);

  for (int r = 2; r <= 11; ++r) {
    const std::vector<InvariantSpec> specs = separating_set(2, r);
    CHECK(labels(specs).size() == specs.size());
    for (const InvariantSpec& s : specs) CHECK(is_solution(s.exponents));
  }
}

TEST_CASE("existence preconditions are enforced") {
  CHECK_THROWS_AS(vij_exponents(2, 4, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(vij_exponents(2, 6, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(uij_exponents(2, 4, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(uij_exponents(2, 4, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(v_exponents(2, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(v_exponents(2, 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(separating_set(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(separating_set(2, 12), std::invalid_argument);
}

TEST_CASE("evaluation reproduces the mixed-subfield landmark values") {
  const FieldPtr F = Field::make(2, 6);
  std::vector<Element> gens = F->subfield_basis(3);
  for (const Element& x : F->subfield_basis(2)) gens.push_back(x);
  const Subspace V = canonicalize(*F, gens);
  REQUIRE(V.r == 4);
  const Basis basis = basis_of(*F, V);

  CHECK(eval_invariant(vij_exponents(2, 4, 1, 2), basis).is_zero());
  CHECK(eval_invariant(vij_exponents(2, 4, 1, 3), basis) == F->one());
  CHECK(eval_invariant(v_exponents(2, 4, 1), basis) == F->one()); // -1 in char 2
}

TEST_CASE("evaluation rejects dependent tuples") {
  const FieldPtr F = Field::make(2, 4);
  const Basis dep = {F->gen(), F->gen()};
  CHECK_THROWS_AS(eval_invariant(v_exponents(2, 2, 1), dep), std::invalid_argument);
}

TEST_CASE("invariants are blind to dilation and basis choice") {
  std::mt19937_64 rng(1234);
  for (const auto& [p, n, r] :
       {std::tuple<std::int64_t, int, int>{2, 6, 2}, {2, 6, 3}, {3, 4, 2}, {3, 4, 3}}) {
    const FieldPtr F = Field::make(p, n);
    std::uniform_int_distribution<std::uint64_t> pick(1, F->order() - 1);
    const std::vector<InvariantSpec> specs = separating_set(p, r);
    for (int trial = 0; trial < 6; ++trial) {
      Basis basis;
      do {
        basis.clear();
        for (int k = 0; k < r; ++k) basis.push_back(F->from_index(pick(rng)));
      } while (rank(basis) != r);
      const Element alpha = F->from_index(pick(rng));
      Basis scaled;
      for (const Element& b : basis) scaled.push_back(alpha * b);
      Basis mixed = basis;
      mixed[0] = mixed[0] + mixed[r - 1];
      for (const InvariantSpec& s : specs) {
        const Element base = eval_invariant(s, basis);
        CHECK(eval_invariant(s, scaled) == base);
        CHECK(eval_invariant(s, mixed) == base);
      }
    }
  }
}

TEST_CASE("orbit fingerprints separate on small desk fields") {
  for (const auto& [p, n, r] :
       {std::tuple<std::int64_t, int, int>{2, 4, 2}, {2, 4, 3}}) {
    const FieldPtr F = Field::make(p, n);
    const SeparatingReport rep = separation_check(*F, r, 99);
    CHECK(rep.orbit_count == dilation_orbit_reps(*F, r).entries.size());
    CHECK(rep.unseparated_pairs.empty());
    CHECK(rep.dilation_invariance_ok);
    CHECK(rep.fingerprints.size() == rep.orbit_count);
    CHECK(rep.invariant_labels.size() == separating_set(p, r).size());
  }
}
