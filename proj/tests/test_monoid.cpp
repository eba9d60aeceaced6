#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"

#include "dilation/monoid.hpp"

using namespace dilation;

namespace {

// Brute-force reference: every solution with coordinates <= cap, found by
// direct loops over the weight equation, and primitivity by explicit
// two-part decomposition search.
std::vector<ExponentVec> brute_solutions(std::int64_t p, int r, std::int64_t cap) {
  const std::vector<BigInt> w = solution_weights(p, r);
  std::vector<ExponentVec> out;
  std::vector<std::int64_t> a(static_cast<std::size_t>(r), 0);
  std::function<void(int, BigInt)> go = [&](int idx, BigInt acc) {
    if (idx == r - 1) {
      // acc = sum a_i w_i must equal a_r W
      if (acc == 0) return; // exclude the zero vector
      if (acc % w.back() != 0) return;
      const BigInt ar = acc / w.back();
      if (ar < 1 || ar > cap) return;
      a.back() = static_cast<std::int64_t>(ar);
      out.push_back(ExponentVec{p, a});
      return;
    }
    for (std::int64_t v = 0; v <= cap; ++v) {
      a[static_cast<std::size_t>(idx)] = v;
      go(idx + 1, acc + v * w[static_cast<std::size_t>(idx)]);
    }
    a[static_cast<std::size_t>(idx)] = 0;
  };
  go(0, BigInt(0));
  return out;
}

bool leq_pointwise(const ExponentVec& u, const ExponentVec& v) {
  for (int i = 0; i < u.r(); ++i)
    if (u.a[static_cast<std::size_t>(i)] > v.a[static_cast<std::size_t>(i)]) return false;
  return true;
}

std::vector<ExponentVec> brute_primitives(std::int64_t p, int r, std::int64_t cap) {
  const std::vector<ExponentVec> sols = brute_solutions(p, r, cap);
  std::vector<ExponentVec> out;
  for (const ExponentVec& v : sols) {
    bool prim = true;
    for (const ExponentVec& u : sols) {
      if (u == v || !leq_pointwise(u, v)) continue;
      ExponentVec rest{p, {}};
      for (int i = 0; i < r; ++i)
        rest.a.push_back(v.a[static_cast<std::size_t>(i)] - u.a[static_cast<std::size_t>(i)]);
      if (is_solution(rest)) {
        prim = false;
        break;
      }
    }
    if (prim) out.push_back(v);
  }
  return out;
}

std::set<std::vector<std::int64_t>> coord_set(const std::vector<ExponentVec>& xs) {
  std::set<std::vector<std::int64_t>> out;
  for (const ExponentVec& v : xs) out.insert(v.a);
  return out;
}

std::set<std::vector<std::int64_t>> family_coords(std::int64_t p, int r) {
  std::set<std::vector<std::int64_t>> out;
  for (const FamilyMember& m : generating_family(p, r)) out.insert(m.v.a);
  return out;
}

} // namespace

TEST_CASE("the worked weight equation instance") {
  // 1*4 + 4*6 = 28 = 4*7 at p = 2, r = 3
  CHECK(is_solution(ExponentVec{2, {1, 4, 4}}));
  CHECK_FALSE(is_solution(ExponentVec{2, {1, 4, 5}}));
  CHECK_FALSE(is_solution(ExponentVec{2, {1, 3, 4}}));
  const std::vector<BigInt> w = solution_weights(2, 3);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == 4);
  CHECK(w[1] == 6);
  CHECK(w[2] == 7);
}

TEST_CASE("pinned primitive list at p=2, r=3, cap 14") {
  const PrimitiveEnumeration en = enumerate_primitive(2, 3, 14);
  REQUIRE(en.primitives.size() == 4);
  CHECK(en.primitives[0].a == std::vector<std::int64_t>{2, 1, 2});
  CHECK(en.primitives[1].a == std::vector<std::int64_t>{1, 4, 4});
  CHECK(en.primitives[2].a == std::vector<std::int64_t>{7, 0, 4});
  CHECK(en.primitives[3].a == std::vector<std::int64_t>{0, 7, 6});
  CHECK_FALSE(en.touches_cap);
}

TEST_CASE("primitive enumeration matches the brute-force oracle") {
  for (const auto& [p, r, cap] :
       {std::tuple<std::int64_t, int, std::int64_t>{2, 3, 14}, {3, 3, 20}, {2, 4, 20}}) {
    const PrimitiveEnumeration en = enumerate_primitive(p, r, cap);
    CHECK(coord_set(en.primitives) == coord_set(brute_primitives(p, r, cap)));
  }
}

TEST_CASE("primitives are sorted by grade then lexicographically") {
  const PrimitiveEnumeration en = enumerate_primitive(2, 4, 30);
  for (std::size_t k = 1; k < en.primitives.size(); ++k) {
    const auto& prev = en.primitives[k - 1].a;
    const auto& cur = en.primitives[k].a;
    CHECK((prev.back() < cur.back() || (prev.back() == cur.back() && prev < cur)));
  }
}

TEST_CASE("every nonzero solution has positive height") {
  for (const auto& [p, r, cap] :
       {std::tuple<std::int64_t, int, std::int64_t>{2, 3, 14}, {2, 4, 20}, {3, 3, 20}}) {
    for (const ExponentVec& v : brute_solutions(p, r, cap)) CHECK(height(v) >= 1);
  }
}

TEST_CASE("height-one solutions are primitive") {
  for (const auto& [p, r, cap] :
       {std::tuple<std::int64_t, int, std::int64_t>{2, 3, 14}, {2, 4, 20}}) {
    const auto prim = coord_set(enumerate_primitive(p, r, cap).primitives);
    for (const ExponentVec& v : brute_solutions(p, r, cap))
      if (height(v) == 1) CHECK(prim.count(v.a) == 1);
  }
}

TEST_CASE("family members are distinct solutions with the stated sizes") {
  for (const std::int64_t p : {2, 3, 5}) {
    for (const int r : {3, 4, 5}) {
      const std::vector<FamilyMember> fam = generating_family(p, r);
      CHECK(fam.size() == family_cardinality(p, r));
      std::set<std::vector<std::int64_t>> seen;
      for (const FamilyMember& m : fam) {
        CHECK(is_solution(m.v));
        CHECK(height(m.v) >= 1);
        CHECK_FALSE(m.tag.empty());
        seen.insert(m.v.a);
      }
      CHECK(seen.size() == fam.size());
    }
  }
  CHECK(generating_family(2, 4).size() == 13);
}

TEST_CASE("closed-form members carry the expected heights") {
  for (const std::int64_t p : {2, 3, 5}) {
    for (const int r : {3, 4, 5}) {
      std::int64_t geom = 0; // (p^(r-1) - 1)/(p - 1)
      std::int64_t q = 1;
      for (int i = 0; i < r - 1; ++i) {
        geom += q;
        q *= p;
      }
      bool found_v1 = false;
      for (const FamilyMember& m : generating_family(p, r)) {
        if (m.tag == "v1") {
          found_v1 = true;
          CHECK(height(m.v) == geom);
        }
      }
      CHECK(found_v1);
    }
  }
}

TEST_CASE("enumeration within the cap reproduces the family") {
  CHECK(coord_set(enumerate_primitive(2, 3, 14).primitives) == family_coords(2, 3));
  CHECK(coord_set(enumerate_primitive(3, 3, 39).primitives) == family_coords(3, 3));
}

TEST_CASE("tilde coordinates round trip and satisfy the constraints") {
  for (const std::int64_t p : {2, 3, 5}) {
    for (const int r : {4, 5}) {
      for (const FamilyMember& m : generating_family(p, r)) {
        const TildeVec t = to_tilde(m.v);
        REQUIRE(t.b.size() == static_cast<std::size_t>(r));
        const ExponentVec back = from_tilde(t);
        CHECK(back == m.v);
        std::int64_t sum = 0;
        for (int i = 0; i < r - 1; ++i) sum += t.b[static_cast<std::size_t>(i)];
        CHECK(sum == t.b.back());
        CHECK(t.b[0] == height(m.v));
        for (int i = 0; i + 2 < r; ++i)
          CHECK(p * t.b[static_cast<std::size_t>(i)] >= t.b[static_cast<std::size_t>(i + 1)]);
        CHECK(p * t.b[static_cast<std::size_t>(r - 2)] >= -t.b.back());
        CHECK(t.b.back() > 0);
      }
    }
  }
}

TEST_CASE("tilde transform also covers plain enumerated solutions") {
  for (const ExponentVec& v : brute_solutions(2, 4, 20)) {
    const ExponentVec back = from_tilde(to_tilde(v));
    CHECK(back == v);
  }
}

TEST_CASE("monoid argument validation") {
  CHECK_THROWS_AS(to_tilde(ExponentVec{2, {1, 4, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(from_tilde(TildeVec{2, {1, 1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_primitive(2, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_primitive(2, 3, -1), std::invalid_argument);
  CHECK_THROWS_AS(generating_family(2, 6), std::invalid_argument);
  CHECK_THROWS_AS(solution_weights(1, 3), std::invalid_argument);
}
