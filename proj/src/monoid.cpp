#include "dilation/monoid.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace dilation {

namespace {

BigInt big_pow(std::int64_t p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

void check_pr(std::int64_t p, int r) {
  if (p < 2) throw std::invalid_argument("exponent monoid: p must be >= 2");
  if (r < 2) throw std::invalid_argument("exponent monoid: r must be >= 2");
}

} // namespace

std::vector<BigInt> solution_weights(std::int64_t p, int r) {
  check_pr(p, r);
  std::vector<BigInt> w(static_cast<std::size_t>(r));
  for (int i = 1; i < r; ++i)
    w[static_cast<std::size_t>(i - 1)] = big_pow(p, r - i) * (big_pow(p, i) - 1);
  w[static_cast<std::size_t>(r - 1)] = big_pow(p, r) - 1;
  return w;
}

bool is_solution(const ExponentVec& v) {
  const int r = v.r();
  const auto w = solution_weights(v.p, r);
  BigInt lhs = 0;
  for (int i = 0; i < r - 1; ++i)
    lhs += BigInt(v.a[static_cast<std::size_t>(i)]) * w[static_cast<std::size_t>(i)];
  return lhs == BigInt(v.a[static_cast<std::size_t>(r - 1)]) * w[static_cast<std::size_t>(r - 1)];
}

std::int64_t height(const ExponentVec& v) {
  std::int64_t h = 0;
  for (int i = 0; i + 1 < v.r(); ++i) h += v.a[static_cast<std::size_t>(i)];
  return h - v.a.back();
}

TildeVec to_tilde(const ExponentVec& v) {
  const int r = v.r();
  if (r != 4 && r != 5)
    throw std::invalid_argument("to_tilde: defined for r in {4, 5}");
  const std::int64_t p = v.p;
  std::vector<std::int64_t> b(static_cast<std::size_t>(r), 0);
  auto exact_div = [&](std::int64_t x) {
    if (x % p != 0) throw std::invalid_argument("to_tilde: divisibility fails (not a solution)");
    return x / p;
  };
  b[static_cast<std::size_t>(r - 1)] = exact_div(v.a[static_cast<std::size_t>(r - 1)]);
  b[static_cast<std::size_t>(r - 2)] =
      exact_div(v.a[static_cast<std::size_t>(r - 2)] - b[static_cast<std::size_t>(r - 1)]);
  for (int i = r - 3; i >= 0; --i)
    b[static_cast<std::size_t>(i)] =
        exact_div(v.a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i + 1)]);
  return TildeVec{p, std::move(b)};
}

ExponentVec from_tilde(const TildeVec& t) {
  const int r = static_cast<int>(t.b.size());
  if (r != 4 && r != 5)
    throw std::invalid_argument("from_tilde: defined for r in {4, 5}");
  const std::int64_t p = t.p;
  std::vector<std::int64_t> a(static_cast<std::size_t>(r), 0);
  a[static_cast<std::size_t>(r - 1)] = p * t.b[static_cast<std::size_t>(r - 1)];
  a[static_cast<std::size_t>(r - 2)] =
      p * t.b[static_cast<std::size_t>(r - 2)] + t.b[static_cast<std::size_t>(r - 1)];
  for (int i = 0; i <= r - 3; ++i)
    a[static_cast<std::size_t>(i)] =
        p * t.b[static_cast<std::size_t>(i)] - t.b[static_cast<std::size_t>(i + 1)];
  return ExponentVec{p, std::move(a)};
}

PrimitiveEnumeration enumerate_primitive(std::int64_t p, int r, std::int64_t cap) {
  check_pr(p, r);
  if (cap < 0) throw std::invalid_argument("enumerate_primitive: cap must be >= 0");

  // weights in 64-bit; guard the whole search range against overflow
  const auto wb = solution_weights(p, r);
  if (wb.back() > BigInt(1) << 40)
    throw std::invalid_argument("enumerate_primitive: p^r too large for enumeration");
  std::vector<std::int64_t> w(wb.size());
  for (std::size_t i = 0; i < wb.size(); ++i) w[i] = wb[i].convert_to<std::int64_t>();
  const std::int64_t W = w.back();
  if (cap > 0 && W > ((std::int64_t{1} << 62) / cap) / r)
    throw std::invalid_argument("enumerate_primitive: cap too large for enumeration");

  PrimitiveEnumeration out;
  out.p = p;
  out.r = r;
  out.cap = cap;

  std::vector<std::int64_t> coords(static_cast<std::size_t>(r), 0);
  std::vector<ExponentVec> grade_hits;

  // depth-first fill of a_1..a_{r-1} against the remaining weighted sum
  std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t rem) {
    if (i == r - 1) {
      if (rem % w[static_cast<std::size_t>(r - 2)] == 0) {
        const std::int64_t last = rem / w[static_cast<std::size_t>(r - 2)];
        if (last <= cap) {
          coords[static_cast<std::size_t>(r - 2)] = last;
          ExponentVec v{p, coords};
          grade_hits.push_back(std::move(v));
        }
      }
      return;
    }
    const std::int64_t wi = w[static_cast<std::size_t>(i - 1)];
    const std::int64_t hi = std::min<std::int64_t>(cap, rem / wi);
    for (std::int64_t a = 0; a <= hi; ++a) {
      coords[static_cast<std::size_t>(i - 1)] = a;
      rec(i + 1, rem - a * wi);
    }
  };

  for (std::int64_t g = 1; g <= cap; ++g) {
    grade_hits.clear();
    coords.assign(static_cast<std::size_t>(r), 0);
    coords[static_cast<std::size_t>(r - 1)] = g;
    rec(1, g * W);
    // a solution decomposes iff it dominates an earlier primitive
    for (auto& v : grade_hits) {
      bool dominated = false;
      for (const auto& u : out.primitives) {
        bool leq = true;
        for (int k = 0; k < r; ++k)
          if (u.a[static_cast<std::size_t>(k)] > v.a[static_cast<std::size_t>(k)]) {
            leq = false;
            break;
          }
        if (leq) {
          dominated = true;
          break;
        }
      }
      if (!dominated) out.primitives.push_back(std::move(v));
    }
  }

  for (const auto& v : out.primitives)
    for (std::int64_t a : v.a)
      if (a == cap) out.touches_cap = true;
  return out;
}

namespace {

class FamilyBuilder {
 public:
  explicit FamilyBuilder(std::int64_t p) : p_(p) {}

  void add(std::vector<std::int64_t> a, const std::string& tag) {
    ExponentVec v{p_, std::move(a)};
    for (std::int64_t x : v.a)
      if (x < 0) throw std::logic_error("generating_family: negative coordinate");
    if (!is_solution(v)) throw std::logic_error("generating_family: member fails the weight equation");
    if (seen_.insert(v.a).second) members_.push_back(FamilyMember{std::move(v), tag});
  }

  std::vector<FamilyMember> take() { return std::move(members_); }

 private:
  std::int64_t p_;
  std::set<std::vector<std::int64_t>> seen_;
  std::vector<FamilyMember> members_;
};

} // namespace

std::vector<FamilyMember> generating_family(std::int64_t p, int r) {
  if (p < 2) throw std::invalid_argument("generating_family: p must be prime >= 2");
  const std::int64_t p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  FamilyBuilder fam(p);

  if (r == 3) {
    fam.add({p2 + p + 1, 0, p2}, "v1");
    fam.add({p, 1, p}, "v12");
    fam.add({0, p2 + p + 1, p2 + p}, "v2");
    for (std::int64_t i = 1; i <= p - 1; ++i)
      fam.add({p - i, i * (p + 1) + 1, (i + 1) * p}, "f");
  } else if (r == 4) {
    fam.add({p3 + p2 + p + 1, 0, 0, p3}, "v1");
    for (std::int64_t j = 0; j <= p; ++j)
      fam.add({(p + 1) * j, p2 + 1 - j * p, 0, p2}, "L");
    for (std::int64_t i = 0; i <= p; ++i)
      for (std::int64_t j = 0; j <= p2 - i * p; ++j)
        fam.add({i, j, p3 + (1 - i) * p2 + (1 - i - j) * (p + 1),
                 p3 + (1 - i) * p2 + (1 - i - j) * p},
                "Delta");
  } else if (r == 5) {
    fam.add({p4 + p3 + p2 + p + 1, 0, 0, 0, p4}, "v1");
    for (std::int64_t i = 0; i <= p; ++i)
      for (std::int64_t j = 0; j <= p2 - i * p; ++j)
        for (std::int64_t k = 0; k <= p3 - i * p2 - j * p; ++k) {
          const std::int64_t c =
              p4 + (1 - i) * p3 + (1 - i - j) * p2 + (1 - i - j - k) * p;
          fam.add({i, j, k, c + 1 - i - j - k, c}, "T1");
        }
    for (std::int64_t i = 0; i <= p; ++i)
      for (std::int64_t j = 0; j <= p * i; ++j)
        for (std::int64_t k = -p; k <= -1; ++k) {
          if (i + j + (p + 1) * k < 0) continue;
          fam.add({p - i, p * i - j, p * j - k, 1 + i + j + k * (p + 1),
                   p * (1 + i + j + k)},
                  "T2");
        }
    for (std::int64_t i = 0; i <= p - 1; ++i)
      for (std::int64_t j = 0; i + j <= p - 1; ++j)
        fam.add({j, i * (p + 1) + 1, p3 - j * (p2 + 1) - i * (p2 + p + 1), 0,
                 p2 * (p - i - j)},
                "D1");
    for (std::int64_t i = 1; i <= p; ++i)
      for (std::int64_t j = 1; i + j <= p + 1; ++j)
        fam.add({p * i - j, (j - 1) * (p + 1) + i, p * (p + 1 - (i + j)) + 1, 0, p2},
                "D2");
    for (std::int64_t i = 0; i <= p; ++i)
      for (std::int64_t j = 0; i + j <= p; ++j)
        fam.add({i, p4 + p2 + (p3 + 1) * (1 - (i + j)) + p * (1 - i), 0, j,
                 p4 + p3 * (1 - (i + j)) + p * j},
                "D3");
    for (std::int64_t i = 0; i <= p2 + p; ++i)
      fam.add({i, 0, (p2 + p - i) * (p2 + 1) + 1, 0, (p2 + p + 1 - i) * p2}, "L1");
    for (std::int64_t j = 0; j <= p2; ++j)
      fam.add({p3 + p2 + p - j * (p + 1), 1 + j * p, 0, 0, p3}, "L2");
  } else {
    throw std::invalid_argument("generating_family: closed forms exist for r in {3, 4, 5}");
  }
  return fam.take();
}

std::size_t family_cardinality(std::int64_t p, int r) {
  return generating_family(p, r).size();
}

} // namespace dilation
