#include "dilation/separating.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dilation {

namespace {

BigInt big_pow(std::int64_t p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt t = 0, new_t = 1, r = m, new_r = a % m;
  if (new_r < 0) new_r += m;
  while (new_r != 0) {
    const BigInt q = r / new_r;
    BigInt tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  if (t < 0) t += m;
  return t;
}

void check_indices(std::int64_t p, int r, int i, int j, bool pair) {
  if (p < 2 || r < 2) throw std::invalid_argument("invariant: need p >= 2, r >= 2");
  if (i < 1 || i >= r) throw std::invalid_argument("invariant: i out of range");
  if (pair) {
    if (j < 1 || j >= r) throw std::invalid_argument("invariant: j out of range");
    if (i == j) throw std::invalid_argument("invariant: i and j must differ");
  }
}

std::int64_t to_i64(const BigInt& x, const char* what) {
  if (x > (BigInt(1) << 62)) throw std::overflow_error(what);
  return x.convert_to<std::int64_t>();
}

// Minimal positive (a, b) with c = b (p^r - 1) - a p^(r-i)(p^i - 1);
// equivalent to scanning b upward from 1, realized by solving the
// congruence b W = c (mod w_i) directly. Throws when no b below
// (p^r - 1)^2 exists (i.e. the congruence is unsolvable).
std::pair<std::int64_t, std::int64_t> minimal_pair(std::int64_t p, int r, int i,
                                                   const BigInt& c) {
  const BigInt W = big_pow(p, r) - 1;
  const BigInt wi = big_pow(p, r - i) * (big_pow(p, i) - 1);
  const BigInt g = boost::multiprecision::gcd(W, wi);
  if (c % g != 0) throw std::invalid_argument("invariant: weight equation unsolvable");
  const BigInt period = wi / g;
  BigInt b = (c / g % period) * mod_inverse(W / g, period) % period;
  if (b == 0) b = period;
  // the congruence fixes b mod period; step up until a = (bW - c)/w_i >= 1
  while (b * W - c < wi) {
    b += period;
    if (b > W * W) throw std::invalid_argument("invariant: search cap exceeded");
  }
  const BigInt a = (b * W - c) / wi;
  if ((b * W - c) % wi != 0)
    throw std::logic_error("invariant: minimal pair computation failed");
  return {to_i64(a, "invariant exponent a"), to_i64(b, "invariant exponent b")};
}

InvariantSpec finish(InvariantSpec spec) {
  if (!is_solution(spec.exponents))
    throw std::logic_error("invariant: exponent vector is not weight-zero");
  return spec;
}

} // namespace

InvariantSpec v_exponents(std::int64_t p, int r, int i) {
  check_indices(p, r, i, 0, false);
  const BigInt W = big_pow(p, r) - 1;
  const BigInt wi = big_pow(p, i) - 1;
  const BigInt l = boost::multiprecision::gcd(wi, W);
  InvariantSpec spec;
  spec.kind = InvariantKind::Vi;
  spec.p = p;
  spec.r = r;
  spec.i = i;
  spec.label = "v_" + std::to_string(i);
  spec.exponents.p = p;
  spec.exponents.a.assign(static_cast<std::size_t>(r), 0);
  spec.exponents.a[static_cast<std::size_t>(i - 1)] = to_i64(W / l, "v_i exponent");
  spec.exponents.a[static_cast<std::size_t>(r - 1)] =
      to_i64(big_pow(p, r - i) * wi / l, "v_i exponent");
  return finish(std::move(spec));
}

InvariantSpec vij_exponents(std::int64_t p, int r, int i, int j) {
  check_indices(p, r, i, j, true);
  if (j % std::gcd(r, i) != 0)
    throw std::invalid_argument("v_ij: exists only when gcd(r, i) divides j");
  const auto [a, b] = minimal_pair(p, r, i, big_pow(p, r - j) * (big_pow(p, j) - 1));
  InvariantSpec spec;
  spec.kind = InvariantKind::Vij;
  spec.p = p;
  spec.r = r;
  spec.i = i;
  spec.j = j;
  spec.label = "v_" + std::to_string(i) + "_" + std::to_string(j);
  spec.exponents.p = p;
  spec.exponents.a.assign(static_cast<std::size_t>(r), 0);
  spec.exponents.a[static_cast<std::size_t>(j - 1)] = 1;
  spec.exponents.a[static_cast<std::size_t>(i - 1)] = a;
  spec.exponents.a[static_cast<std::size_t>(r - 1)] = b;
  return finish(std::move(spec));
}

InvariantSpec uij_exponents(std::int64_t p, int r, int i, int j) {
  check_indices(p, r, i, j, true);
  if (std::gcd(r, i) != 2)
    throw std::invalid_argument("u_ij: requires gcd(r, i) = 2");
  if (j % 2 == 0) throw std::invalid_argument("u_ij: requires odd j");
  const auto [a, b] =
      minimal_pair(p, r, i, BigInt(p + 1) * big_pow(p, r - j) * (big_pow(p, j) - 1));
  InvariantSpec spec;
  spec.kind = InvariantKind::Uij;
  spec.p = p;
  spec.r = r;
  spec.i = i;
  spec.j = j;
  spec.label = "u_" + std::to_string(i) + "_" + std::to_string(j);
  spec.exponents.p = p;
  spec.exponents.a.assign(static_cast<std::size_t>(r), 0);
  spec.exponents.a[static_cast<std::size_t>(j - 1)] = p + 1;
  spec.exponents.a[static_cast<std::size_t>(i - 1)] = a;
  spec.exponents.a[static_cast<std::size_t>(r - 1)] = b;
  return finish(std::move(spec));
}

std::vector<InvariantSpec> separating_set(std::int64_t p, int r) {
  if (r < 2 || r > 11)
    throw std::invalid_argument("separating_set: supported for 2 <= r <= 11");
  std::vector<InvariantSpec> out;
  auto add_v = [&](int i) { out.push_back(v_exponents(p, r, i)); };
  auto add_vij = [&](int i, int j) { out.push_back(vij_exponents(p, r, i, j)); };
  auto add_uij = [&](int i, int j) { out.push_back(uij_exponents(p, r, i, j)); };

  if (r == 2) {
    add_v(1);
  } else if (r == 3 || r == 5 || r == 7 || r == 11) {
    for (int i = 1; i < r; ++i) add_v(i);
    for (int i = 1; i < r; ++i)
      for (int j = i + 1; j < r; ++j) add_vij(i, j);
  } else if (r == 4) {
    add_v(1);
    add_v(2);
    add_v(3);
    add_vij(1, 2);
    add_vij(1, 3);
    add_vij(3, 2);
  } else if (r == 6) {
    for (int i = 1; i <= 5; ++i) add_v(i);
    add_vij(1, 2);
    add_vij(1, 3);
    add_vij(1, 4);
    add_vij(1, 5);
    add_vij(5, 2);
    add_vij(5, 3);
    add_vij(5, 4);
    add_vij(2, 4);
    add_uij(2, 3);
    add_uij(4, 3);
  } else if (r == 8) {
    for (int i = 1; i <= 7; ++i) add_v(i);
    for (int i = 1; i <= 7; i += 2)
      for (int j = i + 1; j <= 7; ++j) add_vij(i, j);
    add_vij(2, 4);
    add_vij(2, 6);
    add_vij(6, 4);
  } else if (r == 9) {
    for (int i = 1; i <= 8; ++i) add_v(i);
    for (int i = 1; i <= 8; ++i) {
      if (i == 3 || i == 6) continue;
      for (int j = i + 1; j <= 8; ++j) add_vij(i, j);
    }
    add_vij(3, 6);
  } else { // r == 10
    for (int i = 1; i <= 9; ++i) add_v(i);
    for (int i : {1, 3, 7, 9})
      for (int j = i + 1; j <= 9; ++j) add_vij(i, j);
    for (int i = 2; i <= 8; i += 2)
      for (int j = i + 2; j <= 8; j += 2) add_vij(i, j);
    for (int i = 2; i <= 8; i += 2) add_uij(i, 5);
  }
  return out;
}

Element eval_invariant(const InvariantSpec& spec, const DicksonVector& dv) {
  if (dv.r != spec.r)
    throw std::invalid_argument("eval_invariant: rank mismatch");
  const Element dr = dv.get(dv.r);
  if (dr.is_zero())
    throw std::invalid_argument("eval_invariant: top invariant vanishes (dependent basis)");
  Element acc = dv.field->one();
  for (int i = 1; i < spec.r; ++i) {
    const std::int64_t e = spec.exponents.a[static_cast<std::size_t>(i - 1)];
    if (e == 0) continue;
    const Element di = dv.get(i);
    if (di.is_zero()) return dv.field->zero();
    acc = acc * di.pow(e);
  }
  return acc * dr.pow(-spec.exponents.a[static_cast<std::size_t>(spec.r - 1)]);
}

Element eval_invariant(const InvariantSpec& spec, const Basis& basis) {
  if (static_cast<int>(basis.size()) != spec.r)
    throw std::invalid_argument("eval_invariant: basis size must equal r");
  return eval_invariant(spec, dickson_eval(basis));
}

SeparatingReport separation_check(const Field& F, int r, std::uint64_t seed) {
  SeparatingReport rep;
  rep.p = F.p();
  rep.n = F.n();
  rep.r = r;
  rep.seed = seed;
  const std::vector<InvariantSpec> specs = separating_set(F.p(), r);
  for (const auto& s : specs) rep.invariant_labels.push_back(s.label);

  const OrbitTable orbits = dilation_orbit_reps(F, r);
  rep.orbit_count = orbits.entries.size();

  auto fingerprint = [&](const Subspace& V) {
    const DicksonVector dv = dickson_eval(basis_of(F, V));
    std::vector<std::string> fp;
    fp.reserve(specs.size());
    for (const auto& s : specs) fp.push_back(eval_invariant(s, dv).str());
    return fp;
  };

  std::map<std::vector<std::string>, std::size_t> first_seen;
  for (std::size_t k = 0; k < orbits.entries.size(); ++k) {
    auto fp = fingerprint(orbits.entries[k].rep);
    auto [it, fresh] = first_seen.try_emplace(fp, k);
    if (!fresh) rep.unseparated_pairs.emplace_back(it->second, k);
    rep.fingerprints.emplace_back(orbits.entries[k].rep.row_codes(F.p()), std::move(fp));
  }

  // invariance spot check: one random second member per orbit
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, F.order() - 1);
  for (std::size_t k = 0; k < orbits.entries.size(); ++k) {
    const Subspace other =
        dilate(F, F.from_index(pick(rng)), orbits.entries[k].rep);
    if (fingerprint(other) != rep.fingerprints[k].second) {
      rep.dilation_invariance_ok = false;
      break;
    }
  }

  rep.note =
      "a dilation factor relating two subgroups of this field is a ratio of nonzero "
      "field elements, so in-field orbit equivalence matches abstract equivalence; "
      "any collision indicates a defect in the invariant list";
  return rep;
}

} // namespace dilation
