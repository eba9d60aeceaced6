#include "dilation/subspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "dilation/fp_linalg.hpp"

namespace dilation {

namespace {

std::vector<std::uint64_t> codes_of_rows(const std::vector<std::vector<int>>& rows,
                                         std::int64_t p) {
  std::vector<std::uint64_t> codes;
  codes.reserve(rows.size());
  for (const auto& row : rows) {
    std::uint64_t c = 0;
    for (std::size_t i = row.size(); i-- > 0;)
      c = c * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(row[i]);
    codes.push_back(c);
  }
  return codes;
}

void check_element_field(const Field& F, const Element& e) {
  if (!e.valid() || !e.field()->same_as(F))
    throw std::invalid_argument("subspace: element from a different field");
}

// All reduced row echelon matrices with `r` pivots in `dim` columns, one
// callback per matrix, in pivot-pattern-then-odometer order.
void for_each_rref(int dim, int r, std::int64_t p,
                   const std::function<bool(const std::vector<std::vector<int>>&)>& fn) {
  if (r < 0 || r > dim) return;
  if (r == 0) {
    fn({});
    return;
  }
  std::vector<int> pivots(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) pivots[static_cast<std::size_t>(i)] = i;

  bool more_patterns = true;
  while (more_patterns) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(dim), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::pair<int, int>> free_pos; // (row, col)
    for (int i = 0; i < r; ++i)
      for (int j = pivots[static_cast<std::size_t>(i)] + 1; j < dim; ++j)
        if (!is_pivot[static_cast<std::size_t>(j)]) free_pos.emplace_back(i, j);

    std::vector<std::vector<int>> m(static_cast<std::size_t>(r),
                                    std::vector<int>(static_cast<std::size_t>(dim), 0));
    for (int i = 0; i < r; ++i)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] = 1;

    std::vector<int> odo(free_pos.size(), 0);
    bool more_fill = true;
    while (more_fill) {
      for (std::size_t k = 0; k < free_pos.size(); ++k)
        m[static_cast<std::size_t>(free_pos[k].first)]
         [static_cast<std::size_t>(free_pos[k].second)] = odo[k];
      if (!fn(m)) return;
      more_fill = false;
      for (std::size_t k = 0; k < odo.size(); ++k) {
        if (odo[k] + 1 < p) {
          ++odo[k];
          std::fill(odo.begin(), odo.begin() + static_cast<std::ptrdiff_t>(k), 0);
          more_fill = true;
          break;
        }
      }
    }

    // next pivot combination in lexicographic order
    more_patterns = false;
    for (int i = r - 1; i >= 0; --i) {
      if (pivots[static_cast<std::size_t>(i)] < dim - (r - i)) {
        ++pivots[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < r; ++k)
          pivots[static_cast<std::size_t>(k)] = pivots[static_cast<std::size_t>(k - 1)] + 1;
        more_patterns = true;
        break;
      }
    }
  }
}

} // namespace

std::vector<std::uint64_t> Subspace::row_codes(std::int64_t p) const {
  return codes_of_rows(rows, p);
}

bool SubspaceLess::operator()(const Subspace& a, const Subspace& b) const {
  if (a.r != b.r) return a.r < b.r;
  return a.row_codes(p) < b.row_codes(p);
}

Subspace canonicalize(const Field& F, const std::vector<Element>& gens) {
  fp::Mat rows;
  rows.reserve(gens.size());
  for (const auto& e : gens) {
    check_element_field(F, e);
    rows.push_back(e.digits());
  }
  const int rk = fp::rref(rows, F.p());
  rows.resize(static_cast<std::size_t>(rk));
  Subspace V;
  V.r = rk;
  V.n = F.n();
  V.rows = std::move(rows);
  return V;
}

Basis basis_of(const Field& F, const Subspace& V) {
  Basis b;
  b.reserve(V.rows.size());
  for (const auto& row : V.rows) b.push_back(F.from_digits(row));
  return b;
}

bool contains(const Field& F, const Subspace& V, const Element& x) {
  check_element_field(F, x);
  return fp::in_span(x.digits(), V.rows, F.p());
}

bool subspace_leq(const Field& F, const Subspace& A, const Subspace& B) {
  for (const auto& row : A.rows)
    if (!fp::in_span(row, B.rows, F.p())) return false;
  return true;
}

std::vector<Element> elements_of(const Field& F, const Subspace& V) {
  return subgroup_elements(basis_of(F, V));
}

std::vector<Subspace> enumerate_subspaces(const Field& F, int r) {
  if (r < 0 || r > F.n()) throw std::invalid_argument("enumerate_subspaces: bad rank");
  std::vector<Subspace> out;
  for_each_subspace(F, r, [&](const Subspace& V) {
    out.push_back(V);
    return true;
  });
  std::sort(out.begin(), out.end(), [&](const Subspace& a, const Subspace& b) {
    return SubspaceLess{F.p()}(a, b);
  });
  return out;
}

void for_each_subspace(const Field& F, int r,
                       const std::function<bool(const Subspace&)>& fn) {
  if (r < 0 || r > F.n()) throw std::invalid_argument("for_each_subspace: bad rank");
  for_each_rref(F.n(), r, F.p(), [&](const std::vector<std::vector<int>>& rows) {
    Subspace V;
    V.r = r;
    V.n = F.n();
    V.rows = rows;
    return fn(V);
  });
}

std::vector<Subspace> subspaces_of(const Field& F, const Subspace& V, int s) {
  if (s < 0 || s > V.r) return {};
  const Basis b = basis_of(F, V);
  std::vector<Subspace> out;
  for_each_rref(V.r, s, F.p(), [&](const std::vector<std::vector<int>>& coord_rows) {
    std::vector<Element> gens;
    gens.reserve(coord_rows.size());
    for (const auto& row : coord_rows) {
      Element g = F.zero();
      for (int k = 0; k < V.r; ++k)
        if (row[static_cast<std::size_t>(k)] != 0)
          g = g + b[static_cast<std::size_t>(k)] *
                      F.from_int(row[static_cast<std::size_t>(k)]);
      gens.push_back(g);
    }
    Subspace U = canonicalize(F, gens);
    if (U.r != s) throw std::logic_error("subspaces_of: rank collapsed");
    out.push_back(std::move(U));
    return true;
  });
  std::sort(out.begin(), out.end(), [&](const Subspace& a, const Subspace& b2) {
    return SubspaceLess{F.p()}(a, b2);
  });
  return out;
}

Subspace dilate(const Field& F, const Element& alpha, const Subspace& V) {
  check_element_field(F, alpha);
  if (alpha.is_zero()) throw std::invalid_argument("dilate: alpha must be nonzero");
  std::vector<Element> gens;
  gens.reserve(V.rows.size());
  for (const auto& row : V.rows) gens.push_back(F.from_digits(row) * alpha);
  Subspace W = canonicalize(F, gens);
  if (W.r != V.r) throw std::logic_error("dilate: rank changed");
  return W;
}

std::uint64_t stabilizer_order(const Field& F, const Subspace& V) {
  const Basis b = basis_of(F, V);
  std::vector<std::uint64_t> stab{0};
  for (std::uint64_t idx = 1; idx < F.order(); ++idx) {
    const Element alpha = F.from_index(idx);
    bool ok = true;
    for (const auto& e : b) {
      if (!contains(F, V, e * alpha)) {
        ok = false;
        break;
      }
    }
    if (ok) stab.push_back(idx);
  }
  const std::uint64_t q = static_cast<std::uint64_t>(stab.size());
  // must be the subfield F_{p^s} for some s | n
  std::uint64_t qq = 1;
  int s = 0;
  while (qq < q) {
    qq *= static_cast<std::uint64_t>(F.p());
    ++s;
  }
  if (qq != q || s == 0 || F.n() % s != 0)
    throw std::logic_error("stabilizer_order: stabilizer is not a subfield");
  std::vector<std::uint64_t> subf;
  for (const auto& e : F.subfield_elements(s)) subf.push_back(e.index());
  std::sort(stab.begin(), stab.end());
  if (stab != subf) throw std::logic_error("stabilizer_order: stabilizer is not F_q");
  return q;
}

OrbitTable dilation_orbit_reps(const Field& F, int r) {
  const std::vector<Subspace> all = enumerate_subspaces(F, r);
  std::set<std::vector<std::uint64_t>> visited;
  OrbitTable table;
  table.r = r;
  for (const auto& V : all) {
    if (visited.count(V.row_codes(F.p()))) continue;
    std::set<std::vector<std::uint64_t>> orbit;
    for (std::uint64_t idx = 1; idx < F.order(); ++idx) {
      Subspace W = dilate(F, F.from_index(idx), V);
      orbit.insert(W.row_codes(F.p()));
    }
    for (const auto& key : orbit) visited.insert(key);
    OrbitEntry entry;
    entry.rep = V;
    entry.orbit_size = static_cast<std::uint64_t>(orbit.size());
    entry.stabilizer_q = stabilizer_order(F, V);
    if (entry.orbit_size * (entry.stabilizer_q - 1) != F.order() - 1)
      throw std::logic_error("dilation_orbit_reps: orbit-stabilizer mismatch");
    table.entries.push_back(std::move(entry));
  }
  return table;
}

std::vector<std::pair<Element, Subspace>> dilated_subfields_in(const Field& F,
                                                               const Subspace& V, int s) {
  std::vector<std::pair<Element, Subspace>> out;
  if (s < 1 || s > V.r || F.n() % s != 0) return out;
  std::vector<std::uint64_t> subf;
  for (const auto& e : F.subfield_elements(s)) subf.push_back(e.index());
  for (const auto& U : subspaces_of(F, V, s)) {
    const Element u = F.from_digits(U.rows.front());
    const Element uinv = u.inverse();
    std::vector<std::uint64_t> scaled;
    scaled.reserve(subf.size());
    for (const auto& x : elements_of(F, U)) scaled.push_back((x * uinv).index());
    std::sort(scaled.begin(), scaled.end());
    if (scaled == subf) out.emplace_back(u, U);
  }
  return out;
}

Partition* PartitionCache::find(const Subspace& V) {
  auto it = memo_.find(V.row_codes(p));
  return it == memo_.end() ? nullptr : &it->second;
}
void PartitionCache::store(const Subspace& V, Partition value) {
  memo_[V.row_codes(p)] = std::move(value);
}
std::set<Partition>* PartitionCache::find_all(const Subspace& V) {
  auto it = memo_all_.find(V.row_codes(p));
  return it == memo_all_.end() ? nullptr : &it->second;
}
void PartitionCache::store_all(const Subspace& V, std::set<Partition> value) {
  memo_all_[V.row_codes(p)] = std::move(value);
}

namespace {

Partition insert_part(Partition q, int s) {
  q.insert(std::upper_bound(q.begin(), q.end(), s, std::greater<int>()), s);
  return q;
}

// One fixed complement of U inside V, as digit rows.
std::vector<std::vector<int>> complement_rows(const Field& F, const Subspace& U,
                                              const Subspace& V) {
  fp::Mat acc = U.rows;
  std::vector<std::vector<int>> comp;
  for (const auto& row : V.rows) {
    fp::Mat probe = acc;
    probe.push_back(row);
    if (fp::rank(probe, F.p()) > static_cast<int>(fp::rank(acc, F.p()))) {
      comp.push_back(row);
      acc.push_back(row);
    }
  }
  return comp;
}

template <typename Fn>
void for_each_summand_split(const Field& F, const Subspace& V, const Fn& fn) {
  for (int s = V.r; s >= 1; --s) {
    if (F.n() % s != 0) continue;
    const auto subfields = dilated_subfields_in(F, V, s);
    if (subfields.empty()) continue;
    for (const auto& [alpha, U] : subfields) {
      const auto w0 = complement_rows(F, U, V);
      const int m = static_cast<int>(w0.size());
      const std::vector<Element> upts = elements_of(F, U);
      // every complement is { w_i + u_i } for a unique tuple u in U^m
      std::vector<std::size_t> odo(static_cast<std::size_t>(m), 0);
      while (true) {
        std::vector<Element> gens;
        gens.reserve(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
          gens.push_back(F.from_digits(w0[static_cast<std::size_t>(i)]) +
                         upts[odo[static_cast<std::size_t>(i)]]);
        Subspace W = canonicalize(F, gens);
        if (W.r != m) throw std::logic_error("partition: complement rank wrong");
        fn(s, W);
        bool carried = false;
        for (std::size_t k = 0; k < odo.size(); ++k) {
          if (odo[k] + 1 < upts.size()) {
            ++odo[k];
            std::fill(odo.begin(), odo.begin() + static_cast<std::ptrdiff_t>(k), 0);
            carried = true;
            break;
          }
        }
        if (!carried) break;
      }
    }
  }
}

Partition partition_rec(const Field& F, const Subspace& V, PartitionCache& cache) {
  if (V.r == 0) return {};
  if (Partition* hit = cache.find(V)) return *hit;
  Partition best;
  for_each_summand_split(F, V, [&](int s, const Subspace& W) {
    Partition cand = insert_part(partition_rec(F, W, cache), s);
    if (best.empty() || cand > best) best = std::move(cand);
  });
  if (best.empty()) throw std::logic_error("partition: no decomposition found");
  cache.store(V, best);
  return best;
}

std::set<Partition> realized_rec(const Field& F, const Subspace& V, PartitionCache& cache) {
  if (V.r == 0) return {Partition{}};
  if (auto* hit = cache.find_all(V)) return *hit;
  std::set<Partition> out;
  for_each_summand_split(F, V, [&](int s, const Subspace& W) {
    for (const auto& q : realized_rec(F, W, cache)) out.insert(insert_part(q, s));
  });
  cache.store_all(V, out);
  return out;
}

} // namespace

Partition partition_of(const Field& F, const Subspace& V, PartitionCache& cache) {
  if (cache.p == 0) cache.p = F.p();
  return partition_rec(F, V, cache);
}

Partition partition_of(const Field& F, const Subspace& V) {
  PartitionCache cache;
  return partition_of(F, V, cache);
}

std::set<Partition> realized_partitions(const Field& F, const Subspace& V,
                                        PartitionCache& cache) {
  if (cache.p == 0) cache.p = F.p();
  return realized_rec(F, V, cache);
}

std::set<Partition> realized_partitions(const Field& F, const Subspace& V) {
  PartitionCache cache;
  return realized_partitions(F, V, cache);
}

std::uint64_t gaussian_binomial(int n, int r, std::int64_t p) {
  if (r < 0 || r > n) return 0;
  // [n r]_p = [n-1 r-1]_p + p^r [n-1 r]_p, exact in 64 bits with checks
  std::vector<std::vector<std::uint64_t>> g(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    g[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) {
      std::uint64_t ppow = 1;
      for (int k = 0; k < j; ++k) {
        ppow *= static_cast<std::uint64_t>(p);
        if (ppow > (std::uint64_t{1} << 62)) throw std::overflow_error("gaussian_binomial");
      }
      const std::uint64_t a = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      const std::uint64_t b = g[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
      if (b != 0 && ppow > (~std::uint64_t{0} - a) / b)
        throw std::overflow_error("gaussian_binomial");
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a + ppow * b;
    }
  }
  return g[static_cast<std::size_t>(n)][static_cast<std::size_t>(r)];
}

} // namespace dilation
