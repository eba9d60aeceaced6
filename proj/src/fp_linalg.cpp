#include "dilation/fp_linalg.hpp"

#include <stdexcept>

namespace dilation::fp {

int add(int a, int b, std::int64_t p) { return static_cast<int>((a + b) % p); }
int sub(int a, int b, std::int64_t p) { return static_cast<int>(((a - b) % p + p) % p); }
int mul(int a, int b, std::int64_t p) {
  return static_cast<int>((static_cast<std::int64_t>(a) * b) % p);
}
int neg(int a, std::int64_t p) { return static_cast<int>((p - a) % p); }

int inv(int a, std::int64_t p) {
  a = static_cast<int>(((a % p) + p) % p);
  if (a == 0) throw std::domain_error("fp::inv: zero has no inverse");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("fp::inv: modulus not prime?");
  return static_cast<int>(((t % p) + p) % p);
}

int rref(Mat& m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < m.size(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[pivot_row]);
    const int scale = inv(m[pivot_row][col], p);
    for (auto& x : m[pivot_row]) x = mul(x, scale, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == pivot_row || m[i][col] == 0) continue;
      const int factor = m[i][col];
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] = sub(m[i][j], mul(factor, m[pivot_row][j], p), p);
    }
    ++pivot_row;
  }
  return static_cast<int>(pivot_row);
}

int rank(Mat m, std::int64_t p) { return rref(m, p); }

Mat kernel(const Mat& m, std::int64_t p) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  Mat r = m;
  const int rk = rref(r, p);
  r.resize(static_cast<std::size_t>(rk));

  std::vector<int> pivot_col(static_cast<std::size_t>(rk), -1);
  std::vector<bool> is_pivot(cols, false);
  for (int i = 0; i < rk; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (r[static_cast<std::size_t>(i)][j] != 0) {
        pivot_col[static_cast<std::size_t>(i)] = static_cast<int>(j);
        is_pivot[j] = true;
        break;
      }
    }
  }

  Mat basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    Row v(cols, 0);
    v[free_col] = 1;
    for (int i = 0; i < rk; ++i) {
      const auto pc = static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)]);
      v[pc] = neg(r[static_cast<std::size_t>(i)][free_col], p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_span(Row v, const Mat& rref_rows, std::int64_t p) {
  for (const auto& row : rref_rows) {
    std::size_t lead = 0;
    while (lead < row.size() && row[lead] == 0) ++lead;
    if (lead == row.size()) continue;
    if (v[lead] == 0) continue;
    const int factor = v[lead];
    for (std::size_t j = lead; j < v.size(); ++j)
      v[j] = sub(v[j], mul(factor, row[j], p), p);
  }
  for (int x : v)
    if (x != 0) return false;
  return true;
}

} // namespace dilation::fp
