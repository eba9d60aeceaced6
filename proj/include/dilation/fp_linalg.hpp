#pragma once

#include <cstdint>
#include <vector>

// Small dense linear algebra over the prime field F_p. Matrices are row
// vectors of digits in [0, p). Everything here is exact integer arithmetic.
namespace dilation::fp {

using Row = std::vector<int>;
using Mat = std::vector<Row>;

int add(int a, int b, std::int64_t p);
int sub(int a, int b, std::int64_t p);
int mul(int a, int b, std::int64_t p);
int neg(int a, std::int64_t p);
int inv(int a, std::int64_t p);

// Reduced row echelon form in place. Zero rows sink to the bottom.
// Returns the rank.
int rref(Mat& m, std::int64_t p);

int rank(Mat m, std::int64_t p);

// Basis of the right kernel {x : m x = 0}, one solution per row,
// in a deterministic order (free variables ascending).
Mat kernel(const Mat& m, std::int64_t p);

// Reduce v against rows already in RREF; true when v is in their span.
bool in_span(Row v, const Mat& rref_rows, std::int64_t p);

} // namespace dilation::fp
