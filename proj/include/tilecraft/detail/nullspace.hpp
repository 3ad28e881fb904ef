#pragma once

// Exact integer nullspace via fraction-free (Bareiss) elimination.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tilecraft::detail {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct EchelonForm {
  std::vector<std::vector<BigInt>> rows;  // only the pivot rows, in order
  std::vector<std::size_t> pivot_cols;
  std::size_t cols = 0;
};

inline EchelonForm bareiss_echelon(const std::vector<std::vector<std::int64_t>>& matrix, std::size_t cols) {
  std::vector<std::vector<BigInt>> m;
  m.reserve(matrix.size());
  for (const auto& row : matrix) m.emplace_back(row.begin(), row.end());

  EchelonForm out;
  out.cols = cols;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[r][col];
    out.pivot_cols.push_back(col);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

// One kernel vector per free column, in column order. Each vector has the
// free column set, other free columns zero, and is scaled to coprime integers.
inline std::vector<std::vector<BigInt>> integer_nullspace(const std::vector<std::vector<std::int64_t>>& matrix,
                                                          std::size_t cols) {
  auto ech = bareiss_echelon(matrix, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<BigInt>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRational> x(cols, BigRational(0));
    x[free] = 1;
    for (std::size_t i = ech.rows.size(); i-- > 0;) {
      const auto pc = ech.pivot_cols[i];
      BigRational acc = 0;
      for (std::size_t j = pc + 1; j < cols; ++j)
        if (ech.rows[i][j] != 0 && x[j] != 0) acc += BigRational(ech.rows[i][j]) * x[j];
      x[pc] = -acc / BigRational(ech.rows[i][pc]);
    }
    BigInt lcm = 1;
    for (const auto& v : x) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(v));
    std::vector<BigInt> ints;
    ints.reserve(cols);
    BigInt g = 0;
    for (const auto& v : x) {
      BigInt k = boost::multiprecision::numerator(v) * (lcm / boost::multiprecision::denominator(v));
      g = boost::multiprecision::gcd(g, k);
      ints.push_back(std::move(k));
    }
    if (g > 1)
      for (auto& k : ints) k /= g;
    basis.push_back(std::move(ints));
  }
  return basis;
}

}  // namespace tilecraft::detail
