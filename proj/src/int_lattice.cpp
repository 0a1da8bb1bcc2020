#include "howson/int_lattice.hpp"

#include <tuple>
#include <utility>

#include "overflow.hpp"

namespace howson {

namespace {

// g = x*a + y*b, g >= 0.
std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, checked_add(old_s, checked_mul(-q, s)));
    std::tie(old_t, t) = std::make_pair(t, checked_add(old_t, checked_mul(-q, t)));
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// rows p, i <- (x*p + y*i, u*p + v*i)
void combine(IntVec& p, IntVec& i, std::int64_t x, std::int64_t y, std::int64_t u, std::int64_t v) {
  for (std::size_t c = 0; c < p.size(); ++c) {
    std::int64_t np = checked_add(checked_mul(x, p[c]), checked_mul(y, i[c]));
    std::int64_t ni = checked_add(checked_mul(u, p[c]), checked_mul(v, i[c]));
    p[c] = np;
    i[c] = ni;
  }
}

void axpy(IntVec& dst, std::int64_t factor, const IntVec& src) {
  for (std::size_t c = 0; c < dst.size(); ++c) dst[c] = checked_add(dst[c], checked_mul(factor, src[c]));
}

}  // namespace

RowHermite hermite_rows(const IntMat& rows, std::size_t cols) {
  const std::size_t k = rows.size();
  IntMat m = rows;
  IntMat u(k, IntVec(k, 0));
  for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;

  RowHermite out;
  std::size_t pivot = 0;
  for (std::size_t col = 0; col < cols && pivot < k; ++col) {
    for (std::size_t i = pivot + 1; i < k; ++i) {
      if (m[i][col] == 0) continue;
      std::int64_t a = m[pivot][col];
      std::int64_t b = m[i][col];
      auto [g, x, y] = extended_gcd(a, b);
      combine(m[pivot], m[i], x, y, -(b / g), a / g);
      combine(u[pivot], u[i], x, y, -(b / g), a / g);
    }
    if (m[pivot][col] == 0) continue;
    if (m[pivot][col] < 0) {
      for (auto& v : m[pivot]) v = checked_mul(v, -1);
      for (auto& v : u[pivot]) v = checked_mul(v, -1);
    }
    for (std::size_t i = 0; i < pivot; ++i) {
      std::int64_t q = floor_div(m[i][col], m[pivot][col]);
      if (q == 0) continue;
      axpy(m[i], -q, m[pivot]);
      axpy(u[i], -q, u[pivot]);
    }
    out.pivots.push_back(col);
    ++pivot;
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (i < pivot) {
      out.basis.push_back(std::move(m[i]));
      out.transform.push_back(std::move(u[i]));
    } else {
      out.kernel.push_back(std::move(u[i]));
    }
  }
  return out;
}

std::optional<IntVec> solve_in_lattice(const RowHermite& h, const IntVec& target) {
  IntVec rest = target;
  IntVec coeffs(h.basis.size(), 0);
  for (std::size_t r = 0; r < h.basis.size(); ++r) {
    std::size_t p = h.pivots[r];
    for (std::size_t c = (r == 0 ? 0 : h.pivots[r - 1] + 1); c < p; ++c) {
      if (rest[c] != 0) return std::nullopt;
    }
    if (rest[p] % h.basis[r][p] != 0) return std::nullopt;
    coeffs[r] = rest[p] / h.basis[r][p];
    axpy(rest, -coeffs[r], h.basis[r]);
  }
  for (auto v : rest) {
    if (v != 0) return std::nullopt;
  }
  return coeffs;
}

IntVec row_times(const IntVec& c, const IntMat& m, std::size_t cols) {
  IntVec out(cols, 0);
  for (std::size_t r = 0; r < c.size(); ++r) {
    if (c[r] != 0) axpy(out, c[r], m[r]);
  }
  return out;
}

}  // namespace howson
