#include "gact/linalg.hpp"

#include <algorithm>

namespace gact {

CVec cvec_zero(const FieldPtr& f, int n) {
  return CVec(n, Cyc::zero(f));
}

CMat cmat_zero(const FieldPtr& f, int rows, int cols) {
  return CMat(rows, cvec_zero(f, cols));
}

CMat cmat_identity(const FieldPtr& f, int n) {
  CMat m = cmat_zero(f, n, n);
  for (int i = 0; i < n; ++i) m[i][i] = Cyc::one(f);
  return m;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = k ? static_cast<int>(b[0].size()) : 0;
  const FieldPtr& f = a[0][0].field();
  CMat out = cmat_zero(f, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) {
      if (a[i][j].is_zero()) continue;
      for (int c = 0; c < m; ++c) {
        if (b[j][c].is_zero()) continue;
        out[i][c] += a[i][j] * b[j][c];
      }
    }
  return out;
}

CVec cmat_apply(const CMat& a, const CVec& v) {
  const FieldPtr& f = a[0][0].field();
  CVec out = cvec_zero(f, static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) {
      if (a[i][j].is_zero() || v[j].is_zero()) continue;
      out[i] += a[i][j] * v[j];
    }
  return out;
}

bool cvec_is_zero(const CVec& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Cyc& c) { return c.is_zero(); });
}

namespace {

// Row echelon in place; returns pivot columns.
std::vector<int> row_reduce(CMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (!m[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[row]);
    Cyc inv = m[row][col].inverse();
    for (int c = col; c < cols; ++c) m[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Cyc f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int cmat_rank(CMat m) { return static_cast<int>(row_reduce(m).size()); }

std::vector<CVec> cmat_kernel(CMat m) {
  if (m.empty()) return {};
  const FieldPtr& f = m[0][0].field();
  int cols = static_cast<int>(m[0].size());
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<CVec> basis;
  for (int freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    CVec v = cvec_zero(f, cols);
    v[freec] = Cyc::one(f);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][freec];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<CVec> cmat_solve(CMat m, CVec b) {
  if (m.empty()) return CVec{};
  const FieldPtr& f = m[0][0].field();
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  for (int r = 0; r < rows; ++r) m[r].push_back(b[r]);
  std::vector<int> pivots = row_reduce(m);
  // inconsistent when a pivot lands in the augmented column
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  CVec x = cvec_zero(f, cols);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

std::optional<CMat> cmat_inverse(const CMat& m) {
  int n = static_cast<int>(m.size());
  const FieldPtr& f = m[0][0].field();
  CMat aug = cmat_zero(f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = Cyc::one(f);
  }
  std::vector<int> pivots = row_reduce(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[n - 1] != n - 1)
    return std::nullopt;
  CMat out = cmat_zero(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

namespace {

using ZMat = std::vector<std::vector<mpz_class>>;

void snf_swap_rows(ZMat& a, ZMat& u, int i, int j) {
  std::swap(a[i], a[j]);
  std::swap(u[i], u[j]);
}

void snf_swap_cols(ZMat& a, ZMat& v, int i, int j) {
  for (auto& row : a) std::swap(row[i], row[j]);
  for (auto& row : v) std::swap(row[i], row[j]);
}

void snf_add_row(ZMat& a, ZMat& u, int dst, int src, const mpz_class& c) {
  for (size_t k = 0; k < a[dst].size(); ++k) a[dst][k] += c * a[src][k];
  for (size_t k = 0; k < u[dst].size(); ++k) u[dst][k] += c * u[src][k];
}

void snf_add_col(ZMat& a, ZMat& v, int dst, int src, const mpz_class& c) {
  for (auto& row : a) row[dst] += c * row[src];
  for (auto& row : v) row[dst] += c * row[src];
}

}  // namespace

std::optional<std::vector<long>> solve_mod(
    const std::vector<std::vector<long>>& a_in, const std::vector<long>& b_in,
    long mod) {
  int rows = static_cast<int>(a_in.size());
  int cols = rows ? static_cast<int>(a_in[0].size()) : 0;
  if (cols == 0) {
    for (long x : b_in)
      if (x % mod != 0) return std::nullopt;
    return std::vector<long>{};
  }
  ZMat a(rows, std::vector<mpz_class>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = a_in[i][j];
  ZMat u(rows, std::vector<mpz_class>(rows, 0));
  ZMat v(cols, std::vector<mpz_class>(cols, 0));
  for (int i = 0; i < rows; ++i) u[i][i] = 1;
  for (int j = 0; j < cols; ++j) v[j][j] = 1;

  // diagonalize: U a V = D with U, V unimodular
  int t = 0;
  while (t < rows && t < cols) {
    // locate smallest nonzero entry in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (pi < 0 || abs(a[i][j]) < abs(a[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;
    snf_swap_rows(a, u, t, pi);
    snf_swap_cols(a, v, t, pj);
    bool clean = true;
    for (int i = t + 1; i < rows; ++i) {
      if (a[i][t] == 0) continue;
      mpz_class q = a[i][t] / a[t][t];
      snf_add_row(a, u, i, t, -q);
      if (a[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < cols; ++j) {
      if (a[t][j] == 0) continue;
      mpz_class q = a[t][j] / a[t][t];
      snf_add_col(a, v, j, t, -q);
      if (a[t][j] != 0) clean = false;
    }
    if (clean) ++t;
  }

  // D y = U b (mod mod)
  std::vector<mpz_class> ub(rows, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) ub[i] += u[i][j] * b_in[j];
  mpz_class m(mod);
  std::vector<mpz_class> y(cols, 0);
  for (int i = 0; i < rows; ++i) {
    mpz_class d = (i < cols) ? a[i][i] : mpz_class(0);
    mpz_class rhs = ((ub[i] % m) + m) % m;
    if (d == 0) {
      if (rhs != 0) return std::nullopt;
      continue;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    if (rhs % g != 0) return std::nullopt;
    mpz_class d2 = d / g, m2 = m / g, r2 = rhs / g;
    mpz_class inv;
    if (m2 == 1) {
      y[i] = 0;
    } else {
      if (mpz_invert(inv.get_mpz_t(), d2.get_mpz_t(), m2.get_mpz_t()) == 0)
        return std::nullopt;
      y[i] = (r2 * inv) % m2;
    }
  }
  std::vector<long> x(cols, 0);
  for (int j = 0; j < cols; ++j) {
    mpz_class s = 0;
    for (int k = 0; k < cols; ++k) s += v[j][k] * y[k];
    s = ((s % m) + m) % m;
    x[j] = s.get_si();
  }
  return x;
}

}  // namespace gact
