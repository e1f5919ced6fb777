#include "drop/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "drop/par.hpp"

namespace drop {

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  y.resize(n);
  par::for_each(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    double acc = 0.0;
    for (int k = row_ptr[static_cast<size_t>(i)]; k < row_ptr[static_cast<size_t>(i) + 1]; ++k)
      acc += val[static_cast<size_t>(k)] * x[static_cast<size_t>(col[static_cast<size_t>(k)])];
    y[static_cast<size_t>(i)] = acc;
  });
}

CsrMatrix assemble_csr(size_t n, const std::vector<int>& rows, const std::vector<int>& cols,
                       const std::vector<double>& vals) {
  CsrMatrix A;
  A.n = n;
  std::vector<int> count(n, 0);
  for (int r : rows) count[static_cast<size_t>(r)]++;
  A.row_ptr.assign(n + 1, 0);
  for (size_t i = 0; i < n; ++i) A.row_ptr[i + 1] = A.row_ptr[i] + count[i];
  std::vector<int> cursor(A.row_ptr.begin(), A.row_ptr.end() - 1);
  std::vector<int> tmp_col(vals.size());
  std::vector<double> tmp_val(vals.size());
  for (size_t k = 0; k < vals.size(); ++k) {
    const int slot = cursor[static_cast<size_t>(rows[k])]++;
    tmp_col[static_cast<size_t>(slot)] = cols[k];
    tmp_val[static_cast<size_t>(slot)] = vals[k];
  }
  // sort each row by column and merge duplicates
  A.col.reserve(vals.size());
  A.val.reserve(vals.size());
  std::vector<int> final_ptr(n + 1, 0);
  for (size_t i = 0; i < n; ++i) {
    const int lo = A.row_ptr[i], hi = A.row_ptr[i + 1];
    std::vector<std::pair<int, double>> row;
    row.reserve(static_cast<size_t>(hi - lo));
    for (int k = lo; k < hi; ++k)
      row.emplace_back(tmp_col[static_cast<size_t>(k)], tmp_val[static_cast<size_t>(k)]);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    const auto row_start = A.col.size();
    for (const auto& [c, v] : row) {
      if (A.col.size() > row_start && A.col.back() == c)
        A.val.back() += v;
      else {
        A.col.push_back(c);
        A.val.push_back(v);
      }
    }
    final_ptr[i + 1] = static_cast<int>(A.col.size());
  }
  A.row_ptr = std::move(final_ptr);
  return A;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return par::sum(static_cast<std::ptrdiff_t>(a.size()),
                  [&](std::ptrdiff_t i) { return a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)]; });
}

// One SSOR application z = M^{-1} r with M = (D/w + L) (w/(2-w) D)^{-1} (D/w + U).
void apply_ssor(const CsrMatrix& A, const std::vector<double>& diag, double omega,
                const std::vector<double>& r, std::vector<double>& z) {
  const size_t n = A.n;
  z.assign(n, 0.0);
  // forward sweep: (D/w + L) y = r
  for (size_t i = 0; i < n; ++i) {
    double acc = r[i];
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      const auto j = static_cast<size_t>(A.col[static_cast<size_t>(k)]);
      if (j < i) acc -= A.val[static_cast<size_t>(k)] * z[j];
    }
    z[i] = acc * omega / diag[i];
  }
  // scale by D (2-w)/w
  for (size_t i = 0; i < n; ++i) z[i] *= diag[i] * (2.0 - omega) / omega;
  // backward sweep: (D/w + U) z = y
  for (size_t i = n; i-- > 0;) {
    double acc = z[i];
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      const auto j = static_cast<size_t>(A.col[static_cast<size_t>(k)]);
      if (j > i) acc -= A.val[static_cast<size_t>(k)] * z[j];
    }
    z[i] = acc * omega / diag[i];
  }
}

}  // namespace

PcgResult pcg_ssor(const CsrMatrix& A, const std::vector<double>& b, std::vector<double>& x,
                   double rel_tol, int max_iter, double omega) {
  const size_t n = A.n;
  if (x.size() != n) x.assign(n, 0.0);
  std::vector<double> diag(n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      if (static_cast<size_t>(A.col[static_cast<size_t>(k)]) == i) diag[i] = A.val[static_cast<size_t>(k)];
  for (double d : diag)
    if (!(d > 0)) throw std::runtime_error("pcg: nonpositive diagonal entry");

  const double bnorm = std::sqrt(dot(b, b));
  PcgResult res;
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    res.converged = true;
    return res;
  }

  std::vector<double> r(n), z(n), p(n), Ap(n);
  A.multiply(x, Ap);
  par::for_each(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    r[static_cast<size_t>(i)] = b[static_cast<size_t>(i)] - Ap[static_cast<size_t>(i)];
  });
  apply_ssor(A, diag, omega, r, z);
  p = z;
  double rz = dot(r, z);
  double rnorm = std::sqrt(dot(r, r));

  for (int it = 0; it < max_iter; ++it) {
    if (rnorm <= rel_tol * bnorm) {
      res.converged = true;
      res.iterations = it;
      res.relative_residual = rnorm / bnorm;
      return res;
    }
    A.multiply(p, Ap);
    const double pAp = dot(p, Ap);
    if (!(pAp > 0)) throw std::runtime_error("pcg: matrix not positive definite");
    const double alpha = rz / pAp;
    par::for_each(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
      x[static_cast<size_t>(i)] += alpha * p[static_cast<size_t>(i)];
      r[static_cast<size_t>(i)] -= alpha * Ap[static_cast<size_t>(i)];
    });
    apply_ssor(A, diag, omega, r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    par::for_each(static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
      p[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] + beta * p[static_cast<size_t>(i)];
    });
    rnorm = std::sqrt(dot(r, r));
  }
  res.converged = rnorm <= rel_tol * bnorm;
  res.iterations = max_iter;
  res.relative_residual = rnorm / bnorm;
  return res;
}

}  // namespace drop
