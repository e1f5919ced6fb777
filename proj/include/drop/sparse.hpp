#pragma once

#include <cstddef>
#include <vector>

namespace drop {

/// Compressed sparse row matrix with symmetric structure (used for the FEM
/// stiffness).  Row entries are kept sorted by column.
struct CsrMatrix {
  size_t n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
};

/// Assembles a CSR matrix from (row, col, value) triplets, summing duplicates.
CsrMatrix assemble_csr(size_t n, const std::vector<int>& rows, const std::vector<int>& cols,
                       const std::vector<double>& vals);

struct PcgResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Preconditioned conjugate gradients with an SSOR preconditioner.  `x` is the
/// initial guess on entry and the solution on exit.  Deterministic for any
/// thread count: dot products use fixed-block reductions.
PcgResult pcg_ssor(const CsrMatrix& A, const std::vector<double>& b, std::vector<double>& x,
                   double rel_tol = 1e-10, int max_iter = 5000, double omega = 1.5);

}  // namespace drop
