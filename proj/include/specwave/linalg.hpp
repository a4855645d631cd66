#pragma once

#include <span>
#include <vector>

#include "specwave/types.hpp"

namespace specwave {

// Residues alpha_j with sum_j a_j^p alpha_j = delta_{p0}, p < m, via the
// Lagrange-at-zero closed form alpha_j = prod_{k != j} a_k / (a_k - a_j).
std::vector<cplx> solve_vandermonde(std::span<const cplx> poles);

// Square band matrix with equal lower and upper bandwidth. diagonals[o + b][i]
// holds A(i, i + o); entries with i + o outside [0, n) are ignored.
class BandedComplexSystem {
 public:
  BandedComplexSystem(std::size_t n, std::size_t bandwidth);

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return b_; }

  cplx get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, cplx v);
  std::vector<cplx>& diagonal(long offset);
  const std::vector<cplx>& diagonal(long offset) const;

  std::vector<cplx> multiply(std::span<const cplx> x) const;

 private:
  std::size_t n_;
  std::size_t b_;
  std::vector<std::vector<cplx>> diagonals_;
};

// Band Gaussian elimination without pivoting. Throws SingularSystem when a
// pivot magnitude drops below 1e-300.
std::vector<cplx> solve_banded(const BandedComplexSystem& system,
                               std::span<const cplx> rhs);

}  // namespace specwave
