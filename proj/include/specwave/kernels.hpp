#pragma once

#include <span>
#include <vector>

#include "specwave/types.hpp"

namespace specwave {

// K(x) = (1/2 pi i) sum_j [alpha_j/(x - a_j) - conj(alpha_j)/(x - conj(a_j))]
//      = (1/pi) Im sum_j alpha_j/(x - a_j).
class RationalKernel {
 public:
  explicit RationalKernel(std::vector<cplx> poles);

  int order() const { return static_cast<int>(poles_.size()); }
  const std::vector<cplx>& poles() const { return poles_; }
  const std::vector<cplx>& residues() const { return residues_; }
  double decay_constant_estimate() const { return decay_constant_; }

  // Pole set invariant under a -> -conj(a); such kernels are even.
  bool reflection_symmetric() const { return symmetric_; }

  double operator()(double x) const;

  // Far-field representation K(x) = (1/pi) sum_{p >= m} Im(M_p) x^{-p-1},
  // M_p = sum_j alpha_j a_j^p, used for |x| > far_radius().
  double far_radius() const { return far_radius_; }
  const std::vector<cplx>& far_moments() const { return far_moments_; }

 private:
  std::vector<cplx> poles_;
  std::vector<cplx> residues_;
  std::vector<cplx> far_moments_;  // M_m, M_{m+1}, ...
  double far_radius_ = 0.0;
  double decay_constant_ = 0.0;
  bool symmetric_ = false;
};

// m = 1: {i}; otherwise a_j = -1 + 2(j-1)/(m-1) + i.
std::vector<cplx> equispaced_poles(int m);

RationalKernel build_kernel(std::span<const cplx> poles);

double eval_kernel(const RationalKernel& K, double x);

// K(x / eps) / eps.
double eval_scaled(const RationalKernel& K, double eps, double x);

struct MomentReport {
  double normalization_error = 0.0;   // |int K - 1|
  std::vector<double> moment_errors;  // |int K x^p|, p = 1..m-1
  double decay_exponent_fit = 0.0;    // slope of log|K| on x in [1e2, 1e6]
  double tail_bound = 0.0;            // C_K bound on the neglected |x| > 1e6 mass
  bool passed = false;
};

MomentReport verify_moments(const RationalKernel& K, double tol);

}  // namespace specwave
