#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Randomized property suites over the operator gallery, shared by the unit
// tests and the acceptance binary.
namespace specwave::testkit {

struct PropertyResult {
  std::string name;
  int instances = 0;
  double worst = 0.0;  // largest violation measure seen
  double tolerance = 0.0;
  bool passed = false;
};

// ||R(z) f|| <= ||f|| / |Im z| + 1e-8; worst is the largest excess.
PropertyResult resolvent_norm_bound(int instances, std::uint64_t seed);
// R(conj z) conj f = conj(R(z) f), relative residual, 1e-10.
PropertyResult conjugate_symmetry(int instances, std::uint64_t seed);
// R(z)(a f + b g) = a R(z) f + b R(z) g, relative residual, 1e-12.
PropertyResult linearity(int instances, std::uint64_t seed);
// R(z1) - R(z2) = (z1 - z2) R(z1) R(z2) on multiplication and Schrodinger, 1e-8.
PropertyResult first_resolvent_identity(int instances, std::uint64_t seed);
// K(x) = K(-x) for equispaced kernels, 1e-13.
PropertyResult kernel_symmetry(int instances, std::uint64_t seed);
// ||Im u|| / ||u|| for real operators and real f, full 2m assembly, 1e-10.
PropertyResult packet_reality(int instances, std::uint64_t seed);

std::vector<PropertyResult> all_properties(int instances, std::uint64_t seed);

}  // namespace specwave::testkit
