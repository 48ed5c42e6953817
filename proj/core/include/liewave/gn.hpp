// Gagliardo-Nirenberg interpolation probe:
//
//   ||f||_{L^q}  <~  ||f||_{H^1}^theta ||f||_{L^2}^{1-theta},
//   theta(n, q) = n (1/2 - 1/q),   2 <= q <= 2n/(n-2),  n >= 3.
//
// The implicit constant depends on the group; the probe bounds it
// empirically over random ensembles and checks the structural properties
// (scale invariance, the q = 2 endpoint, admissibility of q).

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "liewave/fourier.hpp"

namespace liewave {

// theta(n, q); throws std::domain_error outside 2 <= q <= 2n/(n-2) or n < 3.
double gn_theta(int n, double q);

// (sum w |f(x)|^q)^{1/q} on the synthesized samples.
double lq_norm(const SpectralField& field, double q, const Transform& transform);

// lq_norm with internal grid refinement until the value moves less than
// rel_tol between consecutive oversampling levels.
double lq_norm_refined(const SpectralField& field, double q,
                       double rel_tol = 1e-6, int max_oversample = 32);

struct GNSample {
  double lq = 0.0;
  double h1 = 0.0;
  double l2 = 0.0;
  double ratio = 0.0;
};

struct GNReport {
  int n = 0;
  double q = 0.0;
  double theta = 0.0;
  double max_ratio = 0.0;
  int skipped_zero = 0;
  std::vector<GNSample> samples;
};

// Ratio ||f||_q / (||f||_{H1}^theta ||f||_2^{1-theta}) per field; zero
// fields are skipped.  All fields must live on a group of topological
// dimension n >= 3; inadmissible q is rejected.
GNReport check_gn(const std::vector<SpectralField>& fields, int n, double q,
                  const Transform& transform);

std::string gn_report_to_json(const GNReport& report);
void write_gn_csv(const GNReport& report, std::ostream& out);

}  // namespace liewave
