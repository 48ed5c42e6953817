#include "liewave/gn.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "liewave/csv.hpp"
#include "nlohmann/json.hpp"

namespace liewave {

double gn_theta(int n, double q) {
  if (n < 3)
    throw std::domain_error("the interpolation inequality needs n >= 3");
  const double q_max = 2.0 * n / (n - 2.0);
  if (!(q >= 2.0) || !(q <= q_max))
    throw std::domain_error("q = " + std::to_string(q) +
                            " outside the admissible range [2, " +
                            std::to_string(q_max) + "]");
  return n * (0.5 - 1.0 / q);
}

double lq_norm(const SpectralField& field, double q,
               const Transform& transform) {
  const std::vector<double> samples = transform.synthesize(field);
  return quadrature_lq_norm(transform.grid(), samples, q);
}

double lq_norm_refined(const SpectralField& field, double q, double rel_tol,
                       int max_oversample) {
  double previous = -1.0;
  for (int oversample = 2; oversample <= max_oversample; oversample *= 2) {
    const auto transform = make_transform(field.basis_ptr(), oversample);
    const double value = lq_norm(field, q, *transform);
    if (previous >= 0.0 &&
        std::abs(value - previous) <= rel_tol * std::max(previous, 1e-300))
      return value;
    previous = value;
  }
  throw std::runtime_error("Lq norm did not stabilize under grid refinement");
}

GNReport check_gn(const std::vector<SpectralField>& fields, int n, double q,
                  const Transform& transform) {
  GNReport report;
  report.n = n;
  report.q = q;
  report.theta = gn_theta(n, q);

  for (const SpectralField& f : fields) {
    if (f.group().topological_dimension != n)
      throw std::invalid_argument(
          "field group dimension does not match the requested n");
    const double l2 = plancherel_l2_norm(f);
    if (l2 == 0.0) {
      ++report.skipped_zero;
      continue;
    }
    GNSample sample;
    sample.l2 = l2;
    sample.h1 = sobolev_norm(f, 1.0);
    sample.lq = lq_norm(f, q, transform);
    sample.ratio = sample.lq / (std::pow(sample.h1, report.theta) *
                                std::pow(sample.l2, 1.0 - report.theta));
    report.max_ratio = std::max(report.max_ratio, sample.ratio);
    report.samples.push_back(sample);
  }
  return report;
}

std::string gn_report_to_json(const GNReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["n"] = report.n;
  j["q"] = report.q;
  j["theta"] = report.theta;
  j["max_ratio"] = report.max_ratio;
  j["samples"] = report.samples.size();
  j["skipped_zero"] = report.skipped_zero;
  return j.dump(2);
}

void write_gn_csv(const GNReport& report, std::ostream& out) {
  CsvWriter csv({"sample", "lq_norm", "h1_norm", "l2_norm", "ratio"});
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const GNSample& s = report.samples[i];
    csv.cell(static_cast<std::int64_t>(i))
        .cell(s.lq)
        .cell(s.h1)
        .cell(s.l2)
        .cell(s.ratio);
    csv.end_row();
  }
  csv.write(out);
}

}  // namespace liewave
