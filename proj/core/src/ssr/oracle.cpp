#include "robust_synth/ssr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "robust_synth/common/errors.hpp"

namespace robust_synth::ssr {
namespace {

double density(double t, double mu) {
  const double z = t - mu;
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
                double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return adaptive(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
  const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  return adaptive(g, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 60);
}

}  // namespace

double numeric_coupling_oracle(const Eigen::VectorXd& offset, double tol) {
  const double a = offset.norm();
  if (a > 8.0) throw InputError("numeric_coupling_oracle requires ||m|| <= 8");
  const auto g = [a](double t) { return std::min(density(t, 0.0), density(t, a)); };
  // The two densities cross at a/2; split there so each piece is smooth.
  const double mid = 0.5 * a;
  const double span = 14.0;
  return integrate(g, mid - span, mid, tol) + integrate(g, mid, mid + span, tol);
}

}  // namespace robust_synth::ssr
