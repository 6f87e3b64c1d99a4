#include "eswp/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eswp {

double GratingGeometry::lambda_perp() const { return lambda_db / std::sin(phi_in); }

void GratingGeometry::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("grating: d must be positive");
  if (!(phi_in > 0.0) || phi_in > std::numbers::pi / 2) {
    throw std::invalid_argument("grating: phi_in must lie in (0, pi/2]");
  }
  if (!(lambda_db > 0.0) || !std::isfinite(lambda_db)) {
    throw std::invalid_argument("grating: lambda_db must be positive");
  }
}

double de_broglie_from_energy(double E0, double k) {
  if (!(E0 > 0.0)) throw std::domain_error("de_broglie_from_energy: energy must be positive");
  if (!(k > 0.0)) throw std::invalid_argument("de_broglie_from_energy: k must be positive");
  return 2.0 * std::numbers::pi * std::sqrt(k / (2.0 * E0));
}

GratingGeometry make_geometry(double d, double phi_in, double E0, double k) {
  GratingGeometry g{d, phi_in, de_broglie_from_energy(E0, k), E0};
  g.validate();
  return g;
}

std::vector<BraggOrder> bragg_orders(const GratingGeometry& geom, int n_max) {
  geom.validate();
  const double ratio = geom.lambda_perp() / geom.d;
  const double tan_in = std::tan(geom.phi_in);
  std::vector<BraggOrder> orders;
  for (int n = -n_max; n <= n_max; ++n) {
    const double s = static_cast<double>(n) * ratio;
    if (std::abs(s) > 1.0) continue;
    const double theta = std::asin(s);
    // atan is odd, so +/- n pairs stay exact mirror images. At normal-to-plane
    // incidence (phi_in = pi/2) tan_in overflows and every order exits at
    // +/- pi/2 except n = 0.
    double azimuthal;
    if (n == 0) {
      azimuthal = 0.0;
    } else if (std::isfinite(tan_in) && std::abs(tan_in) < 1e15) {
      azimuthal = std::atan(tan_in * std::sin(theta));
    } else {
      azimuthal = std::copysign(std::numbers::pi / 2, theta);
    }
    orders.push_back({n, theta, azimuthal});
  }
  return orders;
}

double azimuthal_splitting(const GratingGeometry& geom) {
  geom.validate();
  return geom.lambda_db / geom.d;
}

double invert_period(double splitting, double lambda_db, double max_period) {
  if (!(splitting > 0.0) || !std::isfinite(splitting)) {
    throw std::domain_error("invert_period: splitting must be positive");
  }
  if (!(lambda_db > 0.0)) throw std::invalid_argument("invert_period: lambda_db must be positive");
  const double d = lambda_db / splitting;
  if (!std::isfinite(d) || d > max_period) {
    throw std::domain_error("invert_period: implied period exceeds the resolvable range");
  }
  return d;
}

std::vector<MomentumPeak> extract_peaks(std::span<const double> q,
                                        std::span<const double> density,
                                        double threshold_frac) {
  if (q.size() != density.size()) throw std::invalid_argument("extract_peaks: length mismatch");
  std::vector<MomentumPeak> peaks;
  const std::size_t n = density.size();
  if (n < 3) return peaks;
  const double top = *std::max_element(density.begin(), density.end());
  if (!(top > 0.0)) return peaks;
  const double floor_level = threshold_frac * top;
  const double min_prominence = threshold_frac * top / 10.0;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double y1 = density[i];
    if (!(y1 > density[i - 1] && y1 > density[i + 1]) || y1 < floor_level) continue;
    // Walk out to the valley on each side, stopping at higher ground.
    std::size_t a = i;
    double left_min = y1;
    while (a > 0 && density[a - 1] <= y1) {
      --a;
      if (density[a] < left_min) left_min = density[a];
    }
    std::size_t b = i;
    double right_min = y1;
    while (b + 1 < n && density[b + 1] <= y1) {
      ++b;
      if (density[b] < right_min) right_min = density[b];
    }
    const double prominence = y1 - std::max(left_min, right_min);
    if (prominence < min_prominence || !(prominence > 0.0)) continue;

    // Integration window: down each flank to the nearest valley.
    std::size_t lo = i, hi = i;
    while (lo > 0 && density[lo - 1] <= density[lo]) --lo;
    while (hi + 1 < n && density[hi + 1] <= density[hi]) ++hi;
    double weight = 0.0;
    for (std::size_t s = lo; s <= hi; ++s) {
      const double width = s + 1 < n ? q[s + 1] - q[s] : q[s] - q[s - 1];
      weight += density[s] * width;
    }

    const double y0 = density[i - 1], y2 = density[i + 1];
    const double denom = y0 - 2.0 * y1 + y2;
    double offset = 0.0;
    if (denom < 0.0) offset = 0.5 * (y0 - y2) / denom;
    const double h = 0.5 * (q[i + 1] - q[i - 1]);
    peaks.push_back({q[i] + offset * h, weight});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const MomentumPeak& l, const MomentumPeak& r) {
    return std::abs(l.q) < std::abs(r.q);
  });
  return peaks;
}

std::vector<LadderAssignment> assign_orders(std::span<const MomentumPeak> peaks, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("assign_orders: nu must be positive");
  std::vector<LadderAssignment> out;
  out.reserve(peaks.size());
  for (const auto& p : peaks) {
    const int n = static_cast<int>(std::lround(p.q / nu));
    out.push_back({n, p.q, p.q - n * nu, p.weight});
  }
  return out;
}

}  // namespace eswp
