#include "hsf/params.hpp"

#include "hsf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hsf {

namespace {

// Bracket for sum_{i > K} i^-gamma. Since x^-gamma is convex, each term is at
// most the integral over [i - 1/2, i + 1/2] and each trapezoid over [i, i + 1]
// is at least the integral, which gives
//   int_K^inf - K^-gamma / 2  <=  sum  <=  int_{K+1/2}^inf.
Enclosure remainder_after(std::uint64_t last, long double gamma) {
  const long double k = static_cast<long double>(last);
  const long double e = 1.0L - gamma;
  return {std::pow(k, e) / (gamma - 1.0L) - std::pow(k, -gamma) / 2.0L,
          std::pow(k + 0.5L, e) / (gamma - 1.0L)};
}

} // namespace

Enclosure zeta_tail_terms(std::uint64_t k, double gamma, std::uint64_t terms) {
  if (!(gamma > 1.0))
    throw Error(ErrorKind::Diverges,
                "zeta tail diverges for gamma = " + std::to_string(gamma));
  if (k < 1)
    throw Error(ErrorKind::InvalidInput, "zeta tail needs k >= 1");
  terms = std::max<std::uint64_t>(terms, 1);
  const std::uint64_t last = k + terms - 1;
  const long double g = gamma;

  // small terms first
  long double sum = 0.0L;
  for (std::uint64_t i = last + 1; i-- > k;)
    sum += std::pow(static_cast<long double>(i), -g);

  const Enclosure rest = remainder_after(last, g);
  // generous allowance for accumulated rounding in the partial sum
  const long double slack = static_cast<long double>(terms) *
                            std::numeric_limits<long double>::epsilon() *
                            (sum + 1.0L);
  return {sum + rest.lo - slack, sum + rest.hi + slack};
}

Enclosure zeta_tail(std::uint64_t k, double gamma) {
  if (!(gamma > 1.0))
    throw Error(ErrorKind::Diverges,
                "zeta tail diverges for gamma = " + std::to_string(gamma));
  // bracket width is below gamma K^-(gamma+1) / 8; aim well under the target
  const long double g = gamma;
  const long double cutoff = std::ceil(std::pow(g / kZetaWidth, 1.0L / (g + 1.0L)));
  const auto last = std::max<std::uint64_t>(k, static_cast<std::uint64_t>(cutoff));
  return zeta_tail_terms(k, gamma, last - k + 1);
}

std::uint64_t k_min(double eps, double gamma) {
  if (!(eps > 0.0))
    throw Error(ErrorKind::InvalidInput, "k_min needs eps > 0");
  auto below = [&](std::uint64_t k) { return zeta_tail(k, gamma).hi < eps; };
  if (below(1))
    return 1;
  std::uint64_t lo = 1; // tail(lo) >= eps
  std::uint64_t hi = 2;
  while (!below(hi)) {
    lo = hi;
    if (hi > (std::uint64_t{1} << 62))
      throw Error(ErrorKind::Unbounded, "k_min search overflow");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (below(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::size_t derive_delta(double eps, double c, double gamma) {
  if (!(gamma > 2.0))
    throw Error(ErrorKind::Unbounded,
                "degree bound needs gamma > 2, got " + std::to_string(gamma));
  if (!(c > 0.0) || !(eps > 0.0))
    throw Error(ErrorKind::InvalidInput, "derive_delta needs eps > 0 and c > 0");
  return static_cast<std::size_t>(k_min(eps / c, gamma - 1.0) - 1);
}

std::size_t hyperfiniteness_bound(std::size_t delta, std::size_t n0, double eps) {
  if (!(eps > 0.0))
    throw Error(ErrorKind::InvalidInput, "hyperfiniteness bound needs eps > 0");
  const double d = static_cast<double>(delta);
  const double by_level = 3.0 * d * static_cast<double>(n0) / (2.0 * eps);
  const double by_degree = 3.0 * d * (d + 1.0) / eps;
  const double t = std::max(by_level, by_degree);
  // absorb representation error such as 120 / 0.2 = 599.99999...
  return static_cast<std::size_t>(std::ceil(t * (1.0 - 1e-12)));
}

HsfParams HsfParams::derive(double c, double gamma, std::size_t n0,
                            double epsilon) {
  if (!(c > 1.0))
    throw Error(ErrorKind::InvalidInput, "c must exceed 1");
  if (!(gamma > 1.0))
    throw Error(ErrorKind::InvalidInput, "gamma must exceed 1");
  if (n0 < 1)
    throw Error(ErrorKind::InvalidInput, "n0 must be at least 1");
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw Error(ErrorKind::InvalidInput, "epsilon must lie in (0, 1]");

  HsfParams p;
  p.c = c;
  p.gamma = gamma;
  p.n0 = n0;
  p.epsilon = epsilon;
  p.epsilon_prime = epsilon / 3.0;
  p.delta = derive_delta(p.epsilon_prime, c, gamma);
  const std::uint64_t k = k_min(p.epsilon_prime / c, gamma - 1.0);
  p.t = hyperfiniteness_bound(p.delta, n0, epsilon);

  std::ostringstream note;
  note.precision(17);
  note << "epsilon' = epsilon/3 = " << p.epsilon_prime;
  p.notes.push_back(note.str());
  note.str("");
  note << "k_min(epsilon'/c, gamma-1) = k_min(" << p.epsilon_prime / c << ", "
       << gamma - 1.0 << ") = " << k << ", zeta tail at k in ["
       << static_cast<double>(zeta_tail(k, gamma - 1.0).lo) << ", "
       << static_cast<double>(zeta_tail(k, gamma - 1.0).hi) << "]";
  p.notes.push_back(note.str());
  note.str("");
  note << "delta = k_min - 1 = " << p.delta;
  p.notes.push_back(note.str());
  note.str("");
  note << "t = max{3 delta n0/(2 epsilon), 3 delta (delta+1)/epsilon} = " << p.t;
  p.notes.push_back(note.str());
  return p;
}

} // namespace hsf
