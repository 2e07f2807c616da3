#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hsf {

// Closed interval certified to contain a real value.
struct Enclosure {
  long double lo = 0;
  long double hi = 0;
  long double width() const { return hi - lo; }
  bool contains(long double x) const { return lo <= x && x <= hi; }
};

// Target width of zeta_tail enclosures.
inline constexpr long double kZetaWidth = 1e-9L;

/**
 * Encloses sum_{i >= k} i^-gamma. The first terms are summed exactly up to a
 * cut-off K; the remainder lies between int_K^inf x^-gamma dx - K^-gamma / 2
 * and int_{K+1/2}^inf x^-gamma dx by convexity. K is chosen so the bracket is
 * narrower than kZetaWidth. Throws Diverges when gamma <= 1.
 */
Enclosure zeta_tail(std::uint64_t k, double gamma);

// Same enclosure with an explicit number of summed terms.
Enclosure zeta_tail_terms(std::uint64_t k, double gamma, std::uint64_t terms);

// Least k >= 1 whose certified tail zeta(k, gamma) is below eps.
std::uint64_t k_min(double eps, double gamma);

// Degree bound delta with c * zeta(delta + 1, gamma - 1) < eps, so that G|delta
// loses fewer than eps * n edges on every SF(c, gamma) graph.
// Throws Unbounded when gamma <= 2.
std::size_t derive_delta(double eps, double c, double gamma);

// max{3 delta n0 / (2 eps), 3 delta (delta + 1) / eps}, rounded up.
std::size_t hyperfiniteness_bound(std::size_t delta, std::size_t n0, double eps);

/**
 * Class parameters (c, gamma, n0) and the target cut fraction eps, together
 * with everything derived from them. The construction runs with
 * eps_prime = eps / 3 so that red, blue and yellow edges together stay below
 * eps * n.
 */
struct HsfParams {
  double c = 2.0;
  double gamma = 3.0;
  std::size_t n0 = 4;
  double epsilon = 0.3;

  double epsilon_prime = 0.1;
  std::size_t delta = 0;
  std::size_t t = 0;
  std::vector<std::string> notes;

  static HsfParams derive(double c, double gamma, std::size_t n0, double epsilon);

  // Weight above which a structure-tree node turns blue.
  double blue_threshold() const {
    return static_cast<double>(delta) / epsilon_prime;
  }
  // Below this vertex count the whole graph fits in one part of size t.
  bool small_instance(std::size_t n) const {
    return static_cast<double>(n) <=
           static_cast<double>(delta) * static_cast<double>(n0) /
               (2.0 * epsilon_prime);
  }
};

} // namespace hsf
