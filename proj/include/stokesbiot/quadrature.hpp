#pragma once

#include <array>

namespace stokesbiot {

// Quadrature on the reference triangle {(0,0),(1,0),(0,1)}. Weights include
// the reference area factor, so sum(w) = 1/2 and integrals are
// sum_q w_q f(xi_q, eta_q) scaled by 2*|T| for a physical triangle T.
struct TriQuadPoint {
  double xi, eta, w;
};

// Six-point rule, exact for total degree <= 4 (covers P2 x P2 products with
// constant coefficients).
inline const std::array<TriQuadPoint, 6>& tri_quadrature() {
  static const double a1 = 0.445948490915965;
  static const double w1 = 0.223381589678011 * 0.5;
  static const double a2 = 0.091576213509771;
  static const double w2 = 0.109951743655322 * 0.5;
  static const std::array<TriQuadPoint, 6> pts = {{
      {a1, a1, w1},
      {1.0 - 2.0 * a1, a1, w1},
      {a1, 1.0 - 2.0 * a1, w1},
      {a2, a2, w2},
      {1.0 - 2.0 * a2, a2, w2},
      {a2, 1.0 - 2.0 * a2, w2},
  }};
  return pts;
}
inline constexpr int kTriQuadratureDegree = 4;

// Three-point Gauss rule on [0,1], exact for degree <= 5; used on interface
// edges. Weights sum to 1.
struct EdgeQuadPoint {
  double s, w;
};

inline const std::array<EdgeQuadPoint, 3>& edge_quadrature() {
  static const double r = 0.7745966692414834;  // sqrt(3/5)
  static const std::array<EdgeQuadPoint, 3> pts = {{
      {0.5 * (1.0 - r), 5.0 / 18.0},
      {0.5, 8.0 / 18.0},
      {0.5 * (1.0 + r), 5.0 / 18.0},
  }};
  return pts;
}
inline constexpr int kEdgeQuadratureDegree = 5;

}  // namespace stokesbiot
