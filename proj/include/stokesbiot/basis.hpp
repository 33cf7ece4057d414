#pragma once

#include <array>
#include <stdexcept>

namespace stokesbiot {

// Lagrange bases on the reference triangle with vertices (0,0), (1,0), (0,1).
// P1 nodes are the vertices; P2 adds the midpoints of the local edges
// (0,1), (1,2), (2,0) as nodes 3, 4, 5. Both satisfy the Kronecker property
// and partition of unity.
struct ReferenceBasis {
  int degree;
  int node_count;

  static const ReferenceBasis& p1() {
    static const ReferenceBasis b{1, 3};
    return b;
  }
  static const ReferenceBasis& p2() {
    static const ReferenceBasis b{2, 6};
    return b;
  }
  static const ReferenceBasis& of_degree(int degree) {
    if (degree == 1) return p1();
    if (degree == 2) return p2();
    throw std::invalid_argument("ReferenceBasis: degree must be 1 or 2");
  }

  // Reference coordinates of the nodes, in dof order.
  std::array<std::array<double, 2>, 6> nodes() const {
    if (degree == 1) return {{{0, 0}, {1, 0}, {0, 1}, {0, 0}, {0, 0}, {0, 0}}};
    return {{{0, 0}, {1, 0}, {0, 1}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}}};
  }

  void eval(double xi, double eta, double* v) const {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    if (degree == 1) {
      v[0] = l0;
      v[1] = l1;
      v[2] = l2;
      return;
    }
    v[0] = l0 * (2.0 * l0 - 1.0);
    v[1] = l1 * (2.0 * l1 - 1.0);
    v[2] = l2 * (2.0 * l2 - 1.0);
    v[3] = 4.0 * l0 * l1;
    v[4] = 4.0 * l1 * l2;
    v[5] = 4.0 * l2 * l0;
  }

  // Gradients with respect to the reference coordinates.
  void grad(double xi, double eta, double (*g)[2]) const {
    if (degree == 1) {
      g[0][0] = -1.0; g[0][1] = -1.0;
      g[1][0] = 1.0;  g[1][1] = 0.0;
      g[2][0] = 0.0;  g[2][1] = 1.0;
      return;
    }
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    // d l0 = (-1,-1), d l1 = (1,0), d l2 = (0,1)
    g[0][0] = -(4.0 * l0 - 1.0); g[0][1] = -(4.0 * l0 - 1.0);
    g[1][0] = 4.0 * l1 - 1.0;    g[1][1] = 0.0;
    g[2][0] = 0.0;               g[2][1] = 4.0 * l2 - 1.0;
    g[3][0] = 4.0 * (l0 - l1);   g[3][1] = -4.0 * l1;
    g[4][0] = 4.0 * l2;          g[4][1] = 4.0 * l1;
    g[5][0] = -4.0 * l2;         g[5][1] = 4.0 * (l0 - l2);
  }
};

}  // namespace stokesbiot
