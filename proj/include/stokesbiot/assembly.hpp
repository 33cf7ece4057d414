#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stokesbiot/basis.hpp"
#include "stokesbiot/dofmap.hpp"
#include "stokesbiot/linalg.hpp"
#include "stokesbiot/mesh.hpp"
#include "stokesbiot/quadrature.hpp"

namespace stokesbiot {

// Affine map from the reference triangle onto triangle t.
struct CellGeometry {
  std::array<double, 2> p0;
  double j[2][2];      // columns are p1-p0, p2-p0
  double inv_jt[2][2]; // J^{-T}, maps reference gradients to physical ones
  double det;          // = 2 * area, positive for counterclockwise cells

  CellGeometry(const Mesh2D& m, int t) {
    const auto& a = m.vertices[m.triangles[t][0]];
    const auto& b = m.vertices[m.triangles[t][1]];
    const auto& c = m.vertices[m.triangles[t][2]];
    p0 = a;
    j[0][0] = b[0] - a[0];
    j[1][0] = b[1] - a[1];
    j[0][1] = c[0] - a[0];
    j[1][1] = c[1] - a[1];
    det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const double inv_det = 1.0 / det;
    // J^{-1} = (1/det) [ j11 -j01 ; -j10 j00 ], transpose for J^{-T}
    inv_jt[0][0] = j[1][1] * inv_det;
    inv_jt[0][1] = -j[1][0] * inv_det;
    inv_jt[1][0] = -j[0][1] * inv_det;
    inv_jt[1][1] = j[0][0] * inv_det;
  }

  std::array<double, 2> physical(double xi, double eta) const {
    return {p0[0] + j[0][0] * xi + j[0][1] * eta, p0[1] + j[1][0] * xi + j[1][1] * eta};
  }

  std::array<double, 2> reference(double x, double y) const {
    const double rx = x - p0[0], ry = y - p0[1];
    const double inv_det = 1.0 / det;
    return {(j[1][1] * rx - j[0][1] * ry) * inv_det, (-j[1][0] * rx + j[0][0] * ry) * inv_det};
  }

  void physical_grad(const double ref_grad[2], double out[2]) const {
    out[0] = inv_jt[0][0] * ref_grad[0] + inv_jt[0][1] * ref_grad[1];
    out[1] = inv_jt[1][0] * ref_grad[0] + inv_jt[1][1] * ref_grad[1];
  }
};

// Basis values and reference gradients tabulated at the volume quadrature points.
struct QuadratureTable {
  int nq = 0;
  int nb = 0;
  double vals[6][6];      // [qp][basis]
  double grads[6][6][2];  // [qp][basis][d]

  explicit QuadratureTable(const ReferenceBasis& basis) {
    const auto& qr = tri_quadrature();
    nq = static_cast<int>(qr.size());
    nb = basis.node_count;
    for (int q = 0; q < nq; ++q) {
      basis.eval(qr[q].xi, qr[q].eta, vals[q]);
      basis.grad(qr[q].xi, qr[q].eta, grads[q]);
    }
  }
};

inline const QuadratureTable& quadrature_table(int degree) {
  static const QuadratureTable p1(ReferenceBasis::p1());
  static const QuadratureTable p2(ReferenceBasis::p2());
  return degree == 1 ? p1 : p2;
}

// M_ij = density * int(phi_j phi_i); block-diagonal over components for
// vector fields.
inline SparseMatrix assemble_mass(const Mesh2D& mesh, const DofMap& dm, double density) {
  if (density < 0) throw std::invalid_argument("assemble_mass: density must be >= 0");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  const int nb = qt.nb;
  std::vector<Triplet> trips;
  trips.reserve(mesh.triangles.size() * nb * nb * dm.components);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const CellGeometry g(mesh, t);
    const int* cd = dm.cell(t);
    double mloc[6][6] = {};
    for (int q = 0; q < qt.nq; ++q) {
      const double w = qr[q].w * g.det * density;
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) mloc[a][b] += w * qt.vals[q][a] * qt.vals[q][b];
    }
    for (int c = 0; c < dm.components; ++c)
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b)
          trips.emplace_back(dm.vector_dof(c, cd[a]), dm.vector_dof(c, cd[b]), mloc[a][b]);
  }
  return from_triplets(dm.total(), dm.total(), trips);
}

// A_ij = 2 coeff * int( D(Phi_j) : D(Phi_i) ) with D(v) = (grad v + grad v^T)/2.
inline SparseMatrix assemble_sym_grad_stiffness(const Mesh2D& mesh, const DofMap& dm, double coeff) {
  if (dm.components != 2)
    throw std::invalid_argument("assemble_sym_grad_stiffness: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  const int nb = qt.nb;
  std::vector<Triplet> trips;
  trips.reserve(mesh.triangles.size() * nb * nb * 4);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const CellGeometry g(mesh, t);
    const int* cd = dm.cell(t);
    // 2 int D(phi_b e_beta) : D(phi_a e_alpha)
    //   = int( delta_ab grad phi_a . grad phi_b + d_beta phi_a d_alpha phi_b )
    double aloc[12][12] = {};
    for (int q = 0; q < qt.nq; ++q) {
      const double w = qr[q].w * g.det * coeff;
      double pg[6][2];
      for (int a = 0; a < nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < nb; ++a)
        for (int al = 0; al < 2; ++al)
          for (int b = 0; b < nb; ++b)
            for (int be = 0; be < 2; ++be) {
              double v = pg[a][be] * pg[b][al];
              if (al == be) v += pg[a][0] * pg[b][0] + pg[a][1] * pg[b][1];
              aloc[al * nb + a][be * nb + b] += w * v;
            }
    }
    for (int al = 0; al < 2; ++al)
      for (int a = 0; a < nb; ++a)
        for (int be = 0; be < 2; ++be)
          for (int b = 0; b < nb; ++b)
            trips.emplace_back(dm.vector_dof(al, cd[a]), dm.vector_dof(be, cd[b]),
                               aloc[al * nb + a][be * nb + b]);
  }
  return from_triplets(dm.total(), dm.total(), trips);
}

// B_ij = coeff * int( (div Phi_j)(div Phi_i) ).
inline SparseMatrix assemble_div_div(const Mesh2D& mesh, const DofMap& dm, double coeff) {
  if (dm.components != 2) throw std::invalid_argument("assemble_div_div: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  const int nb = qt.nb;
  std::vector<Triplet> trips;
  trips.reserve(mesh.triangles.size() * nb * nb * 4);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const CellGeometry g(mesh, t);
    const int* cd = dm.cell(t);
    double bloc[12][12] = {};
    for (int q = 0; q < qt.nq; ++q) {
      const double w = qr[q].w * g.det * coeff;
      double pg[6][2];
      for (int a = 0; a < nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < nb; ++a)
        for (int al = 0; al < 2; ++al)
          for (int b = 0; b < nb; ++b)
            for (int be = 0; be < 2; ++be)
              bloc[al * nb + a][be * nb + b] += w * pg[a][al] * pg[b][be];
    }
    for (int al = 0; al < 2; ++al)
      for (int a = 0; a < nb; ++a)
        for (int be = 0; be < 2; ++be)
          for (int b = 0; b < nb; ++b)
            trips.emplace_back(dm.vector_dof(al, cd[a]), dm.vector_dof(be, cd[b]),
                               bloc[al * nb + a][be * nb + b]);
  }
  return from_triplets(dm.total(), dm.total(), trips);
}

// Rectangular C with C_kj = int( psi_k div Phi_j ); rows are scalar test dofs,
// columns vector trial dofs. Callers place -C^T and +C into block systems.
inline SparseMatrix assemble_pressure_div(const Mesh2D& mesh, const DofMap& v_dm, const DofMap& q_dm) {
  if (v_dm.mesh != &mesh || q_dm.mesh != &mesh)
    throw std::invalid_argument("assemble_pressure_div: dofmaps built on a different mesh");
  if (v_dm.components != 2 || q_dm.components != 1)
    throw std::invalid_argument("assemble_pressure_div: need vector trial and scalar test dofmaps");
  const auto& qv = quadrature_table(v_dm.degree);
  const auto& qq = quadrature_table(q_dm.degree);
  const auto& qr = tri_quadrature();
  std::vector<Triplet> trips;
  trips.reserve(mesh.triangles.size() * qq.nb * qv.nb * 2);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const CellGeometry g(mesh, t);
    const int* vd = v_dm.cell(t);
    const int* qd = q_dm.cell(t);
    double cloc[3][12] = {};
    for (int q = 0; q < qr.size(); ++q) {
      const double w = qr[q].w * g.det;
      double pg[6][2];
      for (int b = 0; b < qv.nb; ++b) g.physical_grad(qv.grads[q][b], pg[b]);
      for (int k = 0; k < qq.nb; ++k)
        for (int b = 0; b < qv.nb; ++b)
          for (int be = 0; be < 2; ++be) cloc[k][be * qv.nb + b] += w * qq.vals[q][k] * pg[b][be];
    }
    for (int k = 0; k < qq.nb; ++k)
      for (int be = 0; be < 2; ++be)
        for (int b = 0; b < qv.nb; ++b)
          trips.emplace_back(qd[k], v_dm.vector_dof(be, vd[b]), cloc[k][be * qv.nb + b]);
  }
  return from_triplets(q_dm.total(), v_dm.total(), trips);
}

// Anisotropic stiffness int( (K grad phi_j) . grad phi_i ) for SPD K.
inline SparseMatrix assemble_scalar_stiffness(const Mesh2D& mesh, const DofMap& dm,
                                              const std::array<std::array<double, 2>, 2>& K) {
  if (dm.components != 1)
    throw std::invalid_argument("assemble_scalar_stiffness: scalar dofmap required");
  if (std::abs(K[0][1] - K[1][0]) > 1e-14 || K[0][0] <= 0 ||
      K[0][0] * K[1][1] - K[0][1] * K[1][0] <= 0)
    throw std::invalid_argument("assemble_scalar_stiffness: K must be symmetric positive definite");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  const int nb = qt.nb;
  std::vector<Triplet> trips;
  trips.reserve(mesh.triangles.size() * nb * nb);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const CellGeometry g(mesh, t);
    const int* cd = dm.cell(t);
    double aloc[6][6] = {};
    for (int q = 0; q < qt.nq; ++q) {
      const double w = qr[q].w * g.det;
      double pg[6][2];
      for (int a = 0; a < nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) {
          const double kx = K[0][0] * pg[b][0] + K[0][1] * pg[b][1];
          const double ky = K[1][0] * pg[b][0] + K[1][1] * pg[b][1];
          aloc[a][b] += w * (kx * pg[a][0] + ky * pg[a][1]);
        }
    }
    for (int a = 0; a < nb; ++a)
      for (int b = 0; b < nb; ++b) trips.emplace_back(cd[a], cd[b], aloc[a][b]);
  }
  return from_triplets(dm.total(), dm.total(), trips);
}

// b_i = int( f(t,x,y) phi_i ) for a scalar field.
template <class F>
Vector assemble_load(const Mesh2D& mesh, const DofMap& dm, F&& f, double t) {
  if (dm.components != 1) throw std::invalid_argument("assemble_load: scalar dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  Vector b = Vector::Zero(dm.total());
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(tri_quadrature()[q].xi, tri_quadrature()[q].eta);
      const double w = qr[q].w * g.det * f(t, x[0], x[1]);
      for (int a = 0; a < qt.nb; ++a) b[cd[a]] += w * qt.vals[q][a];
    }
  }
  return b;
}

// b_(a,alpha) = int( f_alpha(t,x,y) phi_a ) for a vector field.
template <class F>
Vector assemble_vector_load(const Mesh2D& mesh, const DofMap& dm, F&& f, double t) {
  if (dm.components != 2)
    throw std::invalid_argument("assemble_vector_load: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  Vector b = Vector::Zero(dm.total());
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(tri_quadrature()[q].xi, tri_quadrature()[q].eta);
      const std::array<double, 2> fv = f(t, x[0], x[1]);
      const double w = qr[q].w * g.det;
      for (int a = 0; a < qt.nb; ++a) {
        b[dm.vector_dof(0, cd[a])] += w * fv[0] * qt.vals[q][a];
        b[dm.vector_dof(1, cd[a])] += w * fv[1] * qt.vals[q][a];
      }
    }
  }
  return b;
}

// b_(a,alpha) = 2 coeff * int( D(u) : D(phi_a e_alpha) ) for a given exact
// gradient field; used for projection right-hand sides.
template <class GradF>
Vector assemble_sym_grad_load(const Mesh2D& mesh, const DofMap& dm, double coeff, GradF&& grad_u,
                              double t) {
  if (dm.components != 2)
    throw std::invalid_argument("assemble_sym_grad_load: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  Vector b = Vector::Zero(dm.total());
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(tri_quadrature()[q].xi, tri_quadrature()[q].eta);
      const std::array<std::array<double, 2>, 2> gu = grad_u(t, x[0], x[1]);
      const double d[2][2] = {{gu[0][0], 0.5 * (gu[0][1] + gu[1][0])},
                              {0.5 * (gu[0][1] + gu[1][0]), gu[1][1]}};
      const double w = qr[q].w * g.det * 2.0 * coeff;
      double pg[6][2];
      for (int a = 0; a < qt.nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < qt.nb; ++a)
        for (int al = 0; al < 2; ++al) {
          // D(u) : D(phi_a e_alpha) = sum_k D_{k,alpha} d_k phi_a
          const double v = d[0][al] * pg[a][0] + d[1][al] * pg[a][1];
          b[dm.vector_dof(al, cd[a])] += w * v;
        }
    }
  }
  return b;
}

// b_(a,alpha) = coeff * int( s(t,x,y) d_alpha phi_a ); realizes both
// (s, div v) pairings and lambda (div eta, div zeta) right-hand sides.
template <class F>
Vector assemble_div_load(const Mesh2D& mesh, const DofMap& dm, double coeff, F&& s, double t) {
  if (dm.components != 2) throw std::invalid_argument("assemble_div_load: vector dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  Vector b = Vector::Zero(dm.total());
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(tri_quadrature()[q].xi, tri_quadrature()[q].eta);
      const double w = qr[q].w * g.det * coeff * s(t, x[0], x[1]);
      double pg[6][2];
      for (int a = 0; a < qt.nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < qt.nb; ++a)
        for (int al = 0; al < 2; ++al) b[dm.vector_dof(al, cd[a])] += w * pg[a][al];
    }
  }
  return b;
}

// b_a = int( (K grad f) . grad phi_a ) from an exact gradient field.
template <class GradF>
Vector assemble_scalar_stiffness_load(const Mesh2D& mesh, const DofMap& dm,
                                      const std::array<std::array<double, 2>, 2>& K, GradF&& grad_f,
                                      double t) {
  if (dm.components != 1)
    throw std::invalid_argument("assemble_scalar_stiffness_load: scalar dofmap required");
  const auto& qt = quadrature_table(dm.degree);
  const auto& qr = tri_quadrature();
  Vector b = Vector::Zero(dm.total());
  for (int tr = 0; tr < static_cast<int>(mesh.triangles.size()); ++tr) {
    const CellGeometry g(mesh, tr);
    const int* cd = dm.cell(tr);
    for (int q = 0; q < qt.nq; ++q) {
      const auto x = g.physical(tri_quadrature()[q].xi, tri_quadrature()[q].eta);
      const std::array<double, 2> gf = grad_f(t, x[0], x[1]);
      const double kx = K[0][0] * gf[0] + K[0][1] * gf[1];
      const double ky = K[1][0] * gf[0] + K[1][1] * gf[1];
      const double w = qr[q].w * g.det;
      double pg[6][2];
      for (int a = 0; a < qt.nb; ++a) g.physical_grad(qt.grads[q][a], pg[a]);
      for (int a = 0; a < qt.nb; ++a) b[cd[a]] += w * (kx * pg[a][0] + ky * pg[a][1]);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Interface assembly. One side of an interface integral: the mesh, the dof
// map living on it, and its interface edges ordered by midpoint x.

struct InterfaceSide {
  const Mesh2D* mesh;
  const DofMap* dm;
  std::vector<InterfaceEdge> edges;
};

inline InterfaceSide make_interface_side(const Mesh2D& mesh, const DofMap& dm) {
  if (dm.mesh != &mesh) throw std::invalid_argument("interface side: dofmap not built on mesh");
  return {&mesh, &dm, interface_edges(mesh)};
}

namespace detail {

struct EdgeSpan {
  std::array<double, 2> a, b;  // endpoints sorted by x
  double len;
};

inline EdgeSpan edge_span(const Mesh2D& mesh, int e) {
  auto a = mesh.vertices[mesh.edges[e][0]];
  auto b = mesh.vertices[mesh.edges[e][1]];
  if (a[0] > b[0]) std::swap(a, b);
  return {a, b, b[0] - a[0]};
}

inline void validate_matching(const InterfaceSide& row, const InterfaceSide& col) {
  if (row.edges.size() != col.edges.size())
    throw std::invalid_argument("interface assembly: non-matching interface nodes");
  for (size_t k = 0; k < row.edges.size(); ++k) {
    const auto r = edge_span(*row.mesh, row.edges[k].edge);
    const auto c = edge_span(*col.mesh, col.edges[k].edge);
    if (r.a[0] != c.a[0] || r.b[0] != c.b[0] || r.a[1] != c.a[1] || r.b[1] != c.b[1])
      throw std::invalid_argument("interface assembly: non-matching interface nodes");
  }
}

// Generic worker: trace of each side is either phi_a * dir_alpha (vector side,
// dir = tangent or normal) or psi_a (scalar side, dir == nullptr).
inline SparseMatrix assemble_interface(const InterfaceSide& row, const double* row_dir,
                                       const InterfaceSide& col, const double* col_dir,
                                       double coeff) {
  validate_matching(row, col);
  const DofMap& rdm = *row.dm;
  const DofMap& cdm = *col.dm;
  const ReferenceBasis& rb = ReferenceBasis::of_degree(rdm.degree);
  const ReferenceBasis& cb = ReferenceBasis::of_degree(cdm.degree);
  const int rcomp = row_dir ? 2 : 1;
  const int ccomp = col_dir ? 2 : 1;
  if (rdm.components != rcomp || cdm.components != ccomp)
    throw std::invalid_argument("interface assembly: dofmap component mismatch");

  std::vector<Triplet> trips;
  const auto& qr = edge_quadrature();
  for (size_t k = 0; k < row.edges.size(); ++k) {
    const auto span = edge_span(*row.mesh, row.edges[k].edge);
    const CellGeometry rg(*row.mesh, row.edges[k].tri);
    const CellGeometry cg(*col.mesh, col.edges[k].tri);
    const int* rcd = rdm.cell(row.edges[k].tri);
    const int* ccd = cdm.cell(col.edges[k].tri);
    for (const auto& qp : qr) {
      const double x = span.a[0] + qp.s * (span.b[0] - span.a[0]);
      const double y = span.a[1] + qp.s * (span.b[1] - span.a[1]);
      const double w = qp.w * span.len * coeff;
      const auto rref = rg.reference(x, y);
      const auto cref = cg.reference(x, y);
      double rv[6], cv[6];
      rb.eval(rref[0], rref[1], rv);
      cb.eval(cref[0], cref[1], cv);
      for (int a = 0; a < rb.node_count; ++a)
        for (int ra = 0; ra < rcomp; ++ra) {
          const double tr = rv[a] * (row_dir ? row_dir[ra] : 1.0);
          if (tr == 0.0) continue;
          const int i = row_dir ? rdm.vector_dof(ra, rcd[a]) : rcd[a];
          for (int b = 0; b < cb.node_count; ++b)
            for (int cc = 0; cc < ccomp; ++cc) {
              const double tc = cv[b] * (col_dir ? col_dir[cc] : 1.0);
              if (tc == 0.0) continue;
              const int jj = col_dir ? cdm.vector_dof(cc, ccd[b]) : ccd[b];
              trips.emplace_back(i, jj, w * tr * tc);
            }
        }
    }
  }
  return from_triplets(rdm.total(), cdm.total(), trips);
}

}  // namespace detail

// G_ij = coeff * int_Gamma (Phi_j . tau)(Phi_i . tau); on the flat interface
// the tangential projector satisfies P v = (v . tau) tau.
inline SparseMatrix assemble_interface_tangential(const InterfaceSide& row, const InterfaceSide& col,
                                                  const std::array<double, 2>& tangent, double coeff) {
  return detail::assemble_interface(row, tangent.data(), col, tangent.data(), coeff);
}

// N_ij = coeff * int_Gamma (Phi_j . n_col)(Phi_i . n_row), vector-vector.
inline SparseMatrix assemble_interface_normal(const InterfaceSide& row, const std::array<double, 2>& normal_row,
                                              const InterfaceSide& col, const std::array<double, 2>& normal_col,
                                              double coeff) {
  return detail::assemble_interface(row, normal_row.data(), col, normal_col.data(), coeff);
}

// Vector rows against scalar columns: N_ij = coeff * int (psi_j)(Phi_i . n_row).
inline SparseMatrix assemble_interface_normal(const InterfaceSide& row, const std::array<double, 2>& normal_row,
                                              const InterfaceSide& col, double coeff) {
  return detail::assemble_interface(row, normal_row.data(), col, nullptr, coeff);
}

// Scalar rows against vector columns: N_ij = coeff * int (Phi_j . n_col)(psi_i).
inline SparseMatrix assemble_interface_normal(const InterfaceSide& row, const InterfaceSide& col,
                                              const std::array<double, 2>& normal_col, double coeff) {
  return detail::assemble_interface(row, nullptr, col, normal_col.data(), coeff);
}

// Scalar-scalar interface mass: N_ij = coeff * int (psi_j)(psi_i).
inline SparseMatrix assemble_interface_scalar(const InterfaceSide& row, const InterfaceSide& col,
                                              double coeff) {
  return detail::assemble_interface(row, nullptr, col, nullptr, coeff);
}

// b_(a,alpha) = coeff * int_Gamma g(t,x,y) phi_a dir_alpha for a vector dofmap;
// used for projection right-hand sides with g = u.tau or u.n.
template <class F>
Vector assemble_interface_vector_load(const InterfaceSide& side, const std::array<double, 2>& dir,
                                      double coeff, F&& g, double t) {
  const DofMap& dm = *side.dm;
  if (dm.components != 2)
    throw std::invalid_argument("assemble_interface_vector_load: vector dofmap required");
  const ReferenceBasis& basis = ReferenceBasis::of_degree(dm.degree);
  Vector b = Vector::Zero(dm.total());
  for (const auto& ie : side.edges) {
    const auto span = detail::edge_span(*side.mesh, ie.edge);
    const CellGeometry cgeom(*side.mesh, ie.tri);
    const int* cd = dm.cell(ie.tri);
    for (const auto& qp : edge_quadrature()) {
      const double x = span.a[0] + qp.s * (span.b[0] - span.a[0]);
      const double y = span.a[1] + qp.s * (span.b[1] - span.a[1]);
      const double w = qp.w * span.len * coeff * g(t, x, y);
      const auto ref = cgeom.reference(x, y);
      double v[6];
      basis.eval(ref[0], ref[1], v);
      for (int a = 0; a < basis.node_count; ++a)
        for (int c = 0; c < 2; ++c)
          if (dir[c] != 0.0) b[dm.vector_dof(c, cd[a])] += w * v[a] * dir[c];
    }
  }
  return b;
}

// b_a = coeff * int_Gamma g(t,x,y) psi_a for a scalar dofmap.
template <class F>
Vector assemble_interface_scalar_load(const InterfaceSide& side, double coeff, F&& g, double t) {
  const DofMap& dm = *side.dm;
  if (dm.components != 1)
    throw std::invalid_argument("assemble_interface_scalar_load: scalar dofmap required");
  const ReferenceBasis& basis = ReferenceBasis::of_degree(dm.degree);
  Vector b = Vector::Zero(dm.total());
  for (const auto& ie : side.edges) {
    const auto span = detail::edge_span(*side.mesh, ie.edge);
    const CellGeometry cgeom(*side.mesh, ie.tri);
    const int* cd = dm.cell(ie.tri);
    for (const auto& qp : edge_quadrature()) {
      const double x = span.a[0] + qp.s * (span.b[0] - span.a[0]);
      const double y = span.a[1] + qp.s * (span.b[1] - span.a[1]);
      const double w = qp.w * span.len * coeff * g(t, x, y);
      const auto ref = cgeom.reference(x, y);
      double v[6];
      basis.eval(ref[0], ref[1], v);
      for (int a = 0; a < basis.node_count; ++a) b[cd[a]] += w * v[a];
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// Dirichlet constraints by row replacement with symmetric column elimination.
// The matrix part is applied once (the factorized operator is reused across
// time steps); the rhs correction is applied per solve with the current
// boundary values.

// Constrained rows and columns zeroed, unit diagonal on constrained dofs.
inline SparseMatrix constrained_matrix(const SparseMatrix& a, const std::vector<char>& mask) {
  if (static_cast<int>(mask.size()) != a.rows())
    throw std::invalid_argument("constrained_matrix: mask size mismatch");
  std::vector<Triplet> trips;
  trips.reserve(a.nonZeros() + a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      if (!mask[it.row()] && !mask[it.col()]) trips.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < a.rows(); ++i)
    if (mask[i]) trips.emplace_back(i, i, 1.0);
  return from_triplets(a.rows(), a.cols(), trips);
}

// rhs correction for inhomogeneous values: g holds boundary values at
// constrained dofs (anything elsewhere is ignored). Free rows get
// rhs -= A g, constrained rows are set to the boundary value.
inline void apply_dirichlet_rhs(const SparseMatrix& a_orig, const std::vector<char>& mask,
                                const Vector& g, Vector& rhs) {
  Vector gc = Vector::Zero(g.size());
  for (int i = 0; i < g.size(); ++i)
    if (mask[i]) gc[i] = g[i];
  const Vector correction = a_orig * gc;
  for (int i = 0; i < rhs.size(); ++i) rhs[i] = mask[i] ? gc[i] : rhs[i] - correction[i];
}

}  // namespace stokesbiot
