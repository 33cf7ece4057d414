#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stokesbiot {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using Triplet = Eigen::Triplet<double>;

inline SparseMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& trips) {
  SparseMatrix a(rows, cols);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  return a;
}

inline double inf_norm(const SparseMatrix& a) {
  Vector row_sums = Vector::Zero(a.rows());
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it)
      row_sums[it.row()] += std::abs(it.value());
  return a.rows() ? row_sums.maxCoeff() : 0.0;
}

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reusable sparse LU factorization. Solves satisfy
//   ||A x - b||_inf <= 1e-10 (||A||_inf ||x||_inf + ||b||_inf),
// applying one step of iterative refinement when the direct solve falls
// short. Solves are deterministic and may run concurrently from several
// threads (each uses its own workspace).
class Factorization {
 public:
  explicit Factorization(SparseMatrix a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw std::invalid_argument("factorize: matrix must be square");
    a_.makeCompressed();
    anorm_ = inf_norm(a_);
    lu_.analyzePattern(a_);
    lu_.factorize(a_);
    if (lu_.info() != Eigen::Success)
      throw SingularMatrixError("factorize: " + lu_.lastErrorMessage());
  }

  Eigen::Index rows() const { return a_.rows(); }
  const SparseMatrix& matrix() const { return a_; }

  Vector solve(const Vector& b) const {
    if (b.size() != a_.rows()) throw std::invalid_argument("solve: dimension mismatch");
    Vector x = lu_.solve(b);
    const Vector r = b - a_ * x;
    const double bound = anorm_ * x.cwiseAbs().maxCoeff() + (b.size() ? b.cwiseAbs().maxCoeff() : 0.0);
    if (r.cwiseAbs().maxCoeff() > 1e-13 * bound) x += lu_.solve(r);
    return x;
  }

 private:
  SparseMatrix a_;
  double anorm_ = 0;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

inline Factorization factorize(SparseMatrix a) { return Factorization(std::move(a)); }
inline Vector solve(const Factorization& f, const Vector& b) { return f.solve(b); }

}  // namespace stokesbiot
