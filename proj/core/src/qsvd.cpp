#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "j_basis.hpp"
#include "quatdmd/decompositions.hpp"
#include "quatdmd/error.hpp"

namespace quatdmd {

namespace {

struct ThinSvd {
  Eigen::MatrixXcd u;
  Eigen::VectorXd s;
  Eigen::MatrixXcd v;
};

// Householder QR followed by a two-sided Jacobi SVD of the small triangular
// factor. Much faster than a column-pivoted preconditioner on tall inputs.
ThinSvd thin_svd(const Eigen::MatrixXcd& a) {
  if (a.rows() < a.cols()) {
    ThinSvd t = thin_svd(a.adjoint());
    return {std::move(t.v), std::move(t.s), std::move(t.u)};
  }
  const Eigen::Index k = a.cols();
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(a.rows(), k);
  q.applyOnTheLeft(qr.householderQ());
  return {q * svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

struct KeptPair {
  Eigen::VectorXcd stacked;  // (u; v) / sqrt(2)
  double sigma;
};

}  // namespace

Qsvd qsvd(const QuaternionMatrix& q) {
  const auto m = static_cast<Eigen::Index>(q.rows());
  const auto n = static_cast<Eigen::Index>(q.cols());
  Qsvd out{QuaternionMatrix(q.rows(), 0), {}, QuaternionMatrix(q.cols(), 0)};
  if (q.empty()) return out;

  const ComplexAdjoint chi = complex_adjoint(q);
  const ThinSvd svd = thin_svd(chi);
  const Eigen::VectorXd& s = svd.s;
  if (s.size() == 0 || s(0) == 0.0) return out;

  const double threshold =
      static_cast<double>(std::max(m, n)) * s(0) * std::numeric_limits<double>::epsilon();
  Eigen::Index candidates = 0;
  while (candidates < s.size() && s(candidates) > threshold) ++candidates;
  const Eigen::Index wanted = candidates / 2;

  // Stack left and right vectors so that one combination coefficient set
  // moves both; (u_i; v_i)/sqrt(2) are orthonormal.
  const Eigen::MatrixXcd& u = svd.u;
  const Eigen::MatrixXcd& v = svd.v;
  auto stacked_column = [&](Eigen::Index i) {
    Eigen::VectorXcd z(2 * m + 2 * n);
    z.head(2 * m) = u.col(i);
    z.tail(2 * n) = v.col(i);
    return Eigen::VectorXcd(z / std::sqrt(2.0));
  };

  detail::JOrthoBasis basis({2 * m, 2 * n});
  std::vector<KeptPair> kept;
  std::vector<bool> used(static_cast<std::size_t>(candidates), false);

  // With distinct pairs this keeps exactly the odd columns: every even
  // column is the J-image of its predecessor and leaves no residual.
  for (Eigen::Index i = 0; i < candidates && static_cast<Eigen::Index>(kept.size()) < wanted; ++i) {
    Eigen::VectorXcd w = basis.residual(stacked_column(i));
    const double rho = w.norm();
    if (rho * rho > 0.5) {
      basis.add_with_partner(w);
      kept.push_back({w / rho, s(i)});
      used[static_cast<std::size_t>(i)] = true;
    }
  }
  // Clustered singular values can leave no single column above the cut;
  // fall back to the candidate with the most new direction.
  while (static_cast<Eigen::Index>(kept.size()) < wanted) {
    Eigen::Index best = -1;
    double best_rho = 1e-6;
    Eigen::VectorXcd best_w;
    for (Eigen::Index i = 0; i < candidates; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Eigen::VectorXcd w = basis.residual(stacked_column(i));
      const double rho = w.norm();
      if (rho > best_rho) {
        best = i;
        best_rho = rho;
        best_w = std::move(w);
      }
    }
    if (best < 0) break;
    basis.add_with_partner(best_w);
    kept.push_back({best_w / best_rho, s(best)});
    used[static_cast<std::size_t>(best)] = true;
  }

  std::stable_sort(kept.begin(), kept.end(),
                   [](const KeptPair& a, const KeptPair& b) { return a.sigma > b.sigma; });

  const std::size_t r = kept.size();
  out.u = QuaternionMatrix(q.rows(), r);
  out.v = QuaternionMatrix(q.cols(), r);
  out.sigma.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    const Eigen::VectorXcd uk = kept[k].stacked.head(2 * m).normalized();
    const Eigen::VectorXcd vk = kept[k].stacked.tail(2 * n).normalized();
    out.u.set_column(k, quaternion_vector_from_adjoint(uk));
    out.v.set_column(k, quaternion_vector_from_adjoint(vk));
    out.sigma[k] = kept[k].sigma;
  }
  return out;
}

QuaternionMatrix pseudoinverse(const QuaternionMatrix& q) {
  const Qsvd f = qsvd(q);
  std::vector<double> inv(f.sigma.size());
  std::transform(f.sigma.begin(), f.sigma.end(), inv.begin(), [](double s) { return 1.0 / s; });
  if (f.rank() == 0) return QuaternionMatrix(q.cols(), q.rows());
  return matmul(scale_columns(f.v, inv), conj_transpose(f.u));
}

}  // namespace quatdmd
