#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "j_basis.hpp"
#include "quatdmd/decompositions.hpp"
#include "quatdmd/error.hpp"

namespace quatdmd {

namespace {

using cd = std::complex<double>;

struct ConjugatePair {
  Eigen::Index first;
  Eigen::Index second;
};

// Greedy nearest-conjugate matching over eigenvalues sorted by (re, im).
std::vector<ConjugatePair> pair_conjugates(const Eigen::VectorXcd& ev, double tol) {
  const Eigen::Index count = ev.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });

  std::vector<bool> taken(static_cast<std::size_t>(count), false);
  std::vector<ConjugatePair> pairs;
  for (const Eigen::Index i : order) {
    if (taken[static_cast<std::size_t>(i)]) continue;
    Eigen::Index best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const Eigen::Index j : order) {
      if (j == i || taken[static_cast<std::size_t>(j)]) continue;
      const double d = std::abs(ev(j) - std::conj(ev(i)));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < 0 || best_dist > tol) {
      std::ostringstream msg;
      msg << "standard_eigen: eigenvalue " << ev(i) << " of the complex adjoint has no conjugate "
          << "partner within " << tol;
      throw Error(ErrorKind::pairing_failure, msg.str());
    }
    taken[static_cast<std::size_t>(i)] = true;
    taken[static_cast<std::size_t>(best)] = true;
    pairs.push_back({i, best});
  }
  return pairs;
}

void canonicalize_phase(std::vector<Quaternion>& x, bool real_eigenvalue) {
  double scale = 0.0;
  for (const auto& e : x) scale += norm_squared(e);
  scale = std::sqrt(scale);
  if (scale == 0.0) return;

  std::size_t pivot = 0;
  double pivot_norm = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double n = norm(x[i]);
    if (n > pivot_norm) {
      pivot_norm = n;
      pivot = i;
    }
  }

  // Only a complex rotation commutes with a non-real complex eigenvalue.
  Quaternion rot(1.0);
  const Quaternion c = x[pivot];
  if (real_eigenvalue) {
    rot = conjugate(c) / norm(c);
  } else if (const cd a = c.complex_a(); std::abs(a) > 0.0) {
    rot = Quaternion::from_complex(std::conj(a) / std::abs(a));
  }
  for (auto& e : x) e = (e * rot) / scale;
}

}  // namespace

QEigen standard_eigen(const QuaternionMatrix& q) {
  if (q.rows() != q.cols()) {
    throw Error(ErrorKind::shape, "standard_eigen: matrix must be square, got " +
                                      std::to_string(q.rows()) + "x" + std::to_string(q.cols()));
  }
  const std::size_t m = q.rows();
  QEigen out{{}, QuaternionMatrix(m, m)};
  if (m == 0) return out;

  const ComplexAdjoint chi = complex_adjoint(q);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(chi, true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::pairing_failure, "standard_eigen: complex eigensolver did not converge");
  }
  const Eigen::VectorXcd& ev = solver.eigenvalues();
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();

  const double tol = 1e-7 * frobenius_norm(q);
  const auto pairs = pair_conjugates(ev, tol);

  struct Accepted {
    cd value;
    Eigen::VectorXcd vector;
  };
  std::vector<Accepted> real_accepted;
  const std::vector<Eigen::Index> segments{static_cast<Eigen::Index>(2 * m)};

  out.values.reserve(m);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [a, b] = pairs[k];
    if (ev(b).imag() > ev(a).imag()) std::swap(a, b);
    const bool real_pair = std::max(std::abs(ev(a).imag()), std::abs(ev(b).imag())) <= tol;

    Eigen::Index chosen = a;
    if (real_pair) {
      // A real eigenvalue appears twice in chi(Q) with eigenvectors x and J x,
      // which are one quaternion direction. With repeated real eigenvalues the
      // pair members need not be J-images of each other, so pick whichever
      // adds more direction beyond what equal eigenvalues already contributed.
      detail::JOrthoBasis basis(segments);
      for (const auto& acc : real_accepted) {
        if (std::abs(acc.value - ev(a)) <= tol) basis.add_with_partner(acc.vector);
      }
      const double ra = basis.residual(vecs.col(a)).norm();
      const double rb = basis.residual(vecs.col(b)).norm();
      if (ra * ra < 0.5 && rb > ra) chosen = b;
      real_accepted.push_back({ev(chosen), vecs.col(chosen)});
    }

    const cd value(ev(chosen).real(), std::abs(ev(chosen).imag()));
    std::vector<Quaternion> x = quaternion_vector_from_adjoint(vecs.col(chosen));
    canonicalize_phase(x, real_pair);
    out.values.push_back(Quaternion::from_complex(value));
    out.vectors.set_column(k, x);
  }
  return out;
}

SpectralDecomposition spectral_decomposition(const QuaternionMatrix& q) {
  QEigen eig = standard_eigen(q);
  SpectralDecomposition out{std::move(eig.vectors), std::move(eig.values), 1.0};
  if (q.rows() == 0) return out;

  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(complex_adjoint(out.phi));
  const Eigen::VectorXd& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  out.inverse_condition = smax > 0.0 ? smin / smax : 0.0;
  if (!(out.inverse_condition > 1e-10)) {
    std::ostringstream msg;
    msg << "spectral_decomposition: eigenvector basis is singular (sigma_min/sigma_max = "
        << out.inverse_condition << "); matrix is defective or nearly so";
    throw NonDiagonalizableError(msg.str(), out.inverse_condition);
  }
  return out;
}

QuaternionMatrix spectral_reconstruct(const QuaternionMatrix& phi,
                                      const std::vector<Quaternion>& lambda) {
  return matmul(scale_columns_right(phi, lambda), pseudoinverse(phi));
}

}  // namespace quatdmd
