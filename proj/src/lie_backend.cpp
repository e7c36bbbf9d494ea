#include "gforms/lie_backend.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace gforms {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 step on master + stream index; decorrelates trial streams.
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

constexpr double kStructTol = 1e-12;

std::vector<Eigen::MatrixXd> gl_basis(int n) {
  std::vector<Eigen::MatrixXd> basis;
  basis.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
      e(i, j) = 1.0;
      basis.push_back(e);
    }
  return basis;
}

std::vector<Eigen::MatrixXd> sl2_basis() {
  Eigen::MatrixXd e(2, 2), f(2, 2), h(2, 2);
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  h << 1, 0, 0, -1;
  return {e, f, h};
}

std::vector<Eigen::MatrixXd> so3_basis() {
  Eigen::MatrixXd l1(3, 3), l2(3, 3), l3(3, 3);
  l1 << 0, 0, 0, 0, 0, -1, 0, 1, 0;
  l2 << 0, 0, 1, 0, 0, 0, -1, 0, 0;
  l3 << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  return {l1, l2, l3};
}

Eigen::VectorXd vec(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

}  // namespace

Backend Backend::make(const std::string& family, int n) {
  Backend b;
  double scale = 1.0;
  if (family == "sl2") {
    if (n != 0 && n != 2)
      throw std::invalid_argument("sl2 has fixed matrix size 2");
    b.n_ = 2;
    b.basis_ = sl2_basis();
    b.pairing_desc_ = "tr(xy)";
  } else if (family == "so3") {
    if (n != 0 && n != 3)
      throw std::invalid_argument("so3 has fixed matrix size 3");
    b.n_ = 3;
    b.basis_ = so3_basis();
    scale = -0.5;
    b.pairing_desc_ = "-1/2 tr(xy)";
  } else if (family == "gl1" || family == "gl2" || family == "gl3" ||
             family == "gln") {
    int size = 0;
    if (family == "gln") {
      size = n;
    } else {
      size = family[2] - '0';
      if (n != 0 && n != size)
        throw std::invalid_argument(family + " has fixed matrix size");
    }
    if (size < 1 || size > 12)
      throw std::invalid_argument("gl(n) needs 1 <= n <= 12");
    b.n_ = size;
    b.basis_ = gl_basis(size);
    b.pairing_desc_ = "tr(xy)";
  } else {
    throw std::invalid_argument("unknown backend family: " + family);
  }
  b.name_ = (family == "gln") ? ("gl" + std::to_string(b.n_)) : family;

  const int dim = static_cast<int>(b.basis_.size());
  b.pairing_ = Eigen::MatrixXd(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      b.pairing_(i, j) = scale * (b.basis_[i] * b.basis_[j]).trace();

  b.finalize();
  b.validate();
  return b;
}

Backend Backend::unchecked(const std::string& name, int n,
                           std::vector<Eigen::MatrixXd> basis,
                           Eigen::MatrixXd pairing_gram) {
  Backend b;
  b.name_ = name;
  b.n_ = n;
  b.basis_ = std::move(basis);
  b.pairing_ = std::move(pairing_gram);
  b.pairing_desc_ = "custom";
  b.finalize();
  return b;
}

void Backend::finalize() {
  const int dim = static_cast<int>(basis_.size());
  Eigen::MatrixXd flat(n_ * n_, dim);
  for (int i = 0; i < dim; ++i) flat.col(i) = vec(basis_[i]);
  // Least-squares coefficient extractor; exact on the basis span.
  extractor_ =
      (flat.transpose() * flat).ldlt().solve(flat.transpose());

  // Pseudoinverse keeps unchecked() usable with a deliberately degenerate
  // Gram matrix; make() rejects those through validate().
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(pairing_);
  pairing_inv_ = cod.pseudoInverse();

  dual_.clear();
  dual_.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n_, n_);
    for (int k = 0; k < dim; ++k) f += pairing_inv_(i, k) * basis_[k];
    dual_.push_back(f);
  }
}

void Backend::validate() const {
  const int dim = this->dim();
  // Bracket closure and reconstruction exactness.
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Eigen::MatrixXd br = bracket(basis_[i], basis_[j]);
      Eigen::MatrixXd rec = from_coeffs(coeffs(br));
      if ((br - rec).norm() > kStructTol)
        throw std::invalid_argument("bracket not closed in basis span");
    }
  }
  // Antisymmetry and Jacobi.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      if ((bracket(basis_[i], basis_[j]) + bracket(basis_[j], basis_[i]))
              .norm() > kStructTol)
        throw std::invalid_argument("bracket not antisymmetric");
      for (int k = 0; k < dim; ++k) {
        Eigen::MatrixXd jac =
            bracket(basis_[i], bracket(basis_[j], basis_[k])) +
            bracket(basis_[j], bracket(basis_[k], basis_[i])) +
            bracket(basis_[k], bracket(basis_[i], basis_[j]));
        if (jac.norm() > kStructTol)
          throw std::invalid_argument("Jacobi identity fails");
      }
    }
  // Pairing symmetry, nondegeneracy, and ad-invariance
  // ([x,y],z) + (y,[x,z]) = 0.
  if ((pairing_ - pairing_.transpose()).norm() > kStructTol)
    throw std::invalid_argument("pairing not symmetric");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(pairing_);
  if (!lu.isInvertible())
    throw std::invalid_argument("backend pairing is degenerate");
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y)
      for (int z = 0; z < dim; ++z) {
        double lhs = pair(bracket(basis_[x], basis_[y]), basis_[z]) +
                     pair(basis_[y], bracket(basis_[x], basis_[z]));
        if (std::abs(lhs) > kStructTol)
          throw std::invalid_argument("pairing not ad-invariant");
      }
}

double Backend::pair(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) const {
  return coeffs(x).dot(pairing_ * coeffs(y));
}

Eigen::MatrixXd Backend::inverse(const Eigen::MatrixXd& g) const {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(g);
  if (std::abs(lu.determinant()) < 1e-12)
    throw std::domain_error("singular group element");
  return lu.inverse();
}

Eigen::MatrixXd Backend::adjoint(const Eigen::MatrixXd& g,
                                 const Eigen::MatrixXd& x) const {
  return inverse(g) * x * g;
}

Eigen::MatrixXd Backend::ad_matrix(const Eigen::MatrixXd& g) const {
  const int dim = this->dim();
  Eigen::MatrixXd m(dim, dim);
  Eigen::MatrixXd gi = inverse(g);
  for (int i = 0; i < dim; ++i) m.col(i) = coeffs(gi * basis_[i] * g);
  return m;
}

Eigen::VectorXd Backend::coeffs(const Eigen::MatrixXd& x) const {
  return extractor_ * vec(x);
}

Eigen::MatrixXd Backend::from_coeffs(const Eigen::VectorXd& c) const {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < dim(); ++i) x += c(i) * basis_[i];
  return x;
}

Eigen::MatrixXd Backend::dual_basis(int i) const { return dual_.at(i); }

Eigen::MatrixXd Backend::sample_lie(Rng& rng, double radius) const {
  Eigen::VectorXd c(dim());
  for (int i = 0; i < dim(); ++i) c(i) = radius * rng.coeff();
  return from_coeffs(c);
}

Eigen::MatrixXd Backend::sample_group(Rng& rng, double radius) const {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd g = sample_lie(rng, radius).exp();
    if (std::abs(g.determinant()) >= 1e-6) return g;
  }
  throw std::runtime_error("group sampling failed: determinant too small");
}

}  // namespace gforms
