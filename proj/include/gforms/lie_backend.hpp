#pragma once
// Matrix models of quadratic Lie groups: a Lie-algebra basis, the
// commutator bracket, an invariant nondegenerate pairing, and adjoint
// action by group elements, together with deterministic sampling.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gforms {

/// Deterministic random stream; one instance per trial, derived from a
/// master seed so that trial sweeps parallelize reproducibly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [-1, 1].
  double coeff() { return dist_(gen_); }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

/// Derive a per-stream seed from a master seed (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// A quadratic Lie group realized by n-by-n matrices.
///
/// Conventions (fixed throughout the library):
///   - bracket [x, y] = xy - yx;
///   - adjoint Ad_g(x) = g^{-1} x g, so Ad_{gh} = Ad_h . Ad_g;
///   - pairing (x, y) = coeffs(x)^T P coeffs(y) with P the Gram matrix of
///     scale * tr(xy) on the basis (so by default (x, y) = scale * tr(xy)).
class Backend {
 public:
  /// Construct a named backend and validate its structure: bracket
  /// closure, antisymmetry, Jacobi, pairing symmetry, nondegeneracy and
  /// ad-invariance, all to absolute tolerance 1e-12.
  /// Families: "sl2", "so3", "gl1", "gl2", "gl3", "gln" (requires n >= 1).
  /// Throws std::invalid_argument for unknown families or bad n.
  static Backend make(const std::string& family, int n = 0);

  /// Same construction but skipping validation and allowing a replacement
  /// pairing Gram matrix; used by tests that deliberately break structure.
  static Backend unchecked(const std::string& name, int n,
                           std::vector<Eigen::MatrixXd> basis,
                           Eigen::MatrixXd pairing_gram);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const Eigen::MatrixXd& basis(int i) const { return basis_[i]; }
  const std::vector<Eigen::MatrixXd>& basis() const { return basis_; }
  const Eigen::MatrixXd& pairing_gram() const { return pairing_; }
  /// Human-readable pairing description, e.g. "tr(xy)" or "-1/2 tr(xy)".
  const std::string& pairing_desc() const { return pairing_desc_; }

  Eigen::MatrixXd identity() const {
    return Eigen::MatrixXd::Identity(n_, n_);
  }

  /// [x, y] = xy - yx.
  Eigen::MatrixXd bracket(const Eigen::MatrixXd& x,
                          const Eigen::MatrixXd& y) const {
    return x * y - y * x;
  }

  /// Invariant pairing (x, y); x and y must lie in the algebra's span.
  double pair(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) const;

  /// Ad_g(x) = g^{-1} x g. Throws std::domain_error if g is singular.
  Eigen::MatrixXd adjoint(const Eigen::MatrixXd& g,
                          const Eigen::MatrixXd& x) const;

  /// Matrix of Ad_g in the chosen basis (dim x dim).
  Eigen::MatrixXd ad_matrix(const Eigen::MatrixXd& g) const;

  /// Coefficients of x in the basis (least squares; exact on the span).
  Eigen::VectorXd coeffs(const Eigen::MatrixXd& x) const;

  Eigen::MatrixXd from_coeffs(const Eigen::VectorXd& c) const;

  /// Dual basis f_i with (f_i, e_j) = delta_ij.
  Eigen::MatrixXd dual_basis(int i) const;

  /// Random algebra element: basis coefficients uniform in
  /// [-radius, radius].
  Eigen::MatrixXd sample_lie(Rng& rng, double radius = 1.0) const;

  /// Random group element exp(x) for x = sample_lie; redraws while
  /// |det| < 1e-6 (at most 100 attempts, then throws std::runtime_error).
  /// Smaller radii give better-conditioned elements for long words.
  Eigen::MatrixXd sample_group(Rng& rng, double radius = 1.0) const;

  /// Matrix inverse with a singularity guard (|det| < 1e-12 throws).
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& g) const;

 private:
  Backend() = default;
  void finalize();  // build extractor, dual basis, Gram if absent
  void validate() const;

  std::string name_;
  int n_ = 0;
  std::vector<Eigen::MatrixXd> basis_;
  Eigen::MatrixXd pairing_;        // dim x dim Gram matrix
  Eigen::MatrixXd pairing_inv_;    // inverse Gram
  Eigen::MatrixXd extractor_;      // dim x n^2, coeffs(x) = extractor * vec(x)
  std::vector<Eigen::MatrixXd> dual_;
  std::string pairing_desc_;
};

}  // namespace gforms
