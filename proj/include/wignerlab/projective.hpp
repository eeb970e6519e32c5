// Pure states (rank-one projections) on C^n, the transition-probability
// metric, orthogonal systems and the 2x2 / block parameterizations.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wignerlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kGaugeTol = 1e-12;
inline constexpr double kOrthoTol = 1e-9;
inline constexpr double kHermitianTol = 1e-10;

/// A rank-one projection stored as its phase-gauge-fixed unit vector: the
/// first coordinate with modulus > 1e-12 is real and strictly positive.
class PureState {
 public:
  /// Normalizes and gauge-fixes `v`. Throws std::invalid_argument when `v`
  /// has fewer than 2 entries or vanishes.
  static PureState from_vector(const CVector& v);
  static PureState from_vector(std::initializer_list<Complex> entries);
  /// Standard basis state e_k in C^dim.
  static PureState basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return static_cast<std::size_t>(vec_.size()); }
  const CVector& vector() const { return vec_; }
  Complex operator[](std::size_t i) const { return vec_(static_cast<Eigen::Index>(i)); }

  /// Equal iff the transition probability is 1 within 1e-9.
  bool operator==(const PureState& other) const;

 private:
  explicit PureState(CVector v) : vec_(std::move(v)) {}
  CVector vec_;
};

/// Dense Hermitian matrix. Construction validates the Hermitian invariant.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix m);
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  CMatrix m_;
};

/// An orthogonal system of pure states (pairwise transition probability
/// <= 1e-9, common dimension).
class OrthoSystem {
 public:
  /// Throws std::invalid_argument if the members are not pairwise orthogonal
  /// or have mixed dimensions.
  explicit OrthoSystem(std::vector<PureState> members);
  /// The standard basis COSP {E_00, ..., E_(n-1)(n-1)}.
  static OrthoSystem standard(std::size_t dim);
  /// Columns of a unitary as a COSP.
  static OrthoSystem from_unitary_columns(const CMatrix& u);

  const std::vector<PureState>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  std::size_t dim() const { return members_.empty() ? 0 : members_.front().dim(); }

 private:
  std::vector<PureState> members_;
};

HermitianMatrix projector_matrix(const PureState& s);

/// |<v,w>|^2 clamped to [0,1].
double transition_probability(const PureState& p, const PureState& q);

/// sqrt(1 - tr(PQ)) = ||P - Q||.
///
/// 1 - |<v,w>|^2 is evaluated through the Lagrange identity
/// sum_{i<j} |v_i w_j - v_j w_i|^2, which keeps full relative accuracy for
/// nearly equal states where the subtraction would cancel.
double distance(const PureState& p, const PureState& q);

/// Spectral norm of A - B, computed by a Hermitian eigensolver.
double operator_norm_distance(const HermitianMatrix& a, const HermitianMatrix& b);

bool is_orthogonal(const PureState& p, const PureState& q, double tol = kOrthoTol);

/// Finite-dimensional completeness: member count equals dim.
bool is_cosp(const OrthoSystem& sys, std::size_t dim);

/// Validates that the given states form an OSP without throwing.
bool is_osp(std::span<const PureState> states, double tol = kOrthoTol);

struct TwoByTwoParams {
  double p;
  Complex z;
};

/// Writes a dim-2 state as [[p, z sqrt(p(1-p))], [conj(z) sqrt(p(1-p)), 1-p]].
/// z is reported as 1 when the off-diagonal entry vanishes.
TwoByTwoParams two_by_two_params(const PureState& s);

/// Inverse of two_by_two_params. Throws when p is outside [0,1] or |z| != 1.
PureState state_from_params(double p, Complex z);

struct BlockSplit {
  double lambda;
  std::optional<HermitianMatrix> top;     // P1, r x r
  std::optional<HermitianMatrix> bottom;  // P2, (n-r) x (n-r)
  CMatrix off_diagonal;                   // N, r x (n-r)
};

/// Splits a rank-one projection as [[lambda P1, N], [N*, (1-lambda) P2]].
/// Throws std::invalid_argument if `p` is not a rank-one projection within
/// 1e-9 or r is out of range.
BlockSplit block_split(const HermitianMatrix& p, std::size_t r);

/// Inverse of block_split.
CMatrix block_reassemble(const BlockSplit& split);

/// Normalized i.i.d. complex Gaussian vector, gauge-fixed.
PureState random_pure_state(std::size_t dim, std::uint64_t seed);
PureState random_pure_state(std::size_t dim, std::mt19937_64& rng);

/// Haar-distributed unitary (QR of a complex Gaussian matrix with the
/// diagonal phases of R removed).
CMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);

bool is_unitary(const CMatrix& u, double tol = 1e-10);

}  // namespace wignerlab
