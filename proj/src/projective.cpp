#include "wignerlab/projective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wignerlab {

namespace {

CVector gauge_fix(CVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > kGaugeTol) {
      const Complex phase = std::conj(v(i)) / mod;
      v *= phase;
      v(i) = Complex(std::abs(v(i)), 0.0);
      return v;
    }
  }
  return v;
}

void require_same_dim(const PureState& p, const PureState& q) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(p.dim()) + " vs " +
                                std::to_string(q.dim()));
  }
}

}  // namespace

PureState PureState::from_vector(const CVector& v) {
  if (v.size() < 2) throw std::invalid_argument("pure state needs dim >= 2");
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return PureState(gauge_fix(v / norm));
}

PureState PureState::from_vector(std::initializer_list<Complex> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const auto& c : entries) v(i++) = c;
  return from_vector(v);
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::out_of_range("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return from_vector(v);
}

bool PureState::operator==(const PureState& other) const {
  if (dim() != other.dim()) return false;
  return transition_probability(*this, other) >= 1.0 - kOrthoTol;
}

HermitianMatrix::HermitianMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("matrix is not square");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
}

OrthoSystem::OrthoSystem(std::vector<PureState> members) : members_(std::move(members)) {
  for (const auto& m : members_) {
    if (m.dim() != members_.front().dim()) {
      throw std::invalid_argument("orthogonal system members have mixed dimensions");
    }
  }
  if (!is_osp(members_)) throw std::invalid_argument("members are not pairwise orthogonal");
}

OrthoSystem OrthoSystem::standard(std::size_t dim) {
  std::vector<PureState> m;
  m.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) m.push_back(PureState::basis(dim, k));
  return OrthoSystem(std::move(m));
}

OrthoSystem OrthoSystem::from_unitary_columns(const CMatrix& u) {
  std::vector<PureState> m;
  for (Eigen::Index k = 0; k < u.cols(); ++k) m.push_back(PureState::from_vector(CVector(u.col(k))));
  return OrthoSystem(std::move(m));
}

HermitianMatrix projector_matrix(const PureState& s) {
  const CVector& v = s.vector();
  return HermitianMatrix(v * v.adjoint());
}

double transition_probability(const PureState& p, const PureState& q) {
  require_same_dim(p, q);
  const double t = std::norm(p.vector().dot(q.vector()));
  return std::clamp(t, 0.0, 1.0);
}

double distance(const PureState& p, const PureState& q) {
  require_same_dim(p, q);
  const CVector& v = p.vector();
  const CVector& w = q.vector();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    for (Eigen::Index j = i + 1; j < v.size(); ++j) {
      s += std::norm(v(i) * w(j) - v(j) * w(i));
    }
  }
  return std::sqrt(std::clamp(s, 0.0, 1.0));
}

double operator_norm_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_orthogonal(const PureState& p, const PureState& q, double tol) {
  return transition_probability(p, q) <= tol;
}

bool is_osp(std::span<const PureState> states, double tol) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (states[i].dim() != states[j].dim()) return false;
      if (!is_orthogonal(states[i], states[j], tol)) return false;
    }
  }
  return true;
}

bool is_cosp(const OrthoSystem& sys, std::size_t dim) {
  return sys.size() == dim && sys.dim() == dim;
}

TwoByTwoParams two_by_two_params(const PureState& s) {
  if (s.dim() != 2) throw std::invalid_argument("two_by_two_params requires dim 2");
  const Complex a = s[0];
  const Complex b = s[1];
  const double p = std::clamp(std::norm(a), 0.0, 1.0);
  const Complex off = a * std::conj(b);
  const double mod = std::abs(off);
  if (mod == 0.0) return {p, Complex(1.0, 0.0)};
  return {p, off / mod};
}

PureState state_from_params(double p, Complex z) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (std::abs(std::abs(z) - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("z must have modulus one");
  }
  CVector v(2);
  v(0) = std::sqrt(p);
  v(1) = std::conj(z) * std::sqrt(1.0 - p);
  return PureState::from_vector(v);
}

BlockSplit block_split(const HermitianMatrix& p, std::size_t r) {
  const auto n = p.dim();
  if (r < 1 || r >= n) throw std::invalid_argument("block size r must satisfy 1 <= r < n");
  const CMatrix& m = p.matrix();
  const bool idempotent = (m * m - m).cwiseAbs().maxCoeff() <= 1e-9;
  const bool trace_one = std::abs(m.trace() - Complex(1.0, 0.0)) <= 1e-9;
  if (!idempotent || !trace_one) throw std::invalid_argument("input is not a rank-one projection");

  const auto ri = static_cast<Eigen::Index>(r);
  const auto si = static_cast<Eigen::Index>(n - r);
  const CMatrix r1 = m.topLeftCorner(ri, ri);
  const CMatrix r2 = m.bottomRightCorner(si, si);
  const double lambda = std::clamp(r1.trace().real(), 0.0, 1.0);

  BlockSplit out{lambda, std::nullopt, std::nullopt, m.topRightCorner(ri, si)};
  if (lambda > 1e-12) out.top.emplace(CMatrix(r1 / lambda));
  if (1.0 - lambda > 1e-12) out.bottom.emplace(CMatrix(r2 / (1.0 - lambda)));
  return out;
}

CMatrix block_reassemble(const BlockSplit& split) {
  const Eigen::Index r = split.off_diagonal.rows();
  const Eigen::Index s = split.off_diagonal.cols();
  CMatrix m = CMatrix::Zero(r + s, r + s);
  if (split.top) m.topLeftCorner(r, r) = split.lambda * split.top->matrix();
  if (split.bottom) m.bottomRightCorner(s, s) = (1.0 - split.lambda) * split.bottom->matrix();
  m.topRightCorner(r, s) = split.off_diagonal;
  m.bottomLeftCorner(s, r) = split.off_diagonal.adjoint();
  return m;
}

PureState random_pure_state(std::size_t dim, std::mt19937_64& rng) {
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return PureState::from_vector(v);
}

PureState random_pure_state(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_pure_state(dim, rng);
}

CMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mod = std::abs(r(k, k));
    if (mod > 0.0) q.col(k) *= r(k, k) / mod;
  }
  return q;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix e = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return e.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace wignerlab
