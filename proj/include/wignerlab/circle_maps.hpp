// Nonexpansive self-maps of the unit circle S^1: closed-form families,
// sampled tables, and the checks/classifications used to analyse them.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wignerlab/projective.hpp"

namespace wignerlab {

/// Shape of a circle map, when known.
enum class CircleForm { Rotation, ConjugateRotation, Constant, Fold, Power, Sampled, Opaque };

std::string to_string(CircleForm f);

/// A map S^1 -> S^1. Evaluators must be pure; outputs are renormalized to
/// modulus one.
class CircleMap {
 public:
  using Table = std::vector<std::pair<double, double>>;  // (theta_in, theta_out)

  static CircleMap identity() { return rotation(Complex(1.0, 0.0)); }
  static CircleMap conjugation() { return conjugate_rotation(Complex(1.0, 0.0)); }
  static CircleMap rotation(Complex c);            // z -> c z
  static CircleMap conjugate_rotation(Complex c);  // z -> c conj(z)
  static CircleMap constant(Complex c);
  /// e^{i t} -> e^{i |t|} for t in (-pi, pi].
  static CircleMap fold();
  /// z -> z^k. Expanding for k >= 2.
  static CircleMap power(int k);
  /// Nearest-angle lookup in a table of (theta_in, theta_out) pairs.
  static CircleMap sampled(Table table);
  static CircleMap opaque(std::function<Complex(Complex)> f);

  Complex operator()(Complex z) const;

  CircleForm form() const { return form_; }
  /// Parameter c of Rotation/ConjugateRotation/Constant.
  Complex parameter() const { return param_; }
  int exponent() const { return exponent_; }
  const Table& table() const { return table_; }

 private:
  CircleForm form_ = CircleForm::Opaque;
  Complex param_{1.0, 0.0};
  int exponent_ = 1;
  Table table_;
  std::function<Complex(Complex)> eval_;
};

/// The 2^k-th roots of unity, in order of increasing angle from 1.
std::vector<Complex> roots_of_unity(std::size_t count);

/// Angle in (-pi, pi].
double principal_angle(Complex z);

struct CircleWitness {
  Complex z1;
  Complex z2;
  double gap;
};

/// |g(z1) - g(z2)| <= |z1 - z2| on a 64-point root-of-unity grid (all pairs)
/// and on `n_samples` seeded random pairs. Returns a witness when violated by
/// more than 1e-9; gap is the chord excess |g(z1)-g(z2)| - |z1-z2|.
std::optional<CircleWitness> check_nonexpansive_circle(const CircleMap& g, std::size_t n_samples,
                                                       std::uint64_t seed);

struct HomomorphismWitness {
  Complex z;
  Complex w;
  double defect;  // |g(zw) - g(z) g(w)|
};

std::optional<HomomorphismWitness> check_homomorphism(const CircleMap& g, std::size_t n_samples,
                                                      std::uint64_t seed);

enum class HomomorphismClass { Identity, Conjugation, ConstantOne, NotApplicable };

std::string to_string(HomomorphismClass c);

/// Decides among z, conj(z) and 1 by evaluating at i and -1 (tolerance 1e-6).
HomomorphismClass classify_homomorphism(const CircleMap& g);

enum class CircleClass { Rotation, ConjRotation, HalfCircleImage };

std::string to_string(CircleClass c);

struct CircleClassification {
  CircleClass kind;
  Complex c;           // g(1) for the rotation branches
  double image_spread; // smallest arc containing the sampled image
};

/// Length of the smallest closed arc containing all points.
double angular_spread(std::span<const Complex> points);

/// Rotation / conjugate rotation / half-circle trichotomy for a nonexpansive
/// circle map, evaluated on `grid`. Throws std::domain_error when the image
/// is neither a rotation nor contained in a closed half-circle (which cannot
/// happen for a nonexpansive map).
CircleClassification classify_circle_map(const CircleMap& g, std::span<const Complex> grid);
CircleClassification classify_circle_map(const CircleMap& g, std::size_t n_grid);

}  // namespace wignerlab
