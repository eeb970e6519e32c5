#include "wignerlab/circle_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wignerlab {

namespace {

constexpr double kWitnessThreshold = 1e-9;
constexpr double kClassTol = 1e-6;
constexpr double kRotationTol = 1e-8;
constexpr std::size_t kCheckGrid = 64;

Complex unit(Complex z) {
  const double m = std::abs(z);
  if (!(m > 0.0)) throw std::domain_error("circle map produced zero");
  return z / m;
}

Complex polar_unit(double theta) { return std::polar(1.0, theta); }

std::vector<Complex> random_points(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<Complex> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(polar_unit(angle(rng)));
  return pts;
}

}  // namespace

std::string to_string(CircleForm f) {
  switch (f) {
    case CircleForm::Rotation: return "rotation";
    case CircleForm::ConjugateRotation: return "conj_rotation";
    case CircleForm::Constant: return "constant";
    case CircleForm::Fold: return "fold";
    case CircleForm::Power: return "power";
    case CircleForm::Sampled: return "sampled";
    case CircleForm::Opaque: return "opaque";
  }
  return "opaque";
}

CircleMap CircleMap::rotation(Complex c) {
  CircleMap g;
  g.form_ = CircleForm::Rotation;
  g.param_ = unit(c);
  g.eval_ = [c = g.param_](Complex z) { return c * z; };
  return g;
}

CircleMap CircleMap::conjugate_rotation(Complex c) {
  CircleMap g;
  g.form_ = CircleForm::ConjugateRotation;
  g.param_ = unit(c);
  g.eval_ = [c = g.param_](Complex z) { return c * std::conj(z); };
  return g;
}

CircleMap CircleMap::constant(Complex c) {
  CircleMap g;
  g.form_ = CircleForm::Constant;
  g.param_ = unit(c);
  g.eval_ = [c = g.param_](Complex) { return c; };
  return g;
}

CircleMap CircleMap::fold() {
  CircleMap g;
  g.form_ = CircleForm::Fold;
  g.eval_ = [](Complex z) { return polar_unit(std::abs(principal_angle(z))); };
  return g;
}

CircleMap CircleMap::power(int k) {
  CircleMap g;
  g.form_ = CircleForm::Power;
  g.exponent_ = k;
  g.eval_ = [k](Complex z) { return std::pow(z, k); };
  return g;
}

CircleMap CircleMap::sampled(Table table) {
  if (table.empty()) throw std::invalid_argument("sampled circle map needs a nonempty table");
  CircleMap g;
  g.form_ = CircleForm::Sampled;
  g.table_ = std::move(table);
  g.eval_ = [t = g.table_](Complex z) {
    const double theta = principal_angle(z);
    double best = 1e300;
    double out = 0.0;
    for (const auto& [in, o] : t) {
      const double d = std::abs(std::remainder(theta - in, 2.0 * std::numbers::pi));
      if (d < best) {
        best = d;
        out = o;
      }
    }
    return polar_unit(out);
  };
  return g;
}

CircleMap CircleMap::opaque(std::function<Complex(Complex)> f) {
  CircleMap g;
  g.form_ = CircleForm::Opaque;
  g.eval_ = std::move(f);
  return g;
}

Complex CircleMap::operator()(Complex z) const { return unit(eval_(z)); }

std::vector<Complex> roots_of_unity(std::size_t count) {
  std::vector<Complex> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(polar_unit(2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(count)));
  }
  return out;
}

double principal_angle(Complex z) {
  const double t = std::arg(z);
  return t == -std::numbers::pi ? std::numbers::pi : t;
}

std::optional<CircleWitness> check_nonexpansive_circle(const CircleMap& g, std::size_t n_samples,
                                                       std::uint64_t seed) {
  std::optional<CircleWitness> worst;
  auto consider = [&](Complex z1, Complex z2) {
    const double gap = std::abs(g(z1) - g(z2)) - std::abs(z1 - z2);
    if (gap > kWitnessThreshold && (!worst || gap > worst->gap)) worst = CircleWitness{z1, z2, gap};
  };
  const auto grid = roots_of_unity(kCheckGrid);
  for (const auto& a : grid) {
    for (const auto& b : grid) consider(a, b);
  }
  std::mt19937_64 rng(seed);
  const auto pts = random_points(2 * n_samples, rng);
  for (std::size_t i = 0; i < n_samples; ++i) consider(pts[2 * i], pts[2 * i + 1]);
  return worst;
}

std::optional<HomomorphismWitness> check_homomorphism(const CircleMap& g, std::size_t n_samples,
                                                      std::uint64_t seed) {
  std::optional<HomomorphismWitness> worst;
  auto consider = [&](Complex z, Complex w) {
    const double defect = std::abs(g(z * w) - g(z) * g(w));
    if (defect > kWitnessThreshold && (!worst || defect > worst->defect)) {
      worst = HomomorphismWitness{z, w, defect};
    }
  };
  const auto grid = roots_of_unity(kCheckGrid);
  for (const auto& a : grid) {
    for (const auto& b : grid) consider(a, b);
  }
  std::mt19937_64 rng(seed);
  const auto pts = random_points(2 * n_samples, rng);
  for (std::size_t i = 0; i < n_samples; ++i) consider(pts[2 * i], pts[2 * i + 1]);
  return worst;
}

std::string to_string(HomomorphismClass c) {
  switch (c) {
    case HomomorphismClass::Identity: return "identity";
    case HomomorphismClass::Conjugation: return "conjugation";
    case HomomorphismClass::ConstantOne: return "constant_one";
    case HomomorphismClass::NotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

HomomorphismClass classify_homomorphism(const CircleMap& g) {
  const Complex i(0.0, 1.0);
  const Complex gi = g(i);
  const Complex gm = g(Complex(-1.0, 0.0));
  auto near = [](Complex a, Complex b) { return std::abs(a - b) <= kClassTol; };
  if (near(gi, i)) return HomomorphismClass::Identity;
  if (near(gi, -i)) return HomomorphismClass::Conjugation;
  if (near(gi, 1.0) && near(gm, 1.0)) return HomomorphismClass::ConstantOne;
  return HomomorphismClass::NotApplicable;
}

std::string to_string(CircleClass c) {
  switch (c) {
    case CircleClass::Rotation: return "rotation";
    case CircleClass::ConjRotation: return "conj_rotation";
    case CircleClass::HalfCircleImage: return "half_circle_image";
  }
  return "half_circle_image";
}

double angular_spread(std::span<const Complex> points) {
  if (points.empty()) return 0.0;
  std::vector<double> angles;
  angles.reserve(points.size());
  for (const auto& p : points) angles.push_back(std::arg(p));
  std::sort(angles.begin(), angles.end());
  double largest_gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
  for (std::size_t k = 1; k < angles.size(); ++k) {
    largest_gap = std::max(largest_gap, angles[k] - angles[k - 1]);
  }
  return std::max(0.0, 2.0 * std::numbers::pi - largest_gap);
}

CircleClassification classify_circle_map(const CircleMap& g, std::span<const Complex> grid) {
  if (grid.empty()) throw std::invalid_argument("classification grid is empty");
  const Complex c = g(Complex(1.0, 0.0));
  double rot_err = 0.0;
  double conj_err = 0.0;
  std::vector<Complex> image;
  image.reserve(grid.size());
  for (const auto& z : grid) {
    const Complex gz = g(z);
    image.push_back(gz);
    rot_err = std::max(rot_err, std::abs(gz - c * z));
    conj_err = std::max(conj_err, std::abs(gz - c * std::conj(z)));
  }
  const double spread = angular_spread(image);
  if (rot_err <= kRotationTol) return {CircleClass::Rotation, c, spread};
  if (conj_err <= kRotationTol) return {CircleClass::ConjRotation, c, spread};
  if (spread > std::numbers::pi + kClassTol) {
    throw std::domain_error("circle map image exceeds a closed half-circle; input is not nonexpansive");
  }
  return {CircleClass::HalfCircleImage, c, spread};
}

CircleClassification classify_circle_map(const CircleMap& g, std::size_t n_grid) {
  const auto grid = roots_of_unity(n_grid);
  return classify_circle_map(g, grid);
}

}  // namespace wignerlab
