#include "wignerlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "wignerlab/circle_maps.hpp"
#include "wignerlab/classifier.hpp"
#include "wignerlab/projective.hpp"
#include "wignerlab/state_maps.hpp"
#include "wignerlab/verifier.hpp"

namespace wignerlab::acceptance {

namespace {

constexpr std::uint64_t kSeed = 42;

template <class... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  os << std::setprecision(3);
  (os << ... << args);
  return os.str();
}

Outcome metric_identity() {
  double worst = 0.0;
  for (std::size_t dim : {2, 3, 4, 8}) {
    std::mt19937_64 rng(kSeed + dim);
    for (int i = 0; i < 1000; ++i) {
      const PureState p = random_pure_state(dim, rng);
      const PureState q = random_pure_state(dim, rng);
      const double spectral = operator_norm_distance(projector_matrix(p), projector_matrix(q));
      worst = std::max(worst, std::abs(distance(p, q) - spectral));
    }
  }
  return {worst <= 1e-10, cat("max |sqrt(1-trPQ) - ||P-Q||| = ", worst, " over 4000 pairs")};
}

Outcome phi_nonexpansive() {
  bool ok = true;
  double worst = -1.0;
  for (std::size_t dim = 2; dim <= 6; ++dim) {
    const auto r = check_nonexpansive(make_phi_map(dim), dim, 10000, 200, kSeed + dim);
    ok = ok && r.passed() && r.worst_gap <= 1e-12;
    worst = std::max(worst, r.worst_gap);
  }
  return {ok, cat("no witness in dims 2-6; worst gap ", worst)};
}

Outcome phi_not_isometry() {
  const auto r = check_isometry(make_phi_map(2), 2, 10000, kSeed);
  const bool ok = r.witness && std::abs(r.witness->gap) >= 0.5;
  return {ok, cat("witness gap ", r.witness ? r.witness->gap : 0.0, " (d_in ",
                  r.witness ? r.witness->d_in : 0.0, ", d_out ", r.witness ? r.witness->d_out : 0.0, ")")};
}

Outcome tau_equivalence() {
  const auto fold = check_nonexpansive(make_tau_map(CircleMap::fold()), 2, 10000, 200, kSeed);
  const auto cst = check_nonexpansive(make_tau_map(CircleMap::constant(1.0)), 2, 10000, 200, kSeed);
  const auto pow2 = check_nonexpansive(make_tau_map(CircleMap::power(2)), 2, 1000, 200, kSeed);
  const bool ok = fold.passed() && cst.passed() && pow2.witness && pow2.witness->gap >= 0.25;
  return {ok, cat("tau_fold worst ", fold.worst_gap, ", tau_const worst ", cst.worst_gap,
                  ", tau_power2 witness gap ", pow2.witness ? pow2.witness->gap : 0.0)};
}

Outcome classifier_round_trip() {
  std::mt19937_64 rng(kSeed);
  int correct = 0;
  int total = 0;
  double worst_residual = 0.0;
  bool gauge_ok = true;
  for (Branch expected : {Branch::WignerUnitary, Branch::WignerAntiunitary, Branch::EntrywiseAbs}) {
    for (int m = 0; m < 50; ++m) {
      const std::size_t dim = 3 + static_cast<std::size_t>(m % 3);
      const CMatrix u = random_unitary(dim, rng);
      std::optional<OrthoSystem> hint;
      std::optional<PureStateMap> map;
      if (expected == Branch::EntrywiseAbs) {
        const CMatrix v = random_unitary(dim, rng);
        map = make_composed_map(u, v);
        hint = OrthoSystem::from_unitary_columns(u.adjoint());
      } else {
        map = make_wigner_map({u, expected == Branch::WignerAntiunitary});
      }
      ++total;
      const auto r = classify(*map, dim, hint);
      if (r.branch != expected) continue;
      std::mt19937_64 fresh(kSeed * 1000 + static_cast<std::uint64_t>(total));
      std::vector<PureState> states;
      for (int s = 0; s < 100; ++s) states.push_back(random_pure_state(dim, fresh));
      const double res = std::max(r.residual, validation_residual(*map, r, states));
      worst_residual = std::max(worst_residual, res);
      gauge_ok = gauge_ok && r.diagonal && (*r.diagonal)(0, 0) == Complex(1.0, 0.0);
      if (res <= 1e-8) ++correct;
    }
  }
  return {correct == total && gauge_ok,
          cat(correct, "/", total, " correct; worst residual ", worst_residual, "; gauge u_00 = 1: ",
              gauge_ok ? "yes" : "no")};
}

Outcome dim2_recovery() {
  struct Case {
    CircleMap g;
    CircleClass expected;
  };
  const std::vector<Case> cases = {
      {CircleMap::rotation(std::polar(1.0, std::numbers::pi / 3.0)), CircleClass::Rotation},
      {CircleMap::conjugate_rotation(1.0), CircleClass::ConjRotation},
      {CircleMap::constant(1.0), CircleClass::HalfCircleImage},
      {CircleMap::fold(), CircleClass::HalfCircleImage},
  };
  bool ok = true;
  double worst = 0.0;
  const auto grid = probe_grid(16);
  for (const auto& c : cases) {
    const auto r = classify_dim2(make_tau_map(c.g));
    if (r.branch != Branch::StandardDim2 || !r.g || !r.g_class) {
      ok = false;
      continue;
    }
    for (const auto& z : grid) worst = std::max(worst, std::abs((*r.g)(z) - c.g(z)));
    ok = ok && r.g_class->kind == c.expected;
  }
  ok = ok && worst <= 1e-8;
  return {ok, cat("4 circle maps recovered; max |g_rec - g| = ", worst)};
}

// Two-element OSP whose image under the map is again an OSP: for
// absolute-value forms the members have disjoint coordinate supports in the
// frame where the map acts entrywise.
OrthoSystem adapted_osp(std::size_t dim, const CMatrix& frame, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t cut = 1 + rng() % (dim - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector a = CVector::Zero(static_cast<Eigen::Index>(dim));
  CVector b = CVector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    (k < cut ? a : b)(static_cast<Eigen::Index>(idx[k])) = Complex(re, im);
  }
  return OrthoSystem({PureState::from_vector(CVector(frame * a)), PureState::from_vector(CVector(frame * b))});
}

Outcome inclusion_lemma() {
  constexpr std::size_t dim = 4;
  std::mt19937_64 rng(kSeed);
  const CMatrix id = CMatrix::Identity(dim, dim);
  double worst = -1.0;
  bool ok = true;
  for (int trial = 0; trial < 3; ++trial) {
    const CMatrix u = random_unitary(dim, rng);
    const CMatrix v = random_unitary(dim, rng);
    const PureState r1 = random_pure_state(dim, rng);
    const PureState r2 = random_pure_state(dim, rng);
    CVector w = r2.vector() - r1.vector() * r1.vector().dot(r2.vector());
    const OrthoSystem random_osp({r1, PureState::from_vector(w)});

    const auto phi = check_inclusion_lemma(make_phi_map(dim), adapted_osp(dim, id, rng), 1000, kSeed + trial);
    const auto comp = check_inclusion_lemma(make_composed_map(u, v), adapted_osp(dim, u.adjoint(), rng), 1000,
                                            kSeed + trial);
    const auto wig = check_inclusion_lemma(make_wigner_map({u, trial % 2 == 1}), random_osp, 1000, kSeed + trial);
    for (const auto* r : {&phi, &comp, &wig}) {
      ok = ok && r->passed();
      worst = std::max(worst, r->worst_gap);
    }
  }
  return {ok, cat("max (1 - tr(phi(Q)(P1+P2))) = ", worst, " over 9000 dominated states")};
}

Outcome example_block_embed() {
  constexpr std::size_t dim = 3;
  const auto map = make_block_embed_map(dim);
  const auto nc = check_noncontractive(map, dim, 10000, 200, kSeed);
  const auto iso = check_isometry(map, dim, 10000, kSeed);
  const bool ok = nc.passed() && iso.witness && iso.witness->d_in < 0.5 &&
                  std::abs(iso.witness->d_out - 1.0) <= 1e-12;
  return {ok, cat("noncontractive worst gap ", nc.worst_gap, "; isometry witness d_in ",
                  iso.witness ? iso.witness->d_in : -1.0, ", d_out ", iso.witness ? iso.witness->d_out : -1.0)};
}

Outcome example_separable_embed() {
  constexpr std::size_t dim = 4;
  const auto map = make_separable_embed_map(dim, 32, kSeed);
  const auto ne = check_nonexpansive(map, dim, 10000, 200, kSeed);
  std::mt19937_64 rng(kSeed + 7);
  std::vector<PureState> images;
  for (int i = 0; i < 1000; ++i) images.push_back(map(random_pure_state(dim, rng)));
  double max_tp = 0.0;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      max_tp = std::max(max_tp, transition_probability(images[i], images[j]));
    }
  }
  const bool injective = max_tp < 1.0 - kOrthoTol;
  const auto iso = check_isometry(map, dim, 10000, kSeed);
  const bool expands = iso.witness && iso.witness->d_out < iso.witness->d_in;
  return {ne.passed() && injective && expands,
          cat("nonexpansive worst gap ", ne.worst_gap, "; max image overlap ", max_tp,
              "; strict-expansion witness gap ", iso.witness ? iso.witness->gap : 0.0)};
}

Outcome example_proper_subspace() {
  constexpr std::size_t dim = 5;
  constexpr std::size_t k = 3;
  const auto map = make_proper_subspace_map(dim, k, 0);
  const auto ne = check_nonexpansive(map, dim, 10000, 200, kSeed);
  std::vector<PureState> pre;
  for (std::size_t a = 0; a < k; ++a) pre.push_back(PureState::basis(dim, a));
  const auto img = image_system(map, OrthoSystem(pre));
  const bool cosp = img && is_cosp(*img, k);
  return {ne.passed() && cosp, cat("nonexpansive worst gap ", ne.worst_gap, "; image of {e_0,e_1,e_2} is a COSP of C^3: ",
                                   cosp ? "yes" : "no")};
}

Outcome circle_oracle() {
  const auto grid = roots_of_unity(256);
  auto matches = [&](const CircleMap& g, auto&& form) {
    for (const auto& z : grid) {
      if (std::abs(g(z) - form(z)) > 1e-6) return false;
    }
    return true;
  };
  struct Case {
    CircleMap g;
    HomomorphismClass expected;
  };
  const std::vector<Case> cases = {{CircleMap::identity(), HomomorphismClass::Identity},
                                   {CircleMap::conjugation(), HomomorphismClass::Conjugation},
                                   {CircleMap::constant(1.0), HomomorphismClass::ConstantOne}};
  bool ok = true;
  for (const auto& c : cases) {
    const bool id = matches(c.g, [](Complex z) { return z; });
    const bool cj = matches(c.g, [](Complex z) { return std::conj(z); });
    const bool one = matches(c.g, [](Complex) { return Complex(1.0, 0.0); });
    const HomomorphismClass brute = id ? HomomorphismClass::Identity
                                    : cj ? HomomorphismClass::Conjugation
                                    : one ? HomomorphismClass::ConstantOne
                                          : HomomorphismClass::NotApplicable;
    const int n_match = int(id) + int(cj) + int(one);
    ok = ok && n_match == 1 && brute == c.expected && classify_homomorphism(c.g) == brute;
  }
  return {ok, "classify_homomorphism agrees with the 256-point brute force; each map matches exactly one class"};
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "metric identity sqrt(1 - trPQ) = ||P - Q||", 5.0, metric_identity},
      {2, "Phi is nonexpansive (dims 2-6)", 10.0, phi_nonexpansive},
      {3, "Phi is not an isometry (dim 2)", 5.0, phi_not_isometry},
      {4, "tau_g nonexpansive iff g nonexpansive", 10.0, tau_equivalence},
      {5, "classifier round trip (dims 3-5)", 60.0, classifier_round_trip},
      {6, "dim-2 standard map recovery", 5.0, dim2_recovery},
      {7, "inclusion lemma (dim 4)", 10.0, inclusion_lemma},
      {8, "block embedding: noncontractive, not an isometry", 10.0, example_block_embed},
      {9, "truncated separable embedding (32 anchors, dim 4)", 30.0, example_separable_embed},
      {10, "proper-subspace map (dim 5, k 3)", 10.0, example_proper_subspace},
      {11, "circle homomorphism oracle and exclusivity", 2.0, circle_oracle},
  };
  return all;
}

CriterionResult run_criterion(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < c.time_limit_seconds;
  if (!in_time) o.detail += " [runtime limit exceeded]";
  return {c.id, c.name, o.passed && in_time, o.detail, secs, c.time_limit_seconds};
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << std::setfill('0') << r.id << ' ' << r.name
     << " (" << std::fixed << std::setprecision(2) << r.seconds << " s / " << std::setprecision(0)
     << r.time_limit_seconds << " s): " << r.detail;
  return os.str();
}

bool run_all(std::ostream& out) {
  bool all = true;
  for (const auto& c : criteria()) {
    const auto r = run_criterion(c);
    out << format_line(r) << '\n' << std::flush;
    all = all && r.passed;
  }
  return all;
}

}  // namespace wignerlab::acceptance
