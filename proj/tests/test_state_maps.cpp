#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "wignerlab/state_maps.hpp"

using namespace wignerlab;
using namespace wltest;

TEST_CASE("wigner_apply") {
  std::mt19937_64 rng(1);
  const auto s = random_pure_state(3, rng);
  CHECK(proj_diff(wigner_apply({CMatrix::Identity(3, 3), false}, s), s) < 1e-15);

  const auto plus_i = PureState::from_vector({kRoot2, I * kRoot2});
  const auto minus_i = PureState::from_vector({kRoot2, -I * kRoot2});
  CHECK(proj_diff(wigner_apply({CMatrix::Identity(2, 2), true}, plus_i), minus_i) < 1e-15);

  const auto t1 = PureState::from_vector({kRoot2, kRoot2});
  const auto out = wigner_apply({diag({1.0, I}), false}, t1);
  CHECK(max_diff(projector_matrix(out).matrix(), mat2(0.5, -0.5 * I, 0.5 * I, 0.5)) < 1e-15);

  CHECK_THROWS_AS(wigner_apply({mat2(1, 1, 0, 1), false}, t1), std::invalid_argument);
}

TEST_CASE("Wigner maps are isometries") {
  std::mt19937_64 rng(2);
  for (bool anti : {false, true}) {
    const auto map = make_wigner_map({random_unitary(4, rng), anti});
    for (int t = 0; t < 300; ++t) {
      const auto p = random_pure_state(4, rng);
      const auto q = random_pure_state(4, rng);
      REQUIRE(std::abs(distance(map(p), map(q)) - distance(p, q)) < 1e-12);
    }
  }
}

TEST_CASE("phi_abs on known states") {
  const auto minus = PureState::from_vector({kRoot2, -kRoot2});
  const auto plus = PureState::from_vector({kRoot2, kRoot2});
  CHECK(proj_diff(phi_abs(minus), plus) < 1e-15);
  const auto pos = PureState::from_vector({0.2, 0.5, 0.1});
  CHECK(proj_diff(phi_abs(pos), pos) < 1e-15);
  const double r = 1.0 / std::sqrt(3.0);
  const auto out = phi_abs(PureState::from_vector({r, I * r, -r}));
  CHECK((projector_matrix(out).matrix().array() - Complex(1.0 / 3)).abs().maxCoeff() < 1e-15);
}

TEST_CASE("Phi is idempotent and nonexpansive") {
  std::mt19937_64 rng(3);
  for (std::size_t dim : {2, 3, 6}) {
    for (int t = 0; t < 300; ++t) {
      const auto p = random_pure_state(dim, rng);
      const auto q = random_pure_state(dim, rng);
      REQUIRE(proj_diff(phi_abs(phi_abs(p)), phi_abs(p)) < 1e-12);
      REQUIRE(transition_probability(phi_abs(p), phi_abs(q)) >= transition_probability(p, q) - 1e-12);
    }
  }
}

TEST_CASE("Phi is equivariant under permuting the reference basis") {
  std::mt19937_64 rng(4);
  const std::size_t dim = 4;
  std::vector<int> perm{2, 0, 3, 1};
  CMatrix w = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) w(perm[k], static_cast<Eigen::Index>(k)) = 1.0;
  const EntrywiseAbsParams permuted{w};
  for (int t = 0; t < 100; ++t) {
    const auto p = random_pure_state(dim, rng);
    const CMatrix lhs = w * projector_matrix(phi_abs(p)).matrix() * w.adjoint();
    const auto wp = PureState::from_vector(w * p.vector());
    REQUIRE(max_diff(lhs, projector_matrix(phi_abs(permuted, wp)).matrix()) < 1e-12);
  }
}

TEST_CASE("tau_apply") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_pure_state(2, rng);
    REQUIRE(proj_diff(tau_apply(CircleMap::identity(), s), s) < 1e-14);
  }
  // fixed points at the poles
  CHECK(tau_apply(CircleMap::constant(I), PureState::basis(2, 0)) == PureState::basis(2, 0));
  CHECK(tau_apply(CircleMap::constant(I), PureState::basis(2, 1)) == PureState::basis(2, 1));
  const auto out = tau_apply(CircleMap::constant(1.0), state_from_params(0.5, I));
  CHECK(proj_diff(out, state_from_params(0.5, 1.0)) < 1e-15);
  CHECK_THROWS(tau_apply(CircleMap::identity(), PureState::basis(3, 0)));
}

TEST_CASE("composed Phi form") {
  std::mt19937_64 rng(6);
  const CMatrix id = CMatrix::Identity(3, 3);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_pure_state(3, rng);
    REQUIRE(proj_diff(composed_phi_form(id, id, s), phi_abs(s)) < 1e-15);
  }
  const CMatrix u = random_unitary(3, rng);
  const CMatrix v = random_unitary(3, rng);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_pure_state(3, rng);
    const auto q = random_pure_state(3, rng);
    REQUIRE(distance(composed_phi_form(u, v, p), composed_phi_form(u, v, q)) <= distance(p, q) + 1e-12);
  }
}

TEST_CASE("block embedding") {
  std::mt19937_64 rng(7);
  const auto never = [](const PureState&) { return false; };
  for (int t = 0; t < 50; ++t) {
    const auto p = random_pure_state(3, rng);
    const auto q = random_pure_state(3, rng);
    const auto ip = block_embed_apply(never, p);
    REQUIRE(ip.dim() == 6);
    REQUIRE(std::abs(distance(ip, block_embed_apply(never, q)) - distance(p, q)) < 1e-12);
  }
  // a pair at distance 0.3 straddling {tr(P E_00) > 1/2}
  const double a = std::asin(0.3);
  const auto in = PureState::from_vector({std::cos(M_PI / 4 - a / 2), std::sin(M_PI / 4 - a / 2)});
  const auto out = PureState::from_vector({std::cos(M_PI / 4 + a / 2), std::sin(M_PI / 4 + a / 2)});
  REQUIRE(weight_on_first_above_half(in));
  REQUIRE_FALSE(weight_on_first_above_half(out));
  CHECK(distance(in, out) == doctest::Approx(0.3).epsilon(1e-12));
  const auto map = make_block_embed_map(2);
  CHECK(distance(map(in), map(out)) == doctest::Approx(1.0));
}

TEST_CASE("separable embedding, single anchor") {
  const PureState x1 = PureState::from_vector({0.6, 0.8});
  const SeparableEmbedParams params{{x1}};
  CHECK(separable_embed_apply(params, x1) == PureState::basis(2, 0));
  CHECK(separable_embed_apply(params, PureState::from_vector({0.8, -0.6})) == PureState::basis(2, 1));
}

TEST_CASE("separable embedding never decreases transition probability") {
  std::mt19937_64 rng(8);
  const auto map = make_separable_embed_map(3, 16, 8);
  CHECK(map.dim_out() == 32);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_pure_state(3, rng);
    const auto q = random_pure_state(3, rng);
    REQUIRE(transition_probability(map(p), map(q)) >= transition_probability(p, q) - 1e-12);
  }
}

TEST_CASE("proper subspace map") {
  // K = span(e0, e1) inside C^3
  CHECK(proper_subspace_apply(2, 0, PureState::from_vector({0.6, 0.8, 0.0})) ==
        PureState::from_vector({0.6, 0.8}));
  CHECK(proper_subspace_apply(2, 0, PureState::basis(3, 2)) == PureState::basis(2, 0));
  CHECK(proper_subspace_apply(2, 1, PureState::basis(3, 1)) == PureState::basis(2, 1));

  std::mt19937_64 rng(9);
  const auto map = make_proper_subspace_map(5, 3, 0);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_pure_state(5, rng);
    const auto q = random_pure_state(5, rng);
    REQUIRE(distance(map(p), map(q)) <= distance(p, q) + 1e-12);
  }
}

TEST_CASE("map wrappers") {
  const auto m = make_identity_map(3);
  CHECK_THROWS_AS(m(PureState::basis(2, 0)), std::invalid_argument);
  const auto c = make_constant_map(PureState::basis(3, 1));
  CHECK(c(PureState::basis(3, 0)) == PureState::basis(3, 1));

  // conjugating by a unitary and its inverse leaves the map unchanged
  std::mt19937_64 rng(10);
  const CMatrix u = random_unitary(3, rng);
  const auto phi = make_phi_map(3);
  const auto conj = conjugate_map(conjugate_map(phi, u, u.adjoint()), u.adjoint(), u);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_pure_state(3, rng);
    REQUIRE(proj_diff(conj(s), phi(s)) < 1e-12);
  }
}
