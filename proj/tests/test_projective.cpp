#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "wignerlab/projective.hpp"

using namespace wignerlab;
using namespace wltest;

TEST_CASE("projector_matrix matches the outer product") {
  CHECK(max_diff(projector_matrix(PureState::basis(2, 0)).matrix(), mat2(1, 0, 0, 0)) < 1e-15);
  CHECK(max_diff(projector_matrix(PureState::from_vector({kRoot2, kRoot2})).matrix(),
                 mat2(0.5, 0.5, 0.5, 0.5)) < 1e-15);
  CHECK(max_diff(projector_matrix(PureState::from_vector({kRoot2, I * kRoot2})).matrix(),
                 mat2(0.5, -0.5 * I, 0.5 * I, 0.5)) < 1e-15);
}

TEST_CASE("states are rays: phases and scale do not matter") {
  const PureState a = PureState::from_vector({1.0, I});
  const PureState b = PureState::from_vector({3.0 * I, -3.0});
  CHECK(a == b);
  CHECK(proj_diff(a, b) < 1e-15);
  // gauge: first nonzero entry real positive
  CHECK(b[0].imag() == doctest::Approx(0.0));
  CHECK(b[0].real() > 0.0);
  CHECK_THROWS_AS(PureState::from_vector({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("transition probability and distance on known pairs") {
  const auto e0 = PureState::basis(2, 0);
  const auto e1 = PureState::basis(2, 1);
  const auto plus = PureState::from_vector({kRoot2, kRoot2});
  CHECK(transition_probability(plus, plus) == doctest::Approx(1.0));
  CHECK(transition_probability(e0, e1) == doctest::Approx(0.0));
  CHECK(transition_probability(e0, plus) == doctest::Approx(0.5));
  CHECK(distance(plus, plus) == doctest::Approx(0.0));
  CHECK(distance(e0, e1) == doctest::Approx(1.0));
  CHECK(distance(e0, plus) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(operator_norm_distance(projector_matrix(e0), projector_matrix(e0)) == doctest::Approx(0.0));
  CHECK(operator_norm_distance(projector_matrix(e0), projector_matrix(e1)) == doctest::Approx(1.0));
}

TEST_CASE("distance agrees with the spectral norm of P - Q") {
  std::mt19937_64 rng(7);
  for (std::size_t dim : {2, 3, 5, 8}) {
    for (int t = 0; t < 200; ++t) {
      const auto p = random_pure_state(dim, rng);
      const auto q = random_pure_state(dim, rng);
      const double oracle = operator_norm_distance(projector_matrix(p), projector_matrix(q));
      REQUIRE(std::abs(distance(p, q) - oracle) < 1e-10);
    }
  }
}

TEST_CASE("distance is a metric on sampled triples") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const auto a = random_pure_state(4, rng);
    const auto b = random_pure_state(4, rng);
    const auto c = random_pure_state(4, rng);
    REQUIRE(distance(a, b) == doctest::Approx(distance(b, a)).epsilon(1e-14));
    REQUIRE(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
    REQUIRE(distance(a, a) < 1e-12);
  }
}

TEST_CASE("distance is tiny but exact for nearby states") {
  const auto p = PureState::from_vector({1.0, 0.0});
  const auto q = PureState::from_vector({1.0, 1e-9});
  CHECK(distance(p, q) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("orthogonality and complete systems") {
  const auto plus = PureState::from_vector({kRoot2, kRoot2, 0.0});
  const auto minus = PureState::from_vector({kRoot2, -kRoot2, 0.0});
  CHECK(is_orthogonal(PureState::basis(2, 0), PureState::basis(2, 1)));
  CHECK_FALSE(is_orthogonal(plus, plus));
  CHECK(is_orthogonal(plus, minus));

  CHECK(is_cosp(OrthoSystem::standard(2), 2));
  CHECK_FALSE(is_cosp(OrthoSystem({PureState::basis(2, 0)}), 2));
  CHECK(is_cosp(OrthoSystem({plus, minus, PureState::basis(3, 2)}), 3));
  CHECK_THROWS_AS(OrthoSystem({plus, plus}), std::invalid_argument);

  const std::vector<PureState> not_osp{plus, PureState::basis(3, 0)};
  CHECK_FALSE(is_osp(not_osp));
}

TEST_CASE("two_by_two_params") {
  auto r = two_by_two_params(PureState::basis(2, 0));
  CHECK(r.p == doctest::Approx(1.0));
  CHECK(std::abs(r.z - Complex(1.0)) < 1e-15);

  // T_i: entries 1/2 with off-diagonal i/2
  r = two_by_two_params(PureState::from_vector({kRoot2, -I * kRoot2}));
  CHECK(r.p == doctest::Approx(0.5));
  CHECK(std::abs(r.z - I) < 1e-14);

  const Complex z = std::polar(1.0, M_PI / 4);
  const auto s = state_from_params(0.25, z);
  const auto back = two_by_two_params(s);
  CHECK(back.p == doctest::Approx(0.25));
  CHECK(std::abs(back.z - z) < 1e-14);
  const CMatrix expect = mat2(0.25, z * std::sqrt(0.1875), std::conj(z) * std::sqrt(0.1875), 0.75);
  CHECK(max_diff(projector_matrix(s).matrix(), expect) < 1e-14);
}

TEST_CASE("state_from_params") {
  CHECK(state_from_params(1.0, std::polar(1.0, 2.0)) == PureState::basis(2, 0));
  CHECK(max_diff(projector_matrix(state_from_params(0.5, 1.0)).matrix(), mat2(0.5, 0.5, 0.5, 0.5)) < 1e-15);
  CHECK(max_diff(projector_matrix(state_from_params(0.5, I)).matrix(), mat2(0.5, 0.5 * I, -0.5 * I, 0.5)) <
        1e-15);
  CHECK_THROWS_AS(state_from_params(1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(state_from_params(0.5, 2.0), std::invalid_argument);
}

TEST_CASE("params round trip on random dim-2 states") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const auto s = random_pure_state(2, rng);
    const auto pr = two_by_two_params(s);
    REQUIRE(proj_diff(state_from_params(pr.p, pr.z), s) < 1e-12);
  }
}

TEST_CASE("block_split") {
  auto b = block_split(projector_matrix(PureState::basis(2, 0)), 1);
  CHECK(b.lambda == doctest::Approx(1.0));
  REQUIRE(b.top);
  CHECK(std::abs((*b.top)(0, 0) - Complex(1.0)) < 1e-15);
  CHECK_FALSE(b.bottom);
  CHECK(std::abs(b.off_diagonal(0, 0)) < 1e-15);

  b = block_split(projector_matrix(PureState::from_vector({kRoot2, kRoot2})), 1);
  CHECK(b.lambda == doctest::Approx(0.5));
  REQUIRE(b.top);
  REQUIRE(b.bottom);
  CHECK(std::abs(b.off_diagonal(0, 0) - Complex(0.5)) < 1e-15);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto p = projector_matrix(random_pure_state(3, rng));
    REQUIRE(max_diff(block_reassemble(block_split(p, 2)), p.matrix()) < 1e-10);
  }
  CHECK_THROWS_AS(block_split(projector_matrix(PureState::basis(3, 0)), 3), std::invalid_argument);
}

TEST_CASE("random_pure_state is seeded and uniform") {
  CHECK(random_pure_state(4, 99).vector() == random_pure_state(4, 99).vector());
  std::mt19937_64 rng(2024);
  double mean = 0.0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    const auto s = random_pure_state(2, rng);
    REQUIRE(std::abs(s.vector().norm() - 1.0) < 1e-12);
    mean += std::norm(s[0]);
  }
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 0.02);
}

TEST_CASE("random_unitary is unitary") {
  std::mt19937_64 rng(1);
  for (std::size_t d : {1, 2, 5}) CHECK(is_unitary(random_unitary(d, rng)));
  CHECK_FALSE(is_unitary(mat2(1, 1, 0, 1)));
}
