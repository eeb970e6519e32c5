#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "wignerlab/circle_maps.hpp"

using namespace wignerlab;
using namespace wltest;

TEST_CASE("stock forms evaluate as expected") {
  const Complex z = std::polar(1.0, 0.7);
  CHECK(std::abs(CircleMap::identity()(z) - z) < 1e-15);
  CHECK(std::abs(CircleMap::conjugation()(z) - std::conj(z)) < 1e-15);
  CHECK(std::abs(CircleMap::rotation(I)(z) - I * z) < 1e-15);
  CHECK(std::abs(CircleMap::power(3)(z) - std::polar(1.0, 2.1)) < 1e-14);
  CHECK(std::abs(CircleMap::fold()(std::polar(1.0, -0.7)) - z) < 1e-15);
  CHECK(std::abs(CircleMap::constant(-1.0)(z) - Complex(-1.0)) < 1e-15);
  CHECK(principal_angle(Complex(-1.0)) == doctest::Approx(M_PI));
}

TEST_CASE("nonexpansive check on the circle") {
  CHECK_FALSE(check_nonexpansive_circle(CircleMap::rotation(I), 1000, 1));
  CHECK_FALSE(check_nonexpansive_circle(CircleMap::constant(1.0), 1000, 1));
  CHECK_FALSE(check_nonexpansive_circle(CircleMap::fold(), 1000, 1));
  const auto w = check_nonexpansive_circle(CircleMap::power(2), 1000, 1);
  REQUIRE(w);
  CHECK(w->gap > 1e-9);
  CHECK(std::abs(CircleMap::power(2)(w->z1) - CircleMap::power(2)(w->z2)) - std::abs(w->z1 - w->z2) ==
        doctest::Approx(w->gap).epsilon(1e-9));
  // the textbook pair
  const auto sq = CircleMap::power(2);
  CHECK(std::abs(sq(1.0) - sq(I)) == doctest::Approx(2.0));
  CHECK(std::abs(Complex(1.0) - I) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("homomorphism check") {
  CHECK_FALSE(check_homomorphism(CircleMap::identity(), 500, 2));
  CHECK_FALSE(check_homomorphism(CircleMap::conjugation(), 500, 2));
  CHECK(check_homomorphism(CircleMap::rotation(I), 500, 2));
  CHECK(check_homomorphism(CircleMap::fold(), 500, 2));
  // fold(i * -i) = 1, but fold(i) fold(-i) = i * i = -1
  const auto f = CircleMap::fold();
  CHECK(std::abs(f(I * -I) - f(I) * f(-I)) == doctest::Approx(2.0));
}

TEST_CASE("classify_homomorphism") {
  CHECK(classify_homomorphism(CircleMap::identity()) == HomomorphismClass::Identity);
  CHECK(classify_homomorphism(CircleMap::conjugation()) == HomomorphismClass::Conjugation);
  CHECK(classify_homomorphism(CircleMap::constant(1.0)) == HomomorphismClass::ConstantOne);
  CHECK(classify_homomorphism(CircleMap::constant(-1.0)) == HomomorphismClass::NotApplicable);
}

TEST_CASE("classify_circle_map") {
  const Complex c = std::polar(1.0, M_PI / 3);
  auto r = classify_circle_map(CircleMap::rotation(c), 64);
  CHECK(r.kind == CircleClass::Rotation);
  CHECK(std::abs(r.c - c) < 1e-10);

  r = classify_circle_map(CircleMap::conjugate_rotation(1.0), 64);
  CHECK(r.kind == CircleClass::ConjRotation);
  CHECK(std::abs(r.c - Complex(1.0)) < 1e-10);

  r = classify_circle_map(CircleMap::fold(), 64);
  CHECK(r.kind == CircleClass::HalfCircleImage);
  CHECK(r.image_spread == doctest::Approx(M_PI).epsilon(1e-9));

  r = classify_circle_map(CircleMap::constant(I), 64);
  CHECK(r.kind == CircleClass::HalfCircleImage);
  CHECK(r.image_spread == doctest::Approx(0.0));

  // squaring covers the whole circle, which no nonexpansive non-rotation can
  CHECK_THROWS_AS(classify_circle_map(CircleMap::power(2), 64), std::domain_error);
}

TEST_CASE("rotations are recovered from the grid for any phase") {
  for (double t = -3.0; t < 3.2; t += 0.37) {
    const Complex c = std::polar(1.0, t);
    const auto r = classify_circle_map(CircleMap::rotation(c), 32);
    REQUIRE(r.kind == CircleClass::Rotation);
    REQUIRE(std::abs(r.c - c) < 1e-10);
    const auto rc = classify_circle_map(CircleMap::conjugate_rotation(c), 32);
    REQUIRE(rc.kind == CircleClass::ConjRotation);
    REQUIRE(std::abs(rc.c - c) < 1e-10);
  }
}

TEST_CASE("angular_spread") {
  const std::vector<Complex> pts{1.0, I, -1.0};
  CHECK(angular_spread(pts) == doctest::Approx(M_PI));
  const std::vector<Complex> wrap{std::polar(1.0, 3.0), std::polar(1.0, -3.0)};
  CHECK(angular_spread(wrap) == doctest::Approx(2 * M_PI - 6.0));
  const auto roots = roots_of_unity(8);
  CHECK(angular_spread(roots) == doctest::Approx(2 * M_PI - M_PI / 4));
}

TEST_CASE("sampled maps use the nearest tabulated angle") {
  const CircleMap g = CircleMap::sampled({{0.0, 0.0}, {M_PI / 2, M_PI}});
  CHECK(std::abs(g(std::polar(1.0, 0.1)) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(g(std::polar(1.0, 1.4)) - Complex(-1.0)) < 1e-15);
}
