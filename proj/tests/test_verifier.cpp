#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "test_support.hpp"
#include "wignerlab/serialize.hpp"
#include "wignerlab/verifier.hpp"

using namespace wignerlab;
using namespace wltest;

namespace {

void check_sound(const PureStateMap& map, const CheckReport& r) {
  REQUIRE(r.witness);
  const auto& w = *r.witness;
  CHECK(w.gap > kWitnessThreshold);
  CHECK(recompute_gap(map, r.property, w.p, w.q) == doctest::Approx(w.gap).epsilon(1e-9));
  CHECK(distance(w.p, w.q) == doctest::Approx(w.d_in).epsilon(1e-9));
}

}  // namespace

TEST_CASE("gap conventions") {
  CHECK(property_gap(Property::Nonexpansive, 0.3, 0.5) == doctest::Approx(0.2));
  CHECK(property_gap(Property::Noncontractive, 0.3, 0.5) == doctest::Approx(-0.2));
  CHECK(property_gap(Property::Isometry, 0.3, 0.5) == doctest::Approx(0.2));
  CHECK(property_from_string("noncontractive") == Property::Noncontractive);
  CHECK(property_from_string(to_string(Property::Isometry)) == Property::Isometry);
  CHECK_THROWS_AS(property_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("known positives report no witness") {
  std::mt19937_64 rng(1);
  CHECK(check_nonexpansive(make_phi_map(4), 4, 10000, 200, 1).passed());
  const auto w = make_wigner_map({random_unitary(3, rng), false});
  const auto iso = check_isometry(w, 3, 2000, 1);
  CHECK(iso.passed());
  CHECK(iso.worst_gap <= 1e-12);
  CHECK(check_noncontractive(make_block_embed_map(3), 3, 2000, 200, 1).passed());
  CHECK(check_noncontractive(make_identity_map(3), 3, 2000, 200, 1).passed());
  CHECK(check_orthogonality_preserving(w, 3, 2000, 1).passed());
}

TEST_CASE("known negatives yield sound witnesses") {
  const auto sq = make_tau_map(CircleMap::power(2));
  const auto r = check_nonexpansive(sq, 2, 1000, 200, 1);
  check_sound(sq, r);
  CHECK(r.witness->gap >= 0.25);

  const auto phi2 = make_phi_map(2);
  check_sound(phi2, check_noncontractive(phi2, 2, 10000, 200, 1));
  check_sound(phi2, check_isometry(phi2, 2, 10000, 1));
  check_sound(phi2, check_orthogonality_preserving(phi2, 2, 10000, 1));

  const auto sep = make_separable_embed_map(3, 16, 4);
  check_sound(sep, check_isometry(sep, 3, 2000, 1));
}

TEST_CASE("the (e0 +- e1) pair collapses under Phi") {
  const auto plus = PureState::from_vector({kRoot2, kRoot2});
  const auto minus = PureState::from_vector({kRoot2, -kRoot2});
  CHECK(recompute_gap(make_phi_map(2), Property::Noncontractive, plus, minus) == doctest::Approx(1.0));
}

TEST_CASE("reports are deterministic across thread counts") {
  const auto map = make_tau_map(CircleMap::power(2));
  std::string first;
  for (const char* threads : {"1", "3", "8"}) {
    ::setenv("WIGNERLAB_THREADS", threads, 1);
    CHECK(worker_count() == static_cast<std::size_t>(std::atoi(threads)));
    const auto dump = report_to_json(check_nonexpansive(map, 2, 3000, 50, 9)).dump();
    if (first.empty()) first = dump;
    CHECK(dump == first);
  }
  ::unsetenv("WIGNERLAB_THREADS");
}

TEST_CASE("noncontractive implies orthogonality preserving") {
  std::mt19937_64 rng(3);
  const std::vector<PureStateMap> maps{make_block_embed_map(3), make_identity_map(3),
                                       make_wigner_map({random_unitary(3, rng), true}), make_phi_map(3),
                                       make_proper_subspace_map(3, 2, 0)};
  for (const auto& m : maps) {
    const bool nc = check_noncontractive(m, 3, 2000, 50, 5).passed();
    const bool op = check_orthogonality_preserving(m, 3, 2000, 5).passed();
    if (nc) CHECK(op);
  }
}

TEST_CASE("inclusion lemma") {
  CHECK(check_inclusion_lemma(make_phi_map(3), OrthoSystem::standard(3), 1000, 1).passed());
  std::mt19937_64 rng(4);
  const auto w = make_wigner_map({random_unitary(4, rng), false});
  const auto osp = OrthoSystem::from_unitary_columns(random_unitary(4, rng));
  CHECK(check_inclusion_lemma(w, osp, 1000, 1).passed());

  // constant map: images of the basis coincide, so they are not an OSP
  CHECK_THROWS_AS(check_inclusion_lemma(make_constant_map(PureState::basis(3, 0)), OrthoSystem::standard(3), 10, 1),
                  std::invalid_argument);
}

TEST_CASE("finding a complete orthogonal system in the image") {
  CHECK(find_cosp_in_image(make_phi_map(3), 3));
  std::mt19937_64 rng(5);
  CHECK(find_cosp_in_image(make_wigner_map({random_unitary(3, rng), false}), 3));
  CHECK_FALSE(find_cosp_in_image(make_constant_map(PureState::basis(3, 0)), 3));

  const auto img = image_system(make_identity_map(3), OrthoSystem::standard(3));
  REQUIRE(img);
  CHECK(is_cosp(*img, 3));
}
