#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qroof/error.hpp"
#include "qroof/minkowski.hpp"
#include "support/random.hpp"

using namespace qroof;

TEST_CASE("to_four_vector reads off the Pauli coordinates") {
  CHECK(to_four_vector({0.5, 0.5, {0.0, 0.0}}) == FourVector(1, 0, 0, 0));
  CHECK(to_four_vector({1.0, 0.0, {0.0, 0.0}}) == FourVector(1, 0, 0, 1));
  CHECK(to_four_vector({0.5, 0.5, {0.5, 0.0}}) == FourVector(1, 1, 0, 0));
}

TEST_CASE("from_four_vector") {
  const Hermitian2 mixed = from_four_vector({1, 0, 0, 0});
  CHECK(mixed.m00 == 0.5);
  CHECK(mixed.m11 == 0.5);
  CHECK(mixed.m01 == std::complex<double>(0, 0));

  const Hermitian2 south = from_four_vector({1, 0, 0, -1});
  CHECK(south.m00 == 0.0);
  CHECK(south.m11 == 1.0);

  // (I + sigma_y) / 2, sigma_y = [[0, -i], [i, 0]]
  const Hermitian2 y = from_four_vector({1, 0, 1, 0});
  CHECK(y.m01 == std::complex<double>(0.0, -0.5));
  CHECK(y.matrix()(1, 0) == std::complex<double>(0.0, 0.5));
}

TEST_CASE("minkowski_dot and det_from_vector") {
  CHECK(minkowski_dot({1, 0, 0, 0}, {1, 0, 0, 0}) == 1.0);
  CHECK(minkowski_dot({1, 1, 0, 0}, {1, 1, 0, 0}) == 0.0);
  CHECK(minkowski_dot({1, 0, 0, 0}, {0, 0, 0, 1}) == 0.0);

  CHECK(det_from_vector({1, 0, 0, 0}) == 0.25);
  CHECK(det_from_vector({1, 0, 0, 1}) == 0.0);
  CHECK(det_from_vector({2, 0, 0, 0}) == 1.0);
}

TEST_CASE("causal_class") {
  CHECK(causal_class({1, 0, 0, 0}) == CausalClass::TimeLike);
  CHECK(causal_class({0, 0, 0, 1}) == CausalClass::SpaceLike);
  CHECK(causal_class({1, 1, 0, 0}) == CausalClass::LightLike);
  // normalized before comparing, so scale does not matter
  CHECK(causal_class({1e6, 1e6, 0, 1e-3}) == CausalClass::LightLike);
  CHECK_THROWS_AS(causal_class({0, 0, 0, 0}), Error);
}

TEST_CASE("metric squares to the identity") {
  CHECK((minkowski_metric() * minkowski_metric()).isIdentity(0.0));
}

TEST_CASE("round trip and determinant identity on random Hermitian matrices") {
  testing::Random rnd(11);
  double round_trip = 0.0;
  double det_error = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    const Hermitian2 m{rnd.uniform(-2, 2), rnd.uniform(-2, 2), {rnd.uniform(-2, 2), rnd.uniform(-2, 2)}};
    const Hermitian2 back = from_four_vector(to_four_vector(m));
    round_trip = std::max({round_trip, std::abs(back.m00 - m.m00), std::abs(back.m11 - m.m11), std::abs(back.m01 - m.m01)});
    if (i % 10 == 0) {
      const FourVector v{rnd.uniform(-2, 2), rnd.uniform(-2, 2), rnd.uniform(-2, 2), rnd.uniform(-2, 2)};
      const Hermitian2 h = from_four_vector(v);
      det_error = std::max(det_error, std::abs(4.0 * h.det() - minkowski_dot(v, v)));
      CHECK(std::abs(h.trace() - v.x0) <= 1e-15 * std::max(1.0, std::abs(v.x0)));
    }
  }
  CHECK(round_trip <= 1e-14);
  CHECK(det_error <= 1e-13);
}
