#include <doctest.h>

#include <cmath>

#include "hypcon/ball.hpp"
#include "hypcon/disk.hpp"
#include "hypcon/errors.hpp"
#include "support.hpp"

using namespace hypcon;
using hypcon::test::Gen;

TEST_CASE("two-dimensional oracle") {
  const BallPoint z(ComplexVector{{0.5, 0.0}, {0.0, 0.0}});
  const BallPoint w(ComplexVector{{0.0, 0.0}, {0.5, 0.0}});
  CHECK(ball_rho(z, w) == doctest::Approx(0.6614378277661477).epsilon(1e-15));
  CHECK(bergman_beta(z, w) == doctest::Approx(1.590730922447811).epsilon(1e-15));
  CHECK(bergman_beta(z.radial(), w.radial()) == 0.0);
  CHECK(ball_one_minus_rho_sq(z, w) == doctest::Approx(0.5625).epsilon(1e-15));
}

TEST_CASE("automorphism basics") {
  const BallPoint a(ComplexVector{{0.3, 0.1}, {-0.2, 0.4}});
  const BallPoint o = BallPoint::origin(2);
  CHECK(norm(ComplexVector{ball_mobius(a, o).coords()[0] - a.coords()[0],
                           ball_mobius(a, o).coords()[1] - a.coords()[1]}) < 1e-15);
  CHECK(ball_mobius(a, a).norm() < 1e-15);
  const BallPoint minus = ball_mobius(o, a);
  CHECK(minus.coords()[0] == -a.coords()[0]);
  CHECK(minus.coords()[1] == -a.coords()[1]);
}

TEST_CASE("inputs are validated") {
  CHECK_THROWS_AS(BallPoint(ComplexVector{}), InvalidInput);
  CHECK_THROWS_AS(BallPoint(ComplexVector{{0.8, 0.0}, {0.0, 0.6}}), InvalidInput);
  CHECK_THROWS_AS(BallPoint(ComplexVector{{std::nan(""), 0.0}}), InvalidInput);
  const BallPoint z2 = BallPoint::origin(2);
  const BallPoint z3 = BallPoint::origin(3);
  CHECK_THROWS_AS(ball_rho(z2, z3), InvalidInput);
  CHECK_THROWS_AS(ball_mobius(z2, z3), InvalidInput);
}

TEST_CASE("n = 1 reduces to the disk") {
  Gen g(11);
  for (int i = 0; i < 5000; ++i) {
    const DiskPoint z = g.disk(0.999);
    const DiskPoint w = g.disk(0.999);
    const BallPoint bz(ComplexVector{z.value()});
    const BallPoint bw(ComplexVector{w.value()});
    REQUIRE(std::abs(ball_rho(bz, bw) - pseudo_hyperbolic(z, w)) < 1e-14);
    REQUIRE(std::abs(ball_one_minus_rho_sq(bz, bw) - one_minus_phi_product(z, w)) < 1e-14);
    REQUIRE(std::abs(ball_mobius(bz, bw).coords()[0] - mobius_disk(z, w).value()) < 1e-14);
  }
}

TEST_CASE("property: involution and invariance in dimensions 2 and 3") {
  Gen g(12);
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i < 1000; ++i) {
      const BallPoint a = g.ball(n, 0.95);
      const BallPoint z = g.ball(n, 0.95);
      const BallPoint w = g.ball(n, 0.95);
      const BallPoint back = ball_mobius(a, ball_mobius(a, z));
      for (std::size_t k = 0; k < n; ++k) REQUIRE(std::abs(back.coords()[k] - z.coords()[k]) < 1e-12);
      REQUIRE(std::abs(ball_rho(ball_mobius(a, z), ball_mobius(a, w)) - ball_rho(z, w)) < 1e-12);
    }
  }
}

TEST_CASE("property: moduli do not increase beta") {
  Gen g(13);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int i = 0; i < 3000; ++i) {
      const BallPoint z = g.ball(n, 0.999);
      const BallPoint w = g.ball(n, 0.999);
      REQUIRE(bergman_beta(z.radial(), w.radial()) <= bergman_beta(z, w) + 1e-12);
    }
  }
}

TEST_CASE("Bergman form") {
  // at the origin H(u, v) = 2 <u, v>
  const ComplexVector u{{1.0, 0.5}, {-0.25, 2.0}};
  const ComplexVector v{{0.0, 1.0}, {3.0, -1.0}};
  const auto at0 = bergman_form(BallPoint::origin(2), u, v);
  CHECK(std::abs(at0.value - 2.0 * inner(u, v)) < 1e-15);

  // n = 1: 2 / (1 - |z|^2)^2, half the square of the disk density
  const BallPoint z(ComplexVector{{0.3, -0.4}});
  const auto h1 = bergman_form(z, ComplexVector{{1.0, 0.0}}, ComplexVector{{1.0, 0.0}});
  CHECK(h1.value.real() == doctest::Approx(2.0 / (0.75 * 0.75)).epsilon(1e-15));

  Gen g(14);
  for (int i = 0; i < 500; ++i) {
    const BallPoint p = g.ball(3, 0.95);
    const ComplexVector a = g.vector(3);
    const ComplexVector b = g.vector(3);
    const Complex hab = bergman_form(p, a, b).value;
    const Complex hba = bergman_form(p, b, a).value;
    REQUIRE(std::abs(hab - std::conj(hba)) < 1e-12 * std::max(1.0, std::abs(hab)));
    REQUIRE(bergman_form(p, a, a).value.real() > 0.0);
    REQUIRE(std::abs(bergman_form(p, a, a).value.imag()) < 1e-12 * bergman_form(p, a, a).value.real());
  }
}

TEST_CASE("property: automorphisms preserve the Bergman form") {
  Gen g(15);
  const double h = 1e-6;
  for (int i = 0; i < 300; ++i) {
    const BallPoint a = g.ball(2, 0.8);
    const BallPoint z = g.ball(2, 0.8);
    ComplexVector u = g.vector(2);
    const double scale = 1e-1 / norm(u);
    for (auto& c : u) c *= scale;
    // holomorphic map: the complex derivative along u by central differences
    ComplexVector zp = z.coords(), zm = z.coords();
    for (std::size_t k = 0; k < 2; ++k) {
      zp[k] += h * u[k];
      zm[k] -= h * u[k];
    }
    const BallPoint fp = ball_mobius(a, BallPoint(zp));
    const BallPoint fm = ball_mobius(a, BallPoint(zm));
    ComplexVector du(2);
    for (std::size_t k = 0; k < 2; ++k) du[k] = (fp.coords()[k] - fm.coords()[k]) / (2.0 * h);
    const double before = bergman_form(z, u, u).value.real();
    const double after = bergman_form(ball_mobius(a, z), du, du).value.real();
    REQUIRE(after == doctest::Approx(before).epsilon(1e-6));
  }
}
