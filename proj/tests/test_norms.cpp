#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mns/field_ops.hpp"
#include "mns/kernels.hpp"
#include "mns/norms.hpp"

using namespace mns;

namespace {
const double kPi = std::numbers::pi;

VelocityField constant_field(const GridSpec& g, double c) {
  VelocityField f = VelocityField::zero(g);
  for (std::size_t i = 0; i < g.nodes(); ++i) f.at(0, i) = c;
  return f;
}
}  // namespace

TEST_CASE("lq_norm basics") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  SUBCASE("zero field") {
    VelocityField z = VelocityField::zero(g);
    for (double q : {1.0, 2.0, 3.0, 7.5}) CHECK(lq_norm(z, q) == 0.0);
    CHECK(lq_norm(z, q_inf) == 0.0);
  }
  SUBCASE("constant field closed form c L^{3/q}") {
    const double c = 0.8;
    VelocityField f = constant_field(g, c);
    for (double q : {1.0, 2.0, 3.0, 6.0}) {
      const double expect = c * std::pow(g.extent, 3.0 / q);
      CHECK(lq_norm(f, q) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(lq_norm(f, q_inf) == doctest::Approx(c).epsilon(1e-14));
  }
  SUBCASE("q below 1 rejected") {
    CHECK_THROWS(lq_norm(VelocityField::zero(g), 0.5));
  }
}

TEST_CASE("interpolation inequality |f|_4 <= |f|_3^{3/4} |f|_inf^{1/4}") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  for (int trial = 0; trial < 50; ++trial) {
    VelocityField f = random_field(g, 300 + trial, 0.8, false);
    const double lhs = lq_norm(f, 4.0);
    const double rhs =
        std::pow(lq_norm(f, 3.0), 0.75) * std::pow(lq_norm(f, q_inf), 0.25);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("localized norm bounds and monotonicity") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  CHECK(localized_l3(VelocityField::zero(g), 1.0) == 0.0);
  CHECK_THROWS(localized_l3(VelocityField::zero(g), 0.0));
  CHECK_THROWS(localized_l3(VelocityField::zero(g), g.extent));

  for (int trial = 0; trial < 20; ++trial) {
    VelocityField f = random_field(g, 400 + trial, 0.9, true);
    const double full = lq_norm(f, 3.0);
    double prev = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double rho = 2.0 * g.spacing() +
                         (g.extent / 2.0 - 2.0 * g.spacing()) * i / 9.0;
      const double v = localized_l3(f, rho);
      CHECK(v <= full * (1.0 + 1e-12));
      CHECK(v >= prev * (1.0 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("localized norm of a constant field approaches the ball volume law") {
  // |c| (4 pi rho^3/3)^{1/3}; the sharp-indicator lattice count converges
  // under refinement.
  const double c = 1.0, L = 2.0 * kPi, rho = 1.0;
  const double exact = c * std::cbrt(4.0 * kPi * rho * rho * rho / 3.0);
  double prev_err = 0.0;
  int step = 0;
  for (int n : {16, 32, 64}) {
    GridSpec g = GridSpec::make(n, L);
    const double v = localized_l3(constant_field(g, c), rho);
    const double err = std::abs(v - exact) / exact;
    if (step > 0) CHECK(err < prev_err);
    prev_err = err;
    ++step;
  }
  CHECK(prev_err <= 5e-3);
}

TEST_CASE("bump inside the ball recovers the full L3 norm") {
  GridSpec g = GridSpec::make(32, 2.0 * kPi);
  VelocityField f = make_datum("curl_gaussian", 1.0, 0.4, g);
  const double full = lq_norm(f, 3.0);
  const double loc = localized_l3(f, g.extent / 2.0);
  CHECK(loc == doctest::Approx(full).epsilon(1e-6));
}

TEST_CASE("localized norm vanishes as rho shrinks for spread-out fields") {
  GridSpec g = GridSpec::make(32, 2.0 * kPi);
  VelocityField f = random_field(g, 9, 1.5, true);
  const double full = lq_norm(f, 3.0);
  CHECK(localized_l3(f, 2.0 * g.spacing()) <= 0.2 * full);
}

TEST_CASE("triple norm") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  TimeMesh mesh = TimeMesh::graded(0.1, 16);
  SUBCASE("zero trajectory") {
    Trajectory traj{mesh, std::vector<VelocityField>(mesh.nodes.size(),
                                                     VelocityField::zero(g))};
    NormTriple t = triple_norm(traj, 1.0, mesh.t_final);
    CHECK(t.value() == 0.0);
  }
  SUBCASE("time-constant trajectory closed form") {
    VelocityField u = random_field(g, 11, 0.8, true);
    Trajectory traj{mesh,
                    std::vector<VelocityField>(mesh.nodes.size(), u)};
    const double rho = 1.0, t = mesh.t_final;
    NormTriple nt = triple_norm(traj, rho, t);
    CHECK(nt.sup_weighted ==
          doctest::Approx(std::sqrt(t) * lq_norm(u, q_inf)).epsilon(1e-12));
    CHECK(nt.localized ==
          doctest::Approx(localized_l3(u, rho)).epsilon(1e-12));
    CHECK(nt.l3_weighted ==
          doctest::Approx(std::sqrt(t) / rho * lq_norm(u, 3.0)).epsilon(1e-12));
    CHECK(nt.value() ==
          doctest::Approx(nt.sup_weighted + nt.localized + nt.l3_weighted));
  }
  SUBCASE("monotone in the horizon t") {
    VelocityField u0 = make_datum("curl_gaussian", 0.5, 0.5, g);
    Trajectory traj = heat_flow(u0, mesh);
    const double rho = 1.0;
    double prev = -1.0;
    for (double t : {mesh.nodes[3], mesh.nodes[8], mesh.t_final}) {
      const double v = triple_norm(traj, rho, t).value();
      CHECK(v >= prev);
      prev = v;
    }
  }
  SUBCASE("heat flow: weighted sup attained at the last node for small t") {
    // sqrt(tau) |u(tau)|_inf for this bump peaks near tau = scale^2/6, so a
    // horizon below that keeps the sup at the final node.
    TimeMesh short_mesh = TimeMesh::graded(0.02, 16);
    VelocityField u0 = make_datum("curl_gaussian", 0.5, 0.5, g);
    Trajectory traj = heat_flow(u0, short_mesh);
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < traj.size(); ++j) {
      const double v =
          std::sqrt(short_mesh.nodes[j]) * lq_norm(traj.at(j), q_inf);
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    CHECK(arg == traj.size() - 1);
    NormTriple nt = triple_norm(traj, 1.0, short_mesh.t_final);
    CHECK(nt.sup_weighted == doctest::Approx(best).epsilon(1e-12));
  }
  SUBCASE("empty history rejected") {
    Trajectory empty{mesh, {}};
    CHECK_THROWS(triple_norm(empty, 1.0, 0.1));
  }
}

TEST_CASE("holder quotient") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  SUBCASE("constant field gives zero") {
    HolderSample h = holder_quotient(constant_field(g, 2.0), 0.5, 200);
    CHECK(h.quotient == 0.0);
    CHECK(h.pair_count == 200);
  }
  SUBCASE("theta 0 bounded by twice the sup norm") {
    VelocityField f = random_field(g, 21, 0.6, false);
    HolderSample h = holder_quotient(f, 0.0, 500);
    CHECK(h.quotient <= 2.0 * lq_norm(f, q_inf) * (1.0 + 1e-12));
  }
  SUBCASE("single mode obeys the mean-value bound") {
    const double A = 1.5, theta = 0.5;
    VelocityField f = VelocityField::zero(g);
    const double k = 2.0 * kPi / g.extent;
    std::size_t idx = 0;
    for (int iz = 0; iz < g.n; ++iz)
      for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix, ++idx)
          f.at(1, idx) = A * std::sin(k * g.coord(ix));
    // |f(x)-f(y)| <= A k d, so the quotient is at most A k d^{1-theta} with
    // d capped by the torus diameter.
    const double dmax = std::sqrt(3.0) * g.extent / 2.0;
    HolderSample h = holder_quotient(f, theta, 1000);
    CHECK(h.quotient <= A * k * std::pow(dmax, 1.0 - theta) * (1.0 + 1e-12));
  }
  SUBCASE("argument validation") {
    VelocityField f = constant_field(g, 1.0);
    CHECK_THROWS(holder_quotient(f, 1.0, 200));
    CHECK_THROWS(holder_quotient(f, -0.1, 200));
    CHECK_THROWS(holder_quotient(f, 0.5, 10));
  }
}
