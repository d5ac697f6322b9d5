#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mns/certificate.hpp"
#include "mns/field_ops.hpp"
#include "mns/norms.hpp"

using namespace mns;

namespace {
const double kPi = std::numbers::pi;

DatumNorms norms_for(const VelocityField& u, const std::vector<double>& ladder) {
  DatumNorms n;
  n.l3 = lq_norm(u, 3.0);
  n.rho = ladder;
  for (double r : ladder) n.localized.push_back(localized_l3(u, r));
  return n;
}
}  // namespace

TEST_CASE("derived constants") {
  Constants c = derive_constants();
  CHECK(c.source == "derived");
  CHECK(c.c1 == 1.0);
  // Closed forms of the two radial Gaussian integrals, as independent checks:
  // h0 = (2/3) (4 pi)^{-1/2}, h1 = 2 / (3 sqrt(pi)).
  CHECK(c.h0 == doctest::Approx((2.0 / 3.0) / std::sqrt(4.0 * kPi))
                    .epsilon(1e-10));
  CHECK(c.h1 == doctest::Approx(2.0 / (3.0 * std::sqrt(kPi))).epsilon(1e-10));
  CHECK_THROWS(derive_constants(0.0));
  CHECK_THROWS(derive_constants(-1.0));
  Constants c2 = derive_constants(0.5);
  CHECK(c2.c1 == 0.5);
  CHECK(c2.h0 == c.h0);
}

TEST_CASE("recursion fixed point") {
  CHECK(recursion_fixed_point(0.0, 1.0).value() == 0.0);
  CHECK(recursion_fixed_point(3.0 / 16.0, 1.0).value() ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK_FALSE(recursion_fixed_point(0.3, 1.0).has_value());
  CHECK_THROWS(recursion_fixed_point(-0.1, 1.0));
  CHECK_THROWS(recursion_fixed_point(0.1, 0.0));

  SUBCASE("brute-force iteration stays below the root") {
    const double c = 1.0, xi0 = 0.2;
    const double root = recursion_fixed_point(xi0, c).value();
    double x = xi0;
    for (int m = 0; m < 10000; ++m) {
      x = xi0 + c * x * x;
      CHECK(x <= root + 1e-12);
    }
    CHECK(x == doctest::Approx(root).epsilon(1e-10));
  }
}

TEST_CASE("criterion value") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  auto ladder = default_rho_ladder(g, 8);
  Constants c = derive_constants();

  SUBCASE("zero datum gives zero") {
    DatumNorms n = norms_for(VelocityField::zero(g), ladder);
    for (double rho : ladder)
      for (double t : {1e-6, 0.1, 10.0})
        CHECK(criterion_value(n, c, rho, t) == 0.0);
  }
  SUBCASE("t -> 0 limit is (h0+1) localized norm") {
    VelocityField u = make_datum("curl_gaussian", 0.1, 0.5, g);
    DatumNorms n = norms_for(u, ladder);
    const double rho = ladder[4];
    const double limit = (c.h0 + 1.0) * n.localized_at(rho);
    CHECK(criterion_value(n, c, rho, 1e-24 * rho * rho) ==
          doctest::Approx(limit).epsilon(1e-9));
  }
  SUBCASE("strictly increasing in t") {
    VelocityField u = make_datum("curl_gaussian", 0.1, 0.5, g);
    DatumNorms n = norms_for(u, ladder);
    double prev = 0.0;
    for (double t : {0.001, 0.01, 0.1, 1.0, 10.0}) {
      const double B = criterion_value(n, c, ladder[4], t);
      CHECK(B > prev);
      prev = B;
    }
  }
  SUBCASE("double evaluation agrees") {
    VelocityField u = make_datum("dipole_pair", 0.2, 0.4, g);
    DatumNorms n = norms_for(u, ladder);
    const double rho = ladder[3], t = 0.07;
    const double direct = criterion_value(n, c, rho, t);
    const double recomputed = criterion_value_raw(
        localized_l3(u, rho), lq_norm(u, 3.0), c, rho, t);
    CHECK(direct == doctest::Approx(recomputed).epsilon(1e-12));
  }
  SUBCASE("argument validation") {
    DatumNorms n = norms_for(VelocityField::zero(g), ladder);
    CHECK_THROWS(criterion_value(n, c, 0.0, 0.1));
    CHECK_THROWS(criterion_value(n, c, ladder[0], 0.0));
    CHECK_THROWS(criterion_value(n, c, 0.1234, 0.1));  // not in ladder
  }
}

TEST_CASE("majorant and A-identity") {
  const double c1 = 1.0;
  CHECK_THROWS(majorant(0.25, c1));
  CHECK_THROWS(majorant(0.3, c1));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 0.2499);
  for (int trial = 0; trial < 200; ++trial) {
    const double B = dist(rng);
    const double A = majorant(B, c1);
    CHECK(A == doctest::Approx(recursion_fixed_point(B, c1).value())
                   .epsilon(1e-12));
    CHECK(A < 1.0 / (2.0 * c1));
    CHECK(A >= B);
  }
  // A strictly increasing in B.
  double prev = -1.0;
  for (double B : {0.01, 0.05, 0.1, 0.2, 0.24}) {
    const double A = majorant(B, c1);
    CHECK(A > prev);
    prev = A;
  }
}

TEST_CASE("t_of_rho") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  auto ladder = default_rho_ladder(g, 8);
  Constants c = derive_constants();

  SUBCASE("zero datum gives the infinite sentinel") {
    DatumNorms n = norms_for(VelocityField::zero(g), ladder);
    TimeOfRho tr = t_of_rho(n, c, ladder[2]);
    CHECK(tr.kind == TimeOfRho::Kind::infinite);
    CHECK(std::isinf(tr.t));
  }
  SUBCASE("large datum gives none") {
    VelocityField u = make_datum("curl_gaussian", 5.0, 0.5, g);
    DatumNorms n = norms_for(u, ladder);
    TimeOfRho tr = t_of_rho(n, c, ladder.back());
    CHECK(tr.kind == TimeOfRho::Kind::none);
  }
  SUBCASE("bisection residual: B(rho, t(rho)) = 1/(4 c1)") {
    VelocityField u = make_datum("curl_gaussian", 0.08, 0.5, g);
    DatumNorms n = norms_for(u, ladder);
    for (double rho : ladder) {
      TimeOfRho tr = t_of_rho(n, c, rho);
      if (tr.kind != TimeOfRho::Kind::finite) continue;
      const double B = criterion_value(n, c, rho, tr.t);
      CHECK(B == doctest::Approx(1.0 / (4.0 * c.c1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("rho ladder") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  CHECK_THROWS(default_rho_ladder(g, 1));
  auto ladder = default_rho_ladder(g, 16);
  REQUIRE(ladder.size() == 16);
  CHECK(ladder.front() == doctest::Approx(2.0 * g.spacing()));
  CHECK(ladder.back() == doctest::Approx(g.extent / 2.0));
  for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
    CHECK(ladder[i] < ladder[i + 1]);
}

TEST_CASE("existence certificate") {
  GridSpec g = GridSpec::make(16, 2.0 * kPi);
  Constants c = derive_constants();
  auto ladder = default_rho_ladder(g, 16);

  SUBCASE("zero datum: infinite time, global") {
    Certificate cert = existence_time(VelocityField::zero(g), c, ladder);
    CHECK(std::isinf(cert.T));
    CHECK(cert.global);
    CHECK(cert.status == "unbounded");
  }
  SUBCASE("oversized datum: everywhere violated") {
    VelocityField u = make_datum("curl_gaussian", 20.0, 0.5, g);
    Certificate cert = existence_time(u, c, ladder);
    CHECK(cert.T == 0.0);
    CHECK_FALSE(cert.global);
    CHECK(cert.status == "criterion-everywhere-violated");
  }
  SUBCASE("amplitude growth shrinks the certificate time") {
    VelocityField small = make_datum("curl_gaussian", 0.05, 0.5, g);
    VelocityField large = make_datum("curl_gaussian", 0.15, 0.5, g);
    Certificate cs = existence_time(small, c, ladder);
    Certificate cl = existence_time(large, c, ladder);
    REQUIRE(cs.status == "ok");
    REQUIRE(cl.status == "ok");
    CHECK(cl.T < cs.T);
  }
  SUBCASE("criterion holds along the A table and A increases in t") {
    VelocityField u = make_datum("curl_gaussian", 0.15, 0.5, g);
    Certificate cert = existence_time(u, c, ladder);
    REQUIRE(cert.status == "ok");
    REQUIRE(cert.a_table.size() >= 5);
    double prev_t = 0.0, prev_a = 0.0;
    for (auto [t, A] : cert.a_table) {
      CHECK(t > prev_t);
      CHECK(A > prev_a);
      CHECK(A < 1.0 / (2.0 * c.c1));
      const double B = criterion_value(cert.datum_norms, c, cert.rho_star, t);
      CHECK(4.0 * c.c1 * B < 1.0);
      prev_t = t;
      prev_a = A;
    }
  }
  SUBCASE("property-P surrogate: A(rho_p, t_p) decreases to zero") {
    // t_p = 4^-p, rho_p = 2^{-p/2} p: sqrt(t_p)/rho_p = 1/p -> 0 and
    // rho_p -> 0, so B -> 0 and the majorant with it.
    GridSpec g2 = GridSpec::make(32, 2.0 * kPi);
    VelocityField u = random_field(g2, 77, 1.4, true);
    u = scale_field(0.05 / lq_norm(u, 3.0), u);
    Constants cc = derive_constants();
    std::vector<double> rhos, as;
    for (int p = 1; p <= 6; ++p) rhos.push_back(std::pow(2.0, -0.5 * p) * p);
    DatumNorms n = norms_for(u, rhos);
    double prev = 1e9;
    for (int p = 1; p <= 6; ++p) {
      const double t_p = std::pow(4.0, -p);
      const double B = criterion_value(n, cc, rhos[p - 1], t_p);
      REQUIRE(4.0 * cc.c1 * B < 1.0);
      const double A = majorant(B, cc.c1);
      CHECK(A < prev);
      prev = A;
    }
    CHECK(prev <= 0.2);
  }
  SUBCASE("criterion invariance under the parabolic rescaling") {
    // B is invariant under (U, rho, t) -> (U_lambda, rho/lambda, t/lambda^2)
    // in the continuum; check at the norm level on a fine grid.
    GridSpec g2 = GridSpec::make(64, 2.0 * kPi);
    const double lam = 2.0, scale = 0.6, amp = 0.3;
    VelocityField u1 = make_datum("curl_gaussian", amp, scale, g2);
    VelocityField ul = make_datum("curl_gaussian", amp, scale / lam, g2);
    const double rho = 1.2, t = 0.04;
    DatumNorms n1 = norms_for(u1, {rho});
    DatumNorms nl = norms_for(ul, {rho / lam});
    const double B1 = criterion_value(n1, c, rho, t);
    const double Bl = criterion_value(nl, c, rho / lam, t / (lam * lam));
    CHECK(Bl == doctest::Approx(B1).epsilon(2e-3));
  }
}
