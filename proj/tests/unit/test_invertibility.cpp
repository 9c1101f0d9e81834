#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "galab/error.hpp"
#include "galab/invertibility.hpp"
#include "galab/polynomial.hpp"
#include "oracles.hpp"

using namespace galab;

namespace {

const GroupSpec kZ = GroupSpec::lattice(1);

AlgebraElement z_element(std::initializer_list<std::pair<std::int64_t, double>> terms) {
  AlgebraElement f(kZ);
  for (const auto& [n, c] : terms) f.add_term({n}, c);
  return f;
}

ExactElement exact_sum(const GroupSpec& g, std::initializer_list<std::pair<std::int64_t, long>> terms) {
  ExactElement f(g);
  for (const auto& [x, c] : terms) f.add_term(Element::index(x), ExactComplex(c));
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("finite groups: small examples") {
  SUBCASE("Z/2, delta_0 + delta_1 is singular with kernel (1,-1)") {
    const GroupSpec c2 = cyclic_group(2);
    const Certificate c = invert_finite(exact_sum(c2, {{0, 1}, {1, 1}}));
    CHECK(c.verdict == Verdict::not_invertible);
    CHECK(c.kind() == CertificateKind::exact_finite);
    const auto& p = c.as<ExactFinitePayload>();
    REQUIRE(p.exact_kernel.size() == 2);
    CHECK(p.exact_kernel[0] == ExactComplex(1L));
    CHECK(p.exact_kernel[1] == ExactComplex(-1L));
    CHECK(oracle::det2(1, 1, 1, 1) == Complex{});

    AlgebraElement f(c2);
    f.add_term(Element::index(0), 1.0).add_term(Element::index(1), 1.0);
    const Certificate cf = invert_finite(f);
    CHECK(cf.verdict == Verdict::not_invertible);
    REQUIRE(cf.as<ExactFinitePayload>().kernel.size() == 2);
    CHECK(std::abs(cf.as<ExactFinitePayload>().kernel[1] + 1.0) <= 1e-15);
  }
  SUBCASE("Z/3, 2 delta_0 + delta_1 is invertible") {
    const GroupSpec c3 = cyclic_group(3);
    const std::vector<Complex> column{2.0, 1.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(oracle::circulant_eigenvalue(column, k)) > 0.5);
    const Certificate c = invert_finite(exact_sum(c3, {{0, 2}, {1, 1}}));
    REQUIRE(c.verdict == Verdict::invertible);
    CHECK(c.as<ExactFinitePayload>().residuals_exact_zero);
    // (2 + x)^-1 mod x^3 - 1 = (4 - 2x + x^2) / 9.
    const ExactElement& g = *c.as<ExactFinitePayload>().exact_inverse;
    CHECK(g.coeff(Element::index(0)) == ExactComplex(mpq_class(4, 9)));
    CHECK(g.coeff(Element::index(1)) == ExactComplex(mpq_class(-2, 9)));
    CHECK(g.coeff(Element::index(2)) == ExactComplex(mpq_class(1, 9)));
  }
  SUBCASE("delta_a inverts to delta_{a^-1}") {
    const GroupSpec s3 = symmetric_group(3);
    for (std::int64_t a = 0; a < 6; ++a) {
      const Certificate c = invert_finite(ExactElement::delta(s3, Element::index(a)));
      REQUIRE(c.verdict == Verdict::invertible);
      CHECK(*c.as<ExactFinitePayload>().exact_inverse == ExactElement::delta(s3, s3.inverse(Element::index(a))));
      CHECK(*c.residual == 0.0);
      CHECK(*c.right_residual == 0.0);
    }
  }
  SUBCASE("the averaging element is singular") {
    const GroupSpec q8 = quaternion_group();
    ExactElement f(q8);
    for (std::int64_t i = 0; i < 8; ++i) f.add_term(Element::index(i), ExactComplex(1L));
    CHECK(invert_finite(f).verdict == Verdict::not_invertible);
  }
  CHECK_THROWS_AS(invert_finite(AlgebraElement::delta(kZ, {0})), UsageError);
  CHECK_THROWS_AS(invert_finite(AlgebraElement::delta(symmetric_group(4), Element::index(0)), 1e-10, nullptr, 10),
                  ResourceError);
}

TEST_CASE("finite groups: exact inverses are two-sided") {
  std::mt19937_64 rng(21);
  for (const GroupSpec& g : {cyclic_group(12), symmetric_group(3), dihedral_group(4), quaternion_group()}) {
    int inverted = 0;
    for (int i = 0; i < 25; ++i) {
      const ExactElement f = testgen::random_exact(rng, g, 1, 3);
      if (f.is_zero()) continue;
      const Certificate c = invert_finite(f);
      if (c.verdict != Verdict::invertible) continue;
      ++inverted;
      const ExactElement& inv = *c.as<ExactFinitePayload>().exact_inverse;
      const ExactElement e = ExactElement::delta(g, g.identity());
      CHECK(convolve(inv, f) == e);
      CHECK(convolve(f, inv) == e);
      const DirectFinitenessReport r = verify_direct_finiteness(f, inv, nullptr, 1e-12);
      CHECK(r.exact_zero);
      CHECK(r.pass);

      // Float mode agrees with the exact inverse.
      const Certificate cf = invert_finite(to_float(f), 1e-8);
      CHECK(cf.verdict == Verdict::invertible);
      CHECK(norm(*cf.inverse - to_float(inv)) <= 1e-8 * (1 + norm(to_float(inv))));
    }
    CHECK(inverted > 0);
  }
}

TEST_CASE("direct finiteness reports") {
  const GroupSpec f2 = GroupSpec::free(2);
  const DirectFinitenessReport r =
      verify_direct_finiteness(AlgebraElement::delta(f2, {1, -2}), AlgebraElement::delta(f2, {2, -1}), nullptr, 1e-12);
  CHECK(r.left_residual == 0.0);
  CHECK(r.right_residual == 0.0);
  CHECK(r.pass);
  CHECK_THROWS_AS(verify_direct_finiteness(AlgebraElement::delta(f2, {1}), AlgebraElement::delta(f2, {-1}), nullptr, 0.0),
                  UsageError);

  // A failed left residual passes vacuously.
  const DirectFinitenessReport v =
      verify_direct_finiteness(AlgebraElement::delta(f2, {1}), AlgebraElement::delta(f2, {1}), nullptr, 1e-12);
  CHECK(v.left_residual == 2.0);
  CHECK(v.pass);

  const Weight w = Weight::exp_symmetric(kZ, 2.0);
  const AlgebraElement f = z_element({{0, 1.0}, {1, -0.25}});
  NeumannOptions o;
  o.terms = 40;
  const Certificate c = neumann_invert(f, &w, o);
  REQUIRE(c.verdict == Verdict::invertible);
  const DirectFinitenessReport n = verify_direct_finiteness(f, *c.inverse, &w, 1e-10);
  CHECK(n.left_residual <= 2 * std::ldexp(1.0, -40));
  CHECK(n.right_residual <= 2 * std::ldexp(1.0, -40));
  CHECK(n.pass);
}

// ---------------------------------------------------------------------------

TEST_CASE("Laurent roots") {
  const auto r = laurent_roots(z_element({{0, 2.0}, {1, 1.0}}));
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] + 2.0) <= 1e-15);
  // z^-2 (1 - z^2): roots +-1, the pole at 0 is not a root.
  const auto s = laurent_roots(z_element({{-2, 1.0}, {0, -1.0}}));
  CHECK(s.size() == 2);
  for (const auto& z : s) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-14);
  for (int n : {3, 8, 17, 32}) {
    const auto u = laurent_roots(z_element({{0, 1.0}, {n, -1.0}}));
    CHECK(u.size() == static_cast<std::size_t>(n));
    for (const auto& z : u) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(laurent_roots(AlgebraElement(kZ)), UsageError);
}

TEST_CASE("Wiener certificates") {
  SUBCASE("2 delta_0 + delta_1") {
    const Certificate c = wiener_certify(z_element({{0, 2.0}, {1, 1.0}}));
    REQUIRE(c.verdict == Verdict::invertible);
    const auto& p = c.as<WienerPayload>();
    CHECK(p.grid_min >= 1.0 - 1e-15);
    CHECK(p.lipschitz == 1.0);
    CHECK(p.margin == doctest::Approx(1.0 - std::numbers::pi / 64).epsilon(1e-15));
    CHECK(*c.residual <= 1e-10);
    CHECK(*c.right_residual <= 1e-10);
  }
  SUBCASE("delta_0 - delta_1") {
    const Certificate c = wiener_certify(z_element({{0, 1.0}, {1, -1.0}}));
    REQUIRE(c.verdict == Verdict::not_invertible);
    const auto& p = c.as<WienerPayload>();
    REQUIRE(p.witness_root.has_value());
    CHECK(std::abs(*p.witness_root - 1.0) <= 1e-12);
    CHECK(std::abs(*p.witness_theta) <= 1e-12);
    CHECK(*p.witness_modulus <= 1e-12);
    CHECK_FALSE(c.inverse.has_value());
  }
  SUBCASE("identity") {
    const Certificate c = wiener_certify(AlgebraElement::delta(kZ, {0}));
    CHECK(c.verdict == Verdict::invertible);
    CHECK(c.as<WienerPayload>().grid_min == 1.0);
    CHECK(*c.residual == 0.0);
  }
  SUBCASE("a root off every grid point and near the circle") {
    // 1 - 2cos(t0) z + z^2 has roots e^{+-i t0}.
    const double t0 = 0.123456789;
    const Certificate c = wiener_certify(z_element({{0, 1.0}, {1, -2.0 * std::cos(t0)}, {2, 1.0}}));
    CHECK(c.verdict == Verdict::not_invertible);
    CHECK(std::abs(std::abs(*c.as<WienerPayload>().witness_theta) - t0) <= 1e-7);
  }
  SUBCASE("near but not on the circle stays inconclusive") {
    // Root at 1.001: the grid cannot separate |f^| from zero at 64 points.
    const Certificate c = wiener_certify(z_element({{0, 1.001}, {1, -1.0}}));
    CHECK(c.verdict == Verdict::inconclusive);
    WienerOptions fine;
    fine.grid = 1 << 14;
    CHECK(wiener_certify(z_element({{0, 1.001}, {1, -1.0}}), fine).verdict == Verdict::invertible);
  }
  SUBCASE("Z^2 never certifies non-invertibility from the grid") {
    const GroupSpec z2 = GroupSpec::lattice(2);
    AlgebraElement f(z2);
    f.add_term({0, 0}, 1.0).add_term({1, 0}, -1.0);
    const Certificate c = wiener_certify(f);
    CHECK(c.verdict == Verdict::inconclusive);
    const Certificate a = invert(f, nullptr);
    CHECK(a.verdict == Verdict::not_invertible);
    CHECK(a.kind() == CertificateKind::quotient_witness);
    CHECK(a.as<QuotientPayload>().exact);

    AlgebraElement g(z2);
    g.add_term({0, 0}, 4.0).add_term({1, 0}, 1.0).add_term({0, -1}, 1.0).add_term({1, 1}, 0.5);
    const Certificate cg = wiener_certify(g);
    CHECK(cg.verdict == Verdict::invertible);
    CHECK(*cg.residual <= 1e-10);
  }
  CHECK_THROWS_AS(wiener_certify(AlgebraElement::delta(GroupSpec::free(2), {1})), UsageError);
  WienerOptions huge;
  huge.grid = 1 << 13;
  AlgebraElement f3(GroupSpec::lattice(3));
  f3.add_term({0, 0, 0}, 1.0);
  CHECK_THROWS_AS(wiener_certify(f3, huge), ResourceError);
}

TEST_CASE("FFT candidates") {
  SUBCASE("geometric series") {
    const AlgebraElement f = z_element({{0, 2.0}, {1, 1.0}});
    const Certificate c = invert_via_fft(f, 512);
    REQUIRE(c.verdict == Verdict::invertible);
    for (int n = 0; n <= 40; ++n) CHECK(std::abs(c.inverse->coeff({n}) - oracle::inverse_two_plus_z(n)) <= 1e-12);
    CHECK(*c.residual <= 1e-12);
  }
  SUBCASE("shift") {
    const Certificate c = invert_via_fft(AlgebraElement::delta(kZ, {1}), 64);
    REQUIRE(c.verdict == Verdict::invertible);
    CHECK(c.inverse->support_size() == 1);
    CHECK(std::abs(c.inverse->coeff({-1}) - 1.0) <= 1e-15);
  }
  SUBCASE("zero symbol is flagged") {
    const Certificate c = invert_via_fft(z_element({{0, 1.0}, {1, -1.0}}), 64);
    CHECK(c.verdict == Verdict::inconclusive);
    CHECK(*c.as<FftPayload>().offending_frequency == std::vector<std::int64_t>{0});
  }
  SUBCASE("aliasing fails the residual check") {
    const Certificate c = invert_via_fft(z_element({{0, 2.0}, {1, 1.0}}), 8);
    CHECK(c.verdict == Verdict::inconclusive);
    CHECK(*c.residual > 1e-10);
  }
  CHECK_THROWS_AS(invert_via_fft(AlgebraElement::delta(kZ, {0}), 12), UsageError);
}

TEST_CASE("Neumann series") {
  const Weight w = Weight::exp_symmetric(kZ, 2.0);
  SUBCASE("delta_0 - delta_1 / 4 in the 2^|n| weighted algebra") {
    NeumannOptions o;
    o.pivot = Element{0};
    o.terms = 40;
    const Certificate c = neumann_invert(z_element({{0, 1.0}, {1, -0.25}}), &w, o);
    REQUIRE(c.verdict == Verdict::invertible);
    const auto& p = c.as<NeumannPayload>();
    CHECK(p.ratio == 0.5);
    CHECK(p.tail_bound == doctest::Approx(std::ldexp(1.0, -40)));
    CHECK(*c.residual <= std::ldexp(1.0, -39));
    CHECK(*c.right_residual <= std::ldexp(1.0, -39));
    // Partial sums of sum 4^-k delta_k.
    for (int k = 0; k <= 40; ++k) CHECK(c.inverse->coeff({k}) == Complex(std::ldexp(1.0, -2 * k)));
  }
  SUBCASE("monomials invert with zero terms") {
    NeumannOptions o;
    o.terms = 0;
    const GroupSpec f2 = GroupSpec::free(2);
    const Certificate c = neumann_invert(AlgebraElement::delta(f2, {1, 2}, Complex(3.0, -1.0)), nullptr, o);
    REQUIRE(c.verdict == Verdict::invertible);
    CHECK(norm(*c.inverse - AlgebraElement::delta(f2, {-2, -1}, 1.0 / Complex(3.0, -1.0))) <= 1e-16);
    CHECK(*c.residual <= 1e-15);
  }
  SUBCASE("not contractive") {
    NeumannOptions o;
    o.pivot = Element{0};
    const Certificate c = neumann_invert(z_element({{0, 1.0}, {1, -1.0}}), nullptr, o);
    CHECK(c.verdict == Verdict::inconclusive);
    CHECK(c.as<NeumannPayload>().ratio == 1.0);
  }
  SUBCASE("default pivot minimizes the ratio") {
    const Certificate c = neumann_invert(z_element({{0, 1.0}, {1, 3.0}}), nullptr);
    CHECK(c.as<NeumannPayload>().pivot == Element{1});
    CHECK(c.as<NeumannPayload>().ratio == doctest::Approx(1.0 / 3.0));
    CHECK(c.verdict == Verdict::invertible);
    // Ties go to the smaller element.
    const Certificate t = neumann_invert(z_element({{-1, 1.0}, {1, 1.0}}), nullptr);
    CHECK(t.as<NeumannPayload>().pivot == Element{-1});
  }
  SUBCASE("free group") {
    const GroupSpec f2 = GroupSpec::free(2);
    AlgebraElement f(f2);
    f.add_term({}, 1.0).add_term({1}, -0.25).add_term({-2}, 0.25);
    // r^k has 2^k distinct reduced words, so keep K small.
    NeumannOptions o;
    o.terms = 14;
    o.tol = 1e-4;
    const Certificate c = neumann_invert(f, nullptr, o);
    REQUIRE(c.verdict == Verdict::invertible);
    CHECK(c.as<NeumannPayload>().ratio == 0.5);
    CHECK(c.inverse->support_size() == (std::size_t{1} << 15) - 1);
    CHECK(*c.residual <= std::ldexp(1.0, -15) * (1 + 1e-12));
    CHECK(verify_direct_finiteness(f, *c.inverse, nullptr, 1e-4).pass);
    CHECK(neumann_invert(f, nullptr).verdict == Verdict::inconclusive);
  }
  SUBCASE("support cap") {
    const GroupSpec f2 = GroupSpec::free(2);
    AlgebraElement f(f2);
    f.add_term({}, 1.0).add_term({1}, 0.1).add_term({2}, 0.1).add_term({-1}, 0.1);
    NeumannOptions o;
    o.support_cap = 1000;
    CHECK(neumann_invert(f, nullptr, o).verdict == Verdict::inconclusive);
    // Pruning keeps words of length <= 7 or so; the residual pays for the dropped mass.
    o.prune = 1e-8;
    o.tol = 1e-5;
    o.support_cap = 100'000;
    const Certificate c = neumann_invert(f, nullptr, o);
    CHECK(c.verdict == Verdict::invertible);
    CHECK(*c.residual <= 1e-5);
  }
  CHECK_THROWS_AS(neumann_ratio(z_element({{0, 1.0}}), nullptr, Element{3}), UsageError);
}

TEST_CASE("quotient probes") {
  const auto diag = diagonal_moduli(1, 2, 16);
  for (const auto& p : probe_quotients(z_element({{0, 1.0}, {1, -1.0}}), diag)) {
    CHECK_FALSE(p.nonsingular);
    CHECK(p.exact);
    CHECK(p.frequency == std::vector<std::int64_t>{0});
  }
  for (const auto& p : probe_quotients(z_element({{0, 2.0}, {1, 1.0}}), diagonal_moduli(1, 2, 64))) {
    CHECK(p.nonsingular);
    CHECK(p.min_modulus >= 1.0 - 1e-12);
  }
  for (const auto& p : probe_quotients(AlgebraElement::delta(kZ, {0}), diag)) CHECK(p.nonsingular);

  // 1 + z^2 vanishes at z = +-i: singular exactly when 4 | N.
  for (const auto& p : probe_quotients(z_element({{0, 1.0}, {2, 1.0}}), diag))
    CHECK(p.nonsingular == (p.moduli[0] % 4 != 0));

  const GroupSpec z2 = GroupSpec::lattice(2);
  AlgebraElement f(z2);
  f.add_term({0, 0}, 2.0).add_term({1, 0}, -1.0).add_term({0, 1}, -1.0);
  const auto probes = probe_quotients(f, {{3, 5}, {4, 4}});
  CHECK_FALSE(probes[0].nonsingular);
  CHECK(probes[0].frequency == std::vector<std::int64_t>{0, 0});
  CHECK_THROWS_AS(probe_quotients(f, {{3}}), UsageError);
  CHECK_THROWS_AS(probe_quotients(f, {{1000, 1000}}), ResourceError);
}

// ---------------------------------------------------------------------------

TEST_CASE("oracle agreement on random Laurent polynomials") {
  std::mt19937_64 rng(2024);
  const Window support = kZ.ball(3);
  int invertible = 0, singular = 0;
  for (int i = 0; i < 100; ++i) {
    ExactElement e(kZ);
    const int mode = i % 4;
    const int radius = mode == 0 ? 3 : 2;
    for (int t = 0; t < 4; ++t) e.add_term(testgen::pick(rng, kZ.ball(radius)), ExactComplex(testgen::random_rational(rng)));
    if (e.is_zero()) e.add_term({0}, ExactComplex(1L));
    if (mode == 1) {
      ExactElement d(kZ);
      d.add_term({0}, ExactComplex(1L)).add_term({1}, ExactComplex(-1L));
      e = convolve(d, e);
    } else if (mode == 2) {
      ExactElement d(kZ);
      d.add_term({-1}, ExactComplex(1L)).add_term({0}, ExactComplex(1L));
      e = convolve(d, e);
    }
    const AlgebraElement f = to_float(e);
    for (const auto& [x, c] : f.terms()) REQUIRE(support.contains(x));

    const Certificate w = wiener_certify(f);
    if (w.verdict == Verdict::invertible) {
      ++invertible;
      FftOptions o;
      o.tol = 1e-8;
      const Certificate c = invert_via_fft(f, 1024, o);
      CHECK(c.verdict == Verdict::invertible);
      CHECK(*c.residual <= 1e-8);
    } else if (w.verdict == Verdict::not_invertible) {
      ++singular;
      bool witnessed = false;
      for (const auto& p : probe_quotients(f, diagonal_moduli(1, 2, 64))) witnessed |= !p.nonsingular;
      if (!witnessed) witnessed = invert_via_fft(f, 1024).as<FftPayload>().offending_frequency.has_value();
      CHECK(witnessed);
    }

    // Neumann success is never contradicted by the Wiener oracle.
    const Certificate n = neumann_invert(f, nullptr);
    if (n.verdict == Verdict::invertible) CHECK(w.verdict != Verdict::not_invertible);
  }
  CHECK(invertible >= 20);
  CHECK(singular >= 20);
}

TEST_CASE("Neumann residuals decrease with more terms") {
  std::mt19937_64 rng(77);
  const Weight w = Weight::exp_symmetric(kZ, 1.5);
  int runs = 0;
  for (int i = 0; i < 60; ++i) {
    AlgebraElement f = testgen::random_element(rng, kZ, 2, 3, true);
    f.add_term({0}, Complex(3.0));
    for (int k = 0; k <= 30; k += 5) {
      NeumannOptions a, b;
      a.terms = k;
      b.terms = k + 10;
      a.pivot = b.pivot = Element{0};
      a.tol = b.tol = 1e300;
      const Certificate ca = neumann_invert(f, &w, a), cb = neumann_invert(f, &w, b);
      if (ca.as<NeumannPayload>().ratio >= 1.0) break;
      ++runs;
      // Rounding can move residuals at the 1e-16 floor by a few ulps.
      const double floor = 1e-15 * norm(f, &w) * norm(*cb.inverse, &w);
      CHECK(*cb.residual <= *ca.residual + floor);
      CHECK(*ca.residual <= ca.as<NeumannPayload>().tail_bound * norm(f, &w) + floor);
    }
  }
  CHECK(runs > 50);
}

TEST_CASE("invert dispatch") {
  CHECK(invert(AlgebraElement::delta(dihedral_group(3), Element::index(4)), nullptr).kind() ==
        CertificateKind::exact_finite);
  CHECK(invert(z_element({{0, 2.0}, {1, 1.0}}), nullptr).kind() == CertificateKind::wiener_grid);
  const Weight w = Weight::exp_symmetric(kZ, 2.0);
  const Certificate c = invert(z_element({{0, 1.0}, {1, -0.25}}), &w);
  CHECK(c.kind() == CertificateKind::neumann_series);
  CHECK(c.verdict == Verdict::invertible);
  InvertOptions o;
  o.method = Method::fft;
  CHECK(invert(z_element({{0, 2.0}, {1, 1.0}}), nullptr, o).kind() == CertificateKind::fft_candidate);
  o.method = Method::wiener;
  CHECK_THROWS_AS(invert(z_element({{0, 2.0}}), &w, o), UsageError);

  // Constant weight behaves as unweighted; the weighted residual is what an
  // invertible verdict promises.
  const Weight one = Weight::constant(kZ);
  CHECK(invert(z_element({{0, 2.0}, {1, 1.0}}), &one).kind() == CertificateKind::wiener_grid);

  // 3 + z^-1 + z: the Neumann fallback is not needed, but auto still certifies.
  const Certificate d = invert(z_element({{-1, 1.0}, {0, 3.0}, {1, 1.0}}), nullptr);
  CHECK(d.verdict == Verdict::invertible);
}
