#include <algorithm>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "galab/error.hpp"
#include "galab/operators.hpp"
#include "oracles.hpp"

using namespace galab;

namespace {

PointFunction<Complex> random_function(std::mt19937_64& rng, const Window& w) {
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  PointFunction<Complex> g;
  for (const auto& x : w) g.emplace(x, Complex(v(rng), v(rng)));
  return g;
}

PointFunction<Complex> constant(const Window& w, Complex c) {
  PointFunction<Complex> g;
  for (const auto& x : w) g.emplace(x, c);
  return g;
}

AlgebraElement two_term(const GroupSpec& g, Element a, double ca, Element b, double cb) {
  AlgebraElement f(g);
  f.add_term(a, ca).add_term(b, cb);
  return f;
}

}  // namespace

TEST_CASE("rho_apply examples") {
  const GroupSpec z = GroupSpec::lattice(1);
  const Window w = z.ball(5);
  const AlgebraElement f = two_term(z, {0}, 1.0, {1}, -1.0);
  const Window in = input_window(z, w, f.support());
  CHECK(in.size() == 12);
  for (const auto& [x, v] : rho_apply(f, constant(in, 1.0), w)) CHECK(v == Complex{});

  std::mt19937_64 rng(1);
  const auto g = random_function(rng, in);
  const auto id = rho_apply(AlgebraElement::delta(z, {0}), g, w);
  for (const auto& x : w) CHECK(id.at(x) == g.at(x));

  const Weight om = Weight::exp_symmetric(z, 2.0);
  const AlgebraElement d1 = AlgebraElement::delta(z, {1});
  const auto r = rho_apply(d1, constant(input_window(z, w, d1.support()), 1.0), w, &om);
  for (const auto& [x, v] : r) CHECK(v == Complex(x[0] >= 0 ? 2.0 : 0.5));

  PointFunction<Complex> partial = constant(w, 1.0);
  CHECK_THROWS_WITH_AS(rho_apply(f, partial, w), doctest::Contains("[6]"), UsageError);
}

TEST_CASE("pairing") {
  const GroupSpec z2 = GroupSpec::lattice(2);
  std::mt19937_64 rng(2);
  const Window w = z2.ball(2);
  const auto g = random_function(rng, w);
  CHECK(pairing(AlgebraElement::delta(z2, {1, -1}), g) == g.at({1, -1}));
  const AlgebraElement h = testgen::random_element(rng, z2, 2, 6, true);
  CHECK(std::abs(pairing(h * Complex(2.0), g) - 2.0 * pairing(h, g)) <= 1e-15);
  // Bilinear: no conjugation of either argument.
  const AlgebraElement hi = AlgebraElement::delta(z2, {0, 0}, Complex(0.0, 1.0));
  CHECK(pairing(hi, constant(w, Complex(0.0, 1.0))) == Complex(-1.0, 0.0));
}

TEST_CASE("adjoint identity <h*f, g> = <h, rho_f g>") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const GroupSpec g = GroupSpec::lattice(i % 2 ? 1 : 2);
    const Window w = g.ball(6);
    const AlgebraElement f = testgen::random_element(rng, g, 3, 5, true);
    const AlgebraElement h = testgen::random_element(rng, g, 3, 5, true);
    const auto fn = random_function(rng, input_window(g, w, f.support()));
    const Complex lhs = pairing(convolve(h, f), fn);
    const Complex rhs = pairing(h, rho_apply(f, fn, w));
    double sup = 0;
    for (const auto& [x, v] : fn) sup = std::max(sup, std::abs(v));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * norm(f) * norm(h) * sup);
  }
}

TEST_CASE("assembled matrices") {
  const GroupSpec z = GroupSpec::lattice(1);
  SUBCASE("upper bidiagonal") {
    const Window w(std::vector<Element>{{0}, {1}, {2}, {3}});
    const WindowedOperator op = assemble_matrix(two_term(z, {0}, 1.0, {1}, -1.0), w);
    const Eigen::MatrixXcd m = op.dense();
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 5);
    for (Eigen::Index r = 0; r < 4; ++r)
      for (Eigen::Index c = 0; c < 5; ++c)
        CHECK(m(r, c) == Complex(c == r ? 1.0 : (c == r + 1 ? -1.0 : 0.0)));
  }
  SUBCASE("weighted ratios") {
    const Weight om = Weight::exp_symmetric(z, 2.0);
    const Window w(std::vector<Element>{{-1}, {0}});
    const WindowedOperator op = assemble_matrix(AlgebraElement::delta(z, {1}), w, &om);
    const auto& in = op.input_window();
    const Eigen::MatrixXcd m = op.dense();
    CHECK(m(0, static_cast<Eigen::Index>(*in.index_of({0}))) == Complex(0.5));
    CHECK(m(1, static_cast<Eigen::Index>(*in.index_of({1}))) == Complex(2.0));
  }
  SUBCASE("identity block") {
    const Window w = z.ball(3);
    const Eigen::MatrixXcd m = assemble_matrix(AlgebraElement::delta(z, {0}), w).dense();
    CHECK(m.isApprox(Eigen::MatrixXcd::Identity(7, 7)));
  }
  SUBCASE("cap") { CHECK_THROWS_AS(assemble_matrix(AlgebraElement::delta(z, {0}), z.ball(100), nullptr, 50), ResourceError); }
}

TEST_CASE("matrix entries follow the weighted formula and agree with rho_apply") {
  std::mt19937_64 rng(4);
  const GroupSpec f2 = GroupSpec::free(2), z2 = GroupSpec::lattice(2);
  const Weight wf = Weight::exp_symmetric(f2, 1.7);
  const Weight wz = Weight::polynomial(z2, 1.0);
  for (int i = 0; i < 20; ++i) {
    for (const auto& [g, w] : {std::pair{f2, &wf}, std::pair{z2, &wz}}) {
      const AlgebraElement f = testgen::random_element(rng, g, 2, 4, true);
      const Window win = g.ball(2);
      for (const Weight* wp : {static_cast<const Weight*>(nullptr), w}) {
        const WindowedOperator op = assemble_matrix(f, win, wp);
        const auto& in = op.input_window();
        for (std::size_t r = 0; r < win.size(); ++r) {
          std::size_t nnz = 0;
          for (std::size_t c = 0; c < in.size(); ++c) {
            const Complex m = op.dense()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            const Element& x = win[r];
            const Element& zz = in[c];
            const double ratio = wp ? (*wp)(zz) / (*wp)(x) : 1.0;
            CHECK(std::abs(m - ratio * f.coeff(g.multiply(g.inverse(x), zz))) <= 1e-15 * std::abs(m));
            nnz += m != Complex{};
          }
          CHECK(nnz <= f.support_size());
        }
        const auto fn = random_function(rng, in);
        const auto direct = rho_apply(f, fn, win, wp);
        const auto via = op.apply(fn);
        for (const auto& x : win) CHECK(std::abs(direct.at(x) - via.at(x)) <= 1e-14 * (1 + std::abs(direct.at(x))));
      }
    }
  }
}

TEST_CASE("m_omega") {
  const GroupSpec z = GroupSpec::lattice(1);
  const Weight om = Weight::exp_symmetric(z, 2.0);
  const Window w = z.ball(4);
  const auto fw = m_omega_apply(constant(w, 1.0), om, Direction::forward);
  for (const auto& [t, v] : fw) CHECK(v == Complex(std::ldexp(1.0, static_cast<int>(std::abs(t[0])))));
  std::mt19937_64 rng(5);
  const auto h = random_function(rng, w);
  const auto back = m_omega_apply(m_omega_apply(h, om, Direction::forward), om, Direction::inverse);
  double sup_h = 0, sup_scaled = 0;
  const auto mh = m_omega_apply(h, om, Direction::forward);
  for (const auto& x : w) {
    CHECK(std::abs(back.at(x) - h.at(x)) <= 1e-15 * std::abs(h.at(x)));
    sup_h = std::max(sup_h, std::abs(h.at(x)));
    sup_scaled = std::max(sup_scaled, std::abs(mh.at(x)) / om(x));
  }
  CHECK(sup_scaled == doctest::Approx(sup_h).epsilon(1e-15));
}

TEST_CASE("conjugation check") {
  std::mt19937_64 rng(6);
  const GroupSpec z = GroupSpec::lattice(1), z2 = GroupSpec::lattice(2), f2 = GroupSpec::free(2);
  for (int i = 0; i < 10; ++i) {
    const AlgebraElement f = testgen::random_element(rng, z, 1, 3, true);
    CHECK(conjugation_check(f, Weight::constant(z), z.ball(5)) == 0.0);
    CHECK(conjugation_check(f, Weight::exp_symmetric(z, 2.0), z.ball(5)) <= 1e-12);
    const AlgebraElement f2d = testgen::random_element(rng, z2, 2, 4, true);
    CHECK(conjugation_check(f2d, Weight::polynomial(z2, 1.0), z2.ball(4)) <= 1e-12);
    const AlgebraElement ff = testgen::random_element(rng, f2, 1, 3, true);
    CHECK(conjugation_check(ff, Weight::exp_symmetric(f2, 1.5), f2.ball(2)) <= 1e-12);
    CHECK(conjugation_check(ff, Weight::constant(f2), f2.ball(2)) == 0.0);
  }
}

TEST_CASE("Fourier symbols") {
  const GroupSpec z = GroupSpec::lattice(1);
  const double zero[1] = {0.0}, pi[1] = {std::numbers::pi};
  CHECK(fourier_eval(two_term(z, {0}, 1.0, {1}, -1.0), zero) == Complex{});
  CHECK(std::abs(fourier_eval(two_term(z, {0}, 2.0, {1}, 1.0), pi) - 1.0) <= 1e-15);
  CHECK(fourier_eval(AlgebraElement::delta(z, {0}), pi) == Complex(1.0));
  CHECK_THROWS_AS(fourier_eval(AlgebraElement::delta(GroupSpec::free(1), {1}), pi), UsageError);
  CHECK_THROWS_AS(fourier_eval(AlgebraElement::delta(z, {0}), std::vector<double>{0.0, 1.0}), UsageError);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const GroupSpec g = GroupSpec::lattice(1 + i % 2);
    const AlgebraElement a = testgen::random_element(rng, g, 3, 4, true), b = testgen::random_element(rng, g, 3, 4, true);
    std::vector<double> th{ang(rng)};
    if (g.rank() == 2) th.push_back(ang(rng));
    CHECK(std::abs(fourier_eval(convolve(a, b), th) - fourier_eval(a, th) * fourier_eval(b, th)) <= 1e-12);
  }
}

TEST_CASE("quotient operators") {
  const GroupSpec z = GroupSpec::lattice(1);
  const AlgebraElement diff = two_term(z, {0}, 1.0, {1}, -1.0);
  const QuotientOperator q4 = quotient_operator(diff, {4});
  CHECK(std::abs(q4.matrix.determinant()) <= 1e-14);
  CHECK(quotient_operator(AlgebraElement::delta(z, {0}), {5}).matrix.isApprox(Eigen::MatrixXcd::Identity(5, 5)));

  std::mt19937_64 rng(8);
  for (int n : {4, 7, 8, 16}) {
    const AlgebraElement f = n == 8 ? two_term(z, {0}, 2.0, {1}, 1.0) : testgen::random_element(rng, z, 5, 4, true);
    const QuotientOperator q = quotient_operator(f, {n});
    // Shifted QR stalls on exact circulants, so diagonalize a similar matrix.
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) += Complex(u(rng), u(rng));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(p * q.matrix * p.inverse());
    REQUIRE(es.info() == Eigen::Success);
    std::vector<Complex> column(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) column[static_cast<std::size_t>(r)] = q.matrix(r, 0);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int k = 0; k < n; ++k) {
      const double th[1] = {2.0 * std::numbers::pi * k / n};
      const Complex expect = fourier_eval(f, th);
      CHECK(std::abs(oracle::circulant_eigenvalue(column, static_cast<std::size_t>(k)) - expect) <= 1e-10);
      // Match against the numerical spectrum.
      double best = 1e300;
      Eigen::Index at = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        const double d = std::abs(es.eigenvalues()[j] - expect);
        if (!used[static_cast<std::size_t>(j)] && d < best) best = d, at = j;
      }
      REQUIRE(at >= 0);
      used[static_cast<std::size_t>(at)] = true;
      CHECK(best <= 1e-10);
      if (n == 8) CHECK(std::abs(expect) >= 1.0 - 1e-12);
    }
  }
  CHECK_THROWS_AS(quotient_operator(diff, {5000}), ResourceError);
}
