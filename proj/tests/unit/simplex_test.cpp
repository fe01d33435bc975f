#include <doctest.h>

#include <random>

#include "curenet/simplex.hpp"

using namespace curenet;

TEST_CASE("small exact program") {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6  ->  x = 8/5, y = 6/5.
  LinearProgram<Rational> lp;
  auto x = lp.add_variable(-1, 0, std::nullopt);
  auto y = lp.add_variable(-1, 0, std::nullopt);
  lp.add_row({{x, 1}, {y, 2}}, RowSense::LessEqual, 4);
  lp.add_row({{x, 3}, {y, 1}}, RowSense::LessEqual, 6);
  auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[x] == Rational(8, 5));
  CHECK(s.x[y] == Rational(6, 5));
  CHECK(s.objective == Rational(-14, 5));
}

TEST_CASE("bounds, equalities and lower-bounded rows") {
  LinearProgram<Rational> lp;
  auto a = lp.add_variable(1, Rational(1, 2), Rational(3));
  auto b = lp.add_variable(2, 0, Rational(1));
  lp.add_row({{a, 1}, {b, 1}}, RowSense::Equal, Rational(7, 2));
  auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.x[a] == 3);
  CHECK(s.x[b] == Rational(1, 2));

  LinearProgram<Rational> ge;
  auto z = ge.add_variable(1, 0, std::nullopt);
  ge.add_row({{z, 4}}, RowSense::GreaterEqual, 3);
  auto t = solve_lp(ge);
  REQUIRE(t.status == LpStatus::Optimal);
  CHECK(t.x[z] == Rational(3, 4));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram<Rational> bad;
  auto x = bad.add_variable(0, 0, Rational(1));
  bad.add_row({{x, 1}}, RowSense::GreaterEqual, 2);
  CHECK(solve_lp(bad).status == LpStatus::Infeasible);

  LinearProgram<Rational> open;
  auto y = open.add_variable(-1, 0, std::nullopt);
  open.add_row({{y, -1}}, RowSense::LessEqual, 5);
  CHECK(solve_lp(open).status == LpStatus::Unbounded);

  LinearProgram<double> d;
  auto w = d.add_variable(-1, 0, std::nullopt);
  d.add_row({{w, 1}}, RowSense::GreaterEqual, 1);
  CHECK(solve_lp(d).status == LpStatus::Unbounded);
}

TEST_CASE("degenerate program terminates") {
  // Many redundant rows through the origin make the first vertex degenerate.
  LinearProgram<Rational> lp;
  auto x = lp.add_variable(-1, 0, std::nullopt);
  auto y = lp.add_variable(-1, 0, std::nullopt);
  for (int k = 1; k <= 6; ++k) {
    lp.add_row({{x, k}, {y, -k}}, RowSense::LessEqual, 0);
    lp.add_row({{x, -k}, {y, k}}, RowSense::LessEqual, 0);
  }
  lp.add_row({{x, 1}, {y, 1}}, RowSense::LessEqual, 2);
  auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == -2);
}

TEST_CASE("double and rational solvers agree on random covering programs") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t vars = 2 + rng() % 6;
    const std::size_t rows = 1 + rng() % 6;
    LinearProgram<Rational> exact;
    LinearProgram<double> approx;
    for (std::size_t j = 0; j < vars; ++j) {
      Rational c(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
      Rational hi(1 + static_cast<long>(rng() % 4));
      exact.add_variable(c, 0, hi);
      approx.add_variable(c.get_d(), 0, hi.get_d());
    }
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<std::pair<std::size_t, Rational>> terms;
      std::vector<std::pair<std::size_t, double>> dterms;
      for (std::size_t j = 0; j < vars; ++j) {
        if (rng() % 2) continue;
        terms.emplace_back(j, Rational(1 + static_cast<long>(rng() % 3)));
        dterms.emplace_back(j, terms.back().second.get_d());
      }
      Rational rhs(static_cast<long>(rng() % 4), 2);
      exact.add_row(terms, RowSense::GreaterEqual, rhs);
      approx.add_row(dterms, RowSense::GreaterEqual, rhs.get_d());
    }
    auto e = solve_lp(exact);
    auto a = solve_lp(approx);
    REQUIRE(e.status == a.status);
    if (e.status != LpStatus::Optimal) continue;
    CHECK(a.objective == doctest::Approx(e.objective.get_d()).epsilon(1e-9));
    for (std::size_t i = 0; i < rows; ++i) {
      Rational lhs = 0;
      for (const auto& [j, c] : exact.rows[i].terms) lhs += c * e.x[j];
      CHECK(lhs >= exact.rows[i].rhs);
    }
  }
}
