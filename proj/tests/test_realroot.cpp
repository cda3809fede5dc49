#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace cgsqe;

namespace {

UPoly up(std::initializer_list<long> coeffs_low_first) {
  std::vector<QSqrt2> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return UPoly(c);
}

GBasis basis(const RingPtr& r, std::initializer_list<const char*> texts) {
  std::vector<Poly> F;
  for (const char* t : texts) F.push_back(parse_poly(r, t));
  return buchberger(F);
}

std::vector<QSqrt2> q(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("hermite matrices of one-variable ideals") {
  auto r = Ring::make({"x"}, 0, TermOrder::lex());
  CHECK(hermite_matrix(basis(r, {"x^2-1"})) == Matrix<QSqrt2>{{2, 0}, {0, 2}});
  CHECK(hermite_matrix(basis(r, {"x^2+1"})) == Matrix<QSqrt2>{{2, 0}, {0, -2}});
  CHECK(hermite_matrix(basis(r, {"x"})) == Matrix<QSqrt2>{{1}});
}

TEST_CASE("characteristic polynomials") {
  CHECK(char_poly(Matrix<QSqrt2>{{2, 0}, {0, 2}}) == q({1, -4, 4}));
  CHECK(char_poly(Matrix<QSqrt2>{{2, 0}, {0, -2}}) == q({1, 0, -4}));
  CHECK(char_poly(Matrix<QSqrt2>{{0}}) == q({1, 0}));
  // 3x3 against the cofactor expansion
  Matrix<QSqrt2> M{{1, 2, 3}, {2, 0, -1}, {3, -1, 4}};
  auto chi = char_poly(M);
  CHECK(chi[0] == QSqrt2(1));
  CHECK(chi[1] == QSqrt2(-5));      // -trace
  CHECK(chi[3] == QSqrt2(29));  // -det, det = -29
  // entries in Q[s]: [[s, 1], [1, s]] -> l^2 - 2 s l + s^2 - 1
  UPoly s = UPoly::monomial(1);
  Matrix<UPoly> P(2, 2);
  P(0, 0) = s;
  P(0, 1) = UPoly(1);
  P(1, 0) = UPoly(1);
  P(1, 1) = s;
  auto chs = char_poly(P);
  CHECK(chs[1] == s.scale(QSqrt2(-2)));
  CHECK(chs[2] == s * s - UPoly(1));
}

TEST_CASE("sign changes") {
  auto a = sign_changes(q({1, -3, 2}));
  CHECK(a.Splus == 2);
  CHECK(a.Sminus == 0);
  auto b = sign_changes(q({1, 0, -4}));
  CHECK(b.Splus == 1);
  CHECK(b.Sminus == 1);
  auto c = sign_changes(q({1, 0, 0}));
  CHECK(c.Splus == 0);
  CHECK(c.Sminus == 0);
}

TEST_CASE("real root counts") {
  auto r = Ring::make({"x", "y"}, 0, TermOrder::grevlex());
  CHECK(count_real_roots(basis(r, {"x^2-1", "y"})) == 2);
  CHECK(count_real_roots(basis(r, {"x^2+1", "y"})) == 0);
  CHECK_FALSE(count_real_roots(basis(r, {"x-y"})).has_value());
  CHECK(count_real_roots(basis(r, {"x^2+y^2-1", "x-y"})) == 2);
  CHECK(count_real_roots(basis(r, {"x^2+y^2+1", "x-y"})) == 0);
  // double root counts once
  CHECK(count_real_roots(basis(r, {"(x-1)^2", "y^2-2"})) == 2);
  CHECK(count_real_roots(basis(r, {"x", "x-1"})) == 0);
}

TEST_CASE("Sturm counting and isolation") {
  CHECK(sturm_count(up({0, -1, 0, 1})) == 3);
  CHECK(sturm_count(up({1, 0, 0, 0, 1})) == 0);
  CHECK(sturm_count(up({0, 1, 0, 1})) == 1);
  CHECK(sturm_count(up({1, -2, 1})) == 1);
  CHECK_THROWS(sturm_count(UPoly()));

  auto roots = isolate_real_roots(up({-2, 0, 1}));
  REQUIRE(roots.size() == 2);
  for (auto& r : roots) r.refine(Rat(1, 1000000000));
  CHECK(roots[0].approx() == doctest::Approx(-std::sqrt(2.0)));
  CHECK(roots[1].approx() == doctest::Approx(std::sqrt(2.0)));

  auto three = isolate_real_roots(up({0, -1, 0, 1}));
  REQUIRE(three.size() == 3);
  CHECK(three[0].approx() == doctest::Approx(-1));
  CHECK(three[1].exact());
  CHECK(three[1].lo == 0);
  CHECK(isolate_real_roots(up({1, 0, 1})).empty());
}

TEST_CASE("discriminant signs") {
  CHECK(quadratic_discriminant(up({1, 0, 1})) < 0);
  CHECK(quadratic_discriminant(up({-2, 0, 1})) > 0);
  UPoly f({QSqrt2(2), QSqrt2(Rat(0), Rat(-2)), QSqrt2(1)});  // (x - sqrt2)^2
  CHECK(quadratic_discriminant(f) == 0);
  CHECK_THROWS(quadratic_discriminant(up({1, 1})));
}

TEST_CASE("signs at algebraic points") {
  auto roots = isolate_real_roots(up({-2, 0, 1}));
  auto& r2 = roots[1];
  CHECK(sign_at(up({-2, 0, 1}), r2) == 0);
  CHECK(sign_at(up({-1, 1}), r2) == 1);     // sqrt2 - 1
  CHECK(sign_at(up({-3, 2}), r2) == -1);    // 2 sqrt2 - 3 < 0? 2.828-3
  CHECK(sign_at(up({-2, 0, 0, 1}), r2) == 1);  // 2 sqrt2 - 2
  CHECK(sign_at(UPoly({QSqrt2(Rat(0), Rat(-1)), QSqrt2(1)}), r2) == 0);  // x - sqrt2
}

TEST_CASE("isolation agrees with Sturm counts on random polynomials") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-6, 6), deg(1, 7);
  for (int i = 0; i < 80; ++i) {
    std::vector<QSqrt2> co;
    int d = deg(rng);
    for (int k = 0; k <= d; ++k) co.emplace_back(c(rng));
    if (co.back().is_zero()) co.back() = QSqrt2(1);
    UPoly f(co);
    // squares create repeated roots
    if (i % 4 == 0) f = f * UPoly({QSqrt2(1), QSqrt2(-1)}) * UPoly({QSqrt2(1), QSqrt2(-1)});
    auto roots = isolate_real_roots(f);
    CHECK(static_cast<int>(roots.size()) == sturm_count(f));
    for (std::size_t k = 1; k < roots.size(); ++k) CHECK(roots[k - 1].hi <= roots[k].lo);
    for (auto& r : roots) {
      r.refine(Rat(1, 1000000000000));
      CHECK(std::abs(f.eval_double(r.approx())) < 1e-6 * (1 + std::abs(r.approx()) * 1e3));
    }
  }
}

TEST_CASE("signature matches the elimination oracle") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> c(-4, 4);
  auto r = Ring::make({"x", "y"}, 0, TermOrder::grevlex());
  int checked = 0;
  for (int i = 0; i < 30; ++i) {
    auto x = Poly::variable(r, 0), y = Poly::variable(r, 1);
    Poly f = x * x + y.scale(QSqrt2(c(rng))) + x * y.scale(QSqrt2(c(rng))) + Poly(r, QSqrt2(c(rng)));
    Poly g = y * y + x.scale(QSqrt2(c(rng))) + Poly(r, QSqrt2(c(rng)));
    auto G = buchberger({f, g});
    auto n = count_real_roots(G);
    REQUIRE(n.has_value());
    auto report = sign_changes(char_poly(hermite_matrix(G)));
    CHECK(report.Splus + report.Sminus <= static_cast<int>(standard_monomials(G).size()));
    CHECK(*n >= 0);
    CHECK(*n == oracle::real_points_by_elimination({f, g}, rng));
    ++checked;
  }
  CHECK(checked == 30);
}
