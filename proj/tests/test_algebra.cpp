#include <doctest.h>

#include <random>

#include "cgsqe/poly.hpp"
#include "cgsqe/upoly.hpp"

using namespace cgsqe;

namespace {

RingPtr xyz() { return Ring::make({"x", "y", "z"}, 0, TermOrder::grevlex()); }

QSqrt2 random_coef(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  Rat a(num(rng), den(rng)), b(num(rng) / 3, den(rng));
  a.canonicalize();
  b.canonicalize();
  return QSqrt2(a, b);
}

Poly random_poly(const RingPtr& r, std::mt19937& rng, int terms = 4, int maxdeg = 3) {
  std::uniform_int_distribution<int> e(0, maxdeg);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < r->nvars(); ++v) m.set(v, static_cast<unsigned>(e(rng)) % 2 ? e(rng) : 0);
    ts.push_back({m, random_coef(rng)});
  }
  return Poly::from_terms(r, std::move(ts));
}

}  // namespace

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2/4") == Rat(-1, 2));
  CHECK(parse_rational("1.25") == Rat(5, 4));
  CHECK(parse_rational("-1.5e-3") == Rat(-3, 2000));
  CHECK(parse_rational("1e6") == 1000000);
  CHECK(parse_rational("422.2254915") == Rat(844450983, 2000000));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("Q(sqrt2) field operations") {
  const QSqrt2 r2 = QSqrt2::sqrt2();
  CHECK((QSqrt2(1) + r2).inverse() == QSqrt2(-1, 1));
  CHECK(r2 * r2 == QSqrt2(2));
  QSqrt2 x(Rat(3, 7), Rat(-2, 5));
  CHECK(x + QSqrt2() == x);
  CHECK(x * x.inverse() == QSqrt2(1));
  CHECK_THROWS_AS(QSqrt2().inverse(), DivisionByZero);

  CHECK(QSqrt2(Rat(-1), Rat(1)).sign() == 1);   // sqrt2 - 1
  CHECK(QSqrt2(Rat(3), Rat(-2)).sign() == 1);   // 3 - 2.828
  CHECK(QSqrt2(Rat(-3), Rat(2)).sign() == -1);
  CHECK(QSqrt2(Rat(0), Rat(-1)).sign() == -1);
  CHECK(QSqrt2().sign() == 0);

  CHECK(QSqrt2(Rat(44), Rat(0)).to_string() == "44");
  CHECK(QSqrt2(Rat(0), Rat(44)).to_string() == "44*r2");
  CHECK(QSqrt2(Rat(1), Rat(-1, 2)).to_string() == "(1-1/2*r2)");
  CHECK(QSqrt2(Rat(1), Rat(2)).to_double() == doctest::Approx(1 + 2 * std::sqrt(2.0)));
}

TEST_CASE("Q(sqrt2) restricted to rationals agrees with Rat") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-50, 50), p(1, 20);
  for (int i = 0; i < 200; ++i) {
    Rat a(d(rng), p(rng)), b(d(rng), p(rng));
    a.canonicalize();
    b.canonicalize();
    CHECK(QSqrt2(a) + QSqrt2(b) == QSqrt2(Rat(a + b)));
    CHECK(QSqrt2(a) * QSqrt2(b) == QSqrt2(Rat(a * b)));
    CHECK(QSqrt2(a).sign() == sgn(a));
    if (sgn(b) != 0) CHECK(QSqrt2(a) / QSqrt2(b) == QSqrt2(Rat(a / b)));
  }
}

TEST_CASE("polynomial arithmetic") {
  auto r = xyz();
  auto x = Poly::variable(r, 0), y = Poly::variable(r, 1);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK((x + y) + -(x + y) == Poly(r));
  auto f = x * x + Poly(r, 1);
  CHECK(f.scale(QSqrt2(Rat(0), Rat(44))).to_string() == "44*r2*x^2 + 44*r2");

  auto other = Ring::make({"x", "y"}, 0, TermOrder::grevlex());
  CHECK_THROWS_AS(x + Poly::variable(other, 0), StructuralError);
}

TEST_CASE("ring axioms on random polynomials") {
  auto r = xyz();
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto f = random_poly(r, rng), g = random_poly(r, rng), h = random_poly(r, rng);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    CHECK(f + g == g + f);
    if (!f.is_zero() && !g.is_zero()) CHECK((f * g).lm() == f.lm() * g.lm());
  }
}

TEST_CASE("parse and print round trip") {
  std::mt19937 rng(3);
  for (auto ord : {TermOrder::lex(), TermOrder::grevlex(), TermOrder::block(2)}) {
    auto r = Ring::make({"x", "y", "z"}, 1, ord);
    for (int i = 0; i < 60; ++i) {
      auto f = random_poly(r, rng, 5);
      CHECK(parse_poly(r, f.to_string()) == f);
    }
  }
  auto r = xyz();
  CHECK(parse_poly(r, "(x+1)^2 - 2*x") == parse_poly(r, "x^2+1"));
  CHECK(parse_poly(r, "x/2") == Poly::variable(r, 0).scale(QSqrt2(Rat(1, 2))));
  CHECK(parse_poly(r, "r2*r2") == Poly(r, 2));
  CHECK_THROWS_AS(parse_poly(r, "x +"), ParseError);
  CHECK_THROWS_AS(parse_poly(r, "w"), ParseError);
  CHECK_THROWS_AS(parse_poly(r, "1/x"), ParseError);
}

TEST_CASE("leading data in the parametric view") {
  auto r = Ring::make({"c1", "x"}, 1, TermOrder::block(1));
  auto f = parse_poly(r, "x*c1^2 + c1");
  auto ld = leading_data(f);
  CHECK(ld.lm == Monomial::var(0, 2));
  CHECK(ld.lc == parse_poly(r, "x"));
  CHECK(leading_data(parse_poly(r, "c1")).lc == Poly(r, 1));
  auto c = leading_data(Poly(r, 3));
  CHECK(c.lm.is_one());
  CHECK(c.lc == Poly(r, 3));
  CHECK_THROWS(leading_data(Poly(r)));
}

TEST_CASE("partial evaluation") {
  auto r = Ring::make({"c1", "x", "y"}, 2, TermOrder::block(1));
  auto f = parse_poly(r, "x*c1");
  CHECK(f.eval_partial(std::map<std::string, QSqrt2>{{"x", QSqrt2(2)}}) == parse_poly(r, "2*c1"));
  auto g = parse_poly(r, "x^2+y^2");
  CHECK(g.eval_partial(std::map<std::string, QSqrt2>{{"x", QSqrt2(0)}, {"y", QSqrt2(0)}}).is_zero());
}

TEST_CASE("univariate view") {
  auto r = xyz();
  auto v = univariate_view(parse_poly(r, "x^2-2"));
  REQUIRE(v);
  CHECK(*v == std::vector<QSqrt2>{QSqrt2(-2), QSqrt2(0), QSqrt2(1)});
  CHECK_FALSE(univariate_view(parse_poly(r, "x+y")));
  CHECK_FALSE(univariate_view(parse_poly(r, "2*x^2*y^4+z^2+3")));
  std::size_t var = 99;
  CHECK(univariate_view(parse_poly(r, "z^3"), &var));
  CHECK(var == 2);
}

TEST_CASE("dense univariate polynomials") {
  UPoly t = UPoly::monomial(1);
  UPoly p = t * t - UPoly(2);
  auto [q, rem] = (p * (t + UPoly(3)) + UPoly(1)).divmod(p);
  CHECK(q == t + UPoly(3));
  CHECK(rem == UPoly(1));
  CHECK(gcd(p * (t - UPoly(1)), p * (t + UPoly(1))) == p);
  UPoly sq = (t - UPoly(1)) * (t - UPoly(1)) * (t + UPoly(2));
  CHECK(squarefree_part(sq) == (t - UPoly(1)) * (t + UPoly(2)));
  CHECK(p.reflect() == p);
  CHECK(t.reflect() == -t);
  CHECK(p.eval(QSqrt2::sqrt2()).is_zero());
}
