#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "cgsqe/cgs.hpp"

using namespace cgsqe;

namespace {

std::vector<Poly> polys(const RingPtr& r, std::initializer_list<const char*> texts) {
  std::vector<Poly> out;
  for (const char* t : texts) out.push_back(parse_poly(r, t));
  return out;
}

RingPtr ring(std::vector<std::string> vars, std::vector<std::string> params) {
  std::size_t nmain = vars.size(), np = params.size();
  vars.insert(vars.end(), params.begin(), params.end());
  return Ring::make(vars, np, TermOrder::block(nmain, OrderKind::grevlex, OrderKind::grevlex));
}

std::vector<Poly> specialize(const std::vector<Poly>& F, const std::vector<Rat>& pt) {
  const RingPtr& r = F.front().ring();
  std::map<std::size_t, QSqrt2> assign;
  for (std::size_t i = 0; i < pt.size(); ++i) assign[r->nmain() + i] = QSqrt2(pt[i]);
  std::vector<Poly> out;
  for (const auto& f : F) out.push_back(f.eval_partial(assign));
  return out;
}

// Every point lies in exactly one segment and the branch specializes to a
// basis of the specialized ideal with the same leading monomials as a
// directly computed reduced basis.
void check_cgs_at(const CGS& c, const std::vector<Poly>& F, const std::vector<Rat>& pt) {
  int hits = 0;
  const CGSBranch* found = nullptr;
  for (const auto& b : c.branches)
    if (segment_contains(b.segment, pt)) {
      ++hits;
      found = &b;
    }
  REQUIRE(hits == 1);
  GBasis S = specialize_branch(*found, c.ring, pt);
  GBasis D = buchberger(specialize(F, pt));
  CHECK(S.leading_monomials() == D.leading_monomials());
  for (const auto& g : S.gens) CHECK(normal_form(g, D).is_zero());
  for (const auto& g : D.gens) CHECK(normal_form(g, S).is_zero());
  // leading coefficients of the branch basis do not vanish on the segment
  auto full = full_point(c.ring, pt);
  for (const auto& g : found->basis) CHECK_FALSE(leading_data(g).lc.eval(full).is_zero());
}

std::vector<Rat> grid_point(std::mt19937& rng, std::size_t n) {
  static const Rat values[] = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(3), Rat(-1, 3), Rat(4)};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(values) - 1);
  std::vector<Rat> pt;
  for (std::size_t i = 0; i < n; ++i) pt.push_back(values[pick(rng)]);
  return pt;
}

}  // namespace

TEST_CASE("linear equation with two parameters") {
  auto r = ring({"x"}, {"a", "b"});
  auto F = polys(r, {"a*x - b"});
  CGS c = compute_cgs(F);
  REQUIRE(c.branches.size() == 3);
  const auto& gen = c.branches[0];
  CHECK(gen.segment.eqs.empty());
  CHECK(gen.segment.neqs == polys(r, {"a"}));
  CHECK(gen.basis == polys(r, {"a*x - b"}));

  GBasis S = specialize_branch(gen, r, {Rat(2), Rat(4)});
  CHECK(S.gens == polys(r, {"x - 2"}));
  CHECK_THROWS_AS(specialize_branch(gen, r, {Rat(0), Rat(1)}), ContractViolation);

  int unit = 0, zero = 0;
  for (const auto& b : c.branches) {
    if (b.basis.size() == 1 && b.basis[0] == Poly(r, 1)) ++unit;
    if (b.basis.empty()) ++zero;
  }
  CHECK(unit == 1);
  CHECK(zero == 1);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) check_cgs_at(c, F, {Rat(a), Rat(b)});
}

TEST_CASE("no parameters gives a single branch") {
  auto r = ring({"x", "y"}, {});
  auto F = polys(r, {"x^2 + y^2 - 1", "x - y"});
  CGS c = compute_cgs(F);
  REQUIRE(c.branches.size() == 1);
  CHECK(c.branches[0].basis == buchberger(F).gens);
  CHECK(segment_contains(c.branches[0].segment, {}));
}

TEST_CASE("segment membership") {
  auto r = ring({"c"}, {"x", "y", "z"});
  Segment s{polys(r, {"x", "y"}), {}};
  CHECK(segment_contains(s, {Rat(0), Rat(0), Rat(5)}));
  CHECK_FALSE(segment_contains(s, {Rat(1), Rat(0), Rat(5)}));
  Segment all{{}, polys(r, {"1"})};
  CHECK(segment_contains(all, {Rat(7), Rat(-1), Rat(2)}));
  Segment punctured{polys(r, {"x"}), polys(r, {"y*z"})};
  CHECK(segment_contains(punctured, {Rat(0), Rat(1), Rat(1)}));
  CHECK_FALSE(segment_contains(punctured, {Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("emptiness of segments") {
  auto r = ring({"u"}, {"a", "b"});
  CHECK(segment_is_empty(r, polys(r, {"a"}), parse_poly(r, "a*b")));
  CHECK(segment_is_empty(r, polys(r, {"a^2", "b - 1"}), parse_poly(r, "a")));
  CHECK_FALSE(segment_is_empty(r, polys(r, {"a"}), parse_poly(r, "b")));
  CHECK_FALSE(segment_is_empty(r, {}, parse_poly(r, "1")));
  CHECK(segment_is_empty(r, polys(r, {"1"}), parse_poly(r, "1")));
}

TEST_CASE("partition and specialization on random grid points") {
  struct Case {
    std::vector<std::string> vars, params;
    std::vector<const char*> F;
  };
  std::vector<Case> cases = {
      {{"x", "y"}, {"a", "b"}, {"a*x + b*y - 1", "b*x - a*y"}},
      {{"x", "y"}, {"a", "b"}, {"a*x^2 - b", "x*y - a", "b*y^2 - 1"}},
      {{"x"}, {"a", "b", "c"}, {"a*x^2 + b*x + c"}},
      {{"x", "y"}, {"a"}, {"x^2 + y^2 - 1", "a*x - y", "x*y - a"}},
      {{"c1", "s1"}, {"u", "v"}, {"c1^2 + s1^2 - 1", "u*c1 + v*s1 - 1"}},
  };
  std::mt19937 rng(20240611);
  std::size_t samples = 0;
  for (const auto& cs : cases) {
    auto r = ring(cs.vars, cs.params);
    std::vector<Poly> F;
    for (const char* t : cs.F) F.push_back(parse_poly(r, t));
    CGS c = compute_cgs(F);
    CAPTURE(cs.F.front());
    for (int k = 0; k < 250; ++k) {
      check_cgs_at(c, F, grid_point(rng, cs.params.size()));
      ++samples;
    }
  }
  CHECK(samples >= 1000);
}

TEST_CASE("deterministic output") {
  auto r = ring({"x", "y"}, {"a", "b"});
  auto F = polys(r, {"a*x^2 - b", "x*y - a", "b*y^2 - 1"});
  CHECK(compute_cgs(F) == compute_cgs(F));
}

TEST_CASE("cache round trip and validation") {
  auto r = ring({"x"}, {"a", "b"});
  auto F = polys(r, {"a*x - b"});
  CGS c = compute_cgs(F);
  CHECK(cgs_from_text(cgs_to_text(c)) == c);

  auto path = (std::filesystem::temp_directory_path() / "cgsqe_test_cache.cgs").string();
  cgs_save(c, path);
  CHECK(cgs_load(path) == c);
  CHECK(cgs_load(path, F) == c);

  auto r2 = ring({"y"}, {"a", "b"});
  CHECK_THROWS_AS(cgs_load(path, polys(r2, {"a*y - b"})), CacheValidationError);
  CHECK_THROWS_AS(cgs_load(path, polys(r, {"a*x - b + 1"})), CacheValidationError);
  std::remove(path.c_str());
}

TEST_CASE("cache parse errors report the line") {
  auto r = ring({"x"}, {"a", "b"});
  std::string good = cgs_to_text(compute_cgs(polys(r, {"a*x - b"})));
  auto message = [](const std::string& text) {
    try {
      cgs_from_text(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("not a cache\n").find("line 1") != std::string::npos);
  std::string bad = good;
  bad.replace(bad.find("G: "), 3, "G: x*(");
  CHECK(message(bad).find("line 9") != std::string::npos);
  std::string unterminated = good.substr(0, good.rfind("end"));
  CHECK(message(unterminated).find("unterminated") != std::string::npos);
  std::string mainvar = good;
  mainvar.replace(mainvar.find("N: "), 3, "N: x*");
  CHECK(message(mainvar).find("main variable") != std::string::npos);
}

TEST_CASE("substituting the parameters along a line") {
  auto r = ring({"x", "y"}, {"a", "b"});
  auto F = polys(r, {"a*x^2 - b", "x*y - a", "b*y^2 - 1"});
  CGS c = compute_cgs(F);
  auto rs = ring({"x", "y"}, {"s"});
  std::map<std::string, Poly> line{{"a", parse_poly(rs, "s - 1")}, {"b", parse_poly(rs, "2*s + 1")}};
  std::vector<Poly> Fs;
  for (const char* t : {"(s - 1)*x^2 - (2*s + 1)", "x*y - (s - 1)", "(2*s + 1)*y^2 - 1"}) Fs.push_back(parse_poly(rs, t));
  CGS cs = substitute_parameters(c, rs, line, system_hash(Fs));
  CHECK(cs.branches.size() <= c.branches.size());
  for (const Rat& s : {Rat(-2), Rat(-1, 2), Rat(0), Rat(1), Rat(1, 3), Rat(2), Rat(5, 7)}) check_cgs_at(cs, Fs, {s});
}
