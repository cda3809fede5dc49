#include "cgsqe/cgs.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cgsqe {

namespace {

struct Context {
  RingPtr ring;
  RingPtr param_ring;  // parameters plus the Rabinowitsch variable
  CGSStats* stats;
  std::vector<CGSBranch> out;
};

Poly one(const RingPtr& r) { return Poly(r, QSqrt2(1)); }

GBasis gb(Context& cx, const std::vector<Poly>& F) {
  if (cx.stats) ++cx.stats->groebner_calls;
  return buchberger(F);
}

bool empty_segment(Context& cx, const std::vector<Poly>& eqs, const Poly& n) {
  if (cx.stats) ++cx.stats->emptiness_checks;
  if (n.is_zero()) return true;
  const RingPtr& pr = cx.param_ring;
  std::vector<Poly> sys;
  for (const auto& e : eqs) sys.push_back(e.to_ring(pr));
  if (!n.is_constant()) {
    Poly t = Poly::variable(pr, pr->nvars() - 1);
    sys.push_back(one(pr) - t * n.to_ring(pr));
  }
  if (sys.empty()) return false;
  return buchberger(sys).is_unit();
}

void push_unique(std::vector<Poly>& v, const Poly& p) {
  if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
}

void emit(Context& cx, std::vector<Poly> eqs, const Poly& n, std::vector<Poly> basis) {
  Segment seg{std::move(eqs), {n}};
  for (const auto& b : cx.out)
    if (b.segment == seg) return;
  cx.out.push_back({std::move(seg), std::move(basis)});
}

void cgs_main(Context& cx, const std::vector<Poly>& E, const Poly& N, const std::vector<Poly>& F) {
  if (empty_segment(cx, E, N)) return;
  std::vector<Poly> input = F;
  input.insert(input.end(), E.begin(), E.end());
  GBasis G = gb(cx, input);
  if (G.is_unit()) {
    emit(cx, E, N, {one(cx.ring)});
    return;
  }
  std::vector<Poly> Gr, Gm;
  for (const auto& g : G.gens) (g.in_params_only() ? Gr : Gm).push_back(g);

  // Points of V(E) \ V(N) outside V(Gr) give the unit ideal; split that
  // region into disjoint pieces V(E, g_1..g_{j-1}) \ V(N g_j).
  std::vector<Poly> prefix = E;
  for (const auto& g : Gr) {
    Poly n = N * g;
    if (!empty_segment(cx, prefix, n)) emit(cx, prefix, n, {one(cx.ring)});
    push_unique(prefix, g);
  }
  if (!Gr.empty() && empty_segment(cx, Gr, N)) return;

  // Minimal Dickson basis with respect to the main-variable leading monomials.
  std::vector<LeadingData> lead;
  for (const auto& g : Gm) lead.push_back(leading_data(g));
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < Gm.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < Gm.size() && !drop; ++j) {
      if (i == j) continue;
      if (lead[j].lm == lead[i].lm)
        drop = cx.ring->compare(Gm[j].lm(), Gm[i].lm()) < 0 || (Gm[j].lm() == Gm[i].lm() && j < i);
      else
        drop = lead[j].lm.divides(lead[i].lm);
    }
    if (!drop) keep.push_back(i);
  }
  std::vector<Poly> Mb;
  std::vector<Poly> lcs;
  for (std::size_t i : keep) {
    Mb.push_back(Gm[i]);
    if (!lead[i].lc.is_constant()) push_unique(lcs, lead[i].lc.monic());
  }
  Poly h = one(cx.ring);
  for (const auto& c : lcs) h *= c;
  Poly Nh = N * h;
  if (!empty_segment(cx, Gr, Nh)) emit(cx, Gr, Nh, Mb);

  Poly acc = N;
  for (const auto& c : lcs) {
    std::vector<Poly> E2 = Gr;
    E2.push_back(c);
    cgs_main(cx, E2, acc, G.gens);
    acc = acc * c;
  }
}

}  // namespace

bool operator==(const CGS& x, const CGS& y) {
  return *x.ring == *y.ring && x.branches == y.branches && x.source_hash == y.source_hash && x.pruned == y.pruned;
}

static RingPtr rabinowitsch_ring(const RingPtr& ring) {
  std::vector<std::string> names = ring->param_names();
  std::string t = "t_";
  while (ring->index_of(t)) t += "_";
  names.push_back(t);
  return Ring::make(names, 0, TermOrder::grevlex());
}

CGS compute_cgs(const std::vector<Poly>& F, CGSStats* stats) {
  if (F.empty()) throw std::invalid_argument("compute_cgs needs at least one polynomial");
  Context cx{F.front().ring(), rabinowitsch_ring(F.front().ring()), stats, {}};
  cgs_main(cx, {}, one(cx.ring), F);
  CGS c{cx.ring, std::move(cx.out), system_hash(F), false};
  return c;
}

CGS compute_cgs(const std::vector<Poly>& F, const TermOrder& ord, CGSStats* stats) {
  if (F.empty()) throw std::invalid_argument("compute_cgs needs at least one polynomial");
  const RingPtr& r = F.front().ring();
  RingPtr target = Ring::make(r->names(), r->nparams(), ord);
  std::vector<Poly> G;
  for (const auto& f : F) G.push_back(f.to_ring(target));
  return compute_cgs(G, stats);
}

namespace {

class Substitution {
 public:
  Substitution(const RingPtr& from, const RingPtr& to, const std::map<std::string, Poly>& subst) : to_(to) {
    for (std::size_t i = 0; i < from->nvars(); ++i) {
      if (!from->is_param(i)) {
        auto j = to->index_of(from->name(i));
        if (!j) throw StructuralError("variable " + from->name(i) + " missing in target ring");
        images_.push_back(Poly::variable(to, *j));
        continue;
      }
      auto it = subst.find(from->name(i));
      if (it == subst.end()) throw StructuralError("no substitution for parameter " + from->name(i));
      images_.push_back(it->second.to_ring(to));
    }
    powers_.resize(images_.size());
  }

  Poly operator()(const Poly& p) {
    Poly out(to_);
    for (const auto& t : p.terms()) {
      Poly m(to_, t.coef);
      for (std::size_t i = 0; i < images_.size(); ++i)
        if (t.mono[i] > 0) m *= power(i, t.mono[i]);
      out += m;
    }
    return out;
  }

 private:
  const Poly& power(std::size_t i, unsigned e) {
    auto& pw = powers_[i];
    if (pw.empty()) pw.push_back(Poly(to_, QSqrt2(1)));
    while (pw.size() <= e) pw.push_back(pw.back() * images_[i]);
    return pw[e];
  }

  RingPtr to_;
  std::vector<Poly> images_;
  std::vector<std::vector<Poly>> powers_;
};

}  // namespace

std::vector<Poly> substitute_parameters(const std::vector<Poly>& F, const RingPtr& target,
                                        const std::map<std::string, Poly>& subst) {
  if (F.empty()) return {};
  Substitution sub(F.front().ring(), target, subst);
  std::vector<Poly> out;
  for (const auto& f : F) out.push_back(sub(f));
  return out;
}

CGS substitute_parameters(const CGS& c, const RingPtr& target, const std::map<std::string, Poly>& subst,
                          std::uint64_t source_hash) {
  Substitution sub(c.ring, target, subst);
  Context cx{target, rabinowitsch_ring(target), nullptr, {}};
  CGS out{target, {}, source_hash, c.pruned};
  for (const auto& b : c.branches) {
    CGSBranch nb;
    for (const auto& e : b.segment.eqs) {
      Poly q = sub(e);
      if (!q.is_zero()) push_unique(nb.segment.eqs, q.monic());
    }
    for (const auto& m : b.segment.neqs) {
      Poly q = sub(m);
      if (!q.is_zero()) nb.segment.neqs.push_back(q.is_constant() ? Poly(target, QSqrt2(1)) : q.monic());
    }
    if (!b.segment.neqs.empty() && nb.segment.neqs.empty()) continue;
    bool empty = true;
    if (nb.segment.neqs.empty())
      empty = empty_segment(cx, nb.segment.eqs, Poly(target, QSqrt2(1)));
    for (const auto& q : nb.segment.neqs) empty = empty && empty_segment(cx, nb.segment.eqs, q);
    if (empty) continue;
    for (const auto& g : b.basis) {
      Poly q = sub(g);
      if (!q.is_zero()) nb.basis.push_back(q);
    }
    out.branches.push_back(std::move(nb));
  }
  return out;
}

bool segment_is_empty(const RingPtr& ring, const std::vector<Poly>& eqs, const Poly& n) {
  Context cx{ring, rabinowitsch_ring(ring), nullptr, {}};
  return empty_segment(cx, eqs, n);
}

std::vector<QSqrt2> full_point(const RingPtr& ring, const std::vector<Rat>& params) {
  if (params.size() != ring->nparams()) throw StructuralError("parameter point has wrong dimension");
  std::vector<QSqrt2> pt(ring->nmain());
  for (const auto& v : params) pt.emplace_back(v);
  return pt;
}

bool segment_contains(const Segment& seg, const std::vector<Rat>& point) {
  const Poly* any = !seg.eqs.empty() ? &seg.eqs.front() : (!seg.neqs.empty() ? &seg.neqs.front() : nullptr);
  if (!any) return true;
  auto pt = full_point(any->ring(), point);
  for (const auto& e : seg.eqs)
    if (!e.eval(pt).is_zero()) return false;
  if (seg.neqs.empty()) return true;
  for (const auto& n : seg.neqs)
    if (!n.eval(pt).is_zero()) return true;
  return false;
}

GBasis specialize_branch(const CGSBranch& br, const RingPtr& ring, const std::vector<Rat>& point) {
  if (!segment_contains(br.segment, point)) throw ContractViolation("point lies outside the branch segment");
  std::map<std::size_t, QSqrt2> assign;
  for (std::size_t i = 0; i < ring->nparams(); ++i) assign[ring->nmain() + i] = QSqrt2(point[i]);
  std::vector<Poly> out;
  for (const auto& g : br.basis) {
    Poly s = g.eval_partial(assign);
    if (!s.is_zero()) out.push_back(s);
  }
  return interreduce(ring, std::move(out));
}

std::uint64_t system_hash(const std::vector<Poly>& F) {
  std::string text;
  if (!F.empty()) {
    const RingPtr& r = F.front().ring();
    for (const auto& n : r->names()) text += n + " ";
    text += "|" + std::to_string(r->nparams()) + "|" + r->order().to_string() + "\n";
  }
  for (const auto& f : F) text += f.to_string() + "\n";
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

constexpr const char* kMagic = "cgsqe-cgs 1";

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
  return s;
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("cgs cache line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string cgs_to_text(const CGS& c) {
  std::ostringstream os;
  os << kMagic << "\n";
  os << "vars: " << join(c.vars()) << "\n";
  os << "params: " << join(c.params()) << "\n";
  os << "order: " << c.ord().to_string() << "\n";
  os << "hash: " << std::hex << std::setw(16) << std::setfill('0') << c.source_hash << std::dec << "\n";
  os << "pruned: " << (c.pruned ? 1 : 0) << "\n";
  for (const auto& b : c.branches) {
    os << "branch\n";
    for (const auto& e : b.segment.eqs) os << "E: " << e.to_string() << "\n";
    for (const auto& n : b.segment.neqs) os << "N: " << n.to_string() << "\n";
    for (const auto& g : b.basis) os << "G: " << g.to_string() << "\n";
    os << "end\n";
  }
  return os.str();
}

CGS cgs_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++ln;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  auto field = [&](const std::string& key) {
    if (!next()) fail(ln + 1, "missing '" + key + ":' header");
    if (line.rfind(key + ":", 0) != 0) fail(ln, "expected '" + key + ":'");
    return line.substr(key.size() + 1);
  };
  if (!next() || line != kMagic) fail(ln ? ln : 1, "bad magic, expected '" + std::string(kMagic) + "'");
  auto vars = split_words(field("vars"));
  auto params = split_words(field("params"));
  auto ord_words = split_words(field("order"));
  if (ord_words.size() != 1) fail(ln, "bad term order");
  TermOrder ord = TermOrder::grevlex();
  try {
    ord = TermOrder::parse(ord_words[0]);
  } catch (const std::exception& e) {
    fail(ln, e.what());
  }
  std::string hash_text = field("hash");
  std::uint64_t hash = 0;
  try {
    hash = std::stoull(hash_text, nullptr, 16);
  } catch (const std::exception&) {
    fail(ln, "bad hash");
  }
  auto pruned_words = split_words(field("pruned"));
  if (pruned_words.size() != 1 || (pruned_words[0] != "0" && pruned_words[0] != "1")) fail(ln, "bad pruned flag");

  std::vector<std::string> names = vars;
  names.insert(names.end(), params.begin(), params.end());
  RingPtr ring;
  try {
    ring = Ring::make(names, params.size(), ord);
  } catch (const std::exception& e) {
    fail(ln, e.what());
  }
  CGS c{ring, {}, hash, pruned_words[0] == "1"};
  auto parse_at = [&](const std::string& s) {
    try {
      return parse_poly(ring, s);
    } catch (const std::exception& e) {
      fail(ln, e.what());
    }
  };
  while (next()) {
    if (line != "branch") fail(ln, "expected 'branch'");
    CGSBranch b;
    bool closed = false;
    while (next()) {
      if (line == "end") {
        closed = true;
        break;
      }
      if (line.size() < 2 || line[1] != ':') fail(ln, "expected E:, N:, G: or end");
      Poly p = parse_at(line.substr(2));
      switch (line[0]) {
        case 'E':
          if (!p.in_params_only()) fail(ln, "segment equation involves a main variable");
          b.segment.eqs.push_back(p);
          break;
        case 'N':
          if (!p.in_params_only()) fail(ln, "segment inequation involves a main variable");
          b.segment.neqs.push_back(p);
          break;
        case 'G':
          b.basis.push_back(p);
          break;
        default:
          fail(ln, "expected E:, N:, G: or end");
      }
    }
    if (!closed) fail(ln + 1, "unterminated branch");
    c.branches.push_back(std::move(b));
  }
  return c;
}

void cgs_save(const CGS& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << cgs_to_text(c);
  if (!out) throw std::runtime_error("write failed for " + path);
}

CGS cgs_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return cgs_from_text(ss.str());
}

CGS cgs_load(const std::string& path, const std::vector<Poly>& F) {
  CGS c = cgs_load(path);
  if (F.empty()) return c;
  const RingPtr& r = F.front().ring();
  if (c.vars() != r->main_names()) throw CacheValidationError("cache variables do not match the request");
  if (c.params() != r->param_names()) throw CacheValidationError("cache parameters do not match the request");
  if (!(c.ord() == r->order())) throw CacheValidationError("cache term order does not match the request");
  if (c.source_hash != system_hash(F)) throw CacheValidationError("cache was generated from a different system");
  return c;
}

}  // namespace cgsqe
