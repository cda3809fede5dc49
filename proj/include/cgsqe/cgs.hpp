#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgsqe/groebner.hpp"

namespace cgsqe {

/// V(eqs) \ V(neqs) in parameter space. A point lies in the segment when
/// every eq vanishes and not every neq vanishes; an empty neqs list excludes
/// nothing.
struct Segment {
  std::vector<Poly> eqs;
  std::vector<Poly> neqs;

  friend bool operator==(const Segment& x, const Segment& y) { return x.eqs == y.eqs && x.neqs == y.neqs; }
};

struct CGSBranch {
  Segment segment;
  std::vector<Poly> basis;  // empty for the zero ideal

  friend bool operator==(const CGSBranch& x, const CGSBranch& y) {
    return x.segment == y.segment && x.basis == y.basis;
  }
};

/// Branches over a ring whose parameters are the trailing variables.
struct CGS {
  RingPtr ring;
  std::vector<CGSBranch> branches;
  std::uint64_t source_hash = 0;
  bool pruned = false;

  std::vector<std::string> vars() const { return ring->main_names(); }
  std::vector<std::string> params() const { return ring->param_names(); }
  const TermOrder& ord() const { return ring->order(); }

  friend bool operator==(const CGS& x, const CGS& y);
};

struct CGSStats {
  std::size_t groebner_calls = 0;
  std::size_t emptiness_checks = 0;
};

/// Comprehensive Groebner system of <F>; F's ring fixes variables,
/// parameters, and the (block) order. The most generic branch comes first.
CGS compute_cgs(const std::vector<Poly>& F, CGSStats* stats = nullptr);
CGS compute_cgs(const std::vector<Poly>& F, const TermOrder& ord, CGSStats* stats = nullptr);

/// Images of F when each parameter is replaced by a polynomial of `target`.
std::vector<Poly> substitute_parameters(const std::vector<Poly>& F, const RingPtr& target,
                                        const std::map<std::string, Poly>& subst);
/// CGS of the system obtained by replacing each parameter with a polynomial
/// in the parameters of `target`; main variables are matched by name.
/// Segments that become empty are dropped.
CGS substitute_parameters(const CGS& c, const RingPtr& target, const std::map<std::string, Poly>& subst,
                          std::uint64_t source_hash);

/// True when V(eqs) \ V(n) has no complex point.
bool segment_is_empty(const RingPtr& ring, const std::vector<Poly>& eqs, const Poly& n);

/// `point` lists values for the parameters in ring order.
bool segment_contains(const Segment& seg, const std::vector<Rat>& point);
std::vector<QSqrt2> full_point(const RingPtr& ring, const std::vector<Rat>& params);

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Substitutes the parameters and normalizes to a reduced basis. Throws
/// ContractViolation for a point outside the branch's segment.
GBasis specialize_branch(const CGSBranch& br, const RingPtr& ring, const std::vector<Rat>& point);

/// FNV-1a hash of the ring layout and the canonical text of F.
std::uint64_t system_hash(const std::vector<Poly>& F);

class CacheValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string cgs_to_text(const CGS& c);
CGS cgs_from_text(const std::string& text);
void cgs_save(const CGS& c, const std::string& path);
CGS cgs_load(const std::string& path);
/// Loads and checks that the cache was generated from F.
CGS cgs_load(const std::string& path, const std::vector<Poly>& F);

}  // namespace cgsqe
