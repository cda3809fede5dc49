#pragma once

#include <cstddef>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "cgsqe/matrix.hpp"
#include "cgsqe/poly.hpp"

namespace cgsqe {

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators of an ideal together with the order they are a basis for.
/// Reduced bases are monic, sorted by descending leading monomial.
struct GBasis {
  RingPtr ring;
  std::vector<Poly> gens;
  bool reduced = false;

  const TermOrder& ord() const { return ring->order(); }
  /// True for the basis {1} of the unit ideal.
  bool is_unit() const { return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero(); }
  std::vector<Monomial> leading_monomials() const;
};

enum class PairSelection { normal, sugar };

struct BuchbergerOptions {
  PairSelection selection = PairSelection::sugar;
};

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis of <F> under the order of F's ring. Zero inputs are
/// ignored; the empty input yields the empty basis of the zero ideal.
GBasis buchberger(const std::vector<Poly>& F, const BuchbergerOptions& opts = {}, BuchbergerStats* stats = nullptr);
GBasis buchberger(const std::vector<Poly>& F, const TermOrder& ord, const BuchbergerOptions& opts = {});

/// Remainder of multivariate division by G; no term of the result is
/// divisible by a leading monomial of G.
Poly normal_form(const Poly& f, const std::vector<Poly>& G);
inline Poly normal_form(const Poly& f, const GBasis& G) { return normal_form(f, G.gens); }

/// Reduces each generator against the others and drops redundant ones.
GBasis interreduce(const RingPtr& ring, std::vector<Poly> G);

/// S-polynomial of two nonzero polynomials.
Poly s_polynomial(const Poly& f, const Poly& g);

/// Every main variable has a pure power among the leading monomials.
bool is_zero_dimensional(const GBasis& G);

/// Standard monomials v_1..v_d in the main variables, sorted by degree and,
/// within a degree, by descending term order.
struct QuotientBasis {
  std::vector<Monomial> monomials;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;

  std::size_t size() const { return monomials.size(); }
  /// Coordinates of a normal form; throws DimensionError when a term is not
  /// a standard monomial.
  std::vector<QSqrt2> coordinates(const Poly& nf) const;
};

QuotientBasis standard_monomials(const GBasis& G);
/// Monomials of the main variables outside the ideal generated by `leading`;
/// throws DimensionError unless that ideal holds a pure power of every main variable.
QuotientBasis standard_monomials(const std::vector<Monomial>& leading, const Ring& ring);

/// Column j holds the coordinates of NF(h * v_j).
Matrix<QSqrt2> mult_matrix(const Poly& h, const GBasis& G, const QuotientBasis& B);

}  // namespace cgsqe
