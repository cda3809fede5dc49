#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cgsqe/groebner.hpp"
#include "cgsqe/matrix.hpp"
#include "cgsqe/upoly.hpp"

namespace cgsqe {

/// Characteristic polynomial det(lambda I - M) by Berkowitz's division-free
/// recurrence. Coefficients are returned highest degree first: [1, a_{d-1}, ..., a_0].
template <class T>
std::vector<T> char_poly(const Matrix<T>& M) {
  if (!M.square()) throw std::invalid_argument("char_poly needs a square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return {T(1)};
  std::vector<T> vec{T(1), T(0) - M(0, 0)};
  for (std::size_t r = 1; r < n; ++r) {
    // c = [1, -a_rr, -R S, -R A S, ..., -R A^{r-1} S] with A the leading r x r block
    std::vector<T> c;
    c.reserve(r + 2);
    c.push_back(T(1));
    c.push_back(T(0) - M(r, r));
    std::vector<T> s(r);
    for (std::size_t i = 0; i < r; ++i) s[i] = M(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      T dot = T(0);
      for (std::size_t i = 0; i < r; ++i) dot += M(r, i) * s[i];
      c.push_back(T(0) - dot);
      if (k + 1 == r) break;
      std::vector<T> next(r, T(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += M(i, j) * s[j];
      s = std::move(next);
    }
    std::vector<T> out(r + 2, T(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < vec.size(); ++j) out[i] += c[i - j] * vec[j];
    vec = std::move(out);
  }
  return vec;
}

/// Trace-form matrix M_1: entry (i,j) is the trace of multiplication by
/// v_i v_j on the quotient ring.
Matrix<QSqrt2> hermite_matrix(const GBasis& G);
Matrix<QSqrt2> hermite_matrix(const GBasis& G, const QuotientBasis& B);

struct SignSequenceReport {
  std::vector<int> Lplus;   // signs of (1, a_{d-1}, ..., a_0)
  std::vector<int> Lminus;  // signs of the coefficients of chi(-lambda), same positions
  int Splus = 0;
  int Sminus = 0;
  int signature() const { return Splus - Sminus; }
};

/// Sign changes with zeros removed, for a characteristic polynomial given
/// highest degree first.
SignSequenceReport sign_changes(const std::vector<int>& coefficient_signs);
SignSequenceReport sign_changes(const std::vector<QSqrt2>& chi);

/// Number of real points of V(G), or nullopt when G is not zero-dimensional.
std::optional<int> count_real_roots(const GBasis& G);

/// Sturm sequence f, f', -rem(...), ... of a nonzero polynomial.
std::vector<UPoly> sturm_sequence(const UPoly& f);
/// Distinct real roots; throws std::invalid_argument for the zero polynomial.
int sturm_count(const UPoly& f);
/// Distinct roots in the half-open interval (a, b].
int sturm_count(const std::vector<UPoly>& seq, const Rat& a, const Rat& b);

/// Sign of b^2 - 4ac for a degree-2 polynomial.
int quadratic_discriminant(const UPoly& f);

/// Rational bound strictly exceeding the modulus of every root.
Rat root_bound(const UPoly& f);

/// A real root of a squarefree polynomial, located in (lo, hi], or exactly at
/// lo when lo == hi. Otherwise the endpoints are not roots.
struct RealAlgebraic {
  UPoly poly;
  Rat lo, hi;

  bool exact() const { return lo == hi; }
  /// Bisects until hi - lo <= width.
  void refine(const Rat& width);
  double approx() const;
};

/// One isolating interval per distinct real root, in increasing order.
std::vector<RealAlgebraic> isolate_real_roots(const UPoly& f);

/// Exact sign of q at alpha; may refine alpha.
int sign_at(const UPoly& q, RealAlgebraic& alpha);

}  // namespace cgsqe
