#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cfr/numerics.hpp"

namespace cfr {

/// Nonzero Gaussian-integer coefficient vector in canonical unit form: the
/// first nonzero coefficient has positive real part and nonnegative imaginary
/// part, so no two candidates are unit multiples of each other.
struct Ecv {
  std::vector<GaussInt> c;

  int size() const { return static_cast<int>(c.size()); }
  double norm_sq() const;
  void canonicalize();

  friend bool operator==(const Ecv&, const Ecv&) = default;
};

/// Lexicographic comparison on (Re, Im) coefficient pairs; the final
/// tie-break of every search.
bool lex_less(const Ecv& a, const Ecv& b);

struct SearchBudget {
  double radius_sq = 1.0;            // unit vectors must stay reachable
  std::size_t hard_cap = 5'000'000;  // max candidates before radius halving
};

class SearchOverflow : public std::runtime_error {
 public:
  SearchOverflow() : std::runtime_error("search space overflow") {}
};

class InfeasibleSearch : public std::runtime_error {
 public:
  InfeasibleSearch() : std::runtime_error("infeasible search") {}
};

/// Every canonical-form nonzero vector with ||a||^2 <= radius_sq, exactly once.
/// Throws SearchOverflow if the count would exceed hard_cap.
std::vector<Ecv> enumerate_candidates(int L, double radius_sq,
                                      std::size_t hard_cap = SearchBudget{}.hard_cap);

/// Every canonical candidate with a* V a <= value_bound and ||a||^2 <=
/// radius_sq, exactly once, lex-sorted.  V must be positive definite (the
/// sublevel set is then a bounded ellipsoid, walked by sphere decoding).
std::vector<Ecv> enumerate_sublevel(const QuadraticForm& V, double value_bound, double radius_sq,
                                    std::size_t hard_cap = SearchBudget{}.hard_cap);

struct VectorSearchResult {
  Ecv vec;
  double value = 0.0;
};

/// Minimizer of a* V a over canonical candidates within the budget radius that
/// stay independent of the excluded rows.  Ties break by smaller norm, then
/// lexicographic order.  The result matches brute-force enumeration of the
/// full ball exactly; internally the scan is pruned by a value bound.
///
/// null_dim: number of zero eigenvalues of V whose span is covered by the
/// excluded rows (the projected-out directions).  Pass 0 for definite forms.
VectorSearchResult min_form_vector(const QuadraticForm& V, const SearchBudget& budget,
                                   const GaussianIntMatrix& excluded, int null_dim = 0);

struct MatrixSearchResult {
  std::vector<Ecv> rows;
  double value = 0.0;  // max over admitted rows of a* V a
};

/// Greedy max-min selection: candidates sorted by ascending form value, a
/// candidate is admitted iff the stack [fixed_rows; admitted; candidate] stays
/// full rank, until rows_needed are admitted.
MatrixSearchResult min_form_matrix(const QuadraticForm& V, const SearchBudget& budget,
                                   const GaussianIntMatrix& fixed_rows, int rows_needed,
                                   int null_dim = 0);

/// Stage search radius: the safe bound 1 + snr_t ||g_eff||^2, tightened by the
/// projector-based expression when that is positive and smaller.
double icmf_radius(double snr_t, const CVector& g_eff, const GaussianIntMatrix& E);

/// Radius covering every candidate whose form value can drop below one,
/// modulo reduction by the null rows: 1/lambda_min^+ plus the null-lattice
/// covering term.  Used for the destination-side searches.
double psd_search_radius(const QuadraticForm& V, const GaussianIntMatrix& null_rows);

}  // namespace cfr
