#pragma once

#include <ruca/bit_matrix.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ruca
{

/// One rank-1 term: column a (length p) times row b (length q).
struct rank_one_pair
{
  bit_vector col;
  bit_vector row;
  std::int64_t gain = 0; ///< newly covered 1s minus newly over-covered 0s when selected
};

struct factorization
{
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<rank_one_pair> pairs;
  /// err_curve[k-1] = |M - sum_{i<=k} a_i b_i| (Hamming count).
  std::vector<std::size_t> err_curve;

  std::size_t degree() const noexcept { return pairs.size(); }
};

/// OR of the first `upto` outer products (Boolean semiring: 1 + 1 = 1).
boolean_matrix reconstruct( std::span<rank_one_pair const> pairs, std::size_t upto, std::size_t rows,
                            std::size_t cols );
boolean_matrix reconstruct( factorization const& f, std::size_t upto );

/// Number of entries in which the two matrices differ.
std::size_t factor_error( boolean_matrix const& m, boolean_matrix const& approx );

/*
  Association-rule greedy factorization. Candidate basis rows are the rows
  of the association matrix built with confidence threshold `tau`; each
  step appends the (candidate, best column) pair that covers the most
  uncovered 1s net of over-covered 0s. Pairs with no positive gain are
  recorded as all-zero, so the error curve never increases.
*/
factorization asso_factorize( boolean_matrix const& m, std::size_t degree, double tau = 0.9 );

/// Association matrix: O[i][j] = 1 iff |col_i & col_j| / |col_i| >= tau.
/// Rows for empty columns are zero.
boolean_matrix association_matrix( boolean_matrix const& m, double tau );

/// Exhaustive optimum of |M - AB| over all Boolean A (p x f), B (f x q).
/// Requires p*f <= 20 and q*f <= 20.
factorization brute_force_bmf( boolean_matrix const& m, std::size_t degree );

} // namespace ruca
