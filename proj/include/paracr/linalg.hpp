#ifndef PARACR_LINALG_HPP
#define PARACR_LINALG_HPP

#include <vector>

#include "paracr/rational.hpp"
#include "paracr/series.hpp"

namespace paracr {

using RatMatrix = std::vector<std::vector<Rational>>;
using SeriesMatrix = std::vector<std::vector<Series>>;

// Rank over the exact rationals, by Gaussian elimination.
int rat_rank(RatMatrix m);

// Inverse of a square rational matrix; throws SingularJacobian if singular.
RatMatrix rat_inverse(const RatMatrix& m);

Series series_det(const SeriesMatrix& m);

RatMatrix eval_matrix(const SeriesMatrix& m, const std::vector<Rational>& point);

// Largest s such that some s x s minor is nonzero through `degree` as a
// series (0 when the whole matrix vanishes). This is the generic rank of the
// matrix of truncated series, exact within the checked degree.
int generic_rank_by_minors(const SeriesMatrix& m, int degree);

}  // namespace paracr

#endif
