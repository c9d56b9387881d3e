#ifndef PARACR_SUBMANIFOLD_HPP
#define PARACR_SUBMANIFOLD_HPP

#include <utility>
#include <vector>

#include "paracr/linalg.hpp"
#include "paracr/series.hpp"
#include "paracr/verdict.hpp"

namespace paracr {

// A codimension-1 submanifold of solutions, held by its two graph functions:
//   { y = Q(x, a, b) }  =  { b = P(a, x, y) }
// (for n = m = 2 the coordinates read (x,y,z,a,b,c) and the graphs are
// z = Q(x,y,a,b,c), c = P(a,b,x,y,z)). P is always derived from Q by the
// implicit function theorem and both Functional Relations are verified at
// construction.
struct Submanifold {
    int n = 0;
    int m = 0;
    Series Q;  // over q_space(n, m)
    Series P;  // over p_space(n, m)

    const SpacePtr& qspace() const { return Q.space(); }
    const SpacePtr& pspace() const { return P.space(); }
    int trunc() const { return Q.trunc(); }

    int var_index(int i) const { return i; }                    // x_i within q_space
    int par_index(int j) const { return n + j; }                // a_j within q_space
    int par_trans_index() const { return n + m; }               // b within q_space
    // indices within p_space
    int p_par_index(int j) const { return j; }
    int p_var_index(int i) const { return m + i; }
    int p_var_trans_index() const { return m + n; }
};

Submanifold from_Q(const Series& Q, int n, int m);
Submanifold from_P(const Series& P, int n, int m);
// R over full_space(n, m) with R(0) = 0, R_y(0) != 0 != R_b(0).
Submanifold from_R(const Series& R, int n, int m);

// Transports a P-space series onto the (x, a, b) chart by y -> Q.
Series pullback_to_q(const Submanifold& M, const Series& p_side);
// Transports a Q-space series onto the (a, x, y) chart by b -> P.
Series pullback_to_p(const Submanifold& M, const Series& q_side);

// Both Functional Relations, plus Q_b * (P_y pulled back) = 1.
Verdict check_functional_relations(const Submanifold& M);

// The split change of coordinates used to reach normal coordinates:
// y = Y(x, y') on the variables side, b = B(a, b') on the parameters side.
struct NormalizationRecord {
    Series y_of_xy;  // over a space (x..., y); y plays y'
    Series b_of_ab;  // over a space (a..., b); b plays b'
    bool identity = false;
};

// Normal coordinates: after the change, Q(0, a, b) = b = Q(x, 0, b) and
// P(0, x, y) = y = P(a, 0, y) through the reliable degree. Idempotent.
std::pair<Submanifold, NormalizationRecord> normalize_coordinates(const Submanifold& M);

bool is_normalized(const Submanifold& M);

struct LeviData {
    SeriesMatrix levi_par;  // n x m over q_space
    SeriesMatrix levi_var;  // m x n over p_space
    int rank0 = 0;          // rank of the constant-term matrix
    int generic_rank = 0;   // minor-certified generic rank, cross-checked by sampling
};

LeviData levi(const Submanifold& M);

// Entrywise transpose identity levi_par[i][j] = -P_y * levi_var[j][i] after
// pullback, and (n = m = 2) the determinant factor relation
// Q_c^2 det Levi_par(Q) = det Levi_var(P).
Verdict check_levi_transpose(const Submanifold& M);

// Brings the degree-2 bilinear block of a normalized Q to x_1 a_1 + ... +
// x_r a_r by split linear changes; returns the Levi rank r at the origin.
std::pair<int, Submanifold> levi_rank_normal_form(const Submanifold& M);

struct NormalForm22 {
    Rational beta;        // coefficient of x^2 b
    Rational beta_underline;  // coefficient of y a^2
    Submanifold M;
};

// n = m = 2, Levi rank 1 at the origin, Q = c + xa + O3 shape: absorbs the
// six removable cubic coefficients and reads off (beta, beta_underline). With
// `scale`, dilations rescale both invariants to 1 when they are nonzero.
NormalForm22 normal_form_22(const Submanifold& M, bool scale = false);

}  // namespace paracr

#endif
