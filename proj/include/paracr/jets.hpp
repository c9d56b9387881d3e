#ifndef PARACR_JETS_HPP
#define PARACR_JETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "paracr/submanifold.hpp"

namespace paracr {

enum class Side { par, var };

// Rank of the jet-of-leaves map at a rational point. For side = par this is
// the rank of (x, a, b) -> (x, (d^beta_x Q)_{|beta| <= order}), i.e. n plus
// the rank of the (a, b)-Jacobian of the derivative tuple; side = var is the
// mirror statement for P. `point` lives in q_space / p_space coordinates.
int jet_jacobian_rank(const Submanifold& M, Side side, int order,
                      const std::vector<Rational>& point);

// Smallest order at which the jet map reaches full rank (n+1+m resp. m+1+n)
// at `point`, searching 1..k_max; nullopt when the bound is exhausted. A
// nullopt is a statement about the searched range only, never a proof of
// infinite degeneracy.
std::optional<int> nondeg_order(const Submanifold& M, Side side,
                                const std::vector<Rational>& point, int k_max);

// Generic rank of the order-k jet map, certified by series minors.
int jet_generic_rank(const Submanifold& M, Side side, int order);

// n = m = 2: the two 3x3 determinants whose nonvanishing at 0 expresses
// 2-nondegeneracy with respect to parameters (Delta, from Q) and with
// respect to variables (Box, from P).
std::pair<Series, Series> delta_and_box(const Submanifold& M);

enum class CaseLabel { I, II, III, IV };
std::string case_label_str(CaseLabel c);

// n = m = 2, Levi generic rank 1: classifies by the generic ranks of the
// order-2 jet maps, (4,4) -> I, (4,5) -> II, (5,4) -> III, (5,5) -> IV.
CaseLabel classify_case(const Submanifold& M);

// (n+1) C(n+1+2k+2l, n+1) + (m+1) C(m+1+2k+2l, m+1): the jet-count bound on
// dim Aut(M) for a model k-nondegenerate w.r.t. parameters and
// l-nondegenerate w.r.t. variables.
BigInt aut_dim_bound(long n, long m, long k, long l);

struct NondegReport {
    std::optional<int> k_par;
    std::optional<int> l_var;
    std::vector<Rational> probe_point_q;  // q_space coordinates
    int k_max_searched = 0;
    std::optional<Rational> delta0;  // n = m = 2 only
    std::optional<Rational> box0;
    std::optional<CaseLabel> case_label;
};

// Named probe coordinates ("x" -> 1/2, ...); anything unnamed stays 0. The
// same assignments feed both charts, resolved by coordinate name.
using PointAssignments = std::vector<std::pair<std::string, Rational>>;

std::vector<Rational> resolve_point(const VarSpace& space, const PointAssignments& at);

NondegReport nondeg_report(const Submanifold& M, int k_max, const PointAssignments& at = {});

// One jet order of a 1-D prolongation: how y_{x^k} transforms under a plane
// map (x, y) -> (f, g). Built recursively via the truncated total derivative
// D = d_x + y_x d_y + y_xx d_{y_x} + ...; order <= 3.
struct Prolongation1D {
    SpacePtr jspace;             // (x, y, y_x, ..., y_{x^order})
    Series x_image;              // f, over jspace
    Series y_image;              // g, over jspace
    std::vector<Series> jets;    // jets[k-1] = image of y_{x^k}, k = 1..order
};

Prolongation1D prolong_1d(const Series& f, const Series& g, int order);

}  // namespace paracr

#endif
