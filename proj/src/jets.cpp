#include "paracr/jets.hpp"

#include <algorithm>

#include "paracr/errors.hpp"

namespace paracr {

namespace {

// Multi-indices beta over `nvars` letters with |beta| <= order, by degree.
std::vector<Mono> multi_indices(int nvars, int order) {
    std::vector<Mono> out;
    std::vector<Mono> level = {Mono(nvars, 0)};
    out.push_back(level[0]);
    for (int d = 1; d <= order; ++d) {
        std::vector<Mono> next;
        for (const Mono& e : level) {
            // raise the last nonzero position or later, to enumerate each
            // multi-index exactly once
            int start = 0;
            for (int i = nvars - 1; i >= 0; --i)
                if (e[i] > 0) {
                    start = i;
                    break;
                }
            for (int i = start; i < nvars; ++i) {
                Mono f = e;
                f[i] += 1;
                next.push_back(std::move(f));
            }
        }
        for (const Mono& e : next) out.push_back(e);
        level = std::move(next);
    }
    return out;
}

Series iterated_derivative(const Series& s, const Mono& beta,
                           const std::vector<int>& var_indices) {
    Series r = s;
    for (std::size_t i = 0; i < beta.size(); ++i)
        for (int k = 0; k < beta[i]; ++k) r = r.derivative(var_indices[i]);
    return r;
}

// Jacobian of the derivative tuple with respect to the transverse block
// (the m parameters and b for side = par; mirrored for side = var).
SeriesMatrix jet_jacobian(const Submanifold& M, Side side, int order) {
    const Series& G = side == Side::par ? M.Q : M.P;
    if (order + 1 > G.reliable())
        throw OrderTooHighForTruncation("jet order " + std::to_string(order) +
                                        " + 1 exceeds reliable degree " +
                                        std::to_string(G.reliable()));
    int nleaf = side == Side::par ? M.n : M.m;   // leaf coordinates differentiated
    int ntrans = side == Side::par ? M.m : M.n;  // transverse block minus 1
    std::vector<int> leaf, trans;
    for (int i = 0; i < nleaf; ++i)
        leaf.push_back(side == Side::par ? M.var_index(i) : M.p_par_index(i));
    for (int j = 0; j < ntrans; ++j)
        trans.push_back(side == Side::par ? M.par_index(j) : M.p_var_index(j));
    trans.push_back(side == Side::par ? M.par_trans_index() : M.p_var_trans_index());

    SeriesMatrix jac;
    for (const Mono& beta : multi_indices(nleaf, order)) {
        Series db = iterated_derivative(G, beta, leaf);
        std::vector<Series> row;
        for (int t : trans) row.push_back(db.derivative(t));
        jac.push_back(std::move(row));
    }
    return jac;
}

}  // namespace

int jet_jacobian_rank(const Submanifold& M, Side side, int order,
                      const std::vector<Rational>& point) {
    SeriesMatrix jac = jet_jacobian(M, side, order);
    int base = side == Side::par ? M.n : M.m;
    return base + rat_rank(eval_matrix(jac, point));
}

std::optional<int> nondeg_order(const Submanifold& M, Side side,
                                const std::vector<Rational>& point, int k_max) {
    const Series& G = side == Side::par ? M.Q : M.P;
    if (k_max + 1 > G.reliable())
        throw OrderTooHighForTruncation("nondeg_order: k_max " + std::to_string(k_max) +
                                        " + 1 exceeds reliable degree " +
                                        std::to_string(G.reliable()));
    int full = side == Side::par ? M.n + 1 + M.m : M.m + 1 + M.n;
    for (int k = 1; k <= k_max; ++k)
        if (jet_jacobian_rank(M, side, k, point) == full) return k;
    return std::nullopt;
}

int jet_generic_rank(const Submanifold& M, Side side, int order) {
    SeriesMatrix jac = jet_jacobian(M, side, order);
    int base = side == Side::par ? M.n : M.m;
    int deg = std::max(0, jac[0][0].reliable());
    return base + generic_rank_by_minors(jac, deg);
}

std::pair<Series, Series> delta_and_box(const Submanifold& M) {
    if (M.n != 2 || M.m != 2) throw DimensionMismatch("delta_and_box requires n = m = 2");
    const Series& Q = M.Q;
    Series Qx = Q.derivative(0), Qxx = Qx.derivative(0);
    SeriesMatrix dm;
    for (const Series* s : std::initializer_list<const Series*>{&Q, &Qx, &Qxx})
        dm.push_back({s->derivative(2), s->derivative(3), s->derivative(4)});
    const Series& P = M.P;
    Series Pa = P.derivative(0), Paa = Pa.derivative(0);
    SeriesMatrix bm;
    for (const Series* s : std::initializer_list<const Series*>{&P, &Pa, &Paa})
        bm.push_back({s->derivative(2), s->derivative(3), s->derivative(4)});
    return {series_det(dm), series_det(bm)};
}

std::string case_label_str(CaseLabel c) {
    switch (c) {
        case CaseLabel::I: return "I";
        case CaseLabel::II: return "II";
        case CaseLabel::III: return "III";
        default: return "IV";
    }
}

CaseLabel classify_case(const Submanifold& M) {
    if (M.n != 2 || M.m != 2) throw DimensionMismatch("classify_case requires n = m = 2");
    LeviData L = levi(M);
    if (L.generic_rank != 1)
        throw NotRankOne("classify_case: Levi generic rank is " +
                         std::to_string(L.generic_rank) + ", need 1");
    int rq = jet_generic_rank(M, Side::par, 2);
    int rp = jet_generic_rank(M, Side::var, 2);
    if (rq == 4 && rp == 4) return CaseLabel::I;
    if (rq == 4 && rp == 5) return CaseLabel::II;
    if (rq == 5 && rp == 4) return CaseLabel::III;
    return CaseLabel::IV;
}

BigInt aut_dim_bound(long n, long m, long k, long l) {
    if (n < 1 || m < 1 || k < 1 || l < 1)
        throw Error("aut_dim_bound: all of n, m, k, l must be >= 1");
    return BigInt(n + 1) * binomial(n + 1 + 2 * k + 2 * l, n + 1) +
           BigInt(m + 1) * binomial(m + 1 + 2 * k + 2 * l, m + 1);
}

std::vector<Rational> resolve_point(const VarSpace& space, const PointAssignments& at) {
    std::vector<Rational> p(space.size(), Rational(0));
    for (const auto& [name, value] : at) {
        int i = space.index_of(name);
        if (i >= 0) p[i] = value;
    }
    return p;
}

NondegReport nondeg_report(const Submanifold& M, int k_max, const PointAssignments& at) {
    NondegReport r;
    r.k_max_searched = k_max;
    r.probe_point_q = resolve_point(*M.qspace(), at);
    std::vector<Rational> point_p = resolve_point(*M.pspace(), at);
    r.k_par = nondeg_order(M, Side::par, r.probe_point_q, k_max);
    r.l_var = nondeg_order(M, Side::var, point_p, k_max);
    if (M.n == 2 && M.m == 2) {
        auto [d, b] = delta_and_box(M);
        r.delta0 = d.at_origin();
        r.box0 = b.at_origin();
        try {
            r.case_label = classify_case(M);
        } catch (const NotRankOne&) {
            r.case_label = std::nullopt;
        }
    }
    return r;
}

Prolongation1D prolong_1d(const Series& f, const Series& g, int order) {
    if (order < 1 || order > 3) throw Error("prolong_1d: order must be in 1..3");
    if (!f.space()->same_as(*plane_space()) || !g.space()->same_as(*plane_space()))
        throw SpaceMismatch("prolong_1d: f, g must be plane series in (x, y)");
    if (!f.at_origin().is_zero() || !g.at_origin().is_zero())
        throw NonzeroConstant("prolong_1d: (f, g) must be a germ at the origin");
    RatMatrix jac = {{f.derivative(0).at_origin(), f.derivative(1).at_origin()},
                     {g.derivative(0).at_origin(), g.derivative(1).at_origin()}};
    if ((jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0]).is_zero())
        throw SingularJacobian("prolong_1d: Jacobian of (f, g) singular at 0");

    const int D = f.trunc();
    Prolongation1D out;
    out.jspace = jet1d_space(order);
    Substitution lift(f.space(), out.jspace, D);
    out.x_image = lift.apply(f);
    out.y_image = lift.apply(g);

    // Truncated total derivative on the jet space; the y_{x^order} slot never
    // feeds back because jets[k] depends on orders <= k only.
    auto total_d = [&](const Series& s) {
        Series r = s.derivative(0) +
                   Series::variable(out.jspace, 2, D) * s.derivative(1);
        for (int k = 1; k < order; ++k)
            r = r + Series::variable(out.jspace, 2 + k, D) * s.derivative(1 + k);
        return r;
    };

    Series df = total_d(out.x_image);
    if (!df.is_unit())
        throw SingularJacobian("prolong_1d: f_x + y_x f_y is not a unit at the base jet");
    Series df_inv = df.reciprocal();
    Series cur = out.y_image;
    for (int k = 1; k <= order; ++k) {
        cur = total_d(cur) * df_inv;
        out.jets.push_back(cur);
    }
    return out;
}

}  // namespace paracr
