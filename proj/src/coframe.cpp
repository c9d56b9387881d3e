#include "paracr/coframe.hpp"

#include <algorithm>

#include "paracr/errors.hpp"

namespace paracr {

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    if (!v.space->same_as(*w.space)) throw SpaceMismatch("lie_bracket: different spaces");
    const int nv = v.space->size();
    VectorField out{v.space, {}};
    for (int i = 0; i < nv; ++i) {
        Series acc = Series::zero(v.space, v.coef[i].trunc());
        for (int j = 0; j < nv; ++j) {
            if (!v.coef[j].is_zero()) acc = acc + v.coef[j] * w.coef[i].derivative(j);
            if (!w.coef[j].is_zero()) acc = acc - w.coef[j] * v.coef[i].derivative(j);
        }
        out.coef.push_back(acc);
    }
    return out;
}

Series pair_form(const OneForm& omega, const VectorField& v) {
    if (!omega.space->same_as(*v.space)) throw SpaceMismatch("pair_form: different spaces");
    Series acc = Series::zero(omega.space, omega.comp[0].trunc());
    for (int i = 0; i < omega.space->size(); ++i)
        if (!omega.comp[i].is_zero() && !v.coef[i].is_zero())
            acc = acc + omega.comp[i] * v.coef[i];
    return acc;
}

namespace {

struct QuotientParts {
    Series den_q, num_l, num_kq;  // over q_space
    Series den_p, num_k;          // over p_space
};

QuotientParts quotient_parts(const Submanifold& M) {
    const Series& Q = M.Q;
    Series Qx = Q.derivative(0), Qy = Q.derivative(1);
    Series Qa = Q.derivative(2), Qb = Q.derivative(3), Qc = Q.derivative(4);
    const Series& P = M.P;
    Series Pa = P.derivative(0);
    Series Px = P.derivative(2), Py = P.derivative(3), Pz = P.derivative(4);
    QuotientParts qp{
        -(Qc * Qx.derivative(2)) + Qa * Qx.derivative(4),
        -(Qc * Qx.derivative(3)) + Qb * Qx.derivative(4),
        -(Qc * Qy.derivative(2)) + Qa * Qy.derivative(4),
        -(Pz * Pa.derivative(2)) + Px * Pa.derivative(4),
        -(Pz * Pa.derivative(3)) + Py * Pa.derivative(4)};
    return qp;
}

}  // namespace

std::pair<Series, Series> kernel_quotients(const Submanifold& M) {
    if (M.n != 2 || M.m != 2) throw DimensionMismatch("kernel_quotients requires n = m = 2");
    QuotientParts qp = quotient_parts(M);
    if (!qp.den_q.is_unit() || !qp.den_p.is_unit())
        throw NonUnitDenominator(
            "kernel_quotients: the (1,1) Levi entry vanishes at the origin");
    Series l = -(qp.num_l * qp.den_q.reciprocal());
    Series k = -(qp.num_k * qp.den_p.reciprocal());
    // k can be rewritten with Q-derivatives: the transpose relation between
    // the two Levi matrices cancels the common factors in the quotient.
    Series k_q = -(qp.num_kq * qp.den_q.reciprocal());
    Verdict v = check_equal(pullback_to_q(M, k), k_q);
    if (v.failed()) throw Error("kernel_quotients: Q-side re-expression of k failed: " + v.detail);
    return {k, l};
}

bool BracketReport::all_passed() const {
    for (const auto& [n, v] : items)
        if (!v.passed()) return false;
    return true;
}

BracketReport check_kernel_brackets(const Submanifold& M) {
    auto [k, l] = kernel_quotients(M);
    const int D = M.trunc();

    // P-chart (a, b, x, y, z): K_ker = k Hx + Hy with Hx = d_x - (Px/Pz) d_z.
    const SpacePtr& ps = M.pspace();
    Series Pz = M.P.derivative(4);
    Series inv_pz = Pz.reciprocal();
    Series px_pz = M.P.derivative(2) * inv_pz;
    Series py_pz = M.P.derivative(3) * inv_pz;
    Series zer_p = Series::zero(ps, D);
    VectorField Kker{ps, {zer_p, zer_p, k, Series::constant(ps, 1, D),
                          -(k * px_pz) - py_pz}};
    // sigma kills Hx, Hy, d_a, d_b and gives 1 on d_z.
    OneForm sigma{ps, {zer_p, zer_p, px_pz, py_pz, Series::constant(ps, 1, D)}};
    VectorField da{ps, {Series::constant(ps, 1, D), zer_p, zer_p, zer_p, zer_p}};
    VectorField db{ps, {zer_p, Series::constant(ps, 1, D), zer_p, zer_p, zer_p}};

    // Q-chart (x, y, a, b, c): L_ker = l La + Lb with La = d_a - (Qa/Qc) d_c.
    const SpacePtr& qs = M.qspace();
    Series Qc = M.Q.derivative(4);
    Series inv_qc = Qc.reciprocal();
    Series qa_qc = M.Q.derivative(2) * inv_qc;
    Series qb_qc = M.Q.derivative(3) * inv_qc;
    Series zer_q = Series::zero(qs, D);
    VectorField Lker{qs, {zer_q, zer_q, l, Series::constant(qs, 1, D),
                          -(l * qa_qc) - qb_qc}};
    OneForm rho{qs, {zer_q, zer_q, qa_qc, qb_qc, Series::constant(qs, 1, D)}};
    VectorField dx{qs, {Series::constant(qs, 1, D), zer_q, zer_q, zer_q, zer_q}};
    VectorField dy{qs, {zer_q, Series::constant(qs, 1, D), zer_q, zer_q, zer_q}};

    BracketReport rep;
    rep.items[0] = {"sigma([d/da, K_ker])",
                    check_vanishes(pair_form(sigma, lie_bracket(da, Kker)))};
    rep.items[1] = {"sigma([d/db, K_ker])",
                    check_vanishes(pair_form(sigma, lie_bracket(db, Kker)))};
    rep.items[2] = {"rho([d/dx, L_ker])",
                    check_vanishes(pair_form(rho, lie_bracket(dx, Lker)))};
    rep.items[3] = {"rho([d/dy, L_ker])",
                    check_vanishes(pair_form(rho, lie_bracket(dy, Lker)))};
    return rep;
}

CoframeData initial_coframe(const Submanifold& M, const PdeSystem& S) {
    if (S.dual) throw Error("initial_coframe expects the direct system");
    Series F_zxx = S.F.derivative(4);
    if (!F_zxx.is_zero_through(F_zxx.reliable()))
        throw PrerequisiteIdentityFailed("initial_coframe: F_zxx is not identically zero");

    CoframeData cd;
    std::tie(cd.k, cd.l) = kernel_quotients(M);

    Series Qx = M.Q.derivative(0);
    Series Qxx = Qx.derivative(0);
    for (const Series* g : std::initializer_list<const Series*>{&M.Q, &Qx, &Qxx})
        cd.contact_forms.push_back({g->derivative(2), g->derivative(3), g->derivative(4)});

    cd.nu1_dy_coeff = S.F.derivative(3);
    cd.triangular = !cd.nu1_dy_coeff.derivative(3).at_origin().is_zero();

    cd.group_pattern = {{{"a", "0", "0", "0", "0"},
                         {"b1", "f1", "0", "0", "0"},
                         {"b2", "f2", "f3", "0", "0"},
                         {"c1", "0", "0", "h1", cd.triangular ? "0" : "h4"},
                         {"c2", "0", "0", "h2", "h3"}}};
    return cd;
}

bool ContactTransferReport::all_passed() const {
    for (const auto& [n, v] : items)
        if (v.failed()) return false;
    return true;
}

ContactTransferReport check_contact_transfer(const Submanifold& M, const PdeSystem* S) {
    ContactTransferReport rep;
    const Series& Q = M.Q;
    Series Qx = Q.derivative(0);
    Series Qxx = Qx.derivative(0);
    Series Qxxx = Qxx.derivative(0);
    const std::array<const Series*, 4> G = {&Q, &Qx, &Qxx, &Qxxx};
    static const char* names[3] = {"lambda", "mu1", "mu2"};

    // mu_r pulls back to d(G_r) - G_{r+1} dx - T_r dy with T_r the r-th
    // total x-derivative of F; the dx component cancels identically and the
    // dy component tests the total-derivative transfer.
    std::array<Series, 3> T = {Series::zero(M.qspace(), M.trunc()),
                               Series::zero(M.qspace(), M.trunc()),
                               Series::zero(M.qspace(), M.trunc())};
    if (S) {
        Series t = S->F;
        T[0] = jet_pullback(M, *S, t);
        for (int r = 1; r < 3; ++r) {
            t = total_derivative(TotalDir::Dx, t, *S);
            T[r] = jet_pullback(M, *S, t);
        }
    }
    for (int r = 0; r < 3; ++r) {
        rep.items.emplace_back(std::string(names[r]) + " dx-component",
                               check_vanishes(G[r]->derivative(0) - *G[r + 1]));
        if (S)
            rep.items.emplace_back(std::string(names[r]) + " dy-component",
                                   check_vanishes(G[r]->derivative(1) - T[r]));
    }

    bool mu1_zero = Qx.derivative(2).is_zero_through(Q.reliable() - 1) &&
                    Qx.derivative(3).is_zero_through(Q.reliable() - 1) &&
                    Qx.derivative(4).is_zero_through(Q.reliable() - 1);
    if (mu1_zero) rep.degenerate = true;

    // mu1 - (Q_xc/Q_c) lambda is a unit multiple of (da - l db).
    try {
        Series l = kernel_quotients(M).second;
        Series Qc = Q.derivative(4);
        Series ratio = Qx.derivative(4) * Qc.reciprocal();
        Series u = Qx.derivative(2) - ratio * Q.derivative(2);   // da component
        Series w = Qx.derivative(3) - ratio * Q.derivative(3);   // db component
        Series dc = Qx.derivative(4) - ratio * Qc;               // cancels exactly
        Verdict v = check_vanishes(dc, "dc cancellation") &&
                    check_vanishes(w + l * u, "db = -l * da");
        if (!u.is_unit())
            v = v && Verdict::inconclusive(u.reliable(), "da coefficient not a unit at 0");
        rep.items.emplace_back("mu1 - (Q_xc/Q_c) lambda ~ da - l db", v);
    } catch (const NonUnitDenominator&) {
        rep.degenerate = true;
    }
    return rep;
}

}  // namespace paracr
