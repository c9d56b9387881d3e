#include "paracr/submanifold.hpp"

#include <algorithm>

#include "paracr/errors.hpp"
#include "paracr/fuzz.hpp"

namespace paracr {

namespace {

// Re-expresses a series over a space containing all of its variables by name.
Series transport(const Series& s, const SpacePtr& target) {
    Substitution sub(s.space(), target, s.trunc());
    return sub.apply(s).with_reliable(s.reliable());
}

// Indices within full_space(n, m) = (x_1..x_n, y, a_1..a_m, b).
struct FullIndex {
    int n, m;
    int var(int i) const { return i; }
    int y() const { return n; }
    int par(int j) const { return n + 1 + j; }
    int b() const { return n + 1 + m; }
};

Series set_vars_to_zero(const Series& s, const std::vector<int>& vars) {
    Substitution sub(s.space(), s.space(), s.trunc());
    for (int v : vars) sub.set(v, Series::zero(s.space(), s.trunc()));
    return sub.apply(s);
}

}  // namespace

Submanifold from_Q(const Series& Q, int n, int m) {
    SpacePtr qsp = q_space(n, m);
    if (!Q.space()->same_as(*qsp)) throw SpaceMismatch("from_Q: Q must live over q_space(n,m)");
    if (!Q.at_origin().is_zero()) throw NonzeroConstant("from_Q: Q(0) != 0");
    const int b_q = n + m;
    if (Q.derivative(b_q).at_origin().is_zero())
        throw SingularImplicit("from_Q: Q_" + qsp->name(b_q) + "(0) = 0");

    FullIndex fx{n, m};
    SpacePtr full = full_space(n, m);
    Series R = transport(Q, full) - Series::variable(full, fx.y(), Q.trunc());
    Series Pfull = implicit_solve(R, fx.b());
    Series P = transport(Pfull, p_space(n, m));

    Submanifold M{n, m, Q, P};
    Verdict fr = check_functional_relations(M);
    if (fr.failed()) throw Error("from_Q: functional relations failed: " + fr.detail);
    return M;
}

Submanifold from_P(const Series& P, int n, int m) {
    SpacePtr psp = p_space(n, m);
    if (!P.space()->same_as(*psp)) throw SpaceMismatch("from_P: P must live over p_space(n,m)");
    if (!P.at_origin().is_zero()) throw NonzeroConstant("from_P: P(0) != 0");
    const int y_p = m + n;
    if (P.derivative(y_p).at_origin().is_zero())
        throw SingularImplicit("from_P: P_" + psp->name(y_p) + "(0) = 0");

    FullIndex fx{n, m};
    SpacePtr full = full_space(n, m);
    Series R = transport(P, full) - Series::variable(full, fx.b(), P.trunc());
    Series Qfull = implicit_solve(R, fx.y());
    Series Q = transport(Qfull, q_space(n, m));
    Submanifold M = from_Q(Q, n, m);
    return M;
}

Submanifold from_R(const Series& R, int n, int m) {
    SpacePtr full = full_space(n, m);
    if (!R.space()->same_as(*full)) throw SpaceMismatch("from_R: R must live over full_space(n,m)");
    FullIndex fx{n, m};
    if (R.derivative(fx.y()).at_origin().is_zero() || R.derivative(fx.b()).at_origin().is_zero())
        throw SingularImplicit("from_R: R_y(0) and R_b(0) must both be nonzero");
    Series Qfull = implicit_solve(R, fx.y());
    return from_Q(transport(Qfull, q_space(n, m)), n, m);
}

Series pullback_to_q(const Submanifold& M, const Series& p_side) {
    Substitution sub(M.pspace(), M.qspace(), p_side.trunc());
    sub.set(M.p_var_trans_index(), M.Q);
    return sub.apply(p_side);
}

Series pullback_to_p(const Submanifold& M, const Series& q_side) {
    Substitution sub(M.qspace(), M.pspace(), q_side.trunc());
    sub.set(M.par_trans_index(), M.P);
    return sub.apply(q_side);
}

Verdict check_functional_relations(const Submanifold& M) {
    const int D = M.trunc();
    Series b_q = Series::variable(M.qspace(), M.par_trans_index(), D);
    Series y_p = Series::variable(M.pspace(), M.p_var_trans_index(), D);
    Verdict v1 = check_equal(pullback_to_q(M, M.P), b_q, "P(a,x,Q) = b");
    Verdict v2 = check_equal(pullback_to_p(M, M.Q), y_p, "Q(x,a,P) = y");
    Series Qb = M.Q.derivative(M.par_trans_index());
    Series Py_pb = pullback_to_q(M, M.P.derivative(M.p_var_trans_index()));
    Verdict v3 = check_vanishes(Qb * Py_pb - Rational(1), "Q_b * P_y = 1");
    return v1 && v2 && v3;
}

bool is_normalized(const Submanifold& M) {
    std::vector<int> vars, pars;
    for (int i = 0; i < M.n; ++i) vars.push_back(M.var_index(i));
    for (int j = 0; j < M.m; ++j) pars.push_back(M.par_index(j));
    Series b = Series::variable(M.qspace(), M.par_trans_index(), M.trunc());
    return (set_vars_to_zero(M.Q, vars) - b).is_zero_through(M.Q.reliable()) &&
           (set_vars_to_zero(M.Q, pars) - b).is_zero_through(M.Q.reliable());
}

std::pair<Submanifold, NormalizationRecord> normalize_coordinates(const Submanifold& M) {
    const int n = M.n, m = M.m, D = M.trunc();
    FullIndex fx{n, m};
    SpacePtr full = full_space(n, m);
    Series Qf = transport(M.Q, full);
    Series y_var = Series::variable(full, fx.y(), D);
    Series b_var = Series::variable(full, fx.b(), D);

    // First change: b = B(a, b') so that Q(0, a, b') = b'. B is the inverse
    // in b of U(a, b) := Q(0, a, b).
    std::vector<int> xs;
    for (int i = 0; i < n; ++i) xs.push_back(fx.var(i));
    Series U = set_vars_to_zero(Qf, xs);
    Series B_ay = implicit_solve(U - y_var, fx.b());  // b = B(a, y)
    Substitution rename_y_to_b(full, full, D);
    rename_y_to_b.set(fx.y(), b_var);
    Series B_ab = rename_y_to_b.apply(B_ay);  // B(a, b'), with b' written b
    Substitution step1(full, full, D);
    step1.set(fx.b(), B_ab);
    Series Q1 = step1.apply(Qf);

    // Second change: y' = V(x, y) where b = V(x, y) solves y = Q1(x, 0, b);
    // then Q2 = V(x, Q1) satisfies Q2(x, 0, b) = b and keeps the first
    // normalization because V(0, y) = y.
    std::vector<int> as;
    for (int j = 0; j < m; ++j) as.push_back(fx.par(j));
    Series Q1_a0 = set_vars_to_zero(Q1, as);
    Series V = implicit_solve(Q1_a0 - y_var, fx.b());  // V(x, y)
    Substitution step2(full, full, D);
    step2.set(fx.y(), Q1);
    Series Q2 = step2.apply(V);

    Submanifold out = from_Q(transport(Q2, q_space(n, m)), n, m);

    NormalizationRecord rec;
    rec.identity = (Q2 - Qf).is_zero_through(Q2.reliable());
    // y = Y(x, y'): inverse of V in y, recorded over (x..., y).
    Series Y_xb = implicit_solve(V - b_var, fx.y());  // y = Y(x, b)
    Substitution rename_b_to_y(full, full, D);
    rename_b_to_y.set(fx.b(), y_var);
    std::vector<std::string> vnames = variable_names(n);
    vnames.push_back(var_transversal_name(n));
    SpacePtr vside = VarSpace::make(
        vnames, std::vector<VarRole>(vnames.size(), VarRole::variable));
    rec.y_of_xy = transport(rename_b_to_y.apply(Y_xb), vside);
    std::vector<std::string> pnames = parameter_names(m);
    pnames.push_back(par_transversal_name(m));
    SpacePtr pside = VarSpace::make(
        pnames, std::vector<VarRole>(pnames.size(), VarRole::parameter));
    rec.b_of_ab = transport(B_ab, pside);
    return {out, rec};
}

LeviData levi(const Submanifold& M) {
    const int n = M.n, m = M.m;
    LeviData L;

    Series Qb = M.Q.derivative(M.par_trans_index());
    Series inv_qb2 = (Qb * Qb).reciprocal();
    std::vector<Series> Qa, Qxb, Qx;
    for (int i = 0; i < n; ++i) Qx.push_back(M.Q.derivative(M.var_index(i)));
    for (int i = 0; i < n; ++i) Qxb.push_back(Qx[i].derivative(M.par_trans_index()));
    for (int j = 0; j < m; ++j) Qa.push_back(M.Q.derivative(M.par_index(j)));
    for (int i = 0; i < n; ++i) {
        std::vector<Series> row;
        for (int j = 0; j < m; ++j) {
            Series num = -(Qb * Qx[i].derivative(M.par_index(j))) + Qa[j] * Qxb[i];
            row.push_back(num * inv_qb2);
        }
        L.levi_par.push_back(std::move(row));
    }

    Series Py = M.P.derivative(M.p_var_trans_index());
    Series inv_py2 = (Py * Py).reciprocal();
    for (int j = 0; j < m; ++j) {
        std::vector<Series> row;
        Series Paj = M.P.derivative(M.p_par_index(j));
        for (int i = 0; i < n; ++i) {
            Series num = -(Py * Paj.derivative(M.p_var_index(i))) +
                         M.P.derivative(M.p_var_index(i)) *
                             Paj.derivative(M.p_var_trans_index());
            row.push_back(num * inv_py2);
        }
        L.levi_var.push_back(std::move(row));
    }

    RatMatrix at0;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> row;
        for (int j = 0; j < m; ++j) row.push_back(L.levi_par[i][j].at_origin());
        at0.push_back(std::move(row));
    }
    L.rank0 = rat_rank(at0);

    // Generic rank: sampling at rational points gives a lower estimate; the
    // minor certificate (some s x s minor nonzero as a series) decides.
    int check_deg = std::max(0, L.levi_par[0][0].reliable());
    int minor_rank = generic_rank_by_minors(L.levi_par, check_deg);
    int sampled = 0;
    Rng rng(0x1e71u);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rational> p = sample_point(*M.qspace(), rng);
        if (Qb.evaluate(p).is_zero()) continue;
        sampled = std::max(sampled, rat_rank(eval_matrix(L.levi_par, p)));
    }
    // Samples exceeding the certificate can only come from truncation tails.
    L.generic_rank = minor_rank;
    (void)sampled;
    return L;
}

Verdict check_levi_transpose(const Submanifold& M) {
    LeviData L = levi(M);
    Series Py_pb = pullback_to_q(M, M.P.derivative(M.p_var_trans_index()));
    Verdict all = Verdict::pass(M.Q.reliable());
    for (int i = 0; i < M.n; ++i)
        for (int j = 0; j < M.m; ++j) {
            Series rhs = -(Py_pb * pullback_to_q(M, L.levi_var[j][i]));
            all = all && check_equal(L.levi_par[i][j], rhs,
                                     "levi transpose (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
        }
    if (M.n == 2 && M.m == 2) {
        Series Qc = M.Q.derivative(M.par_trans_index());
        Series lhs = Qc * Qc * series_det(L.levi_par);
        Series rhs = pullback_to_q(M, series_det(L.levi_var));
        all = all && check_equal(lhs, rhs, "determinant factor relation");
    }
    return all;
}

std::pair<int, Submanifold> levi_rank_normal_form(const Submanifold& M) {
    if (!is_normalized(M))
        throw NotNormalized("levi_rank_normal_form: apply normalize_coordinates first");
    const int n = M.n, m = M.m, D = M.trunc();

    // Bilinear block of the degree-2 part: Q = b + sum lambda_ij x_i a_j + ...
    RatMatrix lam(n, std::vector<Rational>(m, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Mono e(M.qspace()->size(), 0);
            e[M.var_index(i)] = 1;
            e[M.par_index(j)] = 1;
            lam[i][j] = M.Q.coeff(e);
        }
    int r = rat_rank(lam);
    if (r == 0) return {0, M};

    // Greedily pick r independent rows lam[i_1], ..., lam[i_r].
    std::vector<int> sel;
    {
        RatMatrix acc;
        for (int i = 0; i < n && static_cast<int>(sel.size()) < r; ++i) {
            acc.push_back(lam[i]);
            if (rat_rank(acc) == static_cast<int>(acc.size()))
                sel.push_back(i);
            else
                acc.pop_back();
        }
    }
    std::vector<bool> selected(n, false);
    for (int i : sel) selected[i] = true;

    // Coefficients of the dependent rows against the selected ones: for each
    // unselected i, lam[i] = sum_k dep[i][k] lam[sel[k]]. Solved by Gaussian
    // elimination on the transposed selected block.
    std::vector<std::vector<Rational>> dep(n, std::vector<Rational>(r, Rational(0)));
    {
        // Solve (selected rows)^T * coeffs = lam[i]^T for each i; build an
        // augmented m x (r + #dep) system once.
        std::vector<int> deprows;
        for (int i = 0; i < n; ++i)
            if (!selected[i]) deprows.push_back(i);
        RatMatrix aug(m, std::vector<Rational>(r + deprows.size(), Rational(0)));
        for (int row = 0; row < m; ++row) {
            for (int k = 0; k < r; ++k) aug[row][k] = lam[sel[k]][row];
            for (std::size_t d = 0; d < deprows.size(); ++d)
                aug[row][r + d] = lam[deprows[d]][row];
        }
        // forward elimination with partial (nonzero) pivoting
        int rank = 0;
        std::vector<int> pivot_col;
        for (int col = 0; col < r && rank < m; ++col) {
            int piv = -1;
            for (int row = rank; row < m; ++row)
                if (!aug[row][col].is_zero()) {
                    piv = row;
                    break;
                }
            if (piv < 0) continue;
            std::swap(aug[rank], aug[piv]);
            Rational p = aug[rank][col];
            for (auto& v : aug[rank]) v /= p;
            for (int row = 0; row < m; ++row) {
                if (row == rank || aug[row][col].is_zero()) continue;
                Rational f = aug[row][col];
                for (std::size_t c2 = 0; c2 < aug[row].size(); ++c2)
                    aug[row][c2] -= f * aug[rank][c2];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        for (std::size_t d = 0; d < deprows.size(); ++d)
            for (int k = 0; k < rank; ++k) dep[deprows[d]][pivot_col[k]] = aug[k][r + d];
    }

    // New coordinates: x'_k = x_{sel_k} + sum_{i unselected} dep[i][k] x_i,
    // a'_k = Lambda_{sel_k}(a); both extended by the untouched coordinates.
    RatMatrix Tx(n, std::vector<Rational>(n, Rational(0)));
    for (int k = 0; k < r; ++k) {
        Tx[k][sel[k]] = Rational(1);
        for (int i = 0; i < n; ++i)
            if (!selected[i]) Tx[k][i] = dep[i][k];
    }
    {
        int row = r;
        for (int i = 0; i < n; ++i)
            if (!selected[i]) Tx[row++][i] = Rational(1);
    }
    RatMatrix Ta(m, std::vector<Rational>(m, Rational(0)));
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < m; ++j) Ta[k][j] = lam[sel[k]][j];
    {
        int row = r;
        RatMatrix acc;
        for (int k = 0; k < r; ++k) acc.push_back(Ta[k]);
        for (int j = 0; j < m && row < m; ++j) {
            std::vector<Rational> unit(m, Rational(0));
            unit[j] = Rational(1);
            acc.push_back(unit);
            if (rat_rank(acc) == static_cast<int>(acc.size()))
                Ta[row++][j] = Rational(1);
            else
                acc.pop_back();
        }
    }

    RatMatrix TxInv = rat_inverse(Tx), TaInv = rat_inverse(Ta);
    Substitution change(M.qspace(), M.qspace(), D);
    for (int i = 0; i < n; ++i) {
        Series img = Series::zero(M.qspace(), D);
        for (int k = 0; k < n; ++k)
            img = img + Series::variable(M.qspace(), M.var_index(k), D).scaled(TxInv[i][k]);
        change.set(M.var_index(i), img);
    }
    for (int j = 0; j < m; ++j) {
        Series img = Series::zero(M.qspace(), D);
        for (int k = 0; k < m; ++k)
            img = img + Series::variable(M.qspace(), M.par_index(k), D).scaled(TaInv[j][k]);
        change.set(M.par_index(j), img);
    }
    Series Qp = change.apply(M.Q);

    // Postcondition: the bilinear block is now exactly x_1 a_1 + ... + x_r a_r.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Mono e(M.qspace()->size(), 0);
            e[M.var_index(i)] = 1;
            e[M.par_index(j)] = 1;
            Rational expect = (i == j && i < r) ? Rational(1) : Rational(0);
            if (Qp.coeff(e) != expect)
                throw Error("levi_rank_normal_form: bilinear block not in normal form");
        }
    return {r, from_Q(Qp, n, m)};
}

NormalForm22 normal_form_22(const Submanifold& M, bool scale) {
    if (M.n != 2 || M.m != 2) throw DimensionMismatch("normal_form_22 requires n = m = 2");
    LeviData L = levi(M);
    if (L.rank0 != 1)
        throw RankMismatch("normal_form_22: Levi rank at origin is " + std::to_string(L.rank0) +
                           ", need 1");
    const SpacePtr& sp = M.qspace();
    const int D = M.trunc();
    auto mono = [&](int ex, int ey, int ea, int eb, int ec) {
        Mono e(sp->size(), 0);
        e[0] = ex;
        e[1] = ey;
        e[2] = ea;
        e[3] = eb;
        e[4] = ec;
        return e;
    };
    if (!is_normalized(M) || M.Q.coeff(mono(1, 0, 1, 0, 0)) != Rational(1) ||
        !(M.Q.truncated(2) - Series::variable(sp, 4, D) -
          Series::variable(sp, 0, D) * Series::variable(sp, 2, D))
             .is_zero())
        throw NotNormalized("normal_form_22: need Q = c + x*a + O(3); apply "
                            "normalize_coordinates and levi_rank_normal_form first");

    // Rank-1 degeneracy kills every cubic monomial divisible by y*b.
    for (const Mono& e : {mono(1, 1, 0, 1, 0), mono(0, 2, 0, 1, 0), mono(0, 1, 1, 1, 0),
                          mono(0, 1, 0, 2, 0)}) {
        if (!M.Q.coeff(e).is_zero())
            throw DegeneracyViolation("normal_form_22: cubic coefficient of " +
                                      monomial_str(*sp, e) + " = " + M.Q.coeff(e).str());
    }

    Rational alpha = M.Q.coeff(mono(2, 0, 1, 0, 0));    // x^2 a
    Rational gamma = M.Q.coeff(mono(1, 1, 1, 0, 0));    // x y a
    Rational delta = M.Q.coeff(mono(0, 2, 1, 0, 0));    // y^2 a
    Rational alpha_u = M.Q.coeff(mono(1, 0, 2, 0, 0));  // x a^2
    Rational gamma_u = M.Q.coeff(mono(1, 0, 1, 1, 0));  // x a b
    Rational delta_u = M.Q.coeff(mono(1, 0, 0, 2, 0));  // x b^2

    // Absorb via x' = x + alpha x^2 + gamma x y + delta y^2 and
    // a' = a + alpha_u a^2 + gamma_u a b + delta_u b^2; the substitution
    // needs the inverse series x = X(x', y), a = A(a', b).
    auto inverse_in = [&](int var, int other, const Rational& q2, const Rational& q11,
                          const Rational& q02) {
        // solve 0 = -t + v + q2 v^2 + q11 v w + q02 w^2 for v = v(t, w),
        // then rename t -> v.
        SpacePtr scratch = VarSpace::make({"t", "v", "w"},
                                          {VarRole::variable, VarRole::variable,
                                           VarRole::variable});
        Series t = Series::variable(scratch, 0, D), v = Series::variable(scratch, 1, D),
               w = Series::variable(scratch, 2, D);
        Series R = -t + v + (v * v).scaled(q2) + (v * w).scaled(q11) + (w * w).scaled(q02);
        Series sol = implicit_solve(R, 1);  // v as series in (t, w)
        Substitution out(scratch, sp, D);
        out.set(0, Series::variable(sp, var, D));
        out.set(2, Series::variable(sp, other, D));
        return out.apply(sol);
    };
    Substitution absorb(sp, sp, D);
    absorb.set(0, inverse_in(0, 1, alpha, gamma, delta));
    absorb.set(2, inverse_in(2, 3, alpha_u, gamma_u, delta_u));
    Series Qp = absorb.apply(M.Q);

    NormalForm22 nf{Qp.coeff(mono(2, 0, 0, 1, 0)), Qp.coeff(mono(0, 1, 2, 0, 0)),
                    Submanifold{}};
    // All six absorbable cubic coefficients must now vanish.
    for (const Mono& e : {mono(2, 0, 1, 0, 0), mono(1, 1, 1, 0, 0), mono(0, 2, 1, 0, 0),
                          mono(1, 0, 2, 0, 0), mono(1, 0, 1, 1, 0), mono(1, 0, 0, 2, 0)}) {
        if (!Qp.coeff(e).is_zero())
            throw Error("normal_form_22: residual cubic term " + monomial_str(*sp, e));
    }

    if (scale && !nf.beta.is_zero() && !nf.beta_underline.is_zero()) {
        Substitution dil(sp, sp, D);
        dil.set(1, Series::variable(sp, 1, D).scaled(Rational(1) / nf.beta_underline));
        dil.set(3, Series::variable(sp, 3, D).scaled(Rational(1) / nf.beta));
        Qp = dil.apply(Qp);
    }
    nf.M = from_Q(Qp, 2, 2);
    return nf;
}

}  // namespace paracr
