#include "paracr/fuzz.hpp"

#include <algorithm>

#include "paracr/coframe.hpp"
#include "paracr/jets.hpp"
#include "paracr/parser.hpp"
#include "paracr/pde.hpp"
#include "paracr/submanifold.hpp"

namespace paracr {

std::uint64_t Rng::next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 2685821657736338717ull;
}

int Rng::uniform(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational Rng::small_rational(int pmax, int qmax) {
    return Rational(uniform(-pmax, pmax), uniform(1, qmax));
}

Rational Rng::small_rational_nonzero(int pmax, int qmax) {
    while (true) {
        Rational r = small_rational(pmax, qmax);
        if (!r.is_zero()) return r;
    }
}

Series random_polynomial(SpacePtr space, Rng& rng, int trunc, int maxdeg, int density,
                         bool allow_constant) {
    TermMap terms;
    const int nv = space->size();
    for (int t = 0; t < density; ++t) {
        int deg = rng.uniform(allow_constant ? 0 : 1, maxdeg);
        Mono e(nv, 0);
        for (int d = 0; d < deg; ++d) e[rng.uniform(0, nv - 1)] += 1;
        Rational c = rng.small_rational_nonzero();
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) it->second += c;
    }
    return Series::from_terms(std::move(space), std::move(terms), trunc, trunc);
}

Series random_model_q(int n, int m, Rng& rng, int trunc, int maxdeg, int density) {
    SpacePtr sp = q_space(n, m);
    const int nv = sp->size();
    Series Q = Series::variable(sp, n + m, trunc);  // b
    TermMap extra;
    // a random bilinear block
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Rational c = rng.small_rational();
            if (c.is_zero()) continue;
            Mono e(nv, 0);
            e[i] = 1;
            e[n + j] = 1;
            extra.emplace(std::move(e), c);
        }
    // higher-order mixed noise; degree >= 2 keeps Q(0) = 0 and Q_b(0) = 1
    for (int t = 0; t < density; ++t) {
        int deg = rng.uniform(2, maxdeg);
        Mono e(nv, 0);
        for (int d = 0; d < deg; ++d) e[rng.uniform(0, nv - 1)] += 1;
        Rational c = rng.small_rational();
        if (c.is_zero()) continue;
        auto [it, fresh] = extra.emplace(std::move(e), c);
        if (!fresh) it->second += c;
    }
    // the linear-in-b coefficient must stay exactly 1
    Mono eb(nv, 0);
    eb[n + m] = 1;
    extra.erase(eb);
    return Q + Series::from_terms(sp, std::move(extra), trunc, trunc);
}

Series random_delta_unit_model(Rng& rng, int trunc, int extra_terms) {
    SpacePtr sp = q_space(2, 2);
    for (int attempt = 0; attempt < 32; ++attempt) {
        Series Q = parse_expression("c + x*a + x^2*b", sp, trunc);
        TermMap extra;
        for (int t = 0; t < extra_terms; ++t) {
            int deg = rng.uniform(3, 4);
            Mono e(5, 0);
            for (int d = 0; d < deg; ++d) e[rng.uniform(0, 4)] += 1;
            if (total_degree(e) != deg) continue;
            Rational c = rng.small_rational();
            if (c.is_zero()) continue;
            auto [it, fresh] = extra.emplace(std::move(e), c);
            if (!fresh) it->second += c;
        }
        Q = Q + Series::from_terms(sp, std::move(extra), trunc, trunc);
        if (!Q.at_origin().is_zero() || Q.derivative(4).at_origin().is_zero()) continue;
        // Delta(Q)(0) = det of the (a,b,c)-Jacobian of (Q, Q_x, Q_xx) at 0
        Series Qx = Q.derivative(0), Qxx = Q.derivative(0).derivative(0);
        RatMatrix J(3, std::vector<Rational>(3));
        const Series* rows[3] = {&Q, &Qx, &Qxx};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) J[i][j] = rows[i]->derivative(2 + j).at_origin();
        if (rat_rank(J) == 3) return Q;
    }
    throw Error("random_delta_unit_model: could not reach Delta(0) != 0");
}

std::vector<Rational> sample_point(const VarSpace& space, Rng& rng) {
    std::vector<Rational> p;
    for (int i = 0; i < space.size(); ++i) p.push_back(rng.small_rational(3, 3));
    return p;
}

void FuzzOutcome::note(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
        ++failures;
        messages.push_back(what);
    }
}

void FuzzOutcome::merge(const FuzzOutcome& o) {
    cases += o.cases;
    failures += o.failures;
    messages.insert(messages.end(), o.messages.begin(), o.messages.end());
}

namespace {

// The order-1 parameter-jet rank equals n + 1 + rank of the Levi numerator
// matrix at the point: row reduction of the jet Jacobian exposes the Levi
// block once the unit Q_b column is cleared.
bool first_jet_rank_relation(const Submanifold& M, Rng& rng) {
    Series Qb = M.Q.derivative(M.par_trans_index());
    for (int probe = 0; probe < 5; ++probe) {
        std::vector<Rational> p;
        int guard = 0;
        do {
            p = sample_point(*M.qspace(), rng);
        } while (Qb.evaluate(p).is_zero() && ++guard < 50);
        if (Qb.evaluate(p).is_zero()) continue;
        RatMatrix num(M.n, std::vector<Rational>(M.m));
        for (int i = 0; i < M.n; ++i) {
            Series Qx = M.Q.derivative(M.var_index(i));
            for (int j = 0; j < M.m; ++j) {
                Series e = -(Qb * Qx.derivative(M.par_index(j))) +
                           M.Q.derivative(M.par_index(j)) *
                               Qx.derivative(M.par_trans_index());
                num[i][j] = e.evaluate(p);
            }
        }
        int levi_rank = rat_rank(num);
        if (jet_jacobian_rank(M, Side::par, 1, p) != M.n + 1 + levi_rank) return false;
    }
    return true;
}

void fuzz_model_class(FuzzOutcome& out, int n, int m, Rng& rng, int cases, int degree) {
    for (int c = 0; c < cases; ++c) {
        std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ") case " +
                          std::to_string(c);
        try {
            Series Q = random_model_q(n, m, rng, degree, 4, 6);
            Submanifold M = from_Q(Q, n, m);
            out.note(check_functional_relations(M).passed(), tag + ": functional relations");
            out.note(check_levi_transpose(M).passed(),
                     tag + ": Levi transpose / determinant relation");
            out.note(first_jet_rank_relation(M, rng), tag + ": first-jet rank relation");
        } catch (const Error& e) {
            out.note(false, tag + ": exception: " + e.what());
        }
    }
}

void fuzz_elimination_class(FuzzOutcome& out, Rng& rng, int cases, int degree) {
    for (int c = 0; c < cases; ++c) {
        std::string tag = "delta-unit case " + std::to_string(c);
        try {
            Series Q = random_delta_unit_model(rng, degree, 3);
            Submanifold M = from_Q(Q, 2, 2);
            PdeSystem S = derive_pde(M);
            IdentityReport rep = structural_identities(M, S);
            const Verdict* v1 = rep.find("F_zxx * Delta = L3x3");
            const Verdict* v2 = rep.find("F_zx * Delta = det(Q;Qy;Qxx)");
            out.note(v1 && v1->passed(), tag + ": F_zxx * Delta = L3x3" +
                                             (v1 ? " (" + v1->detail + ")" : ""));
            out.note(v2 && v2->passed(), tag + ": F_zx * Delta identity" +
                                             (v2 ? " (" + v2->detail + ")" : ""));
        } catch (const Error& e) {
            out.note(false, tag + ": exception: " + e.what());
        }
    }
}

void fuzz_rank_one_class(FuzzOutcome& out, int degree) {
    struct Named {
        const char* label;
        const char* expr;
    };
    const Named rank1[] = {
        {"model c+xa+x^2b", "c + x*a + x^2*b"},
        {"golden model", "c + (a*x + b*x^2 + a^2*y) / (1 - 4*b*y)"},
        {"model c+ax+a^2y", "c + a*x + a^2*y"},
    };
    SpacePtr sp = q_space(2, 2);
    for (const auto& nm : rank1) {
        try {
            Submanifold M = from_Q(parse_expression(nm.expr, sp, degree), 2, 2);
            BracketReport br = check_kernel_brackets(M);
            out.note(br.all_passed(), std::string(nm.label) + ": kernel bracket annihilations");
        } catch (const Error& e) {
            out.note(false, std::string(nm.label) + ": exception: " + e.what());
        }
    }
    // negative control: L3x3 does not vanish, one bracket must fail
    try {
        Submanifold M = from_Q(parse_expression("c + x*a + y*b", sp, degree), 2, 2);
        BracketReport br = check_kernel_brackets(M);
        out.note(!br.all_passed(), "negative control c+xa+yb: a bracket must fail");
    } catch (const Error& e) {
        out.note(false, std::string("negative control: exception: ") + e.what());
    }
    // the two doubly-checkable rank-1 models carry the F_zx / F_zxzx formulas
    for (const auto& nm : {rank1[0], rank1[1]}) {
        try {
            Submanifold M = from_Q(parse_expression(nm.expr, sp, degree), 2, 2);
            PdeSystem S = derive_pde(M);
            IdentityReport rep = structural_identities(M, S);
            for (const char* key :
                 {"F_zx quotient formula", "d/da(F_zx) formula", "F_zxzx formula"}) {
                const Verdict* v = rep.find(key);
                out.note(v && v->passed(), std::string(nm.label) + ": " + key +
                                               (v ? " (" + v->detail + ")" : ""));
            }
            // 2-nondegeneracy w.r.t. variables shows up in the PDE system as
            // F_zxzx(0) != 0, and as the triangular coframe pattern
            auto [d, b] = delta_and_box(M);
            bool box_nonzero = !b.at_origin().is_zero();
            bool fzz_nonzero =
                !S.F.derivative(3).derivative(3).at_origin().is_zero();
            out.note(box_nonzero == fzz_nonzero,
                     std::string(nm.label) + ": Box(0) != 0 iff F_zxzx(0) != 0");
            CoframeData cf = initial_coframe(M, S);
            out.note(cf.triangular == box_nonzero,
                     std::string(nm.label) + ": triangularity flag matches Box(0)");
        } catch (const Error& e) {
            out.note(false, std::string(nm.label) + ": exception: " + e.what());
        }
    }
}

void fuzz_integrability_class(FuzzOutcome& out, int degree) {
    SpacePtr sp = q_space(2, 2);
    const char* models[] = {
        "c + x*a + x^2*b",
        "c + (a*x + b*x^2 + a^2*y) / (1 - 4*b*y)",
        "-c + x*a + x^2*b + y*a^2",
    };
    for (const char* expr : models) {
        try {
            Submanifold M = from_Q(parse_expression(expr, sp, degree), 2, 2);
            PdeSystem S = derive_pde(M);
            out.note(check_integrability(S).passed(),
                     std::string("integrability of derived system for ") + expr);
        } catch (const Error& e) {
            out.note(false, std::string("integrability: exception for ") + expr + ": " + e.what());
        }
    }
    SpacePtr js = jet_space_22();
    Series F0 = Series::zero(js, degree);
    Series Hy = Series::variable(js, 1, degree);
    out.note(check_integrability(F0, Hy).failed(), "negative control (F,H) = (0,y) must fail");
}

}  // namespace

FuzzOutcome run_property_suite(std::uint64_t seed, int cases, int degree) {
    FuzzOutcome out;
    Rng rng(seed);
    fuzz_model_class(out, 1, 1, rng, cases, degree);
    fuzz_model_class(out, 2, 2, rng, cases, degree);
    fuzz_model_class(out, 2, 1, rng, cases, degree);
    fuzz_elimination_class(out, rng, cases, std::max(degree, 6));
    fuzz_rank_one_class(out, std::max(degree, 8));
    fuzz_integrability_class(out, std::max(degree, 8));
    return out;
}

}  // namespace paracr
