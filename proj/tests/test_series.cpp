#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paracr/fuzz.hpp"
#include "paracr/parser.hpp"
#include "paracr/series.hpp"

using namespace paracr;

namespace {

SpacePtr xab() {
    return VarSpace::make({"x", "a", "b"},
                          {VarRole::variable, VarRole::parameter, VarRole::transversal});
}

Series var(const SpacePtr& sp, const std::string& n, int D = 8) {
    return Series::variable(sp, n, D);
}

// Test-only univariate polynomial arithmetic over Rational, used as the
// independent oracle for geometric and implicit-function expansions.
using Poly = std::vector<Rational>;  // coefficient of y^i at index i

Poly poly_mul(const Poly& a, const Poly& b, int D) {
    Poly r(D + 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i + j <= static_cast<std::size_t>(D)) r[i + j] += a[i] * b[j];
    return r;
}

Poly poly_sub(Poly a, const Poly& b) {
    a.resize(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(6).str() == "6");
    CHECK(Rational::from_string("-3/9") == Rational(-1, 3));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)) == Rational(3, 2));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), Error);
}

TEST_CASE("additive inverse and difference of squares") {
    auto sp = xab();
    Series x = var(sp, "x");
    CHECK((x + (-x)).is_zero());
    Series one = Series::constant(sp, 1, 8);
    Series p = (one + x) * (one - x);
    CHECK(p == parse_expression("1 - x^2", sp, 8));
}

TEST_CASE("reciprocal of 1 - 4by against the geometric series") {
    const int D = 8;
    SpacePtr sp = q_space(2, 2);  // (x, y, a, b, c)
    Series g = parse_expression("1 - 4*b*y", sp, D);
    Series r = g.reciprocal();
    // oracle: sum of (4by)^k
    Series expect = Series::zero(sp, D);
    Series term = Series::constant(sp, 1, D);
    Series ratio = parse_expression("4*b*y", sp, D);
    for (int k = 0; 2 * k <= D; ++k) {
        expect = expect + term;
        term = term * ratio;
    }
    CHECK(r == expect);
    CHECK((g * r - Rational(1)).is_zero());
    CHECK(r.coeff("y^3*b^3") == Rational(64));
}

TEST_CASE("reciprocal requires a unit") {
    auto sp = xab();
    CHECK_THROWS_AS(var(sp, "x").reciprocal(), NonUnitDivisor);
}

TEST_CASE("derivative power rule and linear term") {
    SpacePtr sp = q_space(2, 2);
    Series s = parse_expression("x^2*b", sp, 8);
    CHECK(s.derivative("x") == parse_expression("2*x*b", sp, 8));
    Series q = parse_expression("c + x*a + x^2*b", sp, 8);
    CHECK(q.derivative("c") == Series::constant(sp, 1, 8));
    CHECK(q.derivative("c").reliable() == 7);
}

TEST_CASE("substitute binomial and identity") {
    auto sp = xab();
    Series y2 = var(sp, "b") * var(sp, "b");
    Series img = var(sp, "x") + var(sp, "a");
    Substitution sub(sp, sp, 8);
    sub.set("b", img);
    CHECK(sub.apply(y2) == parse_expression("x^2 + 2*x*a + a^2", sp, 8));

    Series s = parse_expression("1 + x*a - 3*b^2", sp, 8);
    Substitution id(sp, sp, 8);
    CHECK(id.apply(s) == s);
}

TEST_CASE("substitute functional relation toy case") {
    // Q = b + xa over (x,a,b); P = y - xa over (x,a,y); Q(b -> P) = y.
    SpacePtr qsp = xab();
    SpacePtr psp = VarSpace::make({"x", "a", "y"},
                                  {VarRole::variable, VarRole::parameter,
                                   VarRole::transversal});
    Series Q = parse_expression("b + x*a", qsp, 8);
    Series P = parse_expression("y - x*a", psp, 8);
    Substitution sub(qsp, psp, 8);
    sub.set("b", P);
    CHECK(sub.apply(Q) == Series::variable(psp, "y", 8));
}

TEST_CASE("strict substitution rejects nonzero constant terms") {
    auto sp = xab();
    Substitution sub(sp, sp, 8);
    CHECK_THROWS_AS(sub.set("x", parse_expression("1 + a", sp, 8)),
                    NonzeroConstantSubstitution);
    Substitution loose(sp, sp, 8, /*strict=*/false);
    loose.set("x", parse_expression("1 + a", sp, 8));
    CHECK(loose.apply(var(sp, "x")) == parse_expression("1 + a", sp, 8));
}

TEST_CASE("implicit_solve linear cases") {
    SpacePtr full = full_space(1, 1);  // (x, y, a, b)
    Series R = parse_expression("-y + b", full, 8);
    CHECK(implicit_solve(R, "b") == Series::variable(full, "y", 8));

    SpacePtr full22 = full_space(2, 2);  // (x, y, z, a, b, c)
    Series R2 = parse_expression("-z + c + x*a + x^2*b", full22, 8);
    CHECK(implicit_solve(R2, "c") == parse_expression("z - x*a - x^2*b", full22, 8));
}

TEST_CASE("implicit_solve catalan expansion") {
    const int D = 8;
    SpacePtr full = full_space(1, 1);
    Series R = parse_expression("-y + b + b^2", full, D);
    Series b = implicit_solve(R, "b");

    // oracle: iterate b <- y - b^2 in a one-variable polynomial ring
    Poly y = {Rational(0), Rational(1)};
    Poly cur = {Rational(0)};
    for (int it = 0; it < D + 1; ++it) cur = poly_sub(y, poly_mul(cur, cur, D));
    // verify the oracle satisfies b + b^2 = y to degree D
    Poly check = poly_sub(poly_sub(y, cur), poly_mul(cur, cur, D));
    for (const auto& c : check) CHECK(c == Rational(0));

    for (int k = 1; k <= D; ++k) {
        Mono e(full->size(), 0);
        e[full->require("y")] = k;
        CHECK(b.coeff(e) == cur[k]);
    }
    // frozen signed-Catalan prefix
    CHECK(b.coeff("y") == Rational(1));
    CHECK(b.coeff("y^2") == Rational(-1));
    CHECK(b.coeff("y^3") == Rational(2));
    CHECK(b.coeff("y^4") == Rational(-5));
    CHECK(b.coeff("y^5") == Rational(14));
}

TEST_CASE("implicit_solve preconditions") {
    SpacePtr full = full_space(1, 1);
    CHECK_THROWS_AS(implicit_solve(parse_expression("-y + b^2", full, 8), "b"),
                    SingularImplicit);
    CHECK_THROWS_AS(implicit_solve(parse_expression("1 - y + b", full, 8), "b"),
                    NonzeroConstant);
}

TEST_CASE("ring axioms on random series") {
    SpacePtr sp = q_space(2, 1);
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        Series f = random_polynomial(sp, rng, 6, 4, 5, true);
        Series g = random_polynomial(sp, rng, 6, 4, 5, true);
        Series h = random_polynomial(sp, rng, 6, 4, 5, true);
        CHECK((f + g) == (g + f));
        CHECK((f * g) == (g * f));
        CHECK(((f + g) + h) == (f + (g + h)));
        CHECK(((f * g) * h) == (f * (g * h)));
        CHECK((f * (g + h)) == (f * g + f * h));
    }
}

TEST_CASE("leibniz rule on random series") {
    SpacePtr sp = q_space(1, 1);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        Series f = random_polynomial(sp, rng, 6, 4, 5, true);
        Series g = random_polynomial(sp, rng, 6, 4, 5, true);
        for (int v = 0; v < sp->size(); ++v) {
            Series lhs = (f * g).derivative(v);
            Series rhs = f.derivative(v) * g + f * g.derivative(v);
            CHECK((lhs - rhs).is_zero_through(lhs.reliable()));
        }
    }
}

TEST_CASE("chain rule on random substitutions") {
    SpacePtr sp = q_space(1, 1);  // (x, a, b)
    Rng rng(11);
    for (int t = 0; t < 12; ++t) {
        Series f = random_polynomial(sp, rng, 6, 4, 5, true);
        // g free of b so that d/dw commutes cleanly with the substitution
        Series g = Series::zero(sp, 6);
        while (g.is_zero()) {
            g = random_polynomial(sp, rng, 6, 3, 4, false);
            Substitution kill(sp, sp, 6);
            kill.set("b", Series::zero(sp, 6));
            g = kill.apply(g);
        }
        Substitution sub(sp, sp, 6);
        sub.set("b", g);
        Series F = sub.apply(f);
        for (const std::string w : {"x", "a"}) {
            Series lhs = F.derivative(w);
            Series rhs = sub.apply(f.derivative("b")) * g.derivative(w) +
                         sub.apply(f.derivative(w));
            CHECK((lhs - rhs).is_zero_through(lhs.reliable()));
        }
    }
}

TEST_CASE("implicit_solve round trip on random solvable equations") {
    SpacePtr full = full_space(1, 1);
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        // R = -y + b + higher-order noise in (x, a, b)
        Series noise = random_polynomial(full, rng, 6, 3, 4, false);
        Substitution killy(full, full, 6);
        killy.set("y", Series::zero(full, 6));
        noise = killy.apply(noise);
        Series R = parse_expression("-y + b", full, 6) + noise * noise;  // degree >= 2
        Series s = implicit_solve(R, "b");
        Substitution sub(full, full, 6);
        sub.set("b", s);
        CHECK(sub.apply(R).is_zero_through(s.reliable()));
    }
}

TEST_CASE("reciprocal round trip on random units") {
    SpacePtr sp = q_space(2, 2);
    Rng rng(13);
    for (int t = 0; t < 10; ++t) {
        Series u = random_polynomial(sp, rng, 6, 3, 5, false) + Rational(1);
        CHECK((u * u.reciprocal() - Rational(1)).is_zero_through(u.reliable()));
    }
}

TEST_CASE("reliable degree bookkeeping") {
    SpacePtr sp = q_space(1, 1);
    Series f = parse_expression("x + a*b", sp, 8);
    CHECK(f.reliable() == 8);
    CHECK(f.derivative("x").reliable() == 7);
    CHECK((f.derivative("x") * f).reliable() == 7);
    CHECK((f.with_reliable(4) + f).reliable() == 4);
}

TEST_CASE("series printing is grlex sorted and stable") {
    SpacePtr sp = q_space(2, 2);
    Series s = parse_expression("x^2*b - 3*c + x*a + 1/2*y", sp, 8);
    CHECK(s.str() == "1/2*y - 3*c + x*a + x^2*b");
    CHECK(Series::zero(sp, 8).str() == "0");
}
