#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paracr/fuzz.hpp"
#include "paracr/jets.hpp"
#include "paracr/parser.hpp"

using namespace paracr;

namespace {

Submanifold model(const std::string& q_expr, int n, int m, int D = 8) {
    return from_Q(parse_expression(q_expr, q_space(n, m), D), n, m);
}

std::vector<Rational> origin(const Submanifold& M, Side s) {
    return std::vector<Rational>(
        (s == Side::par ? M.qspace() : M.pspace())->size(), Rational(0));
}

const char* GOLDEN = "c + (a*x + b*x^2 + a^2*y) / (1 - 4*b*y)";

}  // namespace

TEST_CASE("jet jacobian ranks at the origin") {
    Submanifold M = model("b + x*a", 1, 1);
    CHECK(jet_jacobian_rank(M, Side::par, 1, origin(M, Side::par)) == 3);

    Submanifold flat = model("b", 1, 1);
    for (int k = 1; k <= 5; ++k)
        CHECK(jet_jacobian_rank(flat, Side::par, k, origin(flat, Side::par)) == 2);

    Submanifold M22 = model("c + x*a + x^2*b", 2, 2);
    CHECK(jet_jacobian_rank(M22, Side::par, 1, origin(M22, Side::par)) == 4);
    CHECK(jet_jacobian_rank(M22, Side::par, 2, origin(M22, Side::par)) == 5);
}

TEST_CASE("nondegeneracy orders") {
    Submanifold M = model("b + x*a", 1, 1);
    CHECK(nondeg_order(M, Side::par, origin(M, Side::par), 6) == 1);
    CHECK(nondeg_order(M, Side::var, origin(M, Side::var), 6) == 1);

    Submanifold M22 = model("c + x*a + x^2*b", 2, 2);
    CHECK(nondeg_order(M22, Side::par, origin(M22, Side::par), 6) == 2);
    CHECK(nondeg_order(M22, Side::var, origin(M22, Side::var), 6) == std::nullopt);

    Submanifold G = model(GOLDEN, 2, 2);
    CHECK(nondeg_order(G, Side::par, origin(G, Side::par), 6) == 2);
    CHECK(nondeg_order(G, Side::var, origin(G, Side::var), 6) == 2);

    CHECK_THROWS_AS(nondeg_order(M22, Side::par, origin(M22, Side::par), 12),
                    OrderTooHighForTruncation);
}

TEST_CASE("delta and box determinants") {
    SUBCASE("b-dependent model") {
        auto [d, b] = delta_and_box(model("c + x*a + x^2*b", 2, 2));
        CHECK(d.at_origin() == Rational(2));
        CHECK(b.at_origin() == Rational(0));
        CHECK(b.is_zero_through(b.reliable()));
    }
    SUBCASE("y-dependent model") {
        auto [d, b] = delta_and_box(model("c + a*x + a^2*y", 2, 2));
        CHECK(d.at_origin() == Rational(0));
        CHECK(d.is_zero_through(d.reliable()));
        CHECK(b.at_origin() == Rational(2));
    }
    SUBCASE("golden model") {
        auto [d, b] = delta_and_box(model(GOLDEN, 2, 2));
        CHECK(d.at_origin() == Rational(2));
        CHECK(b.at_origin() == Rational(2));
    }
    CHECK_THROWS_AS(delta_and_box(model("b + x*a", 1, 1)), DimensionMismatch);
}

TEST_CASE("delta/box swap symmetry") {
    // The swap (x,y,z) <-> (a,b,c) carries M to the model whose Q-graph is P
    // with positionally renamed arguments; on a swap-symmetric M the two
    // determinants trade places.
    Submanifold M = model("-c + x*a + x^2*b + y*a^2", 2, 2);
    Substitution rename(M.pspace(), M.qspace(), M.trunc());  // positional
    for (int i = 0; i < 5; ++i)
        rename.set(i, Series::variable(M.qspace(), i, M.trunc()));
    Series Qswap = rename.apply(M.P);
    Submanifold Mswap = from_Q(Qswap, 2, 2);
    CHECK((Qswap - M.Q).is_zero_through(M.Q.reliable()));  // this model is symmetric
    auto [d1, b1] = delta_and_box(M);
    auto [d2, b2] = delta_and_box(Mswap);
    CHECK(d1.at_origin() == b2.at_origin());
    CHECK(b1.at_origin() == d2.at_origin());
}

TEST_CASE("case classification") {
    CHECK(classify_case(model("c + x*a + x^2*b", 2, 2)) == CaseLabel::III);
    CHECK(classify_case(model("c + a*x + a^2*y", 2, 2)) == CaseLabel::II);
    CHECK(classify_case(model(GOLDEN, 2, 2)) == CaseLabel::IV);
    CHECK(classify_case(model("c + x*a", 2, 2)) == CaseLabel::I);
    CHECK_THROWS_AS(classify_case(model("c + x*a + y*b", 2, 2)), NotRankOne);
}

TEST_CASE("assertion linkage: beta nonzero iff delta nonzero at 0") {
    const char* models[] = {"c + x*a + x^2*b", "c + a*x + a^2*y", GOLDEN,
                            "c + x*a + 3*x^2*b - 2*y*a^2"};
    for (const char* q : models) {
        Submanifold M = model(q, 2, 2);
        NormalForm22 nf = normal_form_22(M);
        auto [d, b] = delta_and_box(M);
        CHECK(nf.beta.is_zero() == d.at_origin().is_zero());
        CHECK(nf.beta_underline.is_zero() == b.at_origin().is_zero());
    }
}

TEST_CASE("quantitative linkage: Delta(0) = 2 beta, Box(0) = 2 beta_underline") {
    // In the cubic normal-form position the two determinants at the origin
    // are twice the two normal-form coefficients.
    const char* models[] = {"c + x*a + x^2*b", GOLDEN, "c + x*a + 3*x^2*b - 2*y*a^2",
                            "c + x*a + x^2*b + y*a^2 + 2*x^2*a - x*y*a + y^2*a"};
    for (const char* q : models) {
        INFO(std::string(q));
        NormalForm22 nf = normal_form_22(model(q, 2, 2));
        auto [d, b] = delta_and_box(nf.M);
        CHECK(d.at_origin() == Rational(2) * nf.beta);
        CHECK(b.at_origin() == Rational(2) * nf.beta_underline);
    }
}

TEST_CASE("automorphism dimension bound") {
    CHECK(aut_dim_bound(2, 2, 2, 2) == BigInt(990));
    CHECK(aut_dim_bound(1, 1, 1, 1) == BigInt(60));
    // symmetry in n <-> m
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        long n = rng.uniform(1, 5), m = rng.uniform(1, 5);
        long k = rng.uniform(1, 4), l = rng.uniform(1, 4);
        CHECK(aut_dim_bound(n, m, k, l) == aut_dim_bound(m, n, k, l));
    }
    CHECK_THROWS_AS(aut_dim_bound(2, 2, 0, 1), Error);
}

TEST_CASE("stabilization of generic jet ranks") {
    Rng rng(21);
    int tested = 0;
    for (int t = 0; t < 20; ++t) {
        Submanifold M = from_Q(random_model_q(2, 2, rng, 8, 4, 5), 2, 2);
        int r1 = jet_generic_rank(M, Side::par, 1);
        int r2 = jet_generic_rank(M, Side::par, 2);
        if (r1 == r2) {
            CHECK(jet_generic_rank(M, Side::par, 3) == r2);
            ++tested;
        } else {
            int r3 = jet_generic_rank(M, Side::par, 3);
            if (r2 == r3) {
                CHECK(jet_generic_rank(M, Side::par, 4) == r3);
                ++tested;
            }
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("prolongation of plane maps") {
    SpacePtr pl = plane_space();
    const int D = 8;
    SUBCASE("identity map") {
        Prolongation1D pr = prolong_1d(Series::variable(pl, "x", D),
                                       Series::variable(pl, "y", D), 3);
        CHECK(pr.jets[0] == Series::variable(pr.jspace, "y_x", D));
        CHECK(pr.jets[1] == Series::variable(pr.jspace, "y_xx", D));
        CHECK(pr.jets[2] == Series::variable(pr.jspace, "y_xxx", D));
    }
    SUBCASE("x-dilation halves the slope") {
        Prolongation1D pr = prolong_1d(parse_expression("2*x", pl, D),
                                       Series::variable(pl, "y", D), 2);
        CHECK(pr.jets[0] == Series::variable(pr.jspace, "y_x", D).scaled(Rational(1, 2)));
        CHECK(pr.jets[1] == Series::variable(pr.jspace, "y_xx", D).scaled(Rational(1, 4)));
    }
    SUBCASE("y-dilation doubles the slope") {
        Prolongation1D pr = prolong_1d(Series::variable(pl, "x", D),
                                       parse_expression("2*y", pl, D), 1);
        CHECK(pr.jets[0] == Series::variable(pr.jspace, "y_x", D).scaled(Rational(2)));
    }
    SUBCASE("singular jacobian rejected") {
        CHECK_THROWS_AS(prolong_1d(parse_expression("x - x", pl, D),
                                   Series::variable(pl, "y", D), 1),
                        SingularJacobian);
        // invertible germ but f_x(0) = 0: the denominator is not a unit
        CHECK_THROWS_AS(prolong_1d(Series::variable(pl, "y", D),
                                   Series::variable(pl, "x", D), 1),
                        SingularJacobian);
    }
}

TEST_CASE("prolongation respects composition") {
    // maps with g_x(0) = 0 keep the composed jet based at the origin
    SpacePtr pl = plane_space();
    const int D = 6;
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
        auto germ = [&](bool first_slot) {
            Series x = Series::variable(pl, "x", D), y = Series::variable(pl, "y", D);
            Series noise = random_polynomial(pl, rng, D, 3, 3, false);
            return (first_slot ? x : y) + noise * noise;  // O(2) perturbation
        };
        Series f = germ(true), g = germ(false);
        Series f2 = germ(true), g2 = germ(false);
        Prolongation1D pr1 = prolong_1d(f, g, 2);
        Prolongation1D pr2 = prolong_1d(f2, g2, 2);
        // composed map (f2, g2) o (f, g)
        Substitution comp(pl, pl, D);
        comp.set("x", f);
        comp.set("y", g);
        Prolongation1D prc = prolong_1d(comp.apply(f2), comp.apply(g2), 2);
        // compose the jet transformations: substitute pr1 into pr2
        Substitution jet_comp(pr2.jspace, pr1.jspace, D, /*strict=*/false);
        jet_comp.set("x", pr1.x_image);
        jet_comp.set("y", pr1.y_image);
        jet_comp.set("y_x", pr1.jets[0]);
        jet_comp.set("y_xx", pr1.jets[1]);
        for (int k = 0; k < 2; ++k) {
            Series lhs = prc.jets[k];
            Series rhs = jet_comp.apply(pr2.jets[k]);
            CHECK((lhs - rhs).is_zero_through(std::min(lhs.reliable(), rhs.reliable())));
        }
    }
}
