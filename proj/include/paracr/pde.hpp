#ifndef PARACR_PDE_HPP
#define PARACR_PDE_HPP

#include <array>
#include <utility>
#include <vector>

#include "paracr/submanifold.hpp"

namespace paracr {

// The PDE system z_y = F, z_xxx = H associated to an n = m = 2 model by
// eliminating (a, b, c) from (z, z_x, z_xx) = (Q, Q_x, Q_xx), or its dual
// c_b = E, c_aaa = G obtained from P the mirror way. Jet coordinates are
// centered at the base jet (z, z_x, z_xx)(0) = (Q, Q_x, Q_xx)(0); for
// normalized models the base is zero.
struct PdeSystem {
    bool dual = false;
    SpacePtr jspace;              // (x, y, z, z_x, z_xx) or (a, b, c, c_a, c_aa)
    Series F;                     // z_y (dual: c_b) as a series over jspace
    Series H;                     // z_xxx (dual: c_aaa)
    std::array<Rational, 3> base;  // jet values of the graph at the origin
    std::array<Series, 3> inverse;  // A, B, C (dual: X, Y, Z) over jspace
};

// Requires Delta(Q)(0) != 0, else DegenerateElimination. Both round-trip
// identities (A,B,C compose back to a,b,c; F, H pull back to Q_y, Q_xxx)
// are verified before returning.
PdeSystem derive_pde(const Submanifold& M);

// Requires Box(P)(0) != 0. Same code path with the two graphs swapped.
PdeSystem derive_dual_pde(const Submanifold& M);

// Substitutes the jet coordinates by the graph jets, landing on (x,y,a,b,c)
// for the direct system and (a,b,x,y,z) for the dual one.
Series jet_pullback(const Submanifold& M, const PdeSystem& S, const Series& s);

// The nine first derivatives of the inverse map (A, B, C) by (z, z_x, z_xx),
// re-expressed over (x, y, a, b, c) as 2x2-determinant quotients over
// Delta(Q), each cross-checked against the derivative of the Newton-computed
// inverse pulled back along the jet map.
struct TransferCoefficients {
    // rows: A, B, C; columns: d/dz, d/dz_x, d/dz_xx
    std::array<std::array<Series, 3>, 3> by_formula;
    Verdict cross_check;
};

TransferCoefficients transfer_coefficients(const Submanifold& M);

struct IdentityReport {
    std::vector<std::pair<std::string, Verdict>> items;
    bool hachtroudi_branch = false;  // F_zxx not identically zero
    const Verdict* find(const std::string& name) const;
    bool all_passed() const;
};

// The elimination identities: (i) F_zxx * Delta(Q) = L3x3(Q) (any
// Delta-unit input); (ii) F_zx * Delta(Q) equals the swapped-row
// determinant; on rank-1 inputs additionally (iii) the quotient formulas for
// F_zx on both charts, (iv) the d/da derivative formula, (v) the F_zxzx
// formula whose value at 0 links to Box(P)(0).
IdentityReport structural_identities(const Submanifold& M, const PdeSystem& S);

enum class TotalDir { Dx, Dy };

// D_x = d_x + z_x d_z + z_xx d_{z_x} + H d_{z_xx};
// D_y = d_y + F d_z + D_x(F) d_{z_x} + D_x(D_x F) d_{z_xx}.
Series total_derivative(TotalDir which, const Series& s, const PdeSystem& ctx);

// D_x^3(F) = D_y(H), through the common reliable degree.
Verdict check_integrability(const Series& F, const Series& H);
Verdict check_integrability(const PdeSystem& S);

}  // namespace paracr

#endif
