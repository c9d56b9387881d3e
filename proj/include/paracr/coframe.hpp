#ifndef PARACR_COFRAME_HPP
#define PARACR_COFRAME_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "paracr/pde.hpp"
#include "paracr/submanifold.hpp"

namespace paracr {

// First-order differential operator with series coefficients, one per
// coordinate of `space`.
struct VectorField {
    SpacePtr space;
    std::vector<Series> coef;
};

VectorField lie_bracket(const VectorField& v, const VectorField& w);

// Coefficient vector of a 1-form over the coordinate basis (dx_i).
struct OneForm {
    SpacePtr space;
    std::vector<Series> comp;
};

Series pair_form(const OneForm& omega, const VectorField& v);

// The two Levi-kernel quotients (n = m = 2, Levi (1,1)-entries units at 0):
//   k = -(-Pz Pay + Py Paz)/(-Pz Pax + Px Paz)   over (a,b,x,y,z)
//   l = -(-Qc Qxb + Qb Qxc)/(-Qc Qxa + Qa Qxc)   over (x,y,a,b,c)
// so that k Hx + Hy and l La + Lb generate the kernel line bundles. The
// Q-side re-expression of k is verified against the P-side quotient.
std::pair<Series, Series> kernel_quotients(const Submanifold& M);

struct BracketReport {
    // Transversal components of [d/da, K_ker], [d/db, K_ker] on the
    // (a,b,x,y,z) chart and [d/dx, L_ker], [d/dy, L_ker] on (x,y,a,b,c);
    // these are the Levi pairings that vanish exactly when the kernel
    // fields really span the kernels.
    std::array<std::pair<std::string, Verdict>, 4> items;
    bool all_passed() const;
};

BracketReport check_kernel_brackets(const Submanifold& M);

struct CoframeData {
    Series k;  // over p_space
    Series l;  // over q_space
    // rows (Q_a, Q_b, Q_c), (Q_xa, Q_xb, Q_xc), (Q_xxa, Q_xxb, Q_xxc):
    // lambda, mu_1, mu_2 in the basis (da, db, dc) after pullback to M.
    SeriesMatrix contact_forms;
    Series nu1_dy_coeff;  // F_{z_x}: nu_1 = dx + F_{z_x} dy
    bool triangular = false;  // h4 absent, i.e. F_{z_x z_x}(0) != 0
    // 5x5 admissible group-matrix pattern over (lambda, mu1, mu2, nu1, nu2):
    // entries are free group-function names or "0".
    std::array<std::array<std::string, 5>, 5> group_pattern;
};

// Requires a derived direct system with F_zxx identically zero
// (PrerequisiteIdentityFailed otherwise).
CoframeData initial_coframe(const Submanifold& M, const PdeSystem& S);

struct ContactTransferReport {
    std::vector<std::pair<std::string, Verdict>> items;
    bool degenerate = false;  // mu_1 pullback vanished (no (a,b)-coupling)
    bool all_passed() const;
};

// Pulls lambda = dz - z_x dx - F dy, mu_1, mu_2 back along
// (z, z_x, z_xx) = (Q, Q_x, Q_xx): the dx, dy components must cancel and
// the (da, db, dc) components must be the contact-form rows; additionally
// mu_1 - (Q_xc/Q_c) lambda must be a unit multiple of (da - l db).
// With S == nullptr only the Q-side checks run (the dy components need F).
ContactTransferReport check_contact_transfer(const Submanifold& M, const PdeSystem* S);

}  // namespace paracr

#endif
