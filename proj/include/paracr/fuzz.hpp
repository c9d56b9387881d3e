#ifndef PARACR_FUZZ_HPP
#define PARACR_FUZZ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "paracr/series.hpp"

namespace paracr {

// Deterministic PRNG (xorshift64*); identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next();
    // uniform integer in [lo, hi]
    int uniform(int lo, int hi);
    // rational p/q with |p| <= pmax, 1 <= q <= qmax
    Rational small_rational(int pmax = 3, int qmax = 3);
    // nonzero variant
    Rational small_rational_nonzero(int pmax = 3, int qmax = 3);

private:
    std::uint64_t s_;
};

// A random polynomial of total degree <= maxdeg with small rational
// coefficients (roughly `density` terms), no constant term unless allowed.
Series random_polynomial(SpacePtr space, Rng& rng, int trunc, int maxdeg, int density,
                         bool allow_constant = false);

// A random graph function Q over q_space(n, m): Q = b + (bilinear + higher
// mixed terms), so Q(0) = 0 and Q_b(0) = 1. Suitable for the functional
// relation / Levi identity properties.
Series random_model_q(int n, int m, Rng& rng, int trunc, int maxdeg, int density);

// A random n=m=2 model with unit Delta(Q) at the origin:
// Q = c + x*a + x^2*b + small random cubic/quartic mixed terms.
Series random_delta_unit_model(Rng& rng, int trunc, int extra_terms);

// A rational sample point for rank probes, coordinates in {p/q : |p|<=3, q<=3}.
std::vector<Rational> sample_point(const VarSpace& space, Rng& rng);

struct FuzzOutcome {
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;

    void note(bool ok, const std::string& what);
    void merge(const FuzzOutcome& o);
};

// The seeded identity suite behind `paracr fuzz`: functional relations,
// Levi transpose, determinant factor relation, first-jet rank relation,
// elimination identities, kernel brackets. `cases` is the per-class count.
FuzzOutcome run_property_suite(std::uint64_t seed, int cases, int degree);

}  // namespace paracr

#endif
