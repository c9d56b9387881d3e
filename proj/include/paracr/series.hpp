#ifndef PARACR_SERIES_HPP
#define PARACR_SERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paracr/rational.hpp"
#include "paracr/varspace.hpp"

namespace paracr {

// One exponent per space coordinate.
using Mono = std::vector<int>;

int total_degree(const Mono& e);

// Graded lexicographic order: total degree first, then lexicographic on the
// exponent vector. This is also the printing order.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

using TermMap = std::map<Mono, Rational, GrlexLess>;

// A multivariate formal power series truncated at total degree `trunc`,
// with exact rational coefficients. `reliable` tracks the degree through
// which coefficients are guaranteed to agree with the untruncated object:
// arithmetic propagates it as the minimum over inputs, differentiation
// lowers it by one. Canonical form stores no zero coefficients and no
// exponent above the truncation degree. Values are immutable after
// construction; every operation returns a fresh value.
class Series {
public:
    // Empty placeholder over a zero-dimensional space; any mixed-space
    // arithmetic with it throws. Lets aggregates hold Series members.
    Series();
    Series(SpacePtr space, int trunc, int reliable);
    Series(SpacePtr space, int trunc) : Series(space, trunc, trunc) {}

    static Series zero(SpacePtr space, int trunc) { return Series(std::move(space), trunc); }
    static Series constant(SpacePtr space, const Rational& c, int trunc);
    static Series variable(SpacePtr space, int var, int trunc);
    static Series variable(SpacePtr space, const std::string& name, int trunc);
    static Series from_terms(SpacePtr space, TermMap terms, int trunc, int reliable);

    const SpacePtr& space() const { return space_; }
    int trunc() const { return trunc_; }
    int reliable() const { return reliable_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_zero_through(int degree) const;
    Rational coeff(const Mono& e) const;
    Rational coeff(const std::string& monomial) const;  // e.g. "x^2*b"
    Rational at_origin() const;
    bool is_unit() const { return !at_origin().is_zero(); }
    int max_degree() const;
    // First nonzero term of total degree <= degree, in grlex order.
    std::optional<std::pair<Mono, Rational>> first_term_through(int degree) const;

    Series operator-() const;
    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series operator+(const Rational& c) const;
    Series operator-(const Rational& c) const;
    Series scaled(const Rational& c) const;
    // Multiplicative inverse; requires a nonzero constant term.
    Series reciprocal() const;
    friend Series operator/(const Series& a, const Series& b) { return a * b.reciprocal(); }

    Series derivative(int var) const;
    Series derivative(const std::string& name) const;

    Series with_reliable(int r) const;
    Series truncated(int degree) const;  // drop all terms of degree > `degree`

    // Exact evaluation of the stored (truncated) polynomial.
    Rational evaluate(const std::vector<Rational>& point) const;

    // Deterministic human-readable form, terms in grlex order.
    std::string str() const;

    friend bool operator==(const Series& a, const Series& b) {
        return a.space_->same_as(*b.space_) && a.terms_ == b.terms_;
    }

private:
    SpacePtr space_;
    int trunc_;
    int reliable_;
    TermMap terms_;

    void add_term(const Mono& e, const Rational& c);
    friend class Substitution;
};

// A simultaneous substitution sending selected source-space coordinates to
// series in a target space; unassigned coordinates map to the target-space
// coordinate with the same name. Powers of the images are cached so the
// object can be applied to many series cheaply.
class Substitution {
public:
    Substitution(SpacePtr source, SpacePtr target, int trunc, bool strict = true);

    void set(int source_var, Series image);
    void set(const std::string& name, Series image);

    Series apply(const Series& s) const;

private:
    SpacePtr source_;
    SpacePtr target_;
    int trunc_;
    bool strict_;
    std::vector<std::optional<Series>> images_;
    mutable std::vector<std::vector<Series>> powers_;

    const Series& power(int var, int e) const;
};

// Composition within one space: substitute(s, {v -> g}).
Series substitute(const Series& s, const std::vector<std::pair<std::string, Series>>& assignments,
                  bool strict = true);

// Solves R = 0 for `var`: returns S, free of `var`, with zero constant term,
// such that R(..., var = S, ...) vanishes through the reliable degree.
// Requires R(0) = 0 and dR/dvar a unit; Newton iteration on jets.
Series implicit_solve(const Series& R, int var);
Series implicit_solve(const Series& R, const std::string& name);

std::string monomial_str(const VarSpace& space, const Mono& e);

}  // namespace paracr

#endif
