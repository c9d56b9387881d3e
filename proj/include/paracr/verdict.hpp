#ifndef PARACR_VERDICT_HPP
#define PARACR_VERDICT_HPP

#include <string>

#include "paracr/series.hpp"

namespace paracr {

enum class VerdictStatus { pass, fail, inconclusive };

// Outcome of an identity check on truncated jets. A "pass" means every
// coefficient vanished through checked_degree; a verdict whose checkable
// degree falls below MIN_CONCLUSIVE_DEGREE is reported inconclusive rather
// than pass, since three is the highest derivative order any identity here
// involves.
struct Verdict {
    static constexpr int MIN_CONCLUSIVE_DEGREE = 3;

    VerdictStatus status = VerdictStatus::inconclusive;
    int checked_degree = -1;
    std::string detail;

    bool passed() const { return status == VerdictStatus::pass; }
    bool failed() const { return status == VerdictStatus::fail; }
    std::string status_str() const;

    static Verdict pass(int degree) { return {VerdictStatus::pass, degree, ""}; }
    static Verdict fail(int degree, std::string detail) {
        return {VerdictStatus::fail, degree, std::move(detail)};
    }
    static Verdict inconclusive(int degree, std::string why) {
        return {VerdictStatus::inconclusive, degree, std::move(why)};
    }

    // Combine: fail dominates, then inconclusive; checked degree is the min.
    Verdict operator&&(const Verdict& o) const;
};

// Checks that `diff` vanishes identically through its reliable degree.
Verdict check_vanishes(const Series& diff, const std::string& label = "");

// Checks lhs == rhs through the common reliable degree.
Verdict check_equal(const Series& lhs, const Series& rhs, const std::string& label = "");

}  // namespace paracr

#endif
