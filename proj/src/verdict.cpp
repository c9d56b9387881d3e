#include "paracr/verdict.hpp"

#include <algorithm>

namespace paracr {

std::string Verdict::status_str() const {
    switch (status) {
        case VerdictStatus::pass: return "pass";
        case VerdictStatus::fail: return "fail";
        default: return "inconclusive";
    }
}

Verdict Verdict::operator&&(const Verdict& o) const {
    Verdict r;
    r.checked_degree = std::min(checked_degree, o.checked_degree);
    if (status == VerdictStatus::fail || o.status == VerdictStatus::fail) {
        r.status = VerdictStatus::fail;
        r.detail = status == VerdictStatus::fail ? detail : o.detail;
    } else if (status == VerdictStatus::inconclusive || o.status == VerdictStatus::inconclusive) {
        r.status = VerdictStatus::inconclusive;
        r.detail = status == VerdictStatus::inconclusive ? detail : o.detail;
    } else {
        r.status = VerdictStatus::pass;
    }
    return r;
}

Verdict check_vanishes(const Series& diff, const std::string& label) {
    int deg = diff.reliable();
    auto bad = diff.first_term_through(deg);
    if (bad) {
        std::string where = monomial_str(*diff.space(), bad->first);
        if (where.empty()) where = "1";
        return Verdict::fail(deg, (label.empty() ? "" : label + ": ") + "coefficient of " + where +
                                      " = " + bad->second.str());
    }
    if (deg < Verdict::MIN_CONCLUSIVE_DEGREE)
        return Verdict::inconclusive(deg, (label.empty() ? "" : label + ": ") +
                                              "reliable degree " + std::to_string(deg) +
                                              " below conclusive threshold");
    return Verdict::pass(deg);
}

Verdict check_equal(const Series& lhs, const Series& rhs, const std::string& label) {
    return check_vanishes(lhs - rhs, label);
}

}  // namespace paracr
