#include "paracr/series.hpp"

#include <algorithm>
#include <sstream>

namespace paracr {

int total_degree(const Mono& e) {
    int d = 0;
    for (int v : e) d += v;
    return d;
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    // within a degree, earlier variables with higher exponents print first
    return a > b;
}

static void check_same_space(const Series& a, const Series& b, const char* op) {
    if (a.space() != b.space() && !a.space()->same_as(*b.space()))
        throw SpaceMismatch(std::string(op) + " on series over different spaces");
}

Series::Series() : Series(VarSpace::make({}, {}), 0, 0) {}

Series::Series(SpacePtr space, int trunc, int reliable)
    : space_(std::move(space)), trunc_(trunc), reliable_(std::min(reliable, trunc)) {
    if (trunc_ < 0) throw Error("Series: negative truncation degree");
}

Series Series::constant(SpacePtr space, const Rational& c, int trunc) {
    Series s(std::move(space), trunc);
    if (!c.is_zero()) s.terms_.emplace(Mono(s.space_->size(), 0), c);
    return s;
}

Series Series::variable(SpacePtr space, int var, int trunc) {
    Series s(std::move(space), trunc);
    if (var < 0 || var >= s.space_->size()) throw UnknownVariable("variable index out of range");
    if (trunc >= 1) {
        Mono e(s.space_->size(), 0);
        e[var] = 1;
        s.terms_.emplace(std::move(e), Rational(1));
    }
    return s;
}

Series Series::variable(SpacePtr space, const std::string& name, int trunc) {
    int i = space->require(name);
    return variable(std::move(space), i, trunc);
}

Series Series::from_terms(SpacePtr space, TermMap terms, int trunc, int reliable) {
    Series s(std::move(space), trunc, reliable);
    for (auto& [e, c] : terms) {
        if (static_cast<int>(e.size()) != s.space_->size())
            throw Error("Series: exponent vector of wrong length");
        if (c.is_zero() || total_degree(e) > trunc) continue;
        s.terms_.emplace(e, c);
    }
    return s;
}

void Series::add_term(const Mono& e, const Rational& c) {
    if (c.is_zero() || total_degree(e) > trunc_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Series::is_zero_through(int degree) const {
    for (const auto& [e, c] : terms_) {
        if (total_degree(e) > degree) break;  // grlex order: degrees ascend
        return false;
    }
    return true;
}

Rational Series::coeff(const Mono& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Series::coeff(const std::string& monomial) const {
    Mono e(space_->size(), 0);
    std::size_t pos = 0;
    while (pos < monomial.size()) {
        std::size_t star = monomial.find('*', pos);
        std::string factor = monomial.substr(pos, star == std::string::npos ? star : star - pos);
        pos = star == std::string::npos ? monomial.size() : star + 1;
        int exp = 1;
        std::size_t hat = factor.find('^');
        if (hat != std::string::npos) {
            exp = std::stoi(factor.substr(hat + 1));
            factor = factor.substr(0, hat);
        }
        e[space_->require(factor)] += exp;
    }
    return coeff(e);
}

Rational Series::at_origin() const { return coeff(Mono(space_->size(), 0)); }

int Series::max_degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
}

std::optional<std::pair<Mono, Rational>> Series::first_term_through(int degree) const {
    for (const auto& [e, c] : terms_) {
        if (total_degree(e) > degree) break;
        return std::make_pair(e, c);
    }
    return std::nullopt;
}

Series Series::operator-() const {
    Series r(space_, trunc_, reliable_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Series Series::operator+(const Series& o) const {
    check_same_space(*this, o, "add");
    Series r(space_, std::min(trunc_, o.trunc_), std::min(reliable_, o.reliable_));
    r.terms_ = terms_;
    if (r.trunc_ < trunc_) {
        auto it = r.terms_.begin();
        while (it != r.terms_.end())
            it = total_degree(it->first) > r.trunc_ ? r.terms_.erase(it) : std::next(it);
    }
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    check_same_space(*this, o, "mul");
    Series r(space_, std::min(trunc_, o.trunc_), std::min(reliable_, o.reliable_));
    const int nv = space_->size();
    Mono e(nv, 0);
    for (const auto& [ea, ca] : terms_) {
        int da = total_degree(ea);
        if (da > r.trunc_) break;
        for (const auto& [eb, cb] : o.terms_) {
            if (da + total_degree(eb) > r.trunc_) break;  // grlex: degrees ascend
            for (int i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Series Series::operator+(const Rational& c) const {
    Series r = *this;
    r.add_term(Mono(space_->size(), 0), c);
    return r;
}

Series Series::operator-(const Rational& c) const { return *this + (-c); }

Series Series::scaled(const Rational& c) const {
    Series r(space_, trunc_, reliable_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Series Series::reciprocal() const {
    Rational c0 = at_origin();
    if (c0.is_zero()) throw NonUnitDivisor("reciprocal of a series with zero constant term");
    // Newton: u <- u * (2 - a*u), doubling the correct degree each step.
    Series u = constant(space_, Rational(1) / c0, trunc_);
    Series two = constant(space_, Rational(2), trunc_);
    int correct = 0;
    while (correct < trunc_) {
        u = u * (two - *this * u);
        correct = 2 * correct + 1;
    }
    return u.with_reliable(std::min(reliable_, trunc_));
}

Series Series::derivative(int var) const {
    if (var < 0 || var >= space_->size()) throw UnknownVariable("derivative: index out of range");
    Series r(space_, trunc_, reliable_ - 1);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Mono d = e;
        d[var] -= 1;
        r.terms_.emplace(std::move(d), c * Rational(e[var]));
    }
    return r;
}

Series Series::derivative(const std::string& name) const {
    return derivative(space_->require(name));
}

Series Series::with_reliable(int r) const {
    Series s = *this;
    s.reliable_ = std::min(r, trunc_);
    return s;
}

Series Series::truncated(int degree) const {
    Series s(space_, trunc_, reliable_);
    for (const auto& [e, c] : terms_) {
        if (total_degree(e) > degree) break;
        s.terms_.emplace(e, c);
    }
    return s;
}

Rational Series::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != space_->size())
        throw Error("evaluate: point has wrong dimension");
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < space_->size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

std::string monomial_str(const VarSpace& space, const Mono& e) {
    std::string s;
    for (int i = 0; i < space.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += space.name(i);
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        std::string mono = monomial_str(*space_, e);
        if (mono.empty()) {
            out << a.str();
        } else {
            if (!(a == Rational(1))) out << a.str() << "*";
            out << mono;
        }
        first = false;
    }
    return out.str();
}

// --- Substitution ---

Substitution::Substitution(SpacePtr source, SpacePtr target, int trunc, bool strict)
    : source_(std::move(source)),
      target_(std::move(target)),
      trunc_(trunc),
      strict_(strict),
      images_(source_->size()),
      powers_(source_->size()) {}

void Substitution::set(int source_var, Series image) {
    if (source_var < 0 || source_var >= source_->size())
        throw UnknownVariable("substitute: index out of range");
    if (image.space() != target_ && !image.space()->same_as(*target_))
        throw SpaceMismatch("substitute: image not in target space");
    if (strict_ && !image.at_origin().is_zero())
        throw NonzeroConstantSubstitution("image of '" + source_->name(source_var) +
                                          "' has nonzero constant term");
    images_[source_var] = std::move(image);
    powers_[source_var].clear();
}

void Substitution::set(const std::string& name, Series image) {
    set(source_->require(name), std::move(image));
}

const Series& Substitution::power(int var, int e) const {
    auto& pw = powers_[var];
    if (pw.empty()) {
        pw.push_back(Series::constant(target_, Rational(1), trunc_));
        if (images_[var]) {
            pw.push_back(*images_[var]);
        } else {
            int t = target_->index_of(source_->name(var));
            if (t < 0)
                throw UnknownVariable("substitute: '" + source_->name(var) +
                                      "' has no image and no target counterpart");
            pw.push_back(Series::variable(target_, t, trunc_));
        }
    }
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * pw[1]);
    return pw[e];
}

Series Substitution::apply(const Series& s) const {
    if (s.space() != source_ && !s.space()->same_as(*source_))
        throw SpaceMismatch("substitute: series not in source space");
    int reliable = std::min(s.reliable(), trunc_);
    for (int v = 0; v < source_->size(); ++v)
        if (images_[v]) reliable = std::min(reliable, images_[v]->reliable());
    Series acc(target_, trunc_, reliable);
    for (const auto& [e, c] : s.terms()) {
        Series term = Series::constant(target_, c, trunc_);
        for (int v = 0; v < source_->size(); ++v)
            if (e[v] > 0) term = term * power(v, e[v]);
        for (const auto& [te, tc] : term.terms_) acc.add_term(te, tc);
    }
    return acc;
}

Series substitute(const Series& s, const std::vector<std::pair<std::string, Series>>& assignments,
                  bool strict) {
    Substitution sub(s.space(), s.space(), s.trunc(), strict);
    for (const auto& [name, image] : assignments) sub.set(name, image);
    return sub.apply(s);
}

// --- implicit function theorem on jets ---

Series implicit_solve(const Series& R, int var) {
    const SpacePtr& sp = R.space();
    if (var < 0 || var >= sp->size()) throw UnknownVariable("implicit_solve: index out of range");
    if (!R.at_origin().is_zero())
        throw NonzeroConstant("implicit_solve: R has nonzero constant term");
    Series Rv = R.derivative(var);
    if (Rv.at_origin().is_zero())
        throw SingularImplicit("implicit_solve: dR/d" + sp->name(var) + " vanishes at the origin");

    const int D = R.trunc();
    Series s = Series::zero(sp, D);
    // Newton: s <- s - R(s)/R_v(s); the correct degree doubles each step.
    int correct = 0;
    while (correct < D) {
        Substitution sub(sp, sp, D);
        sub.set(var, s);
        Series rs = sub.apply(R);
        Series rvs = sub.apply(Rv);
        s = s - rs * rvs.reciprocal();
        correct = 2 * correct + 1;
    }
    s = s.with_reliable(R.reliable());
    // Sanity: the defining equation must vanish on the solution.
    Substitution check(sp, sp, D);
    check.set(var, s);
    if (!check.apply(R).is_zero_through(s.reliable()))
        throw Error("implicit_solve: iteration failed to converge");
    for (const auto& [e, c] : s.terms())
        if (e[var] != 0) throw Error("implicit_solve: solution depends on the solved variable");
    return s;
}

Series implicit_solve(const Series& R, const std::string& name) {
    return implicit_solve(R, R.space()->require(name));
}

}  // namespace paracr
