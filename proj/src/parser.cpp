#include "paracr/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "paracr/errors.hpp"

namespace paracr {

namespace {

class ExprParser {
public:
    ExprParser(const std::string& text, SpacePtr space, int trunc)
        : text_(text), space_(std::move(space)), trunc_(trunc) {}

    Series run() {
        Series s = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return s;
    }

private:
    const std::string& text_;
    SpacePtr space_;
    int trunc_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Series expr() {
        bool negate = false;
        skip_ws();
        if (eat('-'))
            negate = true;
        else
            eat('+');
        Series acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    Series term() {
        Series acc = factor();
        while (true) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                std::size_t at = pos_;
                Series d = factor();
                if (!d.is_unit())
                    throw NonUnitDivisor("divisor has zero constant term (offset " +
                                         std::to_string(at) + ")");
                acc = acc * d.reciprocal();
            } else {
                break;
            }
        }
        return acc;
    }

    Series factor() {
        Series b = base();
        if (eat('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw SyntaxError("expected nonnegative integer exponent", at);
            long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + (text_[pos_] - '0');
                if (e > 1000) throw SyntaxError("exponent too large", at);
                ++pos_;
            }
            Series r = Series::constant(space_, Rational(1), trunc_);
            for (long i = 0; i < e; ++i) r = r * b;
            return r;
        }
        return b;
    }

    Series base() {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of expression", at);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Series s = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos_);
            return s;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += text_[pos_++];
            return Series::constant(space_, Rational(BigInt(digits), BigInt(1)), trunc_);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                name += text_[pos_++];
            int idx = space_->index_of(name);
            if (idx < 0)
                throw UnknownVariable("'" + name + "' at offset " + std::to_string(at));
            return Series::variable(space_, idx, trunc_);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", at);
    }
};

}  // namespace

Series parse_expression(const std::string& text, SpacePtr space, int trunc) {
    return ExprParser(text, std::move(space), trunc).run();
}

SpacePtr ModelFile::expr_space() const {
    switch (side) {
        case ModelSide::q_graph: return q_space(n, m);
        case ModelSide::p_graph: return p_space(n, m);
        default: return full_space(n, m);
    }
}

ModelFile parse_model_file(const std::string& contents) {
    ModelFile mf;
    bool have_n = false, have_m = false, have_expr = false;
    std::istringstream in(contents);
    std::string line;
    std::size_t line_start = 0;
    while (std::getline(in, line)) {
        std::size_t offset = line_start;
        line_start += line.size() + 1;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto nonspace = line.find_first_not_of(" \t\r");
        if (nonspace == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SyntaxError("expected 'key = value' line", offset + nonspace);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        if (key == "n") {
            mf.n = std::stoi(value);
            have_n = true;
        } else if (key == "m") {
            mf.m = std::stoi(value);
            have_m = true;
        } else if (key == "truncation") {
            mf.trunc = std::stoi(value);
        } else if (key == "Q" || key == "P" || key == "R") {
            if (have_expr) throw SyntaxError("more than one of Q, P, R given", offset);
            mf.side = key == "Q"   ? ModelSide::q_graph
                      : key == "P" ? ModelSide::p_graph
                                   : ModelSide::implicit_r;
            mf.expr = value;
            have_expr = true;
        } else {
            throw SyntaxError("unknown key '" + key + "'", offset);
        }
    }
    if (!have_n || !have_m) throw SyntaxError("model file must set n and m", 0);
    if (mf.n < 1 || mf.m < 1) throw SyntaxError("n and m must be >= 1", 0);
    if (mf.trunc < 3) throw SyntaxError("truncation must be >= 3", 0);
    if (!have_expr) throw SyntaxError("model file must set one of Q, P, R", 0);
    return mf;
}

ModelFile load_model_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open model file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_model_file(ss.str());
}

}  // namespace paracr
