#ifndef SUBFIELDS_POLY_PARSE_HPP
#define SUBFIELDS_POLY_PARSE_HPP

/**
 * @file poly_parse.hpp
 * @brief Parser for integer-coefficient univariate polynomials:
 *        expressions in x with ^ * + -, or a bare comma-separated
 *        coefficient list (constant term first).
 */

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "subfields/int_poly.hpp"

namespace subfields {

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : s_(text) {}

    IntPoly parse() {
        IntPoly result = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) throw std::invalid_argument("polynomial: trailing input");
        return result;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Int parse_int() {
        skip_ws();
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        if (digits.empty()) throw std::invalid_argument("polynomial: number expected");
        return Int(digits);
    }

    IntPoly parse_factor() {
        if (peek() == 'x' || peek() == 'X') {
            ++pos_;
            if (eat('^')) {
                Int e = parse_int();
                if (e < 0 || e > 4096) throw std::invalid_argument("polynomial: bad exponent");
                return IntPoly::monomial(1, e.get_ui());
            }
            return IntPoly::x();
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) return IntPoly::constant(parse_int());
        throw std::invalid_argument("polynomial: factor expected");
    }

    IntPoly parse_term() {
        IntPoly acc = parse_factor();
        while (eat('*')) acc = acc * parse_factor();
        return acc;
    }

    IntPoly parse_expr() {
        IntPoly acc;
        int sign = 1;
        if (eat('-')) sign = -1;
        else eat('+');
        while (true) {
            IntPoly term = parse_term();
            acc = sign < 0 ? acc - term : acc + term;
            if (eat('-')) sign = -1;
            else if (eat('+')) sign = 1;
            else break;
        }
        return acc;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse "x^18+9*x^9+27" or "27,0,0,9,..." (coefficient list, constant first).
inline IntPoly parse_polynomial(const std::string& text) {
    if (text.find(',') != std::string::npos) {
        std::vector<Int> coeffs;
        std::string cur;
        for (char c : text + ",") {
            if (c == ',') {
                std::string trimmed;
                for (char t : cur)
                    if (!std::isspace(static_cast<unsigned char>(t))) trimmed += t;
                if (trimmed.empty()) throw std::invalid_argument("polynomial: empty coefficient");
                coeffs.emplace_back(trimmed);
                cur.clear();
            } else {
                cur += c;
            }
        }
        return IntPoly(std::move(coeffs));
    }
    return detail::PolyParser(text).parse();
}

}  // namespace subfields

#endif  // SUBFIELDS_POLY_PARSE_HPP
