#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "inertial.hpp"

namespace inertial::cli {

// Thrown as invalid_input with the column of the offending character.
class Parser {
public:
    Parser(std::string_view text, std::string what) : text_(text), what_(std::move(what)) {}

    // [[a,b],[c,d]] with optional trailing /d; entries are integers or p/q (optionally quoted).
    RatMatrix matrix() {
        std::vector<std::vector<Rational>> rows;
        skip();
        expect('[');
        skip();
        if (peek() == ']') {
            ++pos_;
        } else {
            while (true) {
                rows.push_back(row());
                skip();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                expect(']');
                break;
            }
        }
        skip();
        Rational scale = 1;
        if (peek() == '/') {
            ++pos_;
            skip();
            scale = Rational(1) / nonzero_integer();
        }
        finish();
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].size() != cols)
                fail(Errc::invalid_input, what_ + ": row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                              " entries, expected " + std::to_string(cols));
        RatMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j] * scale;
        return m;
    }

    // [a,b,c] or a,b,c
    std::vector<Rational> vector() {
        skip();
        std::vector<Rational> v;
        bool bracket = peek() == '[';
        if (bracket) {
            v = row();
        } else {
            while (true) {
                skip();
                v.push_back(scalar());
                skip();
                if (peek() != ',') break;
                ++pos_;
            }
        }
        finish();
        return v;
    }

private:
    std::vector<Rational> row() {
        std::vector<Rational> r;
        skip();
        expect('[');
        skip();
        if (peek() == ']') {
            ++pos_;
            return r;
        }
        while (true) {
            skip();
            r.push_back(scalar());
            skip();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(']');
            return r;
        }
    }

    Rational scalar() {
        bool quoted = peek() == '"';
        if (quoted) ++pos_;
        Integer num = integer();
        Integer den = 1;
        if (peek() == '/') {
            ++pos_;
            den = nonzero_integer();
        }
        if (quoted) expect('"');
        return make_rational(num, den);
    }

    Integer nonzero_integer() {
        std::size_t at = pos_;
        Integer v = integer();
        if (v == 0) error_at(at, "zero denominator");
        return v;
    }

    Integer integer() {
        std::size_t start = pos_;
        if (peek() == '-' || peek() == '+') ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) error_at(start, "expected an integer");
        return parse_integer(text_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        if (peek() != c) error_at(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    void finish() {
        skip();
        if (pos_ != text_.size()) error_at(pos_, "unexpected trailing input");
    }

    [[noreturn]] void error_at(std::size_t at, const std::string& msg) const {
        std::string found = at < text_.size() ? std::string("'") + text_[at] + "'" : std::string("end of input");
        fail(Errc::invalid_input, what_ + ": " + msg + " at column " + std::to_string(at + 1) + ", found " + found);
    }

    std::string_view text_;
    std::string what_;
    std::size_t pos_ = 0;
};

// Also accepts {"basis": [[...]]} or {"matrix": [[...]]}.
inline RatMatrix parse_matrix(std::string_view text, const std::string& what = "matrix") {
    std::size_t first = text.find_first_not_of(" \t\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object()) fail(Errc::invalid_input, what + ": malformed JSON object");
        for (const char* key : {"basis", "matrix"})
            if (j.contains(key)) {
                std::string rows = j[key].dump();
                return Parser(rows, what).matrix();
            }
        fail(Errc::invalid_input, what + ": JSON object needs a \"basis\" or \"matrix\" field");
    }
    return Parser(text, what).matrix();
}

inline std::vector<Rational> parse_vector(std::string_view text, const std::string& what = "vector") {
    return Parser(text, what).vector();
}

inline IntMatrix require_integer(const RatMatrix& m, const std::string& what) {
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) fail(Errc::invalid_input, what + " must have integer entries");
            a(i, j) = m(i, j).get_num();
        }
    return a;
}

// Ascending coefficient list "a0,a1,...".
inline IntPolynomial parse_polynomial(std::string_view text) {
    std::vector<Rational> v = parse_vector(text, "polynomial");
    std::vector<Integer> c;
    for (const auto& q : v) {
        if (q.get_den() != 1) fail(Errc::invalid_input, "polynomial coefficients must be integers");
        c.push_back(q.get_num());
    }
    IntPolynomial f(std::move(c));
    if (f.is_zero()) fail(Errc::zero_polynomial, "polynomial is zero");
    return f;
}

// Ambient of a command: a finitely generated group or Q^n.
struct Ambient {
    bool rational = false;
    FgAbGroup group;
    std::size_t dim = 0;  // for Q^n

    std::size_t dimension() const { return rational ? dim : group.dimension(); }
};

inline Integer json_integer(const nlohmann::json& j, const std::string& what) {
    if (j.is_string()) return parse_integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    fail(Errc::invalid_input, what + " must be an integer or a decimal string");
}

// "Z^2", "Z/4+Z^2", "Z/2 + Z/4", "Q^3", "0", or {"invariant_factors":[...],"free_rank":n}.
inline Ambient parse_ambient(std::string_view text) {
    std::string s(text);
    Ambient a;
    std::size_t first = s.find_first_not_of(" \t\n");
    if (first != std::string::npos && s[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(s);
        } catch (const nlohmann::json::parse_error& e) {
            fail(Errc::invalid_input, std::string("group JSON: ") + e.what());
        }
        if (!j.is_object()) fail(Errc::invalid_input, "group JSON must be an object");
        std::vector<Integer> factors;
        if (j.contains("invariant_factors")) {
            if (!j["invariant_factors"].is_array()) fail(Errc::invalid_input, "invariant_factors must be an array");
            for (const auto& d : j["invariant_factors"]) factors.push_back(json_integer(d, "invariant factor"));
        }
        Integer r = j.contains("free_rank") ? json_integer(j["free_rank"], "free_rank") : Integer(0);
        if (r < 0 || r > 1000) fail(Errc::invalid_input, "free_rank out of range");
        a.group = FgAbGroup(std::move(factors), r.get_ui());
        return a;
    }
    std::string compact;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    if (compact == "0") return a;
    if (!compact.empty() && compact[0] == 'Q') {
        a.rational = true;
        if (compact == "Q") a.dim = 1;
        else if (compact.size() > 2 && compact[1] == '^') a.dim = parse_integer(compact.substr(2)).get_ui();
        else fail(Errc::invalid_input, "group: expected Q or Q^n, got '" + s + "'");
        return a;
    }
    std::vector<Integer> factors;
    std::size_t free_rank = 0;
    std::size_t pos = 0;
    while (pos <= compact.size()) {
        std::size_t plus = compact.find('+', pos);
        std::string term = compact.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        if (term == "Z") {
            ++free_rank;
        } else if (term.rfind("Z^", 0) == 0) {
            free_rank += parse_integer(term.substr(2)).get_ui();
        } else if (term.rfind("Z/", 0) == 0) {
            Integer d = parse_integer(term.substr(2));
            if (d == 0) ++free_rank;
            else if (d != 1) factors.push_back(abs(d));
        } else {
            fail(Errc::invalid_input, "group: cannot read term '" + term + "' at column " + std::to_string(pos + 1));
        }
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    a.group = FgAbGroup(std::move(factors), free_rank);
    return a;
}

}  // namespace inertial::cli
