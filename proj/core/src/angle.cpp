#include "hopps/angle.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "hopps/error.hpp"

namespace hopps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// Unreduced linear expression used while parsing; reduction only happens at the end so
// that scaling (e.g. `gamma/2`, `-pi/4`) stays exact.
struct Linear {
    double constant = 0.0;
    std::map<std::string, double> coeffs;

    [[nodiscard]] bool is_constant() const { return coeffs.empty(); }
    Linear& add(const Linear& o, double sign) {
        constant += sign * o.constant;
        for (const auto& [k, v] : o.coeffs) coeffs[k] += sign * v;
        return *this;
    }
    Linear& scale(double f) {
        constant *= f;
        for (auto& [k, v] : coeffs) v *= f;
        return *this;
    }
};

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Linear parse() {
        Linear value = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character in angle expression");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + ": '" + std::string(text_) + "'", 0, 0);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Linear expression() {
        Linear lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs.add(term(), 1.0);
            } else if (accept('-')) {
                lhs.add(term(), -1.0);
            } else {
                return lhs;
            }
        }
    }

    Linear term() {
        Linear lhs = unary();
        for (;;) {
            if (accept('*')) {
                Linear rhs = unary();
                if (lhs.is_constant()) {
                    rhs.scale(lhs.constant);
                    lhs = rhs;
                } else if (rhs.is_constant()) {
                    lhs.scale(rhs.constant);
                } else {
                    fail("angle expression is not linear in its parameters");
                }
            } else if (accept('/')) {
                Linear rhs = unary();
                if (!rhs.is_constant() || rhs.constant == 0.0) fail("division by a non-constant or zero");
                lhs.scale(1.0 / rhs.constant);
            } else {
                return lhs;
            }
        }
    }

    Linear unary() {
        if (accept('-')) return unary().scale(-1.0);
        if (accept('+')) return unary();
        return primary();
    }

    Linear primary() {
        skip_space();
        if (accept('(')) {
            Linear inner = expression();
            if (!accept(')')) fail("missing ')'");
            return inner;
        }
        if (pos_ >= text_.size()) fail("unexpected end of angle expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::string rest(text_.substr(pos_));
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(rest, &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos_ += used;
            return Linear{v, {}};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name(text_.substr(start, pos_ - start));
            if (name == "pi") return Linear{std::numbers::pi, {}};
            Linear sym;
            sym.coeffs[name] = 1.0;
            return sym;
        }
        fail("unexpected character in angle expression");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

double circular_distance(double a, double b) {
    const double d = reduce(a - b);
    return std::min(d, kTwoPi - d);
}

Angle::Angle(double radians) : constant_(reduce(radians)) {}

Angle Angle::symbol(std::string name, double coefficient) {
    Angle a;
    a.symbols_[std::move(name)] = coefficient;
    a.normalize();
    return a;
}

Angle Angle::parse(std::string_view text) {
    const Linear lin = ExprParser(text).parse();
    Angle a(lin.constant);
    a.symbols_ = lin.coeffs;
    a.normalize();
    return a;
}

void Angle::normalize() {
    constant_ = reduce(constant_);
    for (auto it = symbols_.begin(); it != symbols_.end();) {
        if (std::abs(it->second) < kAngleEpsilon) {
            it = symbols_.erase(it);
        } else {
            ++it;
        }
    }
}

bool Angle::is_zero(double epsilon) const {
    return symbols_.empty() && circular_distance(constant_, 0.0) < epsilon;
}

bool Angle::approx_equal(const Angle& other, double epsilon) const {
    if (symbols_.size() != other.symbols_.size()) return false;
    for (const auto& [name, coeff] : symbols_) {
        auto it = other.symbols_.find(name);
        if (it == other.symbols_.end() || std::abs(it->second - coeff) >= epsilon) return false;
    }
    return circular_distance(constant_, other.constant_) < epsilon;
}

double Angle::evaluate(const std::map<std::string, double>& bindings) const {
    double v = constant_;
    for (const auto& [name, coeff] : symbols_) {
        auto it = bindings.find(name);
        if (it == bindings.end()) throw ValidationError("unbound angle parameter '" + name + "'");
        v += coeff * it->second;
    }
    return v;
}

Angle& Angle::operator+=(const Angle& other) {
    constant_ += other.constant_;
    for (const auto& [name, coeff] : other.symbols_) symbols_[name] += coeff;
    normalize();
    return *this;
}

Angle Angle::operator-() const {
    Angle out;
    out.constant_ = -constant_;
    for (const auto& [name, coeff] : symbols_) out.symbols_[name] = -coeff;
    out.normalize();
    return out;
}

std::string Angle::to_string() const {
    std::string s;
    for (const auto& [name, coeff] : symbols_) {
        std::string piece;
        if (coeff == 1.0) {
            piece = name;
        } else if (coeff == -1.0) {
            piece = "-" + name;
        } else {
            piece = format_number(coeff) + "*" + name;
        }
        if (!s.empty() && piece.front() != '-') s += "+";
        s += piece;
    }
    if (s.empty()) return format_number(constant_);
    if (constant_ != 0.0) s += "+" + format_number(constant_);
    return s;
}

} // namespace hopps
