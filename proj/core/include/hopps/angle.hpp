#pragma once

#include <map>
#include <string>
#include <string_view>

namespace hopps {

/// Tolerance for comparing numeric rotation angles, in radians.
inline constexpr double kAngleEpsilon = 1e-9;

/// Rotation angle: a numeric constant plus a linear combination of named parameters.
///
/// A purely numeric angle has no symbols. Symbolic parts let one synthesized circuit be
/// re-bound to new parameter values, so they are compared by name and coefficient, never
/// by value. The constant is kept reduced to [0, 2*pi).
class Angle {
public:
    Angle() = default;
    Angle(double radians); // NOLINT(google-explicit-constructor): numeric literals are angles
    static Angle symbol(std::string name, double coefficient = 1.0);

    /// Parses a QASM-style linear expression: numbers, `pi`, identifiers, + - * / and parens.
    static Angle parse(std::string_view text);

    [[nodiscard]] double constant() const noexcept { return constant_; }
    [[nodiscard]] const std::map<std::string, double>& symbols() const noexcept { return symbols_; }
    [[nodiscard]] bool is_symbolic() const noexcept { return !symbols_.empty(); }

    /// Numeric angle equal to 0 mod 2*pi within epsilon.
    [[nodiscard]] bool is_zero(double epsilon = kAngleEpsilon) const;
    [[nodiscard]] bool approx_equal(const Angle& other, double epsilon = kAngleEpsilon) const;

    /// Value with every symbol bound through `bindings`; unbound symbols throw.
    [[nodiscard]] double evaluate(const std::map<std::string, double>& bindings = {}) const;

    Angle& operator+=(const Angle& other);
    friend Angle operator+(Angle lhs, const Angle& rhs) { return lhs += rhs; }
    Angle operator-() const;
    friend Angle operator-(Angle lhs, const Angle& rhs) { return lhs += -rhs; }

    /// Round-trippable text form, e.g. `0.5`, `gamma`, `2*gamma+0.25`.
    [[nodiscard]] std::string to_string() const;

private:
    void normalize();

    double constant_ = 0.0;
    std::map<std::string, double> symbols_;
};

/// Distance between two numeric angles on the circle.
double circular_distance(double a, double b);

} // namespace hopps
