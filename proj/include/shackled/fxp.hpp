#pragma once

// Signed fixed-point arithmetic at scale 10^9.
//
// Every value in the pipeline is an integer count of 10^-9 units. Products and
// quotients go through a 128-bit intermediate and truncate toward zero, the
// same way integer division behaves on the EVM. Any result that does not fit
// in 64 bits raises OverflowError instead of wrapping.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shackled {

class FxError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public FxError {
public:
    explicit OverflowError(const std::string& what) : FxError("fixed-point overflow: " + what) {}
};

class DivisionByZero : public FxError {
public:
    DivisionByZero() : FxError("fixed-point division by zero") {}
};

class NegativeSqrt : public FxError {
public:
    NegativeSqrt() : FxError("square root of a negative fixed-point value") {}
};

class ZeroVector : public FxError {
public:
    ZeroVector() : FxError("cannot normalize the zero vector") {}
};

class Fx {
public:
    static constexpr std::int64_t kScale = 1'000'000'000;

    constexpr Fx() = default;

    static constexpr Fx from_raw(std::int64_t raw) { return Fx{raw}; }
    static Fx from_int(std::int64_t value);
    // Rounds half away from zero. Only for boundaries with floating-point
    // inputs (tests, presets); the pipeline itself never touches doubles.
    static Fx from_double(double value);
    // Exact decimal parse ("-1.25", "3", "0.000000001"). Digits beyond the
    // ninth fractional place round half away from zero. Exponent notation is
    // accepted and goes through from_double.
    static Fx parse(std::string_view text);

    constexpr std::int64_t raw() const { return raw_; }
    double to_double() const { return static_cast<double>(raw_) / static_cast<double>(kScale); }
    // Shortest exact decimal form; parse(to_string()) is the identity.
    std::string to_string() const;

    constexpr auto operator<=>(const Fx&) const = default;

    friend Fx operator+(Fx a, Fx b);
    friend Fx operator-(Fx a, Fx b);
    friend Fx operator-(Fx a);
    friend Fx operator*(Fx a, Fx b);
    friend Fx operator/(Fx a, Fx b);

    Fx& operator+=(Fx b) { return *this = *this + b; }
    Fx& operator-=(Fx b) { return *this = *this - b; }

private:
    constexpr explicit Fx(std::int64_t raw) : raw_(raw) {}
    std::int64_t raw_ = 0;
};

inline constexpr Fx kFxZero = Fx::from_raw(0);
inline constexpr Fx kFxOne = Fx::from_raw(Fx::kScale);

/// (a * b) / 10^9, truncated toward zero.
Fx fx_mul(Fx a, Fx b);
/// (a * 10^9) / b, truncated toward zero.
Fx fx_div(Fx a, Fx b);
/// Largest r with r.raw^2 <= a.raw * 10^9.
Fx fx_sqrt(Fx a);
/// num / den as a fixed-point value (num * 10^9 / den, truncated).
Fx fx_ratio(std::int64_t num, std::int64_t den);
/// base^exp by repeated squaring.
Fx fx_pow(Fx base, std::uint32_t exp);

Fx fx_abs(Fx a);
Fx fx_clamp(Fx v, Fx lo, Fx hi);

std::int64_t fx_round(Fx a);  // half away from zero
std::int64_t fx_trunc(Fx a);  // toward zero

struct Vec3Fx {
    Fx x;
    Fx y;
    Fx z;

    constexpr bool operator==(const Vec3Fx&) const = default;
};

Vec3Fx vec_add(const Vec3Fx& a, const Vec3Fx& b);
Vec3Fx vec_sub(const Vec3Fx& a, const Vec3Fx& b);
Vec3Fx vec_scale(const Vec3Fx& a, Fx s);
Fx vec_dot(const Vec3Fx& a, const Vec3Fx& b);
Vec3Fx vec_cross(const Vec3Fx& a, const Vec3Fx& b);
Fx vec_length(const Vec3Fx& a);
/// Throws ZeroVector for the zero vector.
Vec3Fx vec_normalize(const Vec3Fx& a);

}  // namespace shackled
