#include "shackled/fxp.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace shackled {

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = std::numeric_limits<std::int64_t>::min();

std::int64_t narrow(i128 v, const char* op) {
    if (v > kMax || v < kMin) {
        throw OverflowError(op);
    }
    return static_cast<std::int64_t>(v);
}

int bit_width(u128 n) {
    int bits = 0;
    while (n != 0) {
        n >>= 1;
        ++bits;
    }
    return bits;
}

// floor(sqrt(n)). Newton iteration from a power of two above the root; stops
// as soon as the estimate stops decreasing.
u128 isqrt(u128 n) {
    if (n < 2) {
        return n;
    }
    u128 x = u128{1} << ((bit_width(n) + 1) / 2);
    for (int i = 0; i < 64; ++i) {
        const u128 y = (x + n / x) / 2;
        if (y >= x) {
            break;
        }
        x = y;
    }
    return x;
}

u128 uabs(std::int64_t v) {
    return v < 0 ? static_cast<u128>(-static_cast<i128>(v)) : static_cast<u128>(v);
}

}  // namespace

Fx Fx::from_int(std::int64_t value) {
    return Fx{narrow(static_cast<i128>(value) * kScale, "from_int")};
}

Fx Fx::from_double(double value) {
    if (!std::isfinite(value)) {
        throw OverflowError("from_double of a non-finite value");
    }
    const long double scaled = static_cast<long double>(value) * kScale;
    if (scaled >= 9.2e18L || scaled <= -9.2e18L) {
        throw OverflowError("from_double");
    }
    return Fx{std::llroundl(scaled)};
}

Fx Fx::parse(std::string_view text) {
    const auto fail = [&] { return std::invalid_argument("not a decimal number: '" + std::string(text) + "'"); };
    if (text.empty()) {
        throw fail();
    }
    if (text.find_first_of("eE") != std::string_view::npos) {
        const std::string owned(text);
        char* end = nullptr;
        const double v = std::strtod(owned.c_str(), &end);
        if (end != owned.c_str() + owned.size()) {
            throw fail();
        }
        return from_double(v);
    }

    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    i128 int_part = 0;
    i128 frac = 0;
    int frac_digits = 0;
    bool round_up = false;
    bool any_digit = false;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c == '.') {
            if (seen_dot) {
                throw fail();
            }
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') {
            throw fail();
        }
        any_digit = true;
        const int d = c - '0';
        if (!seen_dot) {
            int_part = int_part * 10 + d;
            if (int_part > kMax) {
                throw OverflowError("parse");
            }
        } else if (frac_digits < 9) {
            frac = frac * 10 + d;
            ++frac_digits;
        } else if (frac_digits == 9) {
            round_up = d >= 5;
            ++frac_digits;
        }
    }
    if (!any_digit) {
        throw fail();
    }
    for (int i = std::min(frac_digits, 9); i < 9; ++i) {
        frac *= 10;
    }
    i128 magnitude = int_part * kScale + frac + (round_up ? 1 : 0);
    return Fx{narrow(negative ? -magnitude : magnitude, "parse")};
}

std::string Fx::to_string() const {
    const u128 mag = uabs(raw_);
    const auto whole = static_cast<std::uint64_t>(mag / kScale);
    auto frac = static_cast<std::uint64_t>(mag % kScale);
    std::string out = raw_ < 0 ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, 9 - digits.size(), '0');
        while (digits.back() == '0') {
            digits.pop_back();
        }
        out += '.';
        out += digits;
    }
    return out;
}

Fx operator+(Fx a, Fx b) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a.raw_, b.raw_, &r)) {
        throw OverflowError("add");
    }
    return Fx{r};
}

Fx operator-(Fx a, Fx b) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(a.raw_, b.raw_, &r)) {
        throw OverflowError("sub");
    }
    return Fx{r};
}

Fx operator-(Fx a) { return kFxZero - a; }
Fx operator*(Fx a, Fx b) { return fx_mul(a, b); }
Fx operator/(Fx a, Fx b) { return fx_div(a, b); }

Fx fx_mul(Fx a, Fx b) {
    const i128 product = static_cast<i128>(a.raw()) * b.raw();
    return Fx::from_raw(narrow(product / Fx::kScale, "mul"));
}

Fx fx_div(Fx a, Fx b) {
    if (b.raw() == 0) {
        throw DivisionByZero();
    }
    const i128 widened = static_cast<i128>(a.raw()) * Fx::kScale;
    return Fx::from_raw(narrow(widened / b.raw(), "div"));
}

Fx fx_sqrt(Fx a) {
    if (a.raw() < 0) {
        throw NegativeSqrt();
    }
    const u128 widened = static_cast<u128>(a.raw()) * Fx::kScale;
    return Fx::from_raw(static_cast<std::int64_t>(isqrt(widened)));
}

Fx fx_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw DivisionByZero();
    }
    return Fx::from_raw(narrow(static_cast<i128>(num) * Fx::kScale / den, "ratio"));
}

Fx fx_pow(Fx base, std::uint32_t exp) {
    Fx result = kFxOne;
    while (exp != 0) {
        if ((exp & 1U) != 0) {
            result = fx_mul(result, base);
        }
        exp >>= 1U;
        if (exp != 0) {
            base = fx_mul(base, base);
        }
    }
    return result;
}

Fx fx_abs(Fx a) { return a.raw() < 0 ? -a : a; }

Fx fx_clamp(Fx v, Fx lo, Fx hi) { return v < lo ? lo : (v > hi ? hi : v); }

std::int64_t fx_round(Fx a) {
    const std::int64_t half = Fx::kScale / 2;
    const std::int64_t q = a.raw() / Fx::kScale;
    const std::int64_t r = a.raw() % Fx::kScale;
    if (r >= half) {
        return q + 1;
    }
    if (r <= -half) {
        return q - 1;
    }
    return q;
}

std::int64_t fx_trunc(Fx a) { return a.raw() / Fx::kScale; }

Vec3Fx vec_add(const Vec3Fx& a, const Vec3Fx& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }

Vec3Fx vec_sub(const Vec3Fx& a, const Vec3Fx& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

Vec3Fx vec_scale(const Vec3Fx& a, Fx s) { return {fx_mul(a.x, s), fx_mul(a.y, s), fx_mul(a.z, s)}; }

Fx vec_dot(const Vec3Fx& a, const Vec3Fx& b) {
    return fx_mul(a.x, b.x) + fx_mul(a.y, b.y) + fx_mul(a.z, b.z);
}

Vec3Fx vec_cross(const Vec3Fx& a, const Vec3Fx& b) {
    return {
        fx_mul(a.y, b.z) - fx_mul(a.z, b.y),
        fx_mul(a.z, b.x) - fx_mul(a.x, b.z),
        fx_mul(a.x, b.y) - fx_mul(a.y, b.x),
    };
}

// Lengths are taken over the exact sum of squared raw values so that short
// vectors keep their precision.
Fx vec_length(const Vec3Fx& a) {
    const u128 sum = uabs(a.x.raw()) * uabs(a.x.raw()) + uabs(a.y.raw()) * uabs(a.y.raw()) +
                     uabs(a.z.raw()) * uabs(a.z.raw());
    const u128 len = isqrt(sum);
    if (len > static_cast<u128>(kMax)) {
        throw OverflowError("length");
    }
    return Fx::from_raw(static_cast<std::int64_t>(len));
}

Vec3Fx vec_normalize(const Vec3Fx& a) {
    i128 c[3] = {a.x.raw(), a.y.raw(), a.z.raw()};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) {
        throw ZeroVector();
    }
    // Scale short vectors up by exact powers of ten; direction is unchanged
    // and the root below then resolves well past one raw unit.
    auto largest = [&] {
        i128 m = 0;
        for (i128 v : c) {
            m = std::max(m, v < 0 ? -v : v);
        }
        return m;
    };
    while (largest() < Fx::kScale) {
        for (i128& v : c) {
            v *= 10;
        }
    }
    u128 sum = 0;
    for (i128 v : c) {
        const u128 m = static_cast<u128>(v < 0 ? -v : v);
        sum += m * m;
    }
    const auto len = static_cast<i128>(isqrt(sum));
    return {
        Fx::from_raw(narrow(c[0] * Fx::kScale / len, "normalize")),
        Fx::from_raw(narrow(c[1] * Fx::kScale / len, "normalize")),
        Fx::from_raw(narrow(c[2] * Fx::kScale / len, "normalize")),
    };
}

}  // namespace shackled
