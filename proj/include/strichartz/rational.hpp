#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace strichartz {

// Exact rational scalar. Exponents are always stored as reciprocals, so
// q = inf is the ordinary value 0 and every region inequality stays affine
// with no infinity cases. Stored normalized (den > 0, gcd = 1); arithmetic
// and comparisons go through 128-bit intermediates, so nothing overflows
// until a reduced numerator or denominator itself exceeds 64 bits, and that
// throws instead of wrapping.
class Rat {
  public:
    Rat() = default;
    Rat(long long num) : n_(num) {}  // NOLINT: implicit by design, 3 == Rat(3)
    Rat(long long num, long long den) { *this = make(num, den); }

    long long numerator() const { return n_; }
    long long denominator() const { return d_; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return make(i128(a.n_) * b.d_ + i128(b.n_) * a.d_, i128(a.d_) * b.d_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return make(i128(a.n_) * b.d_ - i128(b.n_) * a.d_, i128(a.d_) * b.d_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make(i128(a.n_) * b.n_, i128(a.d_) * b.d_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        return make(i128(a.n_) * b.d_, i128(a.d_) * b.n_);
    }
    Rat operator-() const {
        Rat r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat&, const Rat&) = default;
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        i128 lhs = i128(a.n_) * b.d_, rhs = i128(b.n_) * a.d_;
        return lhs < rhs   ? std::strong_ordering::less
               : lhs > rhs ? std::strong_ordering::greater
                           : std::strong_ordering::equal;
    }

  private:
    using i128 = __int128;

    static i128 gcd128(i128 a, i128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static Rat make(i128 num, i128 den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        if (i128 g = gcd128(num, den); g > 1) {
            num /= g;
            den /= g;
        }
        constexpr i128 lo = std::numeric_limits<long long>::min();
        constexpr i128 hi = std::numeric_limits<long long>::max();
        if (num < lo || num > hi || den > hi)
            throw std::overflow_error("rational exceeds 64-bit storage");
        Rat r;
        r.n_ = static_cast<long long>(num);
        r.d_ = static_cast<long long>(den);
        return r;
    }

    long long n_ = 0, d_ = 1;
};

inline Rat abs(const Rat& x) { return x < Rat(0) ? -x : x; }

inline long long rat_floor(const Rat& x) {
    long long q = x.numerator() / x.denominator();
    if (x.numerator() % x.denominator() != 0 && x.numerator() < 0) --q;
    return q;
}

inline long long rat_ceil(const Rat& x) { return -rat_floor(-x); }

inline Rat pow2_rat(int k) {
    Rat r(1);
    for (int i = 0; i < k; ++i) r *= 2;
    for (int i = 0; i > k; --i) r /= 2;
    return r;
}

// smallest k with value <= 2^k, i.e. value in (2^(k-1), 2^k]; value must be > 0
inline int ceil_log2_rat(const Rat& value) {
    int k = 0;
    Rat pw(1);
    if (value <= 1) {
        while (value <= pw / 2) {
            pw /= 2;
            --k;
        }
    } else {
        while (value > pw) {
            pw *= 2;
            ++k;
        }
    }
    return k;
}

inline std::optional<long long> parse_ll(std::string_view s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// accepts "3/4", "-2", and "inf" (the reciprocal of an infinite exponent)
inline std::optional<Rat> parse_rational(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "inf") return Rat(0);
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_ll(s);
        if (!n) return std::nullopt;
        return Rat(*n);
    }
    auto n = parse_ll(s.substr(0, slash));
    auto d = parse_ll(s.substr(slash + 1));
    if (!n || !d || *d == 0) return std::nullopt;
    return Rat(*n, *d);
}

inline std::string format_rational(const Rat& x) {
    std::string s = std::to_string(x.numerator());
    if (x.denominator() != 1) s += "/" + std::to_string(x.denominator());
    return s;
}

inline double to_double(const Rat& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

inline std::string format_decimal(double x, int significant = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, x);
    return buf;
}

inline std::string format_decimal(const Rat& x, int significant = 12) {
    return format_decimal(to_double(x), significant);
}

}  // namespace strichartz
