// Copyright 2026 The fscalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fscalc {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// combined through 128-bit intermediates; any result that overflows escalates
/// to an arbitrary-precision representation. The representation is canonical:
/// a value that fits in 64 bits is never stored in the big form, so equality
/// can compare fields.
class Rat {
public:
    using BigRat = boost::multiprecision::cpp_rational;
    using BigInt = boost::multiprecision::cpp_int;

    Rat() = default;
    Rat(std::int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit from integers
    Rat(std::int64_t num, std::int64_t den) { assign_wide(num, den); }

    static Rat from_big(const BigRat& v) {
        Rat r;
        r.assign_big(v);
        return r;
    }

    /// Parses `a`, `-a`, or `a/b` (decimal integers of any size).
    static Rat parse(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
        if (text.empty()) throw bad();
        auto slash = text.find('/');
        auto num_txt = text.substr(0, slash);
        auto den_txt = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
        auto valid_int = [](std::string_view t, bool allow_sign) {
            std::size_t i = 0;
            if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) ++i;
            if (i >= t.size()) return false;
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') return false;
            return true;
        };
        if (!valid_int(num_txt, true) || !valid_int(den_txt, false)) throw bad();
        std::string n(num_txt);
        if (n[0] == '+') n.erase(0, 1);
        BigInt num(n);
        BigInt den{std::string(den_txt)};
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return from_big(BigRat(num, den));
    }

    bool is_big() const { return static_cast<bool>(big_); }

    BigRat to_big() const { return big_ ? *big_ : BigRat(BigInt(num_), BigInt(den_)); }

    BigInt numerator() const { return big_ ? boost::multiprecision::numerator(*big_) : BigInt(num_); }
    BigInt denominator() const { return big_ ? boost::multiprecision::denominator(*big_) : BigInt(den_); }

    bool is_integer() const { return !big_ ? den_ == 1 : denominator() == 1; }

    int sign() const {
        if (!big_) return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
        return big_->sign();
    }

    /// Largest integer not exceeding the value. Throws if it does not fit in 64 bits.
    std::int64_t floor() const {
        if (!big_) {
            auto q = num_ / den_;
            if (num_ % den_ != 0 && num_ < 0) --q;
            return q;
        }
        BigInt n = numerator(), d = denominator();
        BigInt q = n / d;
        if (n % d != 0 && n < 0) --q;
        if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min())
            throw std::overflow_error("Rat::floor out of 64-bit range");
        return static_cast<std::int64_t>(q);
    }

    std::string str() const {
        if (!big_) return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
        auto d = denominator();
        return d == 1 ? numerator().str() : numerator().str() + "/" + d.str();
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.fast() && b.fast()) {
            Wide n = Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_;
            Wide d = Wide(a.den_) * b.den_;
            Rat r;
            r.assign_wide(n, d);
            return r;
        }
        return from_big(a.to_big() + b.to_big());
    }
    friend Rat operator-(const Rat& a) {
        if (!a.big_ && a.num_ != std::numeric_limits<std::int64_t>::min()) {
            Rat r;
            r.num_ = -a.num_;
            r.den_ = a.den_;
            return r;
        }
        return from_big(-a.to_big());
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        if (a.fast() && b.fast()) {
            Wide n = Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_;
            Wide d = Wide(a.den_) * b.den_;
            Rat r;
            r.assign_wide(n, d);
            return r;
        }
        return from_big(a.to_big() - b.to_big());
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.fast() && b.fast()) {
            Rat r;
            r.assign_wide(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
            return r;
        }
        return from_big(a.to_big() * b.to_big());
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.sign() == 0) throw std::domain_error("division by zero");
        if (a.fast() && b.fast()) {
            Rat r;
            r.assign_wide(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
            return r;
        }
        return from_big(a.to_big() / b.to_big());
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // canonical form: a small value is never stored big
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.fast() && b.fast()) {
            Wide l = Wide(a.num_) * b.den_;
            Wide r = Wide(b.num_) * a.den_;
            return l <=> r;
        }
        auto l = a.to_big(), r = b.to_big();
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    using Wide = __int128;
    using UWide = unsigned __int128;

    // Both operands below 2^62 in magnitude keep every 128-bit intermediate exact.
    bool fast() const {
        constexpr std::int64_t lim = std::int64_t(1) << 62;
        return !big_ && num_ < lim && num_ > -lim && den_ < lim;
    }

    static UWide wide_gcd(UWide a, UWide b) {
        while (b != 0) {
            UWide t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static bool fits64(Wide v) {
        return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
    }

    static BigInt to_bigint(Wide v) {
        bool neg = v < 0;
        UWide mag = neg ? UWide(0) - UWide(v) : UWide(v);
        BigInt out = BigInt(static_cast<std::uint64_t>(mag >> 64));
        out <<= 64;
        out += BigInt(static_cast<std::uint64_t>(mag));
        return neg ? BigInt(-out) : out;
    }

    void assign_wide(Wide n, Wide d) {
        if (d == 0) throw std::domain_error("zero denominator");
        // |INT128_MIN| is not representable; such inputs cannot arise from 64-bit operands
        // except through products that we route below.
        if (n == std::numeric_limits<Wide>::min() || d == std::numeric_limits<Wide>::min()) {
            assign_big(BigRat(to_bigint(n), to_bigint(d)));
            return;
        }
        if (d < 0) {
            n = -n;
            d = -d;
        }
        UWide g = wide_gcd(n < 0 ? UWide(-n) : UWide(n), UWide(d));
        if (g > 1) {
            n /= Wide(g);
            d /= Wide(g);
        }
        if (fits64(n) && fits64(d)) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
        } else {
            num_ = 0;
            den_ = 1;
            big_ = std::make_shared<const BigRat>(to_bigint(n), to_bigint(d));
        }
    }

    void assign_big(const BigRat& v) {
        const auto& n = boost::multiprecision::numerator(v);
        const auto& d = boost::multiprecision::denominator(v);
        constexpr auto lo = std::numeric_limits<std::int64_t>::min();
        constexpr auto hi = std::numeric_limits<std::int64_t>::max();
        if (n >= lo && n <= hi && d <= hi) {
            num_ = static_cast<std::int64_t>(n);
            den_ = static_cast<std::int64_t>(d);
            big_.reset();
        } else {
            num_ = 0;
            den_ = 1;
            big_ = std::make_shared<const BigRat>(v);
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const BigRat> big_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// x₊ = max(x, 0).
inline Rat pos_part(const Rat& x) { return x.sign() > 0 ? x : Rat(0); }
/// x₋ = max(−x, 0).
inline Rat neg_part(const Rat& x) { return x.sign() < 0 ? -x : Rat(0); }

/// Smallest integer not below the value.
inline std::int64_t ceil(const Rat& r) { return -(-r).floor(); }

}  // namespace fscalc
