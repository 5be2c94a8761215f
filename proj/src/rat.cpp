#include "conductor/rat.hpp"

#include <limits>

namespace conductor {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits64(__int128 v) {
    return v >= std::numeric_limits<int64_t>::min() && v <= std::numeric_limits<int64_t>::max();
}

}  // namespace

Rat::Rat(int64_t n, int64_t d) {
    *this = from_wide(n, d);
}

Rat Rat::from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0) d = 1;
    if (!fits64(n) || !fits64(d)) throw std::overflow_error("rational overflow");
    Rat r;
    r.num_ = int64_t(n);
    r.den_ = int64_t(d);
    return r;
}

int64_t Rat::floor() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
}

int64_t Rat::ceil() const {
    int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    if (den_ == o.den_) return *this = from_wide(__int128(num_) + o.num_, den_);
    return *this = from_wide(__int128(num_) * o.den_ + __int128(o.num_) * den_, __int128(den_) * o.den_);
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
    return *this = from_wide(__int128(num_) * o.num_, __int128(den_) * o.den_);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return *this = from_wide(__int128(num_) * o.den_, __int128(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    __int128 l = __int128(a.num_) * b.den_;
    __int128 r = __int128(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Rat::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            int64_t n = std::stoll(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return Rat(n);
        }
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        int64_t n = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        int64_t d = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return Rat(n, d);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational: \"" + s + "\"");
    }
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace conductor
