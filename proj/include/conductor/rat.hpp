#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace conductor {

// Exact rational with 64-bit parts; intermediates use 128 bits and
// overflow throws instead of wrapping.
class Rat {
public:
    Rat() = default;
    Rat(int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rat(int64_t n, int64_t d);

    int64_t num() const { return num_; }
    int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    // Largest integer <= *this / smallest integer >= *this.
    int64_t floor() const;
    int64_t ceil() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) = default;
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

    // "num/den", or "num" when den == 1.
    std::string str() const;
    // Accepts "a", "-a", "a/b".
    static Rat parse(const std::string& s);

    double to_double() const { return double(num_) / double(den_); }

private:
    static Rat from_wide(__int128 n, __int128 d);
    int64_t num_ = 0;
    int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

}  // namespace conductor

template <>
struct std::hash<conductor::Rat> {
    size_t operator()(const conductor::Rat& r) const noexcept {
        return std::hash<int64_t>()(r.num()) * 1000003u ^ std::hash<int64_t>()(r.den());
    }
};
