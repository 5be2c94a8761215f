#include "conductor/laurent.hpp"

#include <stdexcept>

namespace conductor {

LaurentPoly::LaurentPoly(const GF* F, Coeffs c) : F_(F), c_(std::move(c)) { normalize(); }

void LaurentPoly::normalize() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_exact_zero())
            it = c_.erase(it);
        else
            ++it;
    }
}

LaurentPoly LaurentPoly::constant(const FieldElem& c) { return monomial(c, 0); }

LaurentPoly LaurentPoly::monomial(const FieldElem& c, int64_t i) {
    return LaurentPoly(c.field(), {{i, c}});
}

FieldElem LaurentPoly::coeff(int64_t i) const {
    auto it = c_.find(i);
    if (it == c_.end()) return FieldElem::zero(F_);
    return it->second;
}

LaurentPoly LaurentPoly::operator-() const {
    Coeffs c;
    for (auto& [i, a] : c_) c.emplace(i, -a);
    return LaurentPoly(F_, std::move(c));
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    const GF* F = a.F_ ? a.F_ : b.F_;
    LaurentPoly::Coeffs c = a.c_;
    for (auto& [i, x] : b.c_) {
        auto it = c.find(i);
        if (it == c.end())
            c.emplace(i, x);
        else
            it->second = it->second + x;
    }
    return LaurentPoly(F, std::move(c));
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    const GF* F = a.F_ ? a.F_ : b.F_;
    LaurentPoly::Coeffs c;
    for (auto& [i, x] : a.c_)
        for (auto& [j, y] : b.c_) {
            FieldElem prod = x * y;
            auto it = c.find(i + j);
            if (it == c.end())
                c.emplace(i + j, prod);
            else
                it->second = it->second + prod;
        }
    return LaurentPoly(F, std::move(c));
}

LaurentPoly LaurentPoly::scaled(const FieldElem& s) const {
    Coeffs c;
    for (auto& [i, a] : c_) c.emplace(i, a * s);
    return LaurentPoly(F_ ? F_ : s.field(), std::move(c));
}

LaurentPoly LaurentPoly::shifted(int64_t k) const {
    Coeffs c;
    for (auto& [i, a] : c_) c.emplace(i + k, a);
    return LaurentPoly(F_, std::move(c));
}

LaurentPoly LaurentPoly::pow(int64_t k) const {
    if (k < 0) throw std::invalid_argument("negative power of a Laurent polynomial");
    LaurentPoly r = constant(FieldElem::integer(F_, 1));
    for (int64_t i = 0; i < k; ++i) r = r * *this;
    return r;
}

LaurentPoly LaurentPoly::derivative() const {
    Coeffs c;
    for (auto& [i, a] : c_) {
        FieldElem d = a * FieldElem::integer(F_, i);
        if (i != 0) c.emplace(i - 1, d);
    }
    return LaurentPoly(F_, std::move(c));
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

std::string LaurentPoly::str(bool show_caps) const {
    std::string out = "{";
    bool first = true;
    for (auto& [i, a] : c_) {
        if (!first) out += ", ";
        first = false;
        out += std::to_string(i) + ": " + a.str(show_caps);
    }
    return out + "}";
}

}  // namespace conductor
