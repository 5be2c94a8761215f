#pragma once

#include <map>
#include <string>

#include "conductor/field.hpp"

namespace conductor {

// Finite Laurent polynomial sum_i a_i xi^i with series coefficients.
// Coefficients that are zero up to precision stay stored: they carry the
// information that the coefficient is small but unknown.
class LaurentPoly {
public:
    using Coeffs = std::map<int64_t, FieldElem>;

    LaurentPoly() = default;
    LaurentPoly(const GF* F, Coeffs c);

    static LaurentPoly zero(const GF* F) { return LaurentPoly(F, {}); }
    static LaurentPoly constant(const FieldElem& c);
    static LaurentPoly monomial(const FieldElem& c, int64_t i);
    static LaurentPoly xi(const GF* F) { return monomial(FieldElem::integer(F, 1), 1); }

    const GF* field() const { return F_; }
    const Coeffs& coeffs() const { return c_; }
    bool empty() const { return c_.empty(); }
    // Lowest and highest stored exponent; requires nonempty.
    int64_t low() const { return c_.begin()->first; }
    int64_t high() const { return c_.rbegin()->first; }
    FieldElem coeff(int64_t i) const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly scaled(const FieldElem& c) const;
    LaurentPoly shifted(int64_t k) const;  // times xi^k
    LaurentPoly pow(int64_t k) const;      // k >= 0
    // d/dxi
    LaurentPoly derivative() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    // "{-1: 1, -3: pi^2}" style rendering, exponents ascending.
    // Cap terms are omitted when show_caps is false.
    std::string str(bool show_caps = true) const;

private:
    void normalize();
    const GF* F_ = nullptr;
    Coeffs c_;
};

}  // namespace conductor
