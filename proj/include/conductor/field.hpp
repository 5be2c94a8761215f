#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "conductor/gf.hpp"
#include "conductor/rat.hpp"

namespace conductor {

struct InsufficientPrecision : std::runtime_error {
    explicit InsufficientPrecision(const std::string& what)
        : std::runtime_error("insufficient precision: " + what) {}
};

// Truncated Laurent series sum c_j pi^(j/e) over F_q, known below the cap
// N (in units of 1/e); everything from pi^(N/e) on is unknown.
class FieldElem {
public:
    using Terms = std::map<int64_t, GF::Elem>;
    static constexpr int64_t kExact = int64_t(1) << 60;

    FieldElem() = default;
    FieldElem(const GF* F, int64_t e, Terms terms, int64_t cap);

    static FieldElem zero(const GF* F, int64_t e = 1) { return FieldElem(F, e, {}, kExact); }
    static FieldElem constant(const GF* F, GF::Elem c, int64_t e = 1, int64_t cap = kExact);
    static FieldElem integer(const GF* F, int64_t n, int64_t e = 1, int64_t cap = kExact);
    // c * pi^v, v rational; e is raised to the denominator of v if needed.
    static FieldElem monomial(const GF* F, GF::Elem c, const Rat& v, int64_t e, int64_t cap = kExact);

    const GF* field() const { return F_; }
    int64_t e() const { return e_; }
    int64_t cap() const { return cap_; }
    bool exact() const { return cap_ >= kExact; }
    const Terms& terms() const { return terms_; }

    // True when no term is known (exact zero, or zero up to precision).
    bool is_unknown_or_zero() const { return terms_.empty(); }
    bool is_exact_zero() const { return terms_.empty() && exact(); }

    // Valuation as a rational, or nullopt when below precision.
    std::optional<Rat> valuation() const;
    // Lower bound for the valuation: the valuation if known, else cap/e.
    Rat valuation_lower_bound() const;
    // Cap as a rational valuation (may be huge for exact elements).
    Rat cap_valuation() const;
    // Coefficient of the leading term; requires a known leading term.
    GF::Elem leading_coeff() const;

    FieldElem lift(int64_t new_e) const;  // new_e must be a multiple of e
    FieldElem with_cap(int64_t cap) const;  // truncate to min(cap, current)

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    FieldElem inv() const;
    FieldElem pow(int64_t k) const;
    FieldElem scaled(GF::Elem c) const;

    // (sum c_j pi^(j/e))^(1/p) = sum c_j^(1/p) pi^(j/(pe)).
    FieldElem frobenius_root() const;

    // Same value regardless of representation e (caps compared too).
    friend bool operator==(const FieldElem& a, const FieldElem& b);

    // "1 + 2*pi^(1/2) + g^3*pi^2 + O(pi^64)"; exact elements omit the O-term.
    std::string str(bool show_cap = true) const;

private:
    void normalize();
    const GF* F_ = nullptr;
    int64_t e_ = 1;
    Terms terms_;
    int64_t cap_ = kExact;
};

// Series grammar for scenario documents:
//   series := term (('+'|'-') term)*
//   term   := [coef ['*']] ['pi' ['^' exp]] | coef
//   coef   := integer | 'g' ['^' integer]      (g = primitive element of F_q)
//   exp    := integer | integer '/' integer | '(' integer ['/' integer] ')'
// The element is created with ramification index e (raised to cover any
// exponent denominators) and cap N = prec in units of the requested 1/e, so
// the cap valuation prec/e is unchanged by the raise.
FieldElem parse_series(const std::string& s, const GF* F, int64_t e, int64_t prec);

}  // namespace conductor
