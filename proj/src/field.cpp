#include "conductor/field.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace conductor {

namespace {

int64_t sat_add(int64_t a, int64_t b) {
    if (a >= FieldElem::kExact || b >= FieldElem::kExact) return FieldElem::kExact;
    int64_t s = a + b;
    return s >= FieldElem::kExact ? FieldElem::kExact : s;
}

int64_t scale_cap(int64_t cap, int64_t k) {
    if (cap >= FieldElem::kExact) return cap;
    return cap * k;
}

void check_same_field(const FieldElem& a, const FieldElem& b) {
    if (a.field() != b.field()) throw std::invalid_argument("field elements over different residue fields");
}

}  // namespace

FieldElem::FieldElem(const GF* F, int64_t e, Terms terms, int64_t cap)
    : F_(F), e_(e), terms_(std::move(terms)), cap_(cap) {
    if (e_ < 1) throw std::invalid_argument("ramification index must be >= 1");
    normalize();
}

void FieldElem::normalize() {
    if (cap_ > kExact) cap_ = kExact;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0 || it->first >= cap_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

FieldElem FieldElem::constant(const GF* F, GF::Elem c, int64_t e, int64_t cap) {
    return FieldElem(F, e, {{0, c}}, cap);
}

FieldElem FieldElem::integer(const GF* F, int64_t n, int64_t e, int64_t cap) {
    return constant(F, F->from_int(n), e, cap);
}

FieldElem FieldElem::monomial(const GF* F, GF::Elem c, const Rat& v, int64_t e, int64_t cap) {
    int64_t k = v.den() / std::gcd(v.den(), e);
    int64_t ne = e * k;
    Rat j = v * Rat(ne);
    return FieldElem(F, ne, {{j.num(), c}}, scale_cap(cap, k));
}

std::optional<Rat> FieldElem::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return Rat(terms_.begin()->first, e_);
}

Rat FieldElem::valuation_lower_bound() const {
    if (auto v = valuation()) return *v;
    return cap_valuation();
}

Rat FieldElem::cap_valuation() const { return Rat(cap_, e_); }

GF::Elem FieldElem::leading_coeff() const {
    if (terms_.empty()) throw InsufficientPrecision("no known leading term");
    return terms_.begin()->second;
}

FieldElem FieldElem::lift(int64_t new_e) const {
    if (new_e % e_ != 0) throw std::invalid_argument("lift to a non-multiple ramification index");
    int64_t k = new_e / e_;
    if (k == 1) return *this;
    Terms t;
    for (auto& [j, c] : terms_) t[j * k] = c;
    return FieldElem(F_, new_e, std::move(t), scale_cap(cap_, k));
}

FieldElem FieldElem::with_cap(int64_t cap) const {
    return FieldElem(F_, e_, terms_, std::min(cap, cap_));
}

FieldElem FieldElem::operator-() const {
    Terms t;
    for (auto& [j, c] : terms_) t[j] = F_->neg(c);
    return FieldElem(F_, e_, std::move(t), cap_);
}

FieldElem operator+(const FieldElem& a0, const FieldElem& b0) {
    check_same_field(a0, b0);
    int64_t e = std::lcm(a0.e_, b0.e_);
    FieldElem a = a0.lift(e), b = b0.lift(e);
    int64_t cap = std::min(a.cap_, b.cap_);
    FieldElem::Terms t = a.terms_;
    for (auto& [j, c] : b.terms_) {
        auto it = t.find(j);
        if (it == t.end())
            t[j] = c;
        else
            it->second = a.F_->add(it->second, c);
    }
    return FieldElem(a.F_, e, std::move(t), cap);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a0, const FieldElem& b0) {
    check_same_field(a0, b0);
    int64_t e = std::lcm(a0.e_, b0.e_);
    FieldElem a = a0.lift(e), b = b0.lift(e);
    if (a.is_exact_zero() || b.is_exact_zero()) return FieldElem::zero(a.F_, e);
    int64_t va = a.terms_.empty() ? a.cap_ : a.terms_.begin()->first;
    int64_t vb = b.terms_.empty() ? b.cap_ : b.terms_.begin()->first;
    int64_t cap = std::min(sat_add(a.cap_, vb), sat_add(b.cap_, va));
    FieldElem::Terms t;
    for (auto& [i, c] : a.terms_)
        for (auto& [j, d] : b.terms_) {
            if (i + j >= cap) break;
            auto& slot = t[i + j];
            slot = a.F_->add(slot, a.F_->mul(c, d));
        }
    return FieldElem(a.F_, e, std::move(t), cap);
}

FieldElem FieldElem::scaled(GF::Elem c) const {
    if (c == 0) return zero(F_, e_);
    Terms t;
    for (auto& [j, d] : terms_) t[j] = F_->mul(c, d);
    return FieldElem(F_, e_, std::move(t), cap_);
}

FieldElem FieldElem::inv() const {
    if (terms_.empty()) throw InsufficientPrecision("inverse of an element with no known leading term");
    int64_t v = terms_.begin()->first;
    GF::Elem c0inv = F_->inv(terms_.begin()->second);
    if (terms_.size() == 1) {
        int64_t cap = exact() ? kExact : cap_ - 2 * v;
        return FieldElem(F_, e_, {{-v, c0inv}}, cap);
    }
    // Relative precision of the result equals that of the input; exact
    // multi-term inputs get 64 units of relative precision per e.
    int64_t rel = exact() ? 64 * e_ : cap_ - v;
    // x = c0 pi^v (1 + r); inverse = c0^-1 pi^-v sum (-r)^k.
    std::vector<GF::Elem> r(size_t(rel), 0);  // r[k] for exponent v+k
    for (auto& [j, c] : terms_)
        if (j - v < rel) r[size_t(j - v)] = F_->mul(c, c0inv);
    // Solve s * (1 + r) = 1 term by term.
    std::vector<GF::Elem> s(size_t(rel), 0);
    s[0] = 1;
    for (int64_t k = 1; k < rel; ++k) {
        GF::Elem acc = 0;
        for (int64_t i = 1; i <= k; ++i) {
            if (r[size_t(i)] == 0) continue;
            acc = F_->add(acc, F_->mul(r[size_t(i)], s[size_t(k - i)]));
        }
        s[size_t(k)] = F_->neg(acc);
    }
    Terms t;
    for (int64_t k = 0; k < rel; ++k)
        if (s[size_t(k)] != 0) t[k - v] = F_->mul(s[size_t(k)], c0inv);
    return FieldElem(F_, e_, std::move(t), rel - v);
}

FieldElem FieldElem::pow(int64_t k) const {
    if (k < 0) return inv().pow(-k);
    FieldElem result = integer(F_, 1, e_), base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

FieldElem FieldElem::frobenius_root() const {
    int64_t p = F_->p();
    Terms t;
    for (auto& [j, c] : terms_) t[j] = F_->frobenius_root(c);
    FieldElem r(F_, e_ * p, std::move(t), cap_);
    // Drop the extra ramification when every exponent allows it.
    bool divisible = r.exact() || r.cap_ % p == 0;
    for (auto& [j, c] : r.terms_) divisible = divisible && j % p == 0;
    if (!divisible) return r;
    Terms u;
    for (auto& [j, c] : r.terms_) u[j / p] = c;
    return FieldElem(F_, e_, std::move(u), r.exact() ? kExact : r.cap_ / p);
}

bool operator==(const FieldElem& a0, const FieldElem& b0) {
    if (a0.F_ != b0.F_) return false;
    int64_t e = std::lcm(a0.e_, b0.e_);
    FieldElem a = a0.lift(e), b = b0.lift(e);
    return a.cap_ == b.cap_ && a.terms_ == b.terms_;
}

namespace {

std::string pi_power(const Rat& v) {
    if (v.is_zero()) return "";
    if (v == Rat(1)) return "pi";
    if (v.is_integer()) return "pi^" + v.str();
    return "pi^(" + v.str() + ")";
}

}  // namespace

std::string FieldElem::str(bool show_cap) const {
    std::string out;
    for (auto& [j, c] : terms_) {
        if (!out.empty()) out += " + ";
        Rat v(j, e_);
        std::string pw = pi_power(v);
        std::string cs = F_->str(c);
        if (pw.empty())
            out += cs;
        else if (c == 1)
            out += pw;
        else
            out += cs + "*" + pw;
    }
    if (show_cap && !exact()) {
        if (!out.empty()) out += " + ";
        Rat cv = cap_valuation();
        std::string pw = pi_power(cv);
        out += "O(" + (pw.empty() ? std::string("1") : pw) + ")";
    }
    if (out.empty()) out = "0";
    return out;
}

// ---- parsing ---------------------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    bool eat_word(const char* w) {
        ws();
        size_t n = std::char_traits<char>::length(w);
        if (s.compare(i, n, w) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    bool at_digit() {
        ws();
        return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
    }
    int64_t integer() {
        ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        if (!at_digit()) fail("expected integer");
        int64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i++] - '0');
            if (v > (int64_t(1) << 40)) fail("integer too large");
        }
        return neg ? -v : v;
    }
    Rat exponent() {
        if (eat('(')) {
            Rat r = ratio();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        return ratio();
    }
    Rat ratio() {
        int64_t a = integer();
        if (eat('/')) return Rat(a, integer());
        return Rat(a);
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("bad series \"" + s + "\" at offset " + std::to_string(i) + ": " + msg);
    }
};

}  // namespace

FieldElem parse_series(const std::string& s, const GF* F, int64_t e, int64_t prec) {
    Lexer lx{s};
    struct Term {
        GF::Elem c;
        Rat v;
    };
    std::vector<Term> terms;
    bool first = true;
    for (;;) {
        lx.ws();
        if (lx.i >= s.size()) break;
        bool negate = false;
        if (!first) {
            if (lx.eat('-'))
                negate = true;
            else if (!lx.eat('+'))
                lx.fail("expected '+' or '-'");
        } else if (lx.eat('-')) {
            negate = true;
        }
        first = false;
        GF::Elem c = 1;
        bool have_coef = false;
        if (lx.at_digit()) {
            c = F->from_int(lx.integer());
            have_coef = true;
        } else if (lx.eat('g')) {
            int64_t k = 1;
            if (lx.eat('^')) k = lx.integer();
            c = F->gen_pow(k);
            have_coef = true;
        }
        Rat v(0);
        bool have_pi = false;
        if (have_coef) lx.eat('*');
        if (lx.eat_word("pi")) {
            have_pi = true;
            v = Rat(1);
            if (lx.eat('^')) v = lx.exponent();
        }
        if (!have_coef && !have_pi) lx.fail("expected a term");
        if (negate) c = F->neg(c);
        terms.push_back({c, v});
    }
    if (terms.empty()) lx.fail("empty series");
    int64_t ne = e;
    for (auto& t : terms) ne = std::lcm(ne, t.v.den());
    int64_t cap = prec >= FieldElem::kExact ? prec : prec * (ne / e);
    FieldElem acc = FieldElem(F, ne, {}, cap);
    for (auto& t : terms) {
        Rat j = t.v * Rat(ne);
        acc = acc + FieldElem(F, ne, {{j.num(), t.c}}, cap);
    }
    return acc;
}

}  // namespace conductor
