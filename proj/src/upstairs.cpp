#include "conductor/upstairs.hpp"

#include <algorithm>
#include <numeric>

namespace conductor {

UpRing::UpRing(const GF* F, std::vector<Var> vars) : F_(F), vars_(std::move(vars)) {
    for (auto& v : vars_)
        if (v.degree < 1 || int64_t(v.rel.size()) != v.degree) throw std::invalid_argument("bad upstairs relation");
}

int64_t UpRing::rank() const {
    int64_t r = 1;
    for (auto& v : vars_) r *= v.degree;
    return r;
}

bool is_zero(const UpRing::Elem& a) { return a.empty(); }

namespace {

void add_into(UpRing::Elem& acc, const UpRing::Key& k, const LaurentPoly& c) {
    if (c.empty()) return;
    auto it = acc.find(k);
    if (it == acc.end()) {
        acc.emplace(k, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.empty()) acc.erase(it);
}

}  // namespace

UpRing::Elem UpRing::reduce(Elem a) const {
    for (;;) {
        bool changed = false;
        Elem out;
        for (auto& [k, c] : a) {
            size_t i = 0;
            while (i < vars_.size() && k[i] < vars_[i].degree) ++i;
            if (i == vars_.size()) {
                add_into(out, k, c);
                continue;
            }
            changed = true;
            const Var& v = vars_[i];
            for (int64_t j = 0; j < v.degree; ++j) {
                if (v.rel[size_t(j)].empty()) continue;
                Key nk = k;
                nk[i] = k[i] - v.degree + j;
                add_into(out, nk, c * v.rel[size_t(j)]);
            }
        }
        a = std::move(out);
        if (!changed) return a;
    }
}

UpRing::Elem UpRing::constant(const LaurentPoly& c) const {
    Elem e;
    add_into(e, Key(vars_.size(), 0), c);
    return e;
}

UpRing::Elem UpRing::monomial(const Key& exps, const LaurentPoly& c) const {
    Elem e;
    add_into(e, exps, c);
    return reduce(std::move(e));
}

UpRing::Elem UpRing::var(size_t i) const {
    Key k(vars_.size(), 0);
    k[i] = 1;
    return monomial(k, LaurentPoly::constant(FieldElem::integer(F_, 1)));
}

UpRing::Elem UpRing::add(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (auto& [k, c] : b) add_into(out, k, c);
    return out;
}

UpRing::Elem UpRing::sub(const Elem& a, const Elem& b) const {
    Elem out = a;
    for (auto& [k, c] : b) add_into(out, k, -c);
    return out;
}

UpRing::Elem UpRing::mul(const Elem& a, const Elem& b) const {
    Elem out;
    for (auto& [ka, ca] : a)
        for (auto& [kb, cb] : b) {
            Key k(ka.size());
            for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
            add_into(out, k, ca * cb);
        }
    return reduce(std::move(out));
}

UpRing::Elem UpRing::scale(const Elem& a, const LaurentPoly& c) const {
    Elem out;
    for (auto& [k, x] : a) add_into(out, k, x * c);
    return out;
}

UpRing::Elem UpRing::pow(const Elem& a, int64_t k) const {
    Elem r = constant(LaurentPoly::constant(FieldElem::integer(F_, 1)));
    for (int64_t i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

UpRing::Elem UpRing::relation_dy(size_t i) const {
    const Var& v = vars_[i];
    Key k(vars_.size(), 0);
    Elem out;
    k[i] = v.degree - 1;
    add_into(out, k, LaurentPoly::constant(FieldElem::integer(F_, v.degree)));
    for (int64_t j = 1; j < v.degree; ++j) {
        k[i] = j - 1;
        add_into(out, k, -v.rel[size_t(j)].scaled(FieldElem::integer(F_, j)));
    }
    return out;
}

UpRing::Elem UpRing::relation_dxi(size_t i) const {
    const Var& v = vars_[i];
    Key k(vars_.size(), 0);
    Elem out;
    for (int64_t j = 0; j < v.degree; ++j) {
        k[i] = j;
        add_into(out, k, -v.rel[size_t(j)].derivative());
    }
    return out;
}

std::vector<std::vector<LaurentPoly>> UpRing::mult_matrix(const Elem& a) const {
    if (vars_.size() != 1) throw std::invalid_argument("multiplication matrix needs a single variable");
    int64_t d = vars_[0].degree;
    std::vector<std::vector<LaurentPoly>> M(size_t(d), std::vector<LaurentPoly>(size_t(d), LaurentPoly::zero(F_)));
    for (int64_t col = 0; col < d; ++col) {
        Elem prod = mul(a, monomial({col}, LaurentPoly::constant(FieldElem::integer(F_, 1))));
        for (auto& [k, c] : prod) M[size_t(k[0])][size_t(col)] = c;
    }
    return M;
}

bool frame_is_single_component(const UpRing& R, const Frame& fr) {
    // Enumerate the monomial box and compare beta classes modulo Z.
    std::vector<Rat> classes;
    UpRing::Key k(R.nvars(), 0);
    for (;;) {
        Rat b(0);
        for (size_t i = 0; i < k.size(); ++i) b += Rat(k[i]) * fr.beta[i];
        classes.push_back(b - Rat(b.floor()));
        size_t i = 0;
        while (i < k.size() && ++k[i] == R.var_def(i).degree) k[i++] = 0;
        if (i == k.size()) break;
    }
    std::sort(classes.begin(), classes.end());
    return std::adjacent_find(classes.begin(), classes.end()) == classes.end() && int64_t(classes.size()) == fr.index;
}

namespace {

// Lower bound for v_t of a Laurent polynomial none of whose coefficients is known.
Rat unknown_bound(const LaurentPoly& L, const Rat& t) {
    Rat best;
    bool first = true;
    for (auto& [i, a] : L.coeffs()) {
        Rat b = a.valuation_lower_bound() + Rat(i) * t;
        if (first || b < best) best = b;
        first = false;
    }
    return best;
}

bool has_known(const LaurentPoly& L) {
    for (auto& [i, a] : L.coeffs())
        if (a.valuation()) return true;
    return false;
}

}  // namespace

UpVal valuation(const UpRing& R, const UpRing::Elem& a, const Frame& fr) {
    if (a.empty()) throw ModelError("valuation of zero upstairs element");
    struct Cand {
        Rat alpha, beta;
    };
    std::vector<Cand> known;
    std::vector<Rat> bounds;
    for (auto& [k, L] : a) {
        Rat shift(0), bshift(0);
        for (size_t i = 0; i < k.size(); ++i) {
            shift += Rat(k[i]) * fr.alpha[i];
            bshift += Rat(k[i]) * fr.beta[i];
        }
        if (!has_known(L)) {
            bounds.push_back(unknown_bound(L, fr.t) + shift);
            continue;
        }
        GaussPoint g = gauss_at(L, fr.t);
        known.push_back({g.value + shift, Rat(residue_order(g, fr.o)) + bshift});
    }
    if (known.empty()) throw InsufficientPrecision("upstairs element has no known coefficient");
    Rat amin = known[0].alpha;
    for (auto& c : known) amin = min(amin, c.alpha);
    for (auto& b : bounds)
        if (!(b > amin)) throw InsufficientPrecision("unknown upstairs coefficient may reach the minimum at t = " + fr.t.str());
    std::vector<Rat> betas;
    for (auto& c : known)
        if (c.alpha == amin) betas.push_back(c.beta);
    std::sort(betas.begin(), betas.end());
    if (std::adjacent_find(betas.begin(), betas.end()) != betas.end())
        throw ModelError("two leading upstairs terms share a residue order at t = " + fr.t.str());
    (void)R;
    return {amin, betas.front()};
}

LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& M, const GF* F) {
    size_t n = M.size();
    if (n == 0) return LaurentPoly::constant(FieldElem::integer(F, 1));
    if (n > 20) throw std::invalid_argument("determinant too large");
    std::vector<LaurentPoly> dp(size_t(1) << n, LaurentPoly::zero(F));
    std::vector<bool> seen(size_t(1) << n, false);
    dp[0] = LaurentPoly::constant(FieldElem::integer(F, 1));
    seen[0] = true;
    FieldElem minus = FieldElem::integer(F, -1);
    for (size_t mask = 0; mask < dp.size(); ++mask) {
        if (!seen[mask] || dp[mask].empty()) continue;
        size_t row = size_t(__builtin_popcountll(mask));
        if (row == n) continue;
        for (size_t c = 0; c < n; ++c) {
            if (mask & (size_t(1) << c)) continue;
            if (M[row][c].empty()) continue;
            LaurentPoly term = dp[mask] * M[row][c];
            if (__builtin_popcountll(mask >> (c + 1)) % 2) term = term.scaled(minus);
            size_t nm = mask | (size_t(1) << c);
            dp[nm] = dp[nm] + term;
            seen[nm] = true;
        }
    }
    return dp.back();
}

}  // namespace conductor
