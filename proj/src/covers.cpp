#include "conductor/covers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace conductor {

namespace {

LaurentPoly one_poly(const GF* F) { return LaurentPoly::constant(FieldElem::integer(F, 1)); }

std::vector<Rat> sorted_unique(std::vector<Rat> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_nonempty_interval(const Interval& iv) {
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("cover interval must satisfy r < r'");
}

}  // namespace

BaseField BaseField::make(int64_t q, int64_t e, int64_t precision) {
    auto [p, m] = prime_power(q);
    if (e < 1) throw std::invalid_argument("ramification index e must be >= 1");
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    BaseField b;
    b.p = p;
    b.q = q;
    b.e = e;
    b.precision = precision;
    b.F = GF::get(p, m);
    return b;
}

const char* kind_name(CoverKind k) {
    switch (k) {
        case CoverKind::Kummer: return "kummer";
        case CoverKind::ArtinSchreier: return "artin-schreier";
        case CoverKind::Compositum: return "compositum";
        case CoverKind::Monic: return "monic";
    }
    return "?";
}

LaurentPoly as_reduce(const LaurentPoly& g, int64_t p) {
    LaurentPoly out = LaurentPoly::zero(g.field());
    for (auto& [i, a] : g.coeffs()) {
        if (i == 0) continue;  // constants are Artin-Schreier trivial over a large enough extension
        int64_t k = i;
        FieldElem c = a;
        while (k % p == 0) {
            k /= p;
            c = c.frobenius_root();
        }
        out = out + LaurentPoly::monomial(c, k);
    }
    return out;
}

static UpRing::Var kummer_var_def(const GF* F, int64_t m, const LaurentPoly& u) {
    UpRing::Var v{m, std::vector<LaurentPoly>(size_t(m), LaurentPoly::zero(F))};
    v.rel[0] = u;
    return v;
}

static UpRing::Var as_var_def(const GF* F, int64_t p, const LaurentPoly& g_red) {
    UpRing::Var v{p, std::vector<LaurentPoly>(size_t(p), LaurentPoly::zero(F))};
    v.rel[0] = g_red;
    v.rel[1] = one_poly(F);
    return v;
}

static void check_kummer(const BaseField& b, int64_t m, const LaurentPoly& u) {
    if (m < 2) throw std::invalid_argument("Kummer degree m must be >= 2");
    if (m % b.p == 0) throw std::invalid_argument("Kummer degree m must be prime to p");
    if ((b.q - 1) % m != 0)
        throw std::invalid_argument("residue field too small: Kummer degree " + std::to_string(m) +
                                    " needs m | q-1; enlarge q");
    if (u.empty()) throw std::invalid_argument("Kummer u must be nonzero");
}

CoverSpec CoverSpec::kummer(const BaseField& b, int64_t m, const LaurentPoly& u, const Interval& iv) {
    check_kummer(b, m, u);
    require_nonempty_interval(iv);
    CoverSpec c;
    c.kind = CoverKind::Kummer;
    c.base = b;
    c.interval = iv;
    c.m = m;
    c.u = u;
    c.group = GroupDesc({m});
    c.abelian = true;
    c.ring = UpRing(b.F, {kummer_var_def(b.F, m, u)});
    c.kummer_var = 0;
    return c;
}

CoverSpec CoverSpec::artin_schreier(const BaseField& b, const LaurentPoly& g, const Interval& iv) {
    require_nonempty_interval(iv);
    CoverSpec c;
    c.kind = CoverKind::ArtinSchreier;
    c.base = b;
    c.interval = iv;
    c.g = g;
    c.g_red = as_reduce(g, b.p);
    c.group = GroupDesc({b.p});
    c.abelian = true;
    c.ring = UpRing(b.F, {as_var_def(b.F, b.p, c.g_red)});
    c.as_var = 0;
    return c;
}

CoverSpec CoverSpec::compositum(const BaseField& b, int64_t m, const LaurentPoly& u, const LaurentPoly& g,
                                const Interval& iv) {
    check_kummer(b, m, u);
    require_nonempty_interval(iv);
    CoverSpec c;
    c.kind = CoverKind::Compositum;
    c.base = b;
    c.interval = iv;
    c.m = m;
    c.u = u;
    c.g = g;
    c.g_red = as_reduce(g, b.p);
    c.group = GroupDesc({b.p, m});
    c.abelian = true;
    c.ring = UpRing(b.F, {kummer_var_def(b.F, m, u), as_var_def(b.F, b.p, c.g_red)});
    c.kummer_var = 0;
    c.as_var = 1;
    return c;
}

CoverSpec CoverSpec::monic(const BaseField& b, const std::vector<LaurentPoly>& coeffs, const Interval& iv) {
    require_nonempty_interval(iv);
    int64_t d = int64_t(coeffs.size());
    if (d < 1) throw std::invalid_argument("monic cover needs degree >= 1");
    CoverSpec c;
    c.kind = CoverKind::Monic;
    c.base = b;
    c.interval = iv;
    c.P = coeffs;
    UpRing::Var v{d, {}};
    for (auto& cj : coeffs) v.rel.push_back(-cj);
    c.ring = UpRing(b.F, {v});
    if (d == 1) {
        c.group = GroupDesc(std::vector<int64_t>{});
        c.abelian = true;
    } else {
        auto disc = defining_poly_disc(c);
        if (!disc || disc->empty()) throw std::invalid_argument("monic cover has zero discriminant");
    }
    return c;
}

CoverSpec CoverSpec::identity(const BaseField& b, const Interval& iv) {
    return monic(b, {-LaurentPoly::xi(b.F)}, iv);
}

CoverSpec CoverSpec::restricted(const Interval& iv) const {
    require_nonempty_interval(iv);
    CoverSpec c = *this;
    c.interval = iv;
    return c;
}

std::string CoverSpec::describe() const {
    std::ostringstream os;
    os << kind_name(kind);
    if (has_kummer()) os << " m=" << m << " u=" << u.str(false);
    if (has_as()) os << " g=" << g.str(false) << " g_red=" << g_red.str(false);
    if (kind == CoverKind::Monic) {
        os << " P=[";
        for (size_t j = 0; j < P.size(); ++j) os << (j ? ", " : "") << P[j].str(false);
        os << "]";
    }
    os << " on " << interval.str();
    return os.str();
}

// Group element -> (AS shift i, Kummer exponent j); absent parts are 0.
static std::pair<int64_t, int64_t> split_elem(const CoverSpec& c, int64_t sigma) {
    auto x = c.group.elem(sigma);
    switch (c.kind) {
        case CoverKind::Kummer: return {0, x[0]};
        case CoverKind::ArtinSchreier: return {x[0], 0};
        case CoverKind::Compositum: return {x[0], x[1]};
        case CoverKind::Monic: return {0, 0};
    }
    return {0, 0};
}

UpRing::Elem apply_automorphism(const CoverSpec& c, int64_t sigma, const UpRing::Elem& a) {
    if (!c.abelian) throw std::invalid_argument("automorphisms need an abelian cover kind");
    const GF* F = c.base.F;
    const UpRing& R = c.ring;
    auto [i, j] = split_elem(c, sigma);
    std::vector<UpRing::Elem> image;
    for (size_t v = 0; v < R.nvars(); ++v) image.push_back(R.var(v));
    if (c.has_kummer()) {
        GF::Elem z = F->pow(F->root_of_unity(c.m), j);
        image[size_t(c.kummer_var)] =
            R.scale(R.var(size_t(c.kummer_var)), LaurentPoly::constant(FieldElem::constant(F, z)));
    }
    if (c.has_as())
        image[size_t(c.as_var)] =
            R.add(R.var(size_t(c.as_var)), R.constant(LaurentPoly::constant(FieldElem::integer(F, i))));
    UpRing::Elem out;
    for (auto& [k, L] : a) {
        UpRing::Elem term = R.constant(L);
        for (size_t v = 0; v < k.size(); ++v)
            if (k[v]) term = R.mul(term, R.pow(image[v], k[v]));
        out = R.add(out, term);
    }
    return out;
}

CoverSpec quotient(const CoverSpec& c, const Subgroup& H) {
    if (!is_subgroup(c.group, H)) throw std::invalid_argument("H is not a subgroup");
    if (H.order() == 1) return c;
    if (H.order() == c.group.order()) return CoverSpec::identity(c.base, c.interval);
    int64_t hA = 0, hK = 0;
    for (int64_t s : H.elems) {
        auto [i, j] = split_elem(c, s);
        if (j == 0) ++hA;
        if (i == 0) ++hK;
    }
    if (hA * hK != H.order()) throw ModelError("subgroup is not a product of its Artin-Schreier and Kummer parts");
    switch (c.kind) {
        case CoverKind::Kummer: return CoverSpec::kummer(c.base, c.m / H.order(), c.u, c.interval);
        case CoverKind::ArtinSchreier: return CoverSpec::identity(c.base, c.interval);
        case CoverKind::Compositum: {
            int64_t mq = c.m / hK;
            bool keep_as = hA == 1;
            if (keep_as && mq > 1) return CoverSpec::compositum(c.base, mq, c.u, c.g, c.interval);
            if (keep_as) return CoverSpec::artin_schreier(c.base, c.g, c.interval);
            if (mq > 1) return CoverSpec::kummer(c.base, mq, c.u, c.interval);
            return CoverSpec::identity(c.base, c.interval);
        }
        case CoverKind::Monic: break;
    }
    throw std::invalid_argument("quotient needs an abelian cover kind");
}

// Single y-Newton slope certificate for a monic polynomial at radius t.
// Returns the achiever of the constant coefficient when certified.
static std::optional<int64_t> monic_certificate(const CoverSpec& c, const Rat& t) {
    int64_t d = int64_t(c.P.size());
    const LaurentPoly& c0 = c.P[0];
    if (c0.empty()) return std::nullopt;
    GaussPoint g0 = gauss_at(c0, t);
    if (g0.achievers.size() != 1) return std::nullopt;
    for (int64_t j = 1; j < d; ++j) {
        const LaurentPoly& cj = c.P[size_t(j)];
        if (cj.empty()) continue;
        GaussPoint gj = gauss_at(cj, t);
        if (!(gj.value > g0.value * Rat(d - j, d))) return std::nullopt;
    }
    int64_t i0 = g0.achievers[0];
    if (c.base.p > 0 && d % c.base.p == 0 && i0 % c.base.p == 0) return std::nullopt;
    return i0;
}

LocalStructure local_structure(const CoverSpec& c, const Rat& t) {
    LocalStructure ls;
    ls.t = t;
    if (c.kind == CoverKind::Monic) {
        int64_t d = int64_t(c.P.size());
        if (d == 1) return ls;
        auto i0 = monic_certificate(c, t);
        if (!i0) throw UnsupportedDecomposition("no single-slope certificate at t = " + t.str());
        if (std::gcd(d, std::abs(*i0)) != 1)
            throw UnsupportedDecomposition("fiber over t = " + t.str() + " is not a single component");
        ls.comp_degree = d;
        ls.wild = d % c.base.p == 0;
        return ls;
    }
    int64_t dK = 1, sK = 1, dA = 1, sA = 1;
    if (c.has_kummer()) {
        GaussPoint gp = gauss_at(c.u, t);
        if (gp.achievers.size() != 1) throw CriticalRadius("u has several dominant terms at t = " + t.str());
        int64_t i0 = gp.achievers[0];
        sK = std::gcd(c.m, std::abs(i0));
        dK = c.m / sK;
        if (sK > 1) {
            const GF* F = c.base.F;
            GF::Elem lead = c.u.coeff(i0).leading_coeff();
            int64_t q1 = c.base.q - 1;
            if (F->pow(lead, q1 / std::gcd(sK, q1)) != F->one())
                throw std::runtime_error("residue field too small: leading coefficient of u has no " +
                                         std::to_string(sK) + "-th root in F_" + std::to_string(c.base.q) +
                                         "; enlarge q");
        }
    }
    if (c.has_as()) {
        bool split = c.g_red.empty();
        if (!split) {
            GaussPoint gp = gauss_at(c.g_red, t);
            if (gp.value > Rat(0)) {
                split = true;
            } else if (gp.value == Rat(0)) {
                throw CriticalRadius("Artin-Schreier term has valuation 0 at t = " + t.str());
            } else if (gp.achievers.size() != 1) {
                throw CriticalRadius("Artin-Schreier term has several dominant terms at t = " + t.str());
            }
        }
        if (split) {
            sA = c.base.p;
        } else {
            dA = c.base.p;
            ls.wild = true;
        }
    }
    if (ls.wild && sK > 1)
        throw UnsupportedDecomposition("multi-orbit boundary fiber with wild ramification unsupported (t = " +
                                       t.str() + ")");
    ls.components = sK * sA;
    ls.comp_degree = dK * dA;
    return ls;
}

Frame frame_at(const CoverSpec& c, const Rat& t, int o) {
    LocalStructure ls = local_structure(c, t);
    if (ls.components != 1) throw ModelError("frame requested for a multi-component fiber at t = " + t.str());
    Frame fr;
    fr.t = t;
    fr.o = o;
    fr.index = c.degree();
    fr.alpha.resize(c.ring.nvars());
    fr.beta.resize(c.ring.nvars());
    auto set = [&](int var, const LaurentPoly& L, int64_t d) {
        GaussPoint gp = gauss_at(L, t);
        fr.alpha[size_t(var)] = gp.value / Rat(d);
        fr.beta[size_t(var)] = Rat(residue_order(gp, o), d);
    };
    if (c.has_kummer()) set(c.kummer_var, c.u, c.m);
    if (c.has_as()) set(c.as_var, c.g_red, c.base.p);
    if (c.kind == CoverKind::Monic) set(0, c.P[0], int64_t(c.P.size()));
    if (!frame_is_single_component(c.ring, fr)) throw ModelError("residue classes collide at t = " + t.str());
    return fr;
}

Uniformizer uniformizer(const CoverSpec& c, const Frame& fr) {
    const UpRing& R = c.ring;
    int64_t D = fr.index;
    std::optional<Uniformizer> found;
    UpRing::Key k(R.nvars(), 0);
    for (;;) {
        Rat s(0);
        for (size_t i = 0; i < k.size(); ++i) s += Rat(k[i]) * fr.beta[i];
        Rat sD = s * Rat(D);
        if (sD.den() != 1) throw ModelError("residue order not integral upstairs");
        int64_t rem = 1 - sD.num();
        if (rem % D == 0) {
            if (found) throw ModelError("uniformizer not unique");
            found = Uniformizer{k, fr.o * (rem / D)};
        }
        size_t i = 0;
        while (i < k.size() && ++k[i] == R.var_def(i).degree) k[i++] = 0;
        if (i == k.size()) break;
    }
    if (!found) throw ModelError("no monomial uniformizer at t = " + fr.t.str());
    return *found;
}

UpRing::Elem uniformizer_elem(const CoverSpec& c, const Uniformizer& u) {
    return c.ring.monomial(u.a, LaurentPoly::monomial(FieldElem::integer(c.base.F, 1), u.w));
}

namespace {

struct DlogParts {
    UpRing::Elem num, den;
};

// dlog eta / dlog xi = xi * num / den  (so dlog xi / dlog eta = den / (xi num)).
DlogParts dlog_parts(const CoverSpec& c, const Uniformizer& un) {
    const UpRing& R = c.ring;
    const GF* F = c.base.F;
    LaurentPoly xi = LaurentPoly::xi(F);
    size_t n = R.nvars();
    std::vector<UpRing::Elem> Pk(n);
    for (size_t k = 0; k < n; ++k) Pk[k] = R.mul(R.var(k), R.relation_dy(k));
    UpRing::Elem all = R.constant(one_poly(F));
    for (auto& x : Pk) all = R.mul(all, x);
    UpRing::Elem num = R.scale(all, LaurentPoly::constant(FieldElem::integer(F, un.w)));
    for (size_t i = 0; i < n; ++i) {
        if (un.a[i] == 0) continue;
        UpRing::Elem term = R.scale(R.relation_dxi(i), xi.scaled(FieldElem::integer(F, -un.a[i])));
        for (size_t k = 0; k < n; ++k)
            if (k != i) term = R.mul(term, Pk[k]);
        num = R.add(num, term);
    }
    return {num, R.scale(all, xi)};
}

}  // namespace

int64_t dlog_order(const CoverSpec& c, const Frame& fr, const Uniformizer& un) {
    DlogParts d = dlog_parts(c, un);
    if (is_zero(d.num)) throw ModelError("uniformizer has vanishing differential");
    UpVal vn = valuation(c.ring, d.num, fr), vd = valuation(c.ring, d.den, fr);
    Rat r = Rat(fr.index) * (vd.beta - Rat(fr.o) - vn.beta);
    if (r.den() != 1) throw ModelError("non-integral differential order");
    return r.num();
}

int64_t derivative_order(const CoverSpec& c, const Rat& t, const Rat& t_check) {
    Frame fr = frame_at(c, t, 1);
    Uniformizer un = uniformizer(c, fr);
    int64_t sigma = dlog_order(c, fr, un) + fr.index - 1;
    if (t_check != t) {
        Frame fr2 = frame_at(c, t_check, 1);
        Uniformizer un2 = uniformizer(c, fr2);
        if (un2.a != un.a || un2.w != un.w) throw ModelError("uniformizer changes inside a piece");
        DlogParts d = dlog_parts(c, un);
        UpRing::Elem eta = uniformizer_elem(c, un);
        auto A = [&](const Frame& f) {
            return valuation(c.ring, d.den, f).alpha - valuation(c.ring, d.num, f).alpha;
        };
        Rat de = valuation(c.ring, eta, fr2).alpha - valuation(c.ring, eta, fr).alpha;
        Rat dA = A(fr2) - A(fr) - de;
        if (de == Rat(0) || dA / de != Rat(sigma))
            throw ModelError("derivative order " + std::to_string(sigma) + " disagrees with the alpha slope " +
                             (de == Rat(0) ? std::string("?") : (dA / de).str()) + " near t = " + t.str());
    }
    return sigma;
}

int64_t boundary_disc_order(const CoverSpec& c, const Rat& t, Branch b) {
    LocalStructure ls = local_structure(c, t);
    if (ls.components > 1) return c.degree() - ls.components;  // tame components
    Frame fr = frame_at(c, t, orientation(b));
    Uniformizer un = uniformizer(c, fr);
    return dlog_order(c, fr, un) + c.degree() - 1;
}

namespace {

std::vector<Rat> gv_breaks(const LaurentPoly& L, const Interval& iv) {
    std::vector<Rat> out;
    if (L.empty()) return out;
    GaussValFun gv = gauss_val(L, iv);
    out = gv.fun.interior_breakpoints();
    for (size_t s = 1; s < gv.segments.size(); ++s) {
        Rat b = gv.segments[s].iv.lo;
        if (iv.contains_open(b)) out.push_back(b);
    }
    return out;
}

// Zeros of a PL function in the open domain.
std::vector<Rat> pl_zeros(const PLFun& f) {
    std::vector<Rat> out;
    auto& bp = f.breakpoints();
    auto& v = f.values();
    for (size_t i = 0; i < bp.size(); ++i) {
        if (v[i] == Rat(0)) out.push_back(bp[i]);
        if (i + 1 < bp.size() && ((v[i] < Rat(0) && v[i + 1] > Rat(0)) || (v[i] > Rat(0) && v[i + 1] < Rat(0))))
            out.push_back(bp[i] + (bp[i + 1] - bp[i]) * (-v[i]) / (v[i + 1] - v[i]));
    }
    return out;
}

std::string monic_signature(const CoverSpec& c, const LaurentPoly& disc, const Rat& t) {
    std::ostringstream os;
    for (auto& cj : c.P) {
        if (cj.empty()) {
            os << "|-";
            continue;
        }
        os << "|";
        for (auto a : gauss_at(cj, t).achievers) os << a << ",";
    }
    os << "#";
    for (auto a : gauss_at(disc, t).achievers) os << a << ",";
    os << (monic_certificate(c, t) ? "C" : "N");
    return os.str();
}

}  // namespace

std::vector<Rat> critical_radii(const CoverSpec& c) {
    const Interval& iv = c.interval;
    std::vector<Rat> out;
    if (c.has_kummer()) {
        auto b = gv_breaks(c.u, iv);
        out.insert(out.end(), b.begin(), b.end());
    }
    if (c.has_as() && !c.g_red.empty()) {
        GaussValFun gv = gauss_val(c.g_red, iv);
        PLFun f = pl_combine(PLOp::Max, gv.fun.scale(Rat(-1)), PLFun::constant(iv, Rat(0)));
        auto b = f.interior_breakpoints();
        out.insert(out.end(), b.begin(), b.end());
        for (auto& z : pl_zeros(gv.fun))
            if (iv.contains_open(z)) out.push_back(z);
    }
    if (c.kind == CoverKind::Monic && c.P.size() > 1) {
        int64_t d = int64_t(c.P.size());
        LaurentPoly disc = *defining_poly_disc(c);
        std::vector<Rat> cand;
        for (auto& cj : c.P) {
            auto b = gv_breaks(cj, iv);
            cand.insert(cand.end(), b.begin(), b.end());
        }
        auto b = gv_breaks(disc, iv);
        cand.insert(cand.end(), b.begin(), b.end());
        if (!c.P[0].empty()) {
            PLFun f0 = gauss_val(c.P[0], iv).fun;
            for (int64_t j = 1; j < d; ++j) {
                if (c.P[size_t(j)].empty()) continue;
                PLFun h = pl_combine(PLOp::Add, gauss_val(c.P[size_t(j)], iv).fun, f0.scale(Rat(j - d, d)));
                for (auto& z : pl_zeros(h))
                    if (iv.contains_open(z)) cand.push_back(z);
            }
        }
        cand = sorted_unique(cand);
        for (size_t k = 0; k < cand.size(); ++k) {
            Rat lo = k ? cand[k - 1] : iv.lo, hi = k + 1 < cand.size() ? cand[k + 1] : iv.hi;
            Rat l = (lo + cand[k]) / Rat(2), r = (cand[k] + hi) / Rat(2);
            if (monic_signature(c, disc, l) != monic_signature(c, disc, r)) out.push_back(cand[k]);
        }
    }
    std::vector<Rat> res;
    for (auto& r : sorted_unique(out))
        if (iv.contains_open(r)) res.push_back(r);
    return res;
}

std::vector<Rat> interior_samples(const Interval& iv, int k) {
    std::vector<Rat> out;
    for (int i = 1; i <= k; ++i) out.push_back(iv.lo + iv.length() * Rat(i, k + 1));
    return out;
}

std::vector<Interval> piece_intervals(const CoverSpec& c) {
    std::vector<Rat> pts{c.interval.lo};
    for (auto& r : critical_radii(c)) pts.push_back(r);
    pts.push_back(c.interval.hi);
    std::vector<Interval> out;
    for (size_t i = 0; i + 1 < pts.size(); ++i) out.push_back({pts[i], pts[i + 1]});
    return out;
}

int64_t AnnulusPiece::sigma_total() const {
    int64_t s = 0;
    for (auto& x : components) s += x.sigma;
    return s;
}

std::vector<AnnulusPiece> decompose(const CoverSpec& c) {
    std::vector<AnnulusPiece> out;
    for (const Interval& iv : piece_intervals(c)) {
        std::vector<Rat> ts = interior_samples(iv, 10);
        std::optional<AnnulusPiece> ref;
        for (size_t k = 0; k < ts.size(); ++k) {
            LocalStructure ls = local_structure(c, ts[k]);
            AnnulusPiece pc;
            pc.iv = iv;
            pc.delta_f = ls.components;
            pc.wild = ls.wild;
            if (ls.components == 1) {
                const Rat& other = ts[k + 1 < ts.size() ? k + 1 : k - 1];
                pc.components.push_back({ls.comp_degree, derivative_order(c, ts[k], other)});
            } else {
                for (int64_t j = 0; j < ls.components; ++j) pc.components.push_back({ls.comp_degree, ls.comp_degree - 1});
            }
            if (!ref) {
                ref = pc;
                continue;
            }
            bool same = ref->delta_f == pc.delta_f && ref->components.size() == pc.components.size();
            for (size_t j = 0; same && j < pc.components.size(); ++j)
                same = ref->components[j].degree == pc.components[j].degree &&
                       ref->components[j].sigma == pc.components[j].sigma;
            if (!same) throw ModelError("fiber structure varies inside piece " + iv.str() + " at t = " + ts[k].str());
        }
        int64_t sum = 0;
        for (auto& x : ref->components) sum += x.degree;
        if (sum != c.degree()) throw ModelError("component degrees do not add up to the cover degree");
        out.push_back(*ref);
    }
    return out;
}

std::optional<LaurentPoly> defining_poly_disc(const CoverSpec& c) {
    if (c.ring.nvars() != 1) return std::nullopt;
    return determinant(c.ring.mult_matrix(c.ring.relation_dy(0)), c.base.F);
}

bool lattice_applies(const CoverSpec& c, const Rat& t) {
    if (c.ring.nvars() != 1) return false;
    const UpRing::Var& v = c.ring.var_def(0);
    int64_t d = v.degree;
    if (d == 1) return true;
    const LaurentPoly& c0 = v.rel[0];
    if (c0.empty()) return false;
    GaussPoint g0 = gauss_at(c0, t);
    if (g0.achievers.size() != 1) return false;
    for (int64_t j = 1; j < d; ++j) {
        const LaurentPoly& cj = v.rel[size_t(j)];
        if (cj.empty()) continue;
        if (!(gauss_at(cj, t).value > g0.value * Rat(d - j, d))) return false;
    }
    return !(d % c.base.p == 0 && g0.achievers[0] % c.base.p == 0);
}

Rat lattice_disc_at(const CoverSpec& c, const Rat& t) {
    if (!lattice_applies(c, t)) throw std::invalid_argument("route inapplicable: lattice route needs a single Newton slope at t = " + t.str());
    int64_t d = c.ring.var_def(0).degree;
    if (d == 1) return Rat(0);
    LaurentPoly disc = *defining_poly_disc(c);
    Rat v0 = gauss_at(c.ring.var_def(0).rel[0], t).value;
    return gauss_at(disc, t).value - Rat(d - 1) * v0;
}

}  // namespace conductor
