#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "conductor/covers.hpp"

using namespace conductor;

namespace {
FieldElem fe(const BaseField& b, GF::Elem c, Rat v) { return FieldElem::monomial(b.F, c, v, b.e); }
LaurentPoly term(const BaseField& b, GF::Elem c, Rat v, int64_t i) { return LaurentPoly::monomial(fe(b, c, v), i); }
LaurentPoly xi_pow(const BaseField& b, int64_t i) { return term(b, 1, 0, i); }
LaurentPoly lone(const BaseField& b) { return xi_pow(b, 0); }

// -min(0, v_t(h)) from the monomials directly.
Rat envelope(const LaurentPoly& h, const Rat& t) {
    Rat best(0);
    for (auto& [i, a] : h.coeffs()) best = min(best, *a.valuation() + Rat(i) * t);
    return -best;
}

// Interior radii where the envelope changes slope: candidates are pairwise
// crossings and zeros of the monomial lines, kept when the slopes on both
// sides (by finite differences) differ.
std::vector<Rat> envelope_breaks(const LaurentPoly& h, const Interval& iv) {
    std::vector<std::pair<int64_t, Rat>> lines{{0, Rat(0)}};
    for (auto& [i, a] : h.coeffs()) lines.push_back({i, *a.valuation()});
    std::set<Rat> cand;
    for (size_t x = 0; x < lines.size(); ++x)
        for (size_t y = x + 1; y < lines.size(); ++y)
            if (lines[x].first != lines[y].first)
                cand.insert((lines[y].second - lines[x].second) / Rat(lines[x].first - lines[y].first));
    std::vector<Rat> out;
    Rat eps(1, 1000);
    for (auto& t : cand) {
        if (!iv.contains_open(t)) continue;
        Rat l = (envelope(h, t) - envelope(h, t - eps)) / eps, r = (envelope(h, t + eps) - envelope(h, t)) / eps;
        if (l != r) out.push_back(t);
    }
    return out;
}

bool reduced_form(const LaurentPoly& g, int64_t p) {
    for (auto& [i, a] : g.coeffs())
        if (i == 0 || i % p == 0) return false;
    return true;
}
}  // namespace

TEST_CASE("covers: Artin-Schreier reduction examples") {
    BaseField b2 = BaseField::make(2, 1, 64), b3 = BaseField::make(3, 1, 64);
    CHECK(as_reduce(xi_pow(b3, -3), 3) == xi_pow(b3, -1));
    CHECK(as_reduce(xi_pow(b2, -3), 2) == xi_pow(b2, -3));
    LaurentPoly g = xi_pow(b2, -4) + xi_pow(b2, -3);
    LaurentPoly r = as_reduce(g, 2);
    CHECK(r == xi_pow(b2, -3) + xi_pow(b2, -1));
    // Witness: g - r = h^2 - h with h = xi^-2 + xi^-1.
    LaurentPoly h = xi_pow(b2, -2) + xi_pow(b2, -1);
    CHECK(g - r == h.pow(2) - h);
    // Constants are dropped.
    CHECK(as_reduce(lone(b3) + xi_pow(b3, -1), 3) == xi_pow(b3, -1));
}

TEST_CASE("covers: Artin-Schreier reduction is a coset representative (property)") {
    std::mt19937_64 rng(53);
    for (int64_t q : {2, 3, 4, 5, 9}) {
        BaseField b = BaseField::make(q, 1, 64);
        int64_t p = b.p;
        for (int trial = 0; trial < 30; ++trial) {
            LaurentPoly g = LaurentPoly::zero(b.F);
            for (int k = 0; k < 4; ++k) {
                int64_t i = -int64_t(1 + rng() % 12);
                g = g + term(b, GF::Elem(1 + rng() % (q - 1)), Rat(int64_t(rng() % 5)), i);
            }
            if (g.empty()) continue;
            LaurentPoly r = as_reduce(g, p);
            CHECK(reduced_form(r, p));
            CHECK(as_reduce(r, p) == r);
            // Independent witness: peel p-divisible exponents one p-th root at a time.
            LaurentPoly rest = g, h = LaurentPoly::zero(b.F);
            for (;;) {
                std::optional<std::pair<int64_t, FieldElem>> hit;
                for (auto& [i, a] : rest.coeffs())
                    if (i % p == 0 && i != 0) hit = {i, a};
                if (!hit) break;
                LaurentPoly s = LaurentPoly::monomial(hit->second.frobenius_root(), hit->first / p);
                h = h + s;
                rest = rest - (s.pow(p) - s);
            }
            CHECK(g - r == h.pow(p) - h);
        }
    }
}

TEST_CASE("covers: factory validation") {
    BaseField b5 = BaseField::make(5, 1, 64), b3 = BaseField::make(3, 1, 64);
    Interval iv{0, 1};
    CHECK_THROWS_WITH(CoverSpec::kummer(b5, 3, xi_pow(b5, 1), iv), doctest::Contains("residue field too small"));
    CHECK_THROWS_WITH(CoverSpec::kummer(b3, 3, xi_pow(b3, 1), iv), doctest::Contains("prime to p"));
    CHECK_THROWS(CoverSpec::kummer(b5, 2, xi_pow(b5, 1), Interval{1, 1}));
    CHECK_THROWS_WITH(CoverSpec::monic(b5, {LaurentPoly::zero(b5.F), LaurentPoly::zero(b5.F)}, iv),
                      doctest::Contains("zero discriminant"));
    CoverSpec k = CoverSpec::kummer(b5, 4, xi_pow(b5, 1), iv);
    CHECK(k.degree() == 4);
    CHECK(k.group == GroupDesc({4}));
    CoverSpec c = CoverSpec::compositum(b5, 2, xi_pow(b5, 1), xi_pow(b5, -1), iv);
    CHECK(c.degree() == 10);
    CHECK(c.group == GroupDesc({5, 2}));
    CHECK(CoverSpec::identity(b5, iv).is_identity());
}

TEST_CASE("covers: critical radii examples") {
    BaseField b2 = BaseField::make(2, 1, 64), b3 = BaseField::make(3, 1, 64), b7 = BaseField::make(7, 1, 64);
    for (int64_t n : {1, 3, 5})
        CHECK(critical_radii(CoverSpec::artin_schreier(b2, xi_pow(b2, -n), {Rat(1, 10), 3})).empty());
    LaurentPoly g = xi_pow(b2, -1) + term(b2, 1, 2, -3);
    CHECK(critical_radii(CoverSpec::artin_schreier(b2, g, {0, 2})) == std::vector<Rat>{1});
    CHECK(critical_radii(CoverSpec::kummer(b3, 2, xi_pow(b3, 1), {0, 1})).empty());
    CHECK(critical_radii(CoverSpec::kummer(b7, 3, xi_pow(b7, 1) - term(b7, 1, 1, 0), {0, 2})) ==
          std::vector<Rat>{1});
}

TEST_CASE("covers: Artin-Schreier critical radii match the envelope oracle (property)") {
    std::mt19937_64 rng(59);
    for (int64_t q : {2, 3, 5}) {
        BaseField b = BaseField::make(q, 2, 64);
        for (int trial = 0; trial < 25; ++trial) {
            LaurentPoly g = LaurentPoly::zero(b.F);
            std::set<int64_t> used;
            for (int k = 0; k < 3; ++k) {
                int64_t i = -int64_t(1 + rng() % 7);
                if (i % q == 0 || !used.insert(i).second) continue;
                g = g + term(b, 1, Rat(int64_t(rng() % 9) - 2, 2), i);
            }
            if (g.empty()) continue;
            Rat lo(int64_t(rng() % 5), 4);
            Interval iv{lo, lo + Rat(1 + int64_t(rng() % 8), 2)};
            CAPTURE(g.str());
            CAPTURE(iv.str());
            CHECK(critical_radii(CoverSpec::artin_schreier(b, g, iv)) == envelope_breaks(g, iv));
        }
    }
}

TEST_CASE("covers: Kummer with a monomial unit has no critical radius (property)") {
    BaseField b = BaseField::make(13, 1, 64);
    for (int64_t m : {2, 3, 4, 6, 12})
        for (int64_t i : {-5, -1, 1, 2, 7})
            for (GF::Elem c : {1u, 2u, 6u})
                CHECK(critical_radii(CoverSpec::kummer(b, m, term(b, c, Rat(i + 3), i), {-2, 3})).empty());
}

TEST_CASE("covers: decomposition examples") {
    BaseField b7 = BaseField::make(7, 1, 64);
    for (int64_t m : {2, 3, 6}) {
        auto d = decompose(CoverSpec::kummer(b7, m, xi_pow(b7, 1), {0, 2}));
        REQUIRE(d.size() == 1);
        REQUIRE(d[0].components.size() == 1);
        CHECK(d[0].components[0].degree == m);
        CHECK(d[0].components[0].sigma == m - 1);
        CHECK(d[0].delta_f == 1);
        CHECK_FALSE(d[0].wild);
    }
    for (int64_t p : {2, 3, 5}) {
        BaseField b = BaseField::make(p, 1, 64);
        for (int64_t n : {1, 2, 7}) {
            if (n % p == 0) continue;
            auto d = decompose(CoverSpec::artin_schreier(b, xi_pow(b, -n), {Rat(1, 10), 3}));
            REQUIRE(d.size() == 1);
            REQUIRE(d[0].components.size() == 1);
            CHECK(d[0].components[0].degree == p);
            CHECK(d[0].components[0].sigma == (p - 1) * (n + 1));
            CHECK(d[0].delta_f == 1);
            CHECK(d[0].wild);
        }
    }
    auto id = decompose(CoverSpec::identity(b7, {0, 1}));
    REQUIRE(id.size() == 1);
    CHECK(id[0].components[0].degree == 1);
    CHECK(id[0].components[0].sigma == 0);
    CHECK(id[0].delta_f == 1);
}

TEST_CASE("covers: split fibers") {
    // y^2 = xi^2 (1 + pi xi^-1): residue is a square, two components.
    BaseField b = BaseField::make(5, 1, 64);
    auto d = decompose(CoverSpec::kummer(b, 4, term(b, 1, 0, 2), {0, 1}));
    REQUIRE(d.size() == 1);
    CHECK(d[0].delta_f == 2);
    int64_t sum = 0;
    for (auto& c : d[0].components) sum += c.degree;
    CHECK(sum == 4);
    // Artin-Schreier with positive valuation: p components of degree one.
    auto a = decompose(CoverSpec::artin_schreier(b, term(b, 1, 2, -1), {0, 1}));
    REQUIRE(a.size() == 1);
    CHECK(a[0].delta_f == 5);
}

TEST_CASE("covers: unsupported and critical situations are rejected") {
    BaseField b3 = BaseField::make(3, 1, 64);
    // Two y-slopes: (y - xi)(y - pi).
    LaurentPoly x = xi_pow(b3, 1), pi = term(b3, 1, 1, 0);
    CoverSpec two = CoverSpec::monic(b3, {x * pi, -(x + pi)}, {0, 2});
    CHECK_THROWS_AS(decompose(two), UnsupportedDecomposition);
    // Wild Artin-Schreier part over a Kummer part with a split residue.
    CoverSpec comp = CoverSpec::compositum(b3, 2, xi_pow(b3, 2), xi_pow(b3, -1), {0, 1});
    CHECK_THROWS_AS(decompose(comp), UnsupportedDecomposition);
    CoverSpec as = CoverSpec::artin_schreier(b3, xi_pow(b3, -1) + term(b3, 1, 2, -2), {0, 3});
    CHECK_THROWS_AS(local_structure(as, Rat(2)), CriticalRadius);
}

TEST_CASE("covers: automorphisms form a group action by ring maps (property)") {
    BaseField b = BaseField::make(7, 1, 64);
    CoverSpec c = CoverSpec::compositum(b, 3, xi_pow(b, 1), xi_pow(b, -1), {Rat(1, 2), 2});
    const UpRing& R = c.ring;
    std::mt19937_64 rng(61);
    auto rnd = [&] {
        UpRing::Elem a = R.zero();
        for (int k = 0; k < 3; ++k)
            a = R.add(a, R.monomial({int64_t(rng() % 3), int64_t(rng() % 7)},
                                    term(b, GF::Elem(1 + rng() % 6), Rat(int64_t(rng() % 3)), int64_t(rng() % 5) - 2)));
        return a;
    };
    int64_t n = c.group.order();
    for (int trial = 0; trial < 10; ++trial) {
        auto x = rnd(), y = rnd();
        int64_t s = int64_t(rng() % n), t = int64_t(rng() % n);
        CHECK(apply_automorphism(c, s, apply_automorphism(c, t, x)) == apply_automorphism(c, c.group.add(s, t), x));
        CHECK(apply_automorphism(c, s, R.mul(x, y)) == R.mul(apply_automorphism(c, s, x), apply_automorphism(c, s, y)));
        CHECK(apply_automorphism(c, 0, x) == x);
    }
    // The defining relations are preserved.
    for (int64_t s = 0; s < n; ++s) {
        auto yk = apply_automorphism(c, s, R.var(size_t(c.kummer_var)));
        CHECK(R.pow(yk, 3) == R.constant(c.u));
        auto ya = apply_automorphism(c, s, R.var(size_t(c.as_var)));
        CHECK(R.sub(R.pow(ya, 7), ya) == R.constant(c.g_red));
    }
}

TEST_CASE("covers: quotients") {
    BaseField b = BaseField::make(7, 1, 64);
    CoverSpec c = CoverSpec::compositum(b, 3, xi_pow(b, 1), xi_pow(b, -1), {Rat(1, 2), 2});
    for (auto& H : subgroups(c.group)) {
        CoverSpec qc = quotient(c, H);
        CHECK(qc.degree() * H.order() == c.degree());
    }
    CoverSpec k = CoverSpec::kummer(b, 6, xi_pow(b, 1), {0, 1});
    CoverSpec k2 = quotient(k, Subgroup{{0, 2, 4}});
    CHECK(k2.kind == CoverKind::Kummer);
    CHECK(k2.m == 2);
}

TEST_CASE("covers: uniformizer and derivative order for Kummer covers") {
    BaseField b = BaseField::make(7, 1, 64);
    CoverSpec c = CoverSpec::kummer(b, 3, xi_pow(b, 1), {0, 2});
    Frame fr = frame_at(c, Rat(1), 1);
    CHECK(fr.index == 3);
    Uniformizer un = uniformizer(c, fr);
    CHECK(un.a == UpRing::Key{1});
    CHECK(un.w == 0);
    CHECK(derivative_order(c, Rat(1, 2), Rat(3, 2)) == 2);
    // y^3 = xi: the defining polynomial is monogenic and unramified in the lattice sense.
    CHECK(lattice_applies(c, Rat(1)));
    CHECK(lattice_disc_at(c, Rat(1)) == Rat(0));
}

TEST_CASE("covers: sample radii lie strictly inside") {
    Interval iv{Rat(1, 3), Rat(2)};
    auto s = interior_samples(iv, 7);
    CHECK(s.size() == 7);
    for (auto& t : s) CHECK(iv.contains_open(t));
    CHECK(std::is_sorted(s.begin(), s.end()));
}

TEST_CASE("covers: restriction keeps the equations") {
    BaseField b = BaseField::make(5, 1, 64);
    CoverSpec c = CoverSpec::artin_schreier(b, xi_pow(b, -2), {0, 3});
    CoverSpec r = c.restricted({1, 2});
    CHECK(r.interval == Interval{1, 2});
    CHECK(r.g_red == c.g_red);
    CHECK(r.describe().find("[1, 2]") != std::string::npos);
}
