#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "conductor/ramify.hpp"

using namespace conductor;

namespace {
LaurentPoly term(const BaseField& b, GF::Elem c, Rat v, int64_t i) {
    return LaurentPoly::monomial(FieldElem::monomial(b.F, c, v, b.e), i);
}
LaurentPoly xi_pow(const BaseField& b, int64_t i) { return term(b, 1, 0, i); }

std::vector<Rat> grid(const Interval& iv, int k) {
    std::vector<Rat> out;
    for (int j = 0; j <= k; ++j) out.push_back(iv.lo + iv.length() * Rat(j, k));
    return out;
}

bool all_pass(const ConductorReport& r) {
    for (auto& c : r.checks)
        if (!c.passed()) {
            MESSAGE(c.name << ": " << c.lhs << " vs " << c.rhs << " " << c.detail);
            return false;
        }
    return true;
}

const Check* find_check(const ConductorReport& r, const std::string& name) {
    for (auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}
}  // namespace

TEST_CASE("ramify: tame Kummer covers have vanishing conductors") {
    BaseField b = BaseField::make(7, 1, 64);
    for (int64_t m : {2, 3, 6}) {
        Ramify R(CoverSpec::kummer(b, m, xi_pow(b, 1), {0, 2}));
        CHECK(R.artin_classfun(Rat(1, 2)).is_zero());
        CHECK(R.swan_beta_classfun({Rat(1, 3), Rat(3, 2)}).is_zero());
        CHECK(R.discriminant_fun(DiscRoute::Pairing) == PLFun::constant({0, 2}, 0));
        CHECK(R.discriminant_fun(DiscRoute::Lattice) == PLFun::constant({0, 2}, 0));
        for (auto& chi : characters(R.cover().group)) {
            CHECK(R.swan_as(chi) == PLFun::constant({0, 2}, 0));
            ConductorReport rep = R.conductor_battery(chi);
            CHECK(all_pass(rep));
        }
        NearbyCyclesLedger L = R.nearby_cycles();
        REQUIRE(L.lhs_sum.has_value());
        CHECK(*L.lhs_sum == 0);
        CHECK(L.rhs == 0);
        CHECK(L.sigma == m - 1);
    }
}

TEST_CASE("ramify: Artin-Schreier closed forms") {
    for (int64_t p : {2, 3, 5}) {
        BaseField b = BaseField::make(p, 1, 64);
        for (int64_t n : {1, 2, 3, 7}) {
            if (n % p == 0) continue;
            CAPTURE(p);
            CAPTURE(n);
            Interval iv{Rat(1, 10), 3};
            Ramify R(CoverSpec::artin_schreier(b, xi_pow(b, -n), iv));
            auto chars = characters(R.cover().group);
            CHECK(pairing_rational(R.artin_classfun(Rat(1)), chars[1]) == Rat(n));
            CHECK(R.discriminant_fun() == PLFun::affine(iv, (p - 1) * n, 0));
            CHECK(R.discriminant_fun(DiscRoute::Lattice) == PLFun::affine(iv, (p - 1) * n, 0));
            for (size_t a = 1; a < chars.size(); ++a) {
                CHECK(R.swan_as(chars[a]) == PLFun::affine(iv, n, 0));
                CHECK(R.phi_s(chars[a], Rat(1, 2)) == Rat(n));
                CHECK(pairing_rational(R.swan_beta_classfun({Rat(1, 2), 2}), chars[a]) == Rat(0));
                CHECK(all_pass(R.conductor_battery(chars[a])));
            }
            CHECK(R.swan_as(chars[0]) == PLFun::constant(iv, 0));
            CHECK(R.phi_s(chars[0], Rat(1)) == Rat(0));
            CHECK(R.discriminant_slope_check().passed());
            CHECK(R.discvar_check().passed());
            CHECK(R.route_agreement_check().passed());
            for (auto& c : R.subgroup_battery()) CHECK(c.passed());
        }
    }
}

TEST_CASE("ramify: two-term Artin-Schreier cover") {
    BaseField b = BaseField::make(2, 1, 64);
    LaurentPoly g = xi_pow(b, -1) + term(b, 1, 2, -3);
    Interval iv{Rat(1, 10), 2};
    Ramify R(CoverSpec::artin_schreier(b, g, iv));
    CHECK(R.critical() == std::vector<Rat>{1});
    ClassFun chi = characters(R.cover().group)[1];
    PLFun sw = R.swan_as(chi);
    CHECK(sw == pl_combine(PLOp::Max, PLFun::affine(iv, 1, 0), PLFun::affine(iv, 3, -2)));
    CHECK(R.phi_s(chi, Rat(1, 2)) == Rat(1));
    CHECK(R.phi_s(chi, Rat(3, 2)) == Rat(3));
    CHECK_THROWS_AS(R.artin_classfun(Rat(1)), CriticalRadius);
    CHECK_THROWS_AS(R.phi_s(chi, Rat(1)), CriticalRadius);
    ConductorReport rep = R.conductor_battery(chi);
    CHECK(all_pass(rep));
    REQUIRE(rep.critical_limits.size() == 1);
    CHECK(rep.critical_limits[0].left == rep.critical_limits[0].right);
    const Check* sd = find_check(rep, "slope-difference");
    REQUIRE(sd != nullptr);
    CHECK(sd->status == "pass");
}

TEST_CASE("ramify: identity cover") {
    BaseField b = BaseField::make(3, 1, 64);
    Ramify R(CoverSpec::identity(b, {0, 1}));
    CHECK(R.artin_classfun(Rat(1, 2)).is_zero());
    CHECK(R.swan_beta_classfun({Rat(1, 4), Rat(3, 4)}).is_zero());
    CHECK(R.discriminant_fun() == PLFun::constant({0, 1}, 0));
    ClassFun one = trivial_character(R.cover().group);
    CHECK(all_pass(R.conductor_battery(one)));
    NearbyCyclesLedger L = R.nearby_cycles();
    REQUIRE(L.lhs_sum.has_value());
    CHECK(*L.lhs_sum == L.rhs);
}

TEST_CASE("ramify: error paths") {
    BaseField b = BaseField::make(3, 1, 64);
    LaurentPoly x = xi_pow(b, 1);
    Ramify M(CoverSpec::monic(b, {-x, LaurentPoly::zero(b.F)}, {0, 1}));  // y^2 = xi
    CHECK_THROWS(M.artin_classfun(Rat(1, 2)));
    CHECK(M.discriminant_fun() == PLFun::constant({0, 1}, 0));
    CHECK_THROWS_WITH(M.disc_at(Rat(1, 2), DiscRoute::Pairing), doctest::Contains("abelian"));
    Ramify C(CoverSpec::compositum(b, 2, x, xi_pow(b, -1), {Rat(1, 2), 2}));
    CHECK_THROWS_WITH(C.disc_at(Rat(1), DiscRoute::Lattice), doctest::Contains("route inapplicable"));
    Ramify A(CoverSpec::artin_schreier(b, xi_pow(b, -1), {Rat(1, 2), 2}));
    CHECK_THROWS(A.swan_beta_classfun({Rat(1), Rat(1)}));
}

TEST_CASE("ramify: generator model differences") {
    BaseField b = BaseField::make(3, 1, 64);
    CoverSpec c = CoverSpec::artin_schreier(b, xi_pow(b, -2), {Rat(1, 2), 2});
    GeneratorModel g = generator_model(c, Rat(1), Branch::Outer);
    CHECK_FALSE(g.split);
    REQUIRE(g.diffs.size() == 2);
    // sw = 2t; for Z/3 the pairing with a nontrivial character is -a(sigma) = |G| v^alpha,
    // so v^alpha(sigma(b)/b - 1) = 2t/3.
    for (auto& d : g.diffs) CHECK(d.alpha == Rat(2, 3));
}

TEST_CASE("ramify: random Artin-Schreier covers against the envelope oracle (property)") {
    std::mt19937_64 rng(67);
    for (int64_t q : {2, 3, 4, 5, 9}) {
        BaseField b = BaseField::make(q, 2, 128);
        int64_t p = b.p;
        for (int trial = 0; trial < 12; ++trial) {
            // Distinct reduced exponents, so the oracle need not combine coefficients.
            std::set<int64_t> reduced;
            LaurentPoly g = LaurentPoly::zero(b.F);
            std::vector<std::pair<int64_t, Rat>> lines;  // (reduced exponent, reduced valuation)
            for (int k = 0; k < 3; ++k) {
                int64_t i = -int64_t(1 + rng() % 8), ir = i;
                Rat v(int64_t(rng() % 9) - 2, 2), vr = v;
                while (ir % p == 0) {
                    ir /= p;
                    vr = vr / Rat(p);
                }
                if (!reduced.insert(ir).second) continue;
                g = g + term(b, GF::Elem(1 + rng() % (q - 1)), v, i);
                lines.push_back({ir, vr});
            }
            Rat lo(1 + int64_t(rng() % 4), 4);
            Interval iv{lo, lo + Rat(1 + int64_t(rng() % 8), 2)};
            auto oracle = [&](const Rat& t) {
                Rat best(0);
                for (auto& [i, v] : lines) best = max(best, -(v + Rat(i) * t));
                return best;
            };
            CAPTURE(g.str());
            CAPTURE(iv.str());
            Ramify R(CoverSpec::artin_schreier(b, g, iv));
            auto chars = characters(R.cover().group);
            PLFun sw = R.swan_as(chars[1]);
            for (auto& t : grid(iv, 48)) CHECK(sw.eval(t) == oracle(t));
            for (auto& t : sw.breakpoints()) CHECK(sw.eval(t) == oracle(t));
            CHECK(sw.is_convex());
            CHECK(sw.has_integer_slopes());
            CHECK(all_pass(R.conductor_battery(chars[1])));
            CHECK(R.discriminant_slope_check().passed());
            CHECK(R.discvar_check().passed());
        }
    }
}

TEST_CASE("ramify: compositum covers pass every battery (property)") {
    std::mt19937_64 rng(71);
    for (auto [q, m] : {std::pair<int64_t, int64_t>{3, 2}, {7, 3}, {5, 4}, {4, 3}}) {
        BaseField b = BaseField::make(q, 1, 64);
        for (int trial = 0; trial < 3; ++trial) {
            int64_t ku = 1 + int64_t(rng() % 5);
            while (std::gcd(ku, m) != 1) ++ku;
            int64_t n = 1 + int64_t(rng() % 4);
            while (n % b.p == 0) ++n;
            Ramify R(CoverSpec::compositum(b, m, xi_pow(b, ku), xi_pow(b, -n), {Rat(1, 3), 2}));
            CAPTURE(R.cover().describe());
            auto chars = characters(R.cover().group);
            for (auto& chi : chars) CHECK(all_pass(R.conductor_battery(chi)));
            CHECK(R.discriminant_slope_check().passed());
            CHECK(R.discvar_check().passed());
            for (auto& c : R.subgroup_battery()) CHECK(c.passed());
            // Characters nontrivial on the wild part see the break n t.
            for (int64_t a = 0; a < R.cover().group.order(); ++a) {
                bool wild = R.cover().group.elem(a)[0] != 0;
                CHECK(R.swan_as(chars[size_t(a)]).eval(1) == Rat(wild ? n : 0));
            }
        }
    }
}

TEST_CASE("ramify: Kummer covers with a moving zero") {
    BaseField b = BaseField::make(7, 1, 64);
    Ramify R(CoverSpec::kummer(b, 3, xi_pow(b, 1) - term(b, 1, 1, 0), {0, 2}));
    CHECK(R.critical() == std::vector<Rat>{1});
    auto dec = R.decomposition();
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].sigma_total() == 2);
    CHECK(dec[1].sigma_total() == 0);
    for (auto& chi : characters(R.cover().group)) CHECK(all_pass(R.conductor_battery(chi)));
    NearbyCyclesLedger L = R.nearby_cycles();
    CHECK(Rat(L.rhs) == L.disc_slope_difference);
}
