#include "conductor/ramify.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace conductor {

const char* route_name(DiscRoute r) {
    switch (r) {
        case DiscRoute::Auto: return "auto";
        case DiscRoute::Pairing: return "pairing";
        case DiscRoute::Lattice: return "lattice";
    }
    return "?";
}

Check make_check(std::string name, bool ok, std::string lhs, std::string rhs, std::vector<std::string> witnesses,
                 std::string detail) {
    return Check{std::move(name), ok ? "pass" : "fail", std::move(lhs), std::move(rhs), std::move(witnesses),
                 std::move(detail)};
}

static Check not_computed(std::string name, std::string detail) {
    return Check{std::move(name), "not-computed", "", "", {}, std::move(detail)};
}

bool ConductorReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

GeneratorModel generator_model(const CoverSpec& c, const Rat& t, Branch b) {
    if (!c.abelian) throw std::invalid_argument("non-abelian kind: no automorphism data");
    GeneratorModel gm;
    gm.t = t;
    gm.branch = b;
    LocalStructure ls = local_structure(c, t);
    if (ls.components > 1) {
        gm.split = true;
        return gm;
    }
    const UpRing& R = c.ring;
    const GF* F = c.base.F;
    Frame fr = frame_at(c, t, orientation(b));
    gm.gen = uniformizer(c, fr);
    UpRing::Elem bel = uniformizer_elem(c, gm.gen);
    gm.gen_val = valuation(R, bel, fr);
    if (c.is_identity()) return gm;

    // Minimality test set: b + pi^(-s) b^2 and b (1 + pi).
    LaurentPoly unscale = LaurentPoly::constant(FieldElem::monomial(F, F->one(), -gm.gen_val.alpha, 1));
    UpRing::Elem x1 = R.add(bel, R.scale(R.mul(bel, bel), unscale));
    UpRing::Elem x2 = R.scale(bel, LaurentPoly::constant(FieldElem::integer(F, 1) + FieldElem::monomial(F, F->one(), Rat(1), 1)));

    Rat D(fr.index);
    for (int64_t s = 1; s < c.group.order(); ++s) {
        UpRing::Elem diff = R.sub(apply_automorphism(c, s, bel), bel);
        if (is_zero(diff)) throw ModelError("automorphism " + c.group.elem_str(s) + " fixes the generator");
        UpVal vd = valuation(R, diff, fr);
        Rat beta = (vd.beta - gm.gen_val.beta) * D;
        if (beta.den() != 1) throw ModelError("non-integral residue order of a generator difference");
        for (const UpRing::Elem* x : {&x1, &x2}) {
            UpRing::Elem dx = R.sub(apply_automorphism(c, s, *x), *x);
            if (!is_zero(dx) && valuation(R, dx, fr).alpha < vd.alpha)
                throw ModelError("generator difference is not minimal at t = " + t.str());
        }
        gm.diffs.push_back({s, vd.alpha - gm.gen_val.alpha, beta.num()});
    }
    return gm;
}

Ramify::Ramify(CoverSpec c) : c_(std::move(c)) {
    crit_ = critical_radii(c_);
    pieces_ = piece_intervals(c_);
}

const std::vector<AnnulusPiece>& Ramify::decomposition() {
    std::lock_guard<std::mutex> lk(mu_);
    if (!decomp_) decomp_ = decompose(c_);
    return *decomp_;
}

bool Ramify::is_critical(const Rat& t) const { return std::binary_search(crit_.begin(), crit_.end(), t); }

void Ramify::require_abelian() const {
    if (!c_.abelian)
        throw std::invalid_argument("non-abelian kind: class functions need a Kummer, Artin-Schreier or compositum cover");
}

static void require_regular(const Ramify& r, const Rat& t) {
    if (!r.cover().interval.contains(t))
        throw std::invalid_argument("t = " + t.str() + " outside " + r.cover().interval.str());
    if (r.is_critical(t)) throw CriticalRadius("t = " + t.str());
}

ClassFun Ramify::artin_classfun(const Rat& t) {
    require_abelian();
    require_regular(*this, t);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = artin_cache_.find(t);
        if (it != artin_cache_.end()) return it->second;
    }
    const GroupDesc& G = c_.group;
    std::vector<Rat> vals(size_t(G.order()), Rat(0));
    GeneratorModel gm = generator_model(c_, t, Branch::Outer);
    if (!gm.split) {
        Rat D(G.order());
        for (auto& d : gm.diffs) {
            vals[size_t(d.sigma)] = -D * d.alpha;
            vals[0] -= vals[size_t(d.sigma)];
        }
    }
    ClassFun f = ClassFun::from_rationals(G, vals);
    std::lock_guard<std::mutex> lk(mu_);
    artin_cache_.emplace(t, f);
    return f;
}

ClassFun Ramify::swan_beta_branch(const Rat& t, Branch b) {
    require_abelian();
    require_regular(*this, t);
    auto key = std::make_pair(t, orientation(b));
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = swan_cache_.find(key);
        if (it != swan_cache_.end()) return it->second;
    }
    const GroupDesc& G = c_.group;
    std::vector<Rat> vals(size_t(G.order()), Rat(0));
    GeneratorModel gm = generator_model(c_, t, b);
    if (!gm.split)
        for (auto& d : gm.diffs) vals[size_t(d.sigma)] = Rat(-d.beta);

    // Diagonal from the subgroup system: for each H,
    //   (1/|H|) sum_{s in H} vals[s] = d_{f_H} - deg f_H + |S_{f_H}|.
    auto rhs = [&](const Subgroup& H) {
        CoverSpec fH = quotient(c_, H);
        return Rat(boundary_disc_order(fH, t, b) - fH.degree() + local_structure(fH, t).components);
    };
    vals[0] = rhs(trivial_subgroup(G));
    for (const Subgroup& H : subgroups(G)) {
        Rat s(0);
        for (int64_t x : H.elems) s += vals[size_t(x)];
        Rat want = rhs(H);
        if (s / Rat(H.order()) != want) {
            std::ostringstream os;
            os << "subgroup system inconsistent at t = " << t.str() << " (" << branch_name(b) << "), |H| = " << H.order()
               << ": " << (s / Rat(H.order())).str() << " vs " << want.str();
            throw ModelError(os.str());
        }
    }
    ClassFun f = ClassFun::from_rationals(G, vals);
    std::lock_guard<std::mutex> lk(mu_);
    swan_cache_.emplace(key, f);
    return f;
}

ClassFun Ramify::swan_beta_classfun(const Interval& iv) {
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("interval must satisfy t < t'");
    return swan_beta_branch(iv.lo, Branch::Outer) + swan_beta_branch(iv.hi, Branch::Inner);
}

std::vector<AffinePiece> Ramify::piecewise(const std::function<Rat(const Rat&)>& f, int witnesses) {
    std::vector<AffinePiece> out;
    for (const Interval& iv : pieces_) {
        std::vector<Rat> ts = interior_samples(iv, witnesses + 2);
        Rat f0 = f(ts.front()), f1 = f(ts.back());
        Rat slope = (f1 - f0) / (ts.back() - ts.front());
        AffinePiece pc{iv, slope, f0 - slope * ts.front()};
        for (size_t k = 1; k + 1 < ts.size(); ++k) {
            Rat v = f(ts[k]);
            if (v != pc.at(ts[k]))
                throw ModelError("not affine on piece " + iv.str() + ": value " + v.str() + " at t = " + ts[k].str() +
                                 ", fit gives " + pc.at(ts[k]).str());
        }
        out.push_back(pc);
    }
    return out;
}

DiscRoute Ramify::resolve(DiscRoute r) const {
    if (r != DiscRoute::Auto) return r;
    return c_.abelian ? DiscRoute::Pairing : DiscRoute::Lattice;
}

Rat Ramify::disc_at(const Rat& t, DiscRoute route) {
    route = resolve(route);
    if (route == DiscRoute::Pairing) {
        if (!c_.abelian) throw std::invalid_argument("route inapplicable: pairing route needs an abelian cover");
        return pairing_rational(artin_classfun(t), regular_character(c_.group));
    }
    require_regular(*this, t);
    return lattice_disc_at(c_, t);
}

static std::string jumps_str(const Assembly& a) {
    std::ostringstream os;
    for (auto& [t, lr] : a.jumps) os << "t=" << t.str() << ": " << lr.first.str() << " != " << lr.second.str() << "; ";
    return os.str();
}

PLFun Ramify::discriminant_fun(DiscRoute route) {
    Assembly a = assemble(piecewise([&](const Rat& t) { return disc_at(t, route); }));
    if (!a.continuous) throw ModelError("discriminant function discontinuous: " + jumps_str(a));
    return a.fun;
}

PLFun Ramify::swan_as(const ClassFun& chi) {
    require_abelian();
    Assembly a = assemble(piecewise([&](const Rat& t) { return pairing_rational(artin_classfun(t), chi); }));
    if (!a.continuous) throw ModelError("Swan conductor function discontinuous: " + jumps_str(a));
    return a.fun;
}

Rat Ramify::phi_s(const ClassFun& chi, const Rat& t) {
    return pairing_rational(swan_beta_branch(t, Branch::Outer), chi);
}

bool Ramify::in_delta_catalogue() const {
    if (c_.is_identity()) return true;
    if (c_.kind != CoverKind::Kummer || c_.u.coeffs().size() != 1) return false;
    // A capped tail 1 + O(pi^N) is an m-th power (p does not divide m), so only
    // the known monomial matters.
    auto& [i, a] = *c_.u.coeffs().begin();
    return a.terms().size() == 1 && std::gcd(c_.m, std::abs(i)) == 1;
}

NearbyCyclesLedger Ramify::nearby_cycles() {
    const auto& dec = decomposition();
    NearbyCyclesLedger L;
    L.sigma = dec.front().sigma_total();
    L.delta_f = dec.front().delta_f;
    L.sigma_prime = dec.back().sigma_total();
    L.delta_f_prime = dec.back().delta_f;
    L.rhs = L.sigma + L.delta_f - (L.sigma_prime + L.delta_f_prime);
    PLFun d = discriminant_fun();
    L.disc_slope_difference = d.right_deriv(c_.interval.lo) - d.left_deriv(c_.interval.hi);
    // Single node upstairs: d_eta = 0, delta = 1, two branches.
    if (in_delta_catalogue()) L.lhs_sum = 0 - 2 * 1 + 2;
    return L;
}

static std::string rs(const Rat& r) { return r.str(); }

ConductorReport Ramify::conductor_battery(const ClassFun& chi) {
    require_abelian();
    ConductorReport r;
    auto sw_at = [&](const Rat& t) { return pairing_rational(artin_classfun(t), chi); };
    r.pieces = piecewise(sw_at);
    Assembly A = assemble(r.pieces);

    for (size_t k = 0; k + 1 < r.pieces.size(); ++k) {
        Rat t = r.pieces[k].iv.hi;
        r.critical_limits.push_back({t, r.pieces[k].at(t), r.pieces[k + 1].at(t)});
    }
    r.checks.push_back(make_check("continuity", A.continuous, std::to_string(A.jumps.size()) + " jumps", "0 jumps", {},
                                  jumps_str(A)));
    if (!A.continuous) {
        for (auto n : {"convexity", "integer-slopes", "phi-slope", "phi-companion", "slope-difference", "concatenation"})
            r.checks.push_back(not_computed(n, "sw function is discontinuous"));
        r.ledger = nearby_cycles();
        return r;
    }
    r.sw_fun = A.fun;
    r.checks.push_back(make_check("convexity", r.sw_fun.is_convex(), "convex", "convex"));
    r.checks.push_back(make_check("integer-slopes", r.sw_fun.has_integer_slopes(), "integral", "integral"));

    // phi samples and their agreement with the local slope.
    std::vector<std::vector<Rat>> samples;
    {
        std::vector<std::string> bad;
        for (size_t k = 0; k < pieces_.size(); ++k) {
            samples.push_back(interior_samples(pieces_[k], 5));
            for (auto& t : samples.back()) {
                Rat ph = phi_s(chi, t);
                r.phi_vals.push_back({t, ph});
                if (ph != r.pieces[k].slope)
                    bad.push_back("t=" + t.str() + ": phi=" + ph.str() + " slope=" + r.pieces[k].slope.str());
            }
        }
        r.checks.push_back(make_check("phi-slope", bad.empty(), "phi_s(t)", "local slope of sw", bad));
    }
    // Companion extraction inside each piece.
    {
        std::vector<std::string> bad, wit;
        for (size_t k = 0; k < pieces_.size(); ++k) {
            Rat t = samples[k][0];
            Rat tc = pieces_[k].mid();
            if (tc == t) tc = pieces_[k].lo + pieces_[k].length() / Rat(4);
            Rat a = min(t, tc), b = max(t, tc);
            Rat lhs = pairing_rational(swan_beta_classfun({a, b}), chi);
            Rat rhs = phi_s(chi, a) - phi_s(chi, b);
            Rat inner = -pairing_rational(swan_beta_branch(tc, Branch::Inner), chi);
            std::string w = "[" + a.str() + ", " + b.str() + "]: " + lhs.str() + " vs " + rhs.str();
            (lhs == rhs && inner == phi_s(chi, tc) ? wit : bad).push_back(w);
        }
        r.checks.push_back(make_check("phi-companion", bad.empty(), "<sw_beta([t,t']), chi>", "phi_s(t) - phi_s(t')",
                                      bad.empty() ? wit : bad));
    }
    // Slope-difference identity on pairs straddling every boundary (or inside the only piece).
    {
        std::vector<std::pair<Rat, Rat>> pairs;
        if (pieces_.size() == 1) {
            auto& s = samples[0];
            for (size_t j = 0; j + 1 < s.size(); ++j) pairs.push_back({s[j], s[j + 1]});
            pairs.push_back({s.front(), s.back()});
        }
        for (size_t k = 0; k + 1 < pieces_.size(); ++k)
            for (size_t j = 0; j < 5; ++j) pairs.push_back({samples[k][j], samples[k + 1][j]});
        std::vector<std::string> bad, wit;
        for (auto& [t, tp] : pairs) {
            Rat lhs = r.sw_fun.right_deriv(t) - r.sw_fun.left_deriv(tp);
            Rat rhs = phi_s(chi, t) - phi_s(chi, tp);
            Rat swb = pairing_rational(swan_beta_classfun({t, tp}), chi);
            std::string w = "(" + t.str() + ", " + tp.str() + "): " + lhs.str() + " = " + rhs.str();
            (lhs == rhs && swb == rhs && lhs <= Rat(0) ? wit : bad).push_back(w);
        }
        r.checks.push_back(make_check("slope-difference", bad.empty(), "right-deriv(t) - left-deriv(t')",
                                      "phi_s(t) - phi_s(t')", bad.empty() ? wit : bad,
                                      std::to_string(pairs.size()) + " pairs"));
    }
    // Concatenation over nested triples of non-critical radii.
    {
        std::vector<Rat> S;
        for (auto& s : samples) S.insert(S.end(), s.begin(), s.end());
        size_t n = S.size();
        std::vector<std::array<size_t, 3>> triples{{0, n / 2, n - 1}, {0, 1, 2}, {n / 4, n / 2 + 1, n - 1}};
        std::vector<std::string> bad, wit;
        for (auto& tr : triples) {
            const Rat &a = S[tr[0]], &b = S[tr[1]], &cc = S[tr[2]];
            ClassFun left = swan_beta_classfun({a, b}) + swan_beta_classfun({b, cc});
            ClassFun whole = swan_beta_classfun({a, cc});
            Rat pl = pairing_rational(left, chi), pw = pairing_rational(whole, chi);
            std::string w = "(" + a.str() + ", " + b.str() + ", " + cc.str() + "): " + pl.str() + " = " + pw.str();
            (left == whole ? wit : bad).push_back(w);
        }
        r.checks.push_back(make_check("concatenation", bad.empty(), "sw_beta([t,t']) + sw_beta([t',t''])",
                                      "sw_beta([t,t''])", bad.empty() ? wit : bad));
    }
    r.ledger = nearby_cycles();
    r.checks.push_back(make_check("nearby-cycles-rhs", Rat(r.ledger.rhs) == r.ledger.disc_slope_difference,
                                  std::to_string(r.ledger.rhs), r.ledger.disc_slope_difference.str()));
    if (r.ledger.lhs_sum)
        r.checks.push_back(make_check("nearby-cycles-lhs", *r.ledger.lhs_sum == r.ledger.rhs,
                                      std::to_string(*r.ledger.lhs_sum), std::to_string(r.ledger.rhs)));
    else
        r.checks.push_back(not_computed("nearby-cycles-lhs", "singularity invariants not in the known catalogue"));
    return r;
}

Check Ramify::discriminant_slope_check() {
    PLFun d = discriminant_fun();
    const auto& dec = decomposition();
    std::vector<std::string> wit;
    bool ok = true;
    for (auto& pc : dec) {
        Rat slope = (d.eval(pc.iv.hi) - d.eval(pc.iv.lo)) / pc.iv.length();
        int64_t want = pc.sigma_total() - c_.degree() + pc.delta_f;
        ok = ok && slope == Rat(want);
        wit.push_back(pc.iv.str() + ": slope " + rs(slope) + ", sigma - d + delta = " + std::to_string(want));
    }
    return make_check("discriminant-slope", ok, "slope of discriminant", "sigma - deg + delta_f", wit);
}

Check Ramify::route_agreement_check() {
    if (!c_.abelian || c_.ring.nvars() != 1) return not_computed("route-agreement", "only one route applies");
    std::vector<std::string> bad, wit;
    for (auto& iv : pieces_)
        for (auto& t : interior_samples(iv, 3)) {
            if (!lattice_applies(c_, t)) continue;
            Rat a = disc_at(t, DiscRoute::Pairing), b = disc_at(t, DiscRoute::Lattice);
            (a == b ? wit : bad).push_back("t=" + t.str() + ": " + a.str() + " vs " + b.str());
        }
    if (bad.empty() && wit.empty()) return not_computed("route-agreement", "lattice route inapplicable on every piece");
    return make_check("route-agreement", bad.empty(), "pairing route", "lattice route", bad.empty() ? wit : bad);
}

Check Ramify::discvar_check(int samples_per_piece) {
    if (!c_.abelian) return not_computed("discvar", "non-abelian kind");
    const GroupDesc& G = c_.group;
    std::vector<std::string> bad;
    int64_t compared = 0;
    for (const Subgroup& H : subgroups(G)) {
        Ramify q(quotient(c_, H));
        PLFun dq = q.discriminant_fun();
        ClassFun perm = permutation_character(G, H);
        for (auto& iv : pieces_)
            for (auto& t : interior_samples(iv, samples_per_piece)) {
                Rat lhs = pairing_rational(artin_classfun(t), perm);
                Rat rhs = dq.eval(t);
                bool ok = lhs == rhs;
                if (q.cover().ring.nvars() == 1 && lattice_applies(q.cover(), t)) ok = ok && lattice_disc_at(q.cover(), t) == rhs;
                ++compared;
                if (!ok) bad.push_back("|H|=" + std::to_string(H.order()) + " t=" + t.str() + ": " + lhs.str() + " vs " + rhs.str());
            }
    }
    return make_check("discvar", bad.empty(), "<a(t), Q[G/H]>", "disc of quotient", bad,
                      std::to_string(compared) + " comparisons");
}

std::vector<Check> Ramify::subgroup_battery() {
    std::vector<Check> out;
    if (!c_.abelian) {
        out.push_back(not_computed("subgroup-battery", "non-abelian kind"));
        return out;
    }
    const GroupDesc& G = c_.group;
    for (const Subgroup& H : subgroups(G)) {
        std::string name = "subgroup-battery {";
        for (size_t i = 0; i < H.elems.size(); ++i) name += (i ? "," : "") + G.elem_str(H.elems[i]);
        name += "}";
        ClassFun perm = permutation_character(G, H);
        Assembly a = assemble(piecewise([&](const Rat& t) { return pairing_rational(artin_classfun(t), perm); }));
        std::vector<std::string> bad;
        if (!a.continuous) bad.push_back("discontinuous: " + jumps_str(a));
        if (a.continuous && !a.fun.is_convex()) bad.push_back("not convex");
        if (a.continuous && !a.fun.has_integer_slopes()) bad.push_back("non-integral slope");
        // Swan beta pairing over non-critical intervals is a slope difference, hence <= 0.
        std::vector<Rat> S;
        for (auto& iv : pieces_)
            for (auto& t : interior_samples(iv, 2)) S.push_back(t);
        for (size_t i = 0; i + 1 < S.size(); ++i) {
            Rat v = pairing_rational(swan_beta_classfun({S[i], S.back()}), perm);
            if (v > Rat(0)) bad.push_back("sw_beta([" + S[i].str() + ", " + S.back().str() + "]) = " + v.str() + " > 0");
        }
        out.push_back(make_check(name, bad.empty(), "continuous convex integral", "continuous convex integral", bad));
    }
    return out;
}

}  // namespace conductor
