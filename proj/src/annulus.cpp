#include "conductor/annulus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conductor {

namespace {

struct Line {
    int64_t i;
    Rat v;       // valuation of the coefficient (or its lower bound)
    bool known;  // false: coefficient is zero up to precision
    Rat at(const Rat& t) const { return v + Rat(i) * t; }
};

std::vector<Line> lines_of(const LaurentPoly& F) {
    if (F.empty()) throw std::invalid_argument("Gauss valuation of the zero polynomial");
    std::vector<Line> out;
    bool any_known = false;
    for (auto& [i, a] : F.coeffs()) {
        auto v = a.valuation();
        if (v) {
            out.push_back({i, *v, true});
            any_known = true;
        } else {
            out.push_back({i, a.cap_valuation(), false});
        }
    }
    if (!any_known) throw InsufficientPrecision("no coefficient has a known leading term");
    return out;
}

GaussPoint min_at(const std::vector<Line>& lines, const Rat& t) {
    GaussPoint g;
    bool first = true;
    for (auto& l : lines) {
        if (!l.known) continue;
        Rat x = l.at(t);
        if (first || x < g.value) {
            g.value = x;
            g.achievers = {l.i};
            first = false;
        } else if (x == g.value) {
            g.achievers.push_back(l.i);
        }
    }
    return g;
}

void check_unknowns(const std::vector<Line>& lines, const Rat& t, const Rat& value) {
    for (auto& l : lines)
        if (!l.known && !(l.at(t) > value))
            throw InsufficientPrecision("coefficient of xi^" + std::to_string(l.i) +
                                        " is unknown but may reach the minimum at t = " + t.str());
}

}  // namespace

GaussPoint gauss_at(const LaurentPoly& F, const Rat& t) {
    auto lines = lines_of(F);
    GaussPoint g = min_at(lines, t);
    check_unknowns(lines, t, g.value);
    return g;
}

GaussValFun gauss_val(const LaurentPoly& F, const Interval& iv) {
    auto lines = lines_of(F);
    std::vector<Rat> pts{iv.lo, iv.hi};
    for (size_t a = 0; a < lines.size(); ++a)
        for (size_t b = a + 1; b < lines.size(); ++b) {
            if (!lines[a].known || !lines[b].known) continue;
            // v_a + i_a t = v_b + i_b t
            Rat t = (lines[b].v - lines[a].v) / Rat(lines[a].i - lines[b].i);
            if (iv.contains_open(t)) pts.push_back(t);
        }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    GaussValFun out{F, iv, {}, {}};
    std::vector<Rat> vals;
    for (auto& t : pts) {
        GaussPoint g = min_at(lines, t);
        check_unknowns(lines, t, g.value);
        vals.push_back(g.value);
    }
    out.fun = PLFun(pts, vals);
    if (pts.size() == 1) {
        out.segments.push_back({iv, min_at(lines, iv.lo).achievers});
        return out;
    }
    for (size_t k = 1; k < pts.size(); ++k) {
        Interval seg{pts[k - 1], pts[k]};
        auto ach = min_at(lines, seg.mid()).achievers;
        if (!out.segments.empty() && out.segments.back().achievers == ach)
            out.segments.back().iv.hi = seg.hi;
        else
            out.segments.push_back({seg, ach});
    }
    return out;
}

const char* branch_name(Branch b) { return b == Branch::Outer ? "outer" : "inner"; }

int64_t residue_order(const GaussPoint& g, int o) {
    return o > 0 ? g.achievers.front() : -g.achievers.back();
}

BoundaryVal boundary_val(const LaurentPoly& F, const Interval& iv, Branch b) {
    Rat t = b == Branch::Outer ? iv.lo : iv.hi;
    GaussPoint g = gauss_at(F, t);
    return {g.value, residue_order(g, orientation(b)), b};
}

int64_t count_zeros(const LaurentPoly& F, const Interval& iv) {
    GaussPoint a = gauss_at(F, iv.lo), b = gauss_at(F, iv.hi);
    return a.achievers.back() - b.achievers.front();
}

std::vector<NewtonSegment> newton_polygon(const LaurentPoly& F) {
    auto lines = lines_of(F);
    std::vector<Line> known;
    for (auto& l : lines)
        if (l.known) known.push_back(l);
    // Monotone-chain lower hull over points sorted by exponent.
    std::vector<Line> hull;
    auto cross_bad = [](const Line& a, const Line& b, const Line& c) {
        // b is not strictly below segment a-c
        return (b.v - a.v) * Rat(c.i - a.i) >= (c.v - a.v) * Rat(b.i - a.i);
    };
    for (auto& p : known) {
        while (hull.size() >= 2 && cross_bad(hull[hull.size() - 2], hull.back(), p)) hull.pop_back();
        hull.push_back(p);
    }
    // Unknown coefficients must sit strictly above the hull.
    for (auto& l : lines) {
        if (l.known) continue;
        for (size_t k = 1; k < hull.size(); ++k) {
            if (l.i < hull[k - 1].i || l.i > hull[k].i) continue;
            Rat on = hull[k - 1].v + (hull[k].v - hull[k - 1].v) * Rat(l.i - hull[k - 1].i) / Rat(hull[k].i - hull[k - 1].i);
            if (!(l.v > on))
                throw InsufficientPrecision("unknown coefficient of xi^" + std::to_string(l.i) + " may touch the Newton polygon");
        }
        if (l.i < hull.front().i || l.i > hull.back().i)
            throw InsufficientPrecision("unknown coefficient of xi^" + std::to_string(l.i) + " lies outside the known support");
    }
    std::vector<NewtonSegment> out;
    for (size_t k = 1; k < hull.size(); ++k) {
        Rat slope = (hull[k].v - hull[k - 1].v) / Rat(hull[k].i - hull[k - 1].i);
        out.push_back({hull[k - 1].i, hull[k].i, -slope});
    }
    return out;
}

KTheoryResult ktheory_check(const LaurentPoly& F, const Interval& iv) {
    KTheoryResult r;
    GaussPoint a = gauss_at(F, iv.lo), b = gauss_at(F, iv.hi);
    r.beta_outer = residue_order(a, +1);
    r.beta_inner = residue_order(b, -1);
    r.boundary_outer = a.achievers.back() - a.achievers.front();
    r.boundary_inner = b.achievers.back() - b.achievers.front();
    r.lhs = r.beta_outer + r.beta_inner + r.boundary_outer + r.boundary_inner;
    for (auto& s : newton_polygon(F))
        if (iv.contains(s.root_valuation)) r.rhs += s.length();
    return r;
}

}  // namespace conductor
