#pragma once

#include <set>
#include <vector>

#include "conductor/laurent.hpp"
#include "conductor/plfun.hpp"

namespace conductor {

// Gauss valuation at one radius: v_t(F) = min_i v(a_i) + i t, with the
// exponents attaining it.
struct GaussPoint {
    Rat value;
    std::vector<int64_t> achievers;  // ascending
};
GaussPoint gauss_at(const LaurentPoly& F, const Rat& t);

struct GaussValFun {
    LaurentPoly poly;
    Interval domain;
    PLFun fun;
    struct Segment {
        Interval iv;
        std::vector<int64_t> achievers;
    };
    std::vector<Segment> segments;
};
GaussValFun gauss_val(const LaurentPoly& F, const Interval& iv);

// Branch of a closed annulus [r, r']: Outer is radius r, where
// ord(xi-bar) = +1; Inner is radius r', where ord(xi-bar) = -1.
enum class Branch { Outer, Inner };
inline int orientation(Branch b) { return b == Branch::Outer ? 1 : -1; }
const char* branch_name(Branch b);

struct BoundaryVal {
    Rat alpha;
    int64_t beta;
    Branch branch;
};
// xi-bar order of the residue of F at radius t under orientation o (+1/-1):
// the lowest achiever for o = +1, minus the highest for o = -1.
int64_t residue_order(const GaussPoint& g, int o);
BoundaryVal boundary_val(const LaurentPoly& F, const Interval& iv, Branch b);

// Zeros of F with valuation in the closed interval (boundary circles count
// as inside), with multiplicity.
int64_t count_zeros(const LaurentPoly& F, const Interval& iv);

// Newton polygon: lower hull of (i, v(a_i)).  Each segment carries the
// common valuation of its roots (minus its slope) and the number of roots.
struct NewtonSegment {
    int64_t i0, i1;
    Rat root_valuation;
    int64_t length() const { return i1 - i0; }
};
std::vector<NewtonSegment> newton_polygon(const LaurentPoly& F);

struct KTheoryResult {
    int64_t lhs = 0;  // branch residue orders plus boundary multiplicities
    int64_t rhs = 0;  // Newton polygon slope count in the closed interval
    int64_t beta_outer = 0, beta_inner = 0, boundary_outer = 0, boundary_inner = 0;
    bool ok() const { return lhs == rhs; }
};
KTheoryResult ktheory_check(const LaurentPoly& F, const Interval& iv);

}  // namespace conductor
