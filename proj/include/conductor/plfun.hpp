#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conductor/rat.hpp"

namespace conductor {

struct Interval {
    Rat lo, hi;
    bool contains(const Rat& t) const { return lo <= t && t <= hi; }
    bool contains_open(const Rat& t) const { return lo < t && t < hi; }
    Rat length() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / Rat(2); }
    friend bool operator==(const Interval&, const Interval&) = default;
    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }
};

// Continuous piecewise-linear function on a closed interval, stored by its
// values at breakpoints and kept canonical (no redundant breakpoints).
class PLFun {
public:
    PLFun() = default;
    PLFun(std::vector<Rat> breakpoints, std::vector<Rat> values);

    static PLFun affine(const Interval& dom, const Rat& slope, const Rat& intercept);
    static PLFun constant(const Interval& dom, const Rat& c) { return affine(dom, Rat(0), c); }

    Interval domain() const { return {bp_.front(), bp_.back()}; }
    const std::vector<Rat>& breakpoints() const { return bp_; }
    const std::vector<Rat>& values() const { return val_; }
    // Interior breakpoints only.
    std::vector<Rat> interior_breakpoints() const;

    Rat eval(const Rat& t) const;
    struct Segment {
        Interval iv;
        Rat slope;
    };
    std::vector<Segment> slopes() const;
    Rat right_deriv(const Rat& t) const;
    Rat left_deriv(const Rat& t) const;

    bool is_convex() const;
    bool has_integer_slopes() const;

    PLFun scale(const Rat& c) const;
    friend bool operator==(const PLFun&, const PLFun&) = default;

    nlohmann::ordered_json to_json() const;
    static PLFun from_json(const nlohmann::json& j);

private:
    void canonicalize();
    std::vector<Rat> bp_;
    std::vector<Rat> val_;
};

enum class PLOp { Add, Min, Max };
PLFun pl_combine(PLOp op, const PLFun& f, const PLFun& g);
PLFun pl_add_const(const PLFun& f, const Rat& c);

// Sequence of affine pieces over consecutive closed intervals; assembled
// into a PLFun only if adjacent pieces agree at their shared endpoint.
struct AffinePiece {
    Interval iv;
    Rat slope, intercept;
    Rat at(const Rat& t) const { return slope * t + intercept; }
};
struct Assembly {
    bool continuous = true;
    std::vector<std::pair<Rat, std::pair<Rat, Rat>>> jumps;  // radius, (left value, right value)
    PLFun fun;  // valid when continuous
};
Assembly assemble(const std::vector<AffinePiece>& pieces);

// Text SVG: polyline through the breakpoints, markers at breakpoints,
// slope annotations per segment, axis labels.
std::string pl_to_svg(const PLFun& f, const std::string& title, const std::string& ylabel);

}  // namespace conductor
