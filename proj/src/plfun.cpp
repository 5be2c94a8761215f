#include "conductor/plfun.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace conductor {

PLFun::PLFun(std::vector<Rat> breakpoints, std::vector<Rat> values)
    : bp_(std::move(breakpoints)), val_(std::move(values)) {
    if (bp_.empty() || bp_.size() != val_.size()) throw std::invalid_argument("PLFun needs matching breakpoints and values");
    for (size_t i = 1; i < bp_.size(); ++i)
        if (!(bp_[i - 1] < bp_[i])) throw std::invalid_argument("PLFun breakpoints must increase strictly");
    canonicalize();
}

void PLFun::canonicalize() {
    if (bp_.size() <= 2) return;
    std::vector<Rat> b{bp_[0]}, v{val_[0]};
    for (size_t i = 1; i + 1 < bp_.size(); ++i) {
        Rat sl = (val_[i] - v.back()) / (bp_[i] - b.back());
        Rat sr = (val_[i + 1] - val_[i]) / (bp_[i + 1] - bp_[i]);
        if (sl != sr) {
            b.push_back(bp_[i]);
            v.push_back(val_[i]);
        }
    }
    b.push_back(bp_.back());
    v.push_back(val_.back());
    bp_ = std::move(b);
    val_ = std::move(v);
}

PLFun PLFun::affine(const Interval& dom, const Rat& slope, const Rat& intercept) {
    if (dom.lo == dom.hi) return PLFun({dom.lo}, {slope * dom.lo + intercept});
    return PLFun({dom.lo, dom.hi}, {slope * dom.lo + intercept, slope * dom.hi + intercept});
}

std::vector<Rat> PLFun::interior_breakpoints() const {
    if (bp_.size() <= 2) return {};
    return std::vector<Rat>(bp_.begin() + 1, bp_.end() - 1);
}

Rat PLFun::eval(const Rat& t) const {
    if (t < bp_.front() || t > bp_.back())
        throw std::out_of_range("PLFun evaluated at " + t.str() + " outside " + domain().str());
    auto it = std::lower_bound(bp_.begin(), bp_.end(), t);
    size_t k = size_t(it - bp_.begin());
    if (*it == t) return val_[k];
    Rat s = (val_[k] - val_[k - 1]) / (bp_[k] - bp_[k - 1]);
    return val_[k - 1] + s * (t - bp_[k - 1]);
}

std::vector<PLFun::Segment> PLFun::slopes() const {
    std::vector<Segment> out;
    for (size_t i = 1; i < bp_.size(); ++i)
        out.push_back({{bp_[i - 1], bp_[i]}, (val_[i] - val_[i - 1]) / (bp_[i] - bp_[i - 1])});
    return out;
}

Rat PLFun::right_deriv(const Rat& t) const {
    if (!(t >= bp_.front() && t < bp_.back()))
        throw std::out_of_range("right derivative undefined at " + t.str() + " on " + domain().str());
    auto it = std::upper_bound(bp_.begin(), bp_.end(), t);
    size_t k = size_t(it - bp_.begin());
    return (val_[k] - val_[k - 1]) / (bp_[k] - bp_[k - 1]);
}

Rat PLFun::left_deriv(const Rat& t) const {
    if (!(t > bp_.front() && t <= bp_.back()))
        throw std::out_of_range("left derivative undefined at " + t.str() + " on " + domain().str());
    auto it = std::lower_bound(bp_.begin(), bp_.end(), t);
    size_t k = size_t(it - bp_.begin());
    return (val_[k] - val_[k - 1]) / (bp_[k] - bp_[k - 1]);
}

bool PLFun::is_convex() const {
    auto s = slopes();
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i].slope < s[i - 1].slope) return false;
    return true;
}

bool PLFun::has_integer_slopes() const {
    for (auto& s : slopes())
        if (!s.slope.is_integer()) return false;
    return true;
}

PLFun PLFun::scale(const Rat& c) const {
    std::vector<Rat> v;
    for (auto& x : val_) v.push_back(x * c);
    return PLFun(bp_, v);
}

nlohmann::ordered_json PLFun::to_json() const {
    nlohmann::ordered_json j;
    j["domain"] = {bp_.front().str(), bp_.back().str()};
    auto& b = j["breakpoints"] = nlohmann::ordered_json::array();
    for (auto& x : bp_) b.push_back(x.str());
    auto& v = j["values"] = nlohmann::ordered_json::array();
    for (auto& x : val_) v.push_back(x.str());
    return j;
}

PLFun PLFun::from_json(const nlohmann::json& j) {
    std::vector<Rat> b, v;
    for (auto& x : j.at("breakpoints")) b.push_back(Rat::parse(x.get<std::string>()));
    for (auto& x : j.at("values")) v.push_back(Rat::parse(x.get<std::string>()));
    PLFun f(b, v);
    if (j.contains("domain")) {
        Interval d{Rat::parse(j["domain"][0].get<std::string>()), Rat::parse(j["domain"][1].get<std::string>())};
        if (!(d == f.domain())) throw std::invalid_argument("PLFun domain does not match its breakpoints");
    }
    return f;
}

PLFun pl_combine(PLOp op, const PLFun& f, const PLFun& g) {
    if (!(f.domain() == g.domain()))
        throw std::invalid_argument("PLFun domain mismatch: " + f.domain().str() + " vs " + g.domain().str());
    std::vector<Rat> pts = f.breakpoints();
    pts.insert(pts.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (op != PLOp::Add) {
        // Insert exact crossing points inside each elementary interval.
        std::vector<Rat> extra;
        for (size_t i = 1; i < pts.size(); ++i) {
            Rat a = pts[i - 1], b = pts[i];
            Rat da = f.eval(a) - g.eval(a), db = f.eval(b) - g.eval(b);
            if (da.sign() * db.sign() < 0) extra.push_back(a + (b - a) * da / (da - db));
        }
        pts.insert(pts.end(), extra.begin(), extra.end());
        std::sort(pts.begin(), pts.end());
    }
    std::vector<Rat> vals;
    for (auto& t : pts) {
        Rat x = f.eval(t), y = g.eval(t);
        switch (op) {
            case PLOp::Add: vals.push_back(x + y); break;
            case PLOp::Min: vals.push_back(min(x, y)); break;
            case PLOp::Max: vals.push_back(max(x, y)); break;
        }
    }
    return PLFun(pts, vals);
}

PLFun pl_add_const(const PLFun& f, const Rat& c) {
    std::vector<Rat> v;
    for (auto& x : f.values()) v.push_back(x + c);
    return PLFun(f.breakpoints(), v);
}

Assembly assemble(const std::vector<AffinePiece>& pieces) {
    Assembly out;
    if (pieces.empty()) throw std::invalid_argument("assemble: no pieces");
    std::vector<Rat> b, v;
    b.push_back(pieces[0].iv.lo);
    v.push_back(pieces[0].at(pieces[0].iv.lo));
    for (size_t i = 0; i < pieces.size(); ++i) {
        const auto& pc = pieces[i];
        if (i > 0) {
            if (!(pieces[i - 1].iv.hi == pc.iv.lo)) throw std::invalid_argument("assemble: pieces are not adjacent");
            Rat left = pieces[i - 1].at(pc.iv.lo), right = pc.at(pc.iv.lo);
            if (left != right) {
                out.continuous = false;
                out.jumps.push_back({pc.iv.lo, {left, right}});
            }
        }
        if (pc.iv.hi > b.back()) {
            b.push_back(pc.iv.hi);
            v.push_back(pc.at(pc.iv.hi));
        }
    }
    if (out.continuous) out.fun = PLFun(b, v);
    return out;
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace

std::string pl_to_svg(const PLFun& f, const std::string& title, const std::string& ylabel) {
    const double W = 640, H = 400, L = 60, R = 20, T = 40, B = 50;
    double x0 = f.domain().lo.to_double(), x1 = f.domain().hi.to_double();
    double y0 = f.values()[0].to_double(), y1 = y0;
    for (auto& v : f.values()) {
        y0 = std::min(y0, v.to_double());
        y1 = std::max(y1, v.to_double());
    }
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) {
        y0 -= 1;
        y1 += 1;
    }
    auto X = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto Y = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"monospace\">" << title << "</text>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-family=\"monospace\">t</text>\n";
    s << "<text x=\"15\" y=\"" << H / 2 << "\" font-family=\"monospace\" transform=\"rotate(-90 15 " << H / 2 << ")\">" << ylabel
      << "</text>\n";
    s << "<text x=\"" << L << "\" y=\"" << H - B + 15 << "\" font-family=\"monospace\" font-size=\"10\">" << f.domain().lo.str()
      << "</text>\n";
    s << "<text x=\"" << W - R << "\" y=\"" << H - B + 15 << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << f.domain().hi.str() << "</text>\n";
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < f.breakpoints().size(); ++i)
        s << (i ? " " : "") << fmt(X(f.breakpoints()[i].to_double())) << "," << fmt(Y(f.values()[i].to_double()));
    s << "\"/>\n";
    for (size_t i = 0; i < f.breakpoints().size(); ++i) {
        double x = X(f.breakpoints()[i].to_double()), y = Y(f.values()[i].to_double());
        s << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"3\" fill=\"crimson\"/>\n";
        s << "<text x=\"" << fmt(x + 4) << "\" y=\"" << fmt(y - 6) << "\" font-family=\"monospace\" font-size=\"10\">("
          << f.breakpoints()[i].str() << ", " << f.values()[i].str() << ")</text>\n";
    }
    for (auto& seg : f.slopes()) {
        double xm = X(seg.iv.mid().to_double());
        double ym = Y(f.eval(seg.iv.mid()).to_double());
        s << "<text x=\"" << fmt(xm) << "\" y=\"" << fmt(ym + 16) << "\" font-family=\"monospace\" font-size=\"10\" fill=\"gray\">slope "
          << seg.slope.str() << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace conductor
