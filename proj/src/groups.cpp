#include "conductor/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace conductor {

namespace {

using IPoly = std::vector<int64_t>;

IPoly poly_divexact(IPoly a, const IPoly& b) {
    // b monic, division exact
    size_t db = b.size() - 1;
    IPoly q(a.size() - db, 0);
    for (size_t s = a.size() - db; s-- > 0;) {
        int64_t c = a[s + db];
        q[s] = c;
        for (size_t i = 0; i <= db; ++i) a[s + i] -= c * b[i];
    }
    return q;
}

}  // namespace

std::vector<int64_t> cyclotomic_poly(int64_t N) {
    if (N < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
    IPoly num(size_t(N) + 1, 0);
    num[0] = -1;
    num[size_t(N)] = 1;
    for (int64_t d = 1; d < N; ++d)
        if (N % d == 0) num = poly_divexact(num, cyclotomic_poly(d));
    return num;
}

namespace {

const IPoly& cyclo_cached(int64_t N) {
    thread_local std::map<int64_t, IPoly> cache;
    auto it = cache.find(N);
    if (it == cache.end()) it = cache.emplace(N, cyclotomic_poly(N)).first;
    return it->second;
}

// Reduce a coefficient vector of arbitrary length modulo Phi_N.
std::vector<Rat> reduce_mod(std::vector<Rat> a, int64_t N) {
    const IPoly& phi = cyclo_cached(N);
    size_t deg = phi.size() - 1;
    for (size_t k = a.size(); k-- > deg;) {
        Rat c = a[k];
        if (c.is_zero()) continue;
        for (size_t i = 0; i <= deg; ++i) a[k - deg + i] -= c * Rat(phi[i]);
    }
    a.resize(deg);
    return a;
}

}  // namespace

Cyclo::Cyclo(int64_t N) : N_(N), c_(cyclo_cached(N).size() - 1, Rat(0)) {}

Cyclo Cyclo::rational(int64_t N, const Rat& r) {
    Cyclo x(N);
    x.c_[0] = r;
    return x;
}

Cyclo Cyclo::zeta_pow(int64_t N, int64_t k) {
    k %= N;
    if (k < 0) k += N;
    std::vector<Rat> a(size_t(k) + 1, Rat(0));
    a[size_t(k)] = Rat(1);
    Cyclo x(N);
    auto r = reduce_mod(a, N);
    for (size_t i = 0; i < r.size(); ++i) x.c_[i] = r[i];
    return x;
}

bool Cyclo::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.is_zero(); });
}

std::optional<Rat> Cyclo::to_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return std::nullopt;
    return c_[0];
}

Cyclo Cyclo::operator-() const {
    Cyclo x = *this;
    for (auto& r : x.c_) r = -r;
    return x;
}

static void same_order(const Cyclo& a, const Cyclo& b) {
    if (a.order() != b.order()) throw std::invalid_argument("cyclotomic elements of different orders");
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    same_order(a, b);
    Cyclo x = a;
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += b.c_[i];
    return x;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    same_order(a, b);
    std::vector<Rat> prod(a.c_.size() + b.c_.size(), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) prod[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclo x(a.N_);
    auto r = reduce_mod(prod, a.N_);
    for (size_t i = 0; i < r.size(); ++i) x.c_[i] = r[i];
    return x;
}

Cyclo Cyclo::scaled(const Rat& r) const {
    Cyclo x = *this;
    for (auto& c : x.c_) c *= r;
    return x;
}

Cyclo Cyclo::conj() const {
    std::vector<Rat> a(size_t(N_) + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) a[size_t((N_ - int64_t(i)) % N_)] += c_[i];
    Cyclo x(N_);
    auto r = reduce_mod(a, N_);
    for (size_t i = 0; i < r.size(); ++i) x.c_[i] = r[i];
    return x;
}

std::string Cyclo::str() const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += c_[i].str();
        if (i == 1) out += "*z";
        if (i > 1) out += "*z^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

// ---- groups ------------------------------------------------------------

GroupDesc::GroupDesc(std::vector<int64_t> factors) : n_(std::move(factors)) {
    order_ = 1;
    exp_ = 1;
    for (auto n : n_) {
        if (n < 1) throw std::invalid_argument("invariant factors must be >= 1");
        order_ *= n;
        exp_ = std::lcm(exp_, n);
    }
}

std::vector<int64_t> GroupDesc::elem(int64_t idx) const {
    std::vector<int64_t> x(n_.size());
    for (size_t i = n_.size(); i-- > 0;) {
        x[i] = idx % n_[i];
        idx /= n_[i];
    }
    return x;
}

int64_t GroupDesc::index(const std::vector<int64_t>& x) const {
    int64_t idx = 0;
    for (size_t i = 0; i < n_.size(); ++i) idx = idx * n_[i] + ((x[i] % n_[i]) + n_[i]) % n_[i];
    return idx;
}

int64_t GroupDesc::add(int64_t a, int64_t b) const {
    auto x = elem(a), y = elem(b);
    for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return index(x);
}

int64_t GroupDesc::neg(int64_t a) const {
    auto x = elem(a);
    for (auto& v : x) v = -v;
    return index(x);
}

std::string GroupDesc::elem_str(int64_t idx) const {
    auto x = elem(idx);
    std::string s = "(";
    for (size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

std::string GroupDesc::str() const {
    if (n_.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < n_.size(); ++i) s += (i ? " x " : "") + std::string("Z/") + std::to_string(n_[i]);
    return s;
}

bool Subgroup::contains(int64_t g) const { return std::binary_search(elems.begin(), elems.end(), g); }

namespace {

Subgroup closure(const GroupDesc& G, std::vector<int64_t> gens) {
    std::set<int64_t> s{G.identity()};
    std::vector<int64_t> frontier{G.identity()};
    while (!frontier.empty()) {
        std::vector<int64_t> next;
        for (auto x : frontier)
            for (auto g : gens) {
                int64_t y = G.add(x, g);
                if (s.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {std::vector<int64_t>(s.begin(), s.end())};
}

}  // namespace

std::vector<Subgroup> subgroups(const GroupDesc& G) {
    std::vector<Subgroup> found{trivial_subgroup(G)};
    for (size_t k = 0; k < found.size(); ++k)
        for (int64_t g = 0; g < G.order(); ++g) {
            if (found[k].contains(g)) continue;
            auto gens = found[k].elems;
            gens.push_back(g);
            Subgroup S = closure(G, gens);
            if (std::find(found.begin(), found.end(), S) == found.end()) found.push_back(S);
        }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elems < b.elems;
    });
    return found;
}

Subgroup trivial_subgroup(const GroupDesc& G) { return {{G.identity()}}; }

Subgroup whole_group(const GroupDesc& G) {
    Subgroup S;
    for (int64_t g = 0; g < G.order(); ++g) S.elems.push_back(g);
    return S;
}

bool is_subgroup(const GroupDesc& G, const Subgroup& H) {
    if (H.elems.empty() || !std::is_sorted(H.elems.begin(), H.elems.end())) return false;
    if (!H.contains(G.identity())) return false;
    for (auto a : H.elems) {
        if (a < 0 || a >= G.order()) return false;
        for (auto b : H.elems)
            if (!H.contains(G.add(a, G.neg(b)))) return false;
    }
    return true;
}

// ---- class functions ---------------------------------------------------

ClassFun::ClassFun(GroupDesc G, std::vector<Cyclo> values) : G_(std::move(G)), v_(std::move(values)) {
    if (int64_t(v_.size()) != G_.order()) throw std::invalid_argument("class function has the wrong number of values");
    for (auto& c : v_)
        if (c.order() != G_.exponent()) throw std::invalid_argument("class function values must lie in Q(zeta_exp(G))");
}

ClassFun ClassFun::zero(const GroupDesc& G) {
    return ClassFun(G, std::vector<Cyclo>(size_t(G.order()), Cyclo(G.exponent())));
}

ClassFun ClassFun::from_rationals(const GroupDesc& G, const std::vector<Rat>& values) {
    std::vector<Cyclo> v;
    for (auto& r : values) v.push_back(Cyclo::rational(G.exponent(), r));
    return ClassFun(G, v);
}

static void same_group(const ClassFun& a, const ClassFun& b) {
    if (!(a.group() == b.group())) throw std::invalid_argument("class functions on different groups");
}

ClassFun operator+(const ClassFun& a, const ClassFun& b) {
    same_group(a, b);
    std::vector<Cyclo> v;
    for (size_t i = 0; i < a.v_.size(); ++i) v.push_back(a.v_[i] + b.v_[i]);
    return ClassFun(a.G_, v);
}

ClassFun operator-(const ClassFun& a, const ClassFun& b) { return a + b.scaled(Rat(-1)); }

ClassFun ClassFun::scaled(const Rat& r) const {
    std::vector<Cyclo> v;
    for (auto& c : v_) v.push_back(c.scaled(r));
    return ClassFun(G_, v);
}

bool ClassFun::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](const Cyclo& c) { return c.is_zero(); });
}

std::string ClassFun::str() const {
    std::string s = "[";
    for (size_t i = 0; i < v_.size(); ++i) s += (i ? ", " : "") + v_[i].str();
    return s + "]";
}

Cyclo pairing(const ClassFun& f, const ClassFun& g) {
    same_group(f, g);
    Cyclo acc(f.group().exponent());
    for (int64_t s = 0; s < f.group().order(); ++s) acc = acc + f.at(s) * g.at(s).conj();
    return acc.scaled(Rat(1, f.group().order()));
}

Rat pairing_rational(const ClassFun& f, const ClassFun& g) {
    auto r = pairing(f, g).to_rational();
    if (!r) throw std::logic_error("model error: pairing expected to be rational is " + pairing(f, g).str());
    return *r;
}

ClassFun induce(const GroupDesc& G, const SubgroupFun& f) {
    if (!is_subgroup(G, f.H)) throw std::invalid_argument("induce: H is not a subgroup");
    if (f.values.size() != f.H.elems.size()) throw std::invalid_argument("induce: value count does not match |H|");
    std::vector<Cyclo> out(size_t(G.order()), Cyclo(G.exponent()));
    // (Ind f)(s) = 1/|H| sum_{t in G} f°(t s t^-1), f° = f on H and 0 off H.
    for (int64_t s = 0; s < G.order(); ++s) {
        Cyclo acc(G.exponent());
        for (int64_t t = 0; t < G.order(); ++t) {
            int64_t c = G.add(G.add(t, s), G.neg(t));
            auto it = std::lower_bound(f.H.elems.begin(), f.H.elems.end(), c);
            if (it != f.H.elems.end() && *it == c) acc = acc + f.values[size_t(it - f.H.elems.begin())];
        }
        out[size_t(s)] = acc.scaled(Rat(1, f.H.order()));
    }
    return ClassFun(G, out);
}

SubgroupFun restrict_to(const ClassFun& f, const Subgroup& H) {
    if (!is_subgroup(f.group(), H)) throw std::invalid_argument("restrict: H is not a subgroup");
    SubgroupFun r{H, {}};
    for (auto h : H.elems) r.values.push_back(f.at(h));
    return r;
}

std::vector<ClassFun> characters(const GroupDesc& G) {
    std::vector<ClassFun> out;
    int64_t N = G.exponent();
    for (int64_t a = 0; a < G.order(); ++a) {
        auto av = G.elem(a);
        std::vector<Cyclo> v;
        for (int64_t x = 0; x < G.order(); ++x) {
            auto xv = G.elem(x);
            int64_t k = 0;
            for (size_t i = 0; i < xv.size(); ++i) k += av[i] * xv[i] * (N / G.factors()[i]);
            v.push_back(Cyclo::zeta_pow(N, k));
        }
        out.emplace_back(G, v);
    }
    return out;
}

ClassFun trivial_character(const GroupDesc& G) {
    return ClassFun(G, std::vector<Cyclo>(size_t(G.order()), Cyclo::rational(G.exponent(), Rat(1))));
}

ClassFun regular_character(const GroupDesc& G) {
    std::vector<Rat> v(size_t(G.order()), Rat(0));
    v[size_t(G.identity())] = Rat(G.order());
    return ClassFun::from_rationals(G, v);
}

ClassFun permutation_character(const GroupDesc& G, const Subgroup& H) {
    SubgroupFun one{H, std::vector<Cyclo>(H.elems.size(), Cyclo::rational(G.exponent(), Rat(1)))};
    return induce(G, one);
}

}  // namespace conductor
