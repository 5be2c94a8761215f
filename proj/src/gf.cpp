#include "conductor/gf.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace conductor {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<int64_t, int64_t> prime_power(int64_t q) {
    if (q < 2) throw std::invalid_argument("field order must be a prime power >= 2");
    int64_t p = 2;
    while (q % p != 0) ++p;
    int64_t m = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++m;
    }
    if (r != 1) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
    return {p, m};
}

namespace {

using Poly = std::vector<int64_t>;  // coefficients mod p, low to high

std::vector<int64_t> digits(uint64_t a, int64_t p, int64_t m) {
    std::vector<int64_t> d(size_t(m), 0);
    for (int64_t i = 0; i < m; ++i) {
        d[size_t(i)] = int64_t(a % uint64_t(p));
        a /= uint64_t(p);
    }
    return d;
}

uint32_t undigits(const std::vector<int64_t>& d, int64_t p) {
    uint64_t a = 0;
    for (size_t i = d.size(); i-- > 0;) a = a * uint64_t(p) + uint64_t(d[i]);
    return uint32_t(a);
}

// Multiply two residues mod a monic modulus of degree m.
std::vector<int64_t> mulmod(const std::vector<int64_t>& a, const std::vector<int64_t>& b, const Poly& mod, int64_t p) {
    size_t m = mod.size() - 1;
    std::vector<int64_t> r(2 * m, 0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    for (size_t k = 2 * m - 1; k >= m; --k) {
        int64_t c = r[k];
        if (c == 0) continue;
        for (size_t i = 0; i <= m; ++i) r[k - m + i] = ((r[k - m + i] - c * mod[i]) % p + p) % p;
    }
    r.resize(m);
    return r;
}

// Does x have multiplicative order q-1 in F_p[x]/(mod)?  This also proves
// mod irreducible: a reducible modulus has fewer than q-1 units.
bool x_is_primitive(const Poly& mod, int64_t p, int64_t q) {
    size_t m = mod.size() - 1;
    std::vector<int64_t> x(m, 0), cur(m, 0);
    if (m == 1) {
        x[0] = ((-mod[0]) % p + p) % p;
    } else {
        x[1] = 1;
    }
    cur[0] = 1;
    for (int64_t k = 1; k <= q - 1; ++k) {
        cur = mulmod(cur, x, mod, p);
        bool is_one = cur[0] == 1;
        for (size_t i = 1; i < m && is_one; ++i) is_one = cur[i] == 0;
        if (is_one) return k == q - 1;
    }
    return false;
}

}  // namespace

GF::GF(int64_t p, int64_t m) : p_(p), m_(m), q_(1) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (m < 1) throw std::invalid_argument("field degree must be >= 1");
    for (int64_t i = 0; i < m; ++i) q_ *= p;
    if (q_ > (1 << 20)) throw std::invalid_argument("field too large for table arithmetic");

    // First primitive monic polynomial in lexicographic order of its
    // coefficient digits; for m = 1 this is x - g with g the least
    // primitive root mod p.
    for (int64_t code = 0; code < q_; ++code) {
        Poly mod = digits(uint64_t(code), p, m);
        mod.push_back(1);
        if (mod[0] == 0 && m > 1) continue;
        if (m == 1 && mod[0] == 0 && p > 2) continue;
        if (x_is_primitive(mod, p, q_)) {
            modulus_ = mod;
            break;
        }
    }
    if (modulus_.empty()) throw std::logic_error("no primitive polynomial found");

    exp_.assign(size_t(q_ - 1), 0);
    log_.assign(size_t(q_), -1);
    std::vector<int64_t> x(size_t(m), 0), cur(size_t(m), 0);
    if (m == 1)
        x[0] = ((-modulus_[0]) % p + p) % p;
    else
        x[1] = 1;
    cur[0] = 1;
    for (int64_t k = 0; k < q_ - 1; ++k) {
        Elem e = undigits(cur, p);
        exp_[size_t(k)] = e;
        log_[e] = k;
        cur = mulmod(cur, x, modulus_, p);
    }
}

const GF* GF::get(int64_t p, int64_t m) {
    static std::mutex mu;
    static std::map<std::pair<int64_t, int64_t>, std::unique_ptr<GF>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, m}];
    if (!slot) slot.reset(new GF(p, m));
    return slot.get();
}

const GF* GF::of_order(int64_t q) {
    auto [p, m] = prime_power(q);
    return get(p, m);
}

GF::Elem GF::from_int(int64_t n) const {
    n %= p_;
    if (n < 0) n += p_;
    return Elem(n);  // constants sit in digit 0
}

GF::Elem GF::gen_pow(int64_t k) const {
    k %= (q_ - 1);
    if (k < 0) k += q_ - 1;
    return exp_[size_t(k)];
}

GF::Elem GF::add(Elem a, Elem b) const {
    if (m_ == 1) return Elem((a + b) % uint32_t(p_));
    uint64_t r = 0, place = 1;
    for (int64_t i = 0; i < m_; ++i) {
        uint64_t s = (a % p_ + b % p_) % p_;
        r += s * place;
        place *= uint64_t(p_);
        a /= uint32_t(p_);
        b /= uint32_t(p_);
    }
    return Elem(r);
}

GF::Elem GF::neg(Elem a) const {
    uint64_t r = 0, place = 1;
    for (int64_t i = 0; i < m_; ++i) {
        uint64_t d = a % p_;
        r += ((uint64_t(p_) - d) % uint64_t(p_)) * place;
        place *= uint64_t(p_);
        a /= uint32_t(p_);
    }
    return Elem(r);
}

GF::Elem GF::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GF::Elem GF::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[size_t((log_[a] + log_[b]) % (q_ - 1))];
}

GF::Elem GF::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    return exp_[size_t((q_ - 1 - log_[a]) % (q_ - 1))];
}

GF::Elem GF::pow(Elem a, int64_t k) const {
    if (a == 0) {
        if (k == 0) return 1;
        if (k < 0) throw std::domain_error("negative power of zero in F_q");
        return 0;
    }
    __int128 e = (__int128(log_[a]) * k) % (q_ - 1);
    if (e < 0) e += q_ - 1;
    return exp_[size_t(e)];
}

GF::Elem GF::frobenius_root(Elem c) const {
    int64_t e = 1;
    for (int64_t i = 0; i + 1 < m_; ++i) e *= p_;
    return pow(c, e);
}

GF::Elem GF::root_of_unity(int64_t n) const {
    if (n < 1 || (q_ - 1) % n != 0)
        throw std::invalid_argument("residue field too small: F_" + std::to_string(q_) +
                                    " has no primitive " + std::to_string(n) +
                                    "-th root of unity; enlarge q so that n | q-1");
    return gen_pow((q_ - 1) / n);
}

std::string GF::str(Elem a) const {
    if (a < Elem(p_)) return std::to_string(a);
    int64_t k = log_[a];
    if (k == 1) return "g";
    return "g^" + std::to_string(k);
}

}  // namespace conductor
