#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conductor {

// Finite field F_q, q = p^m. Elements are indices 0..q-1: the base-p digits
// of the index are the coefficients of a polynomial in the generator modulo
// a fixed irreducible. Index 0 is zero, index 1 is one.
class GF {
public:
    using Elem = uint32_t;

    // Shared immutable instance per (p, m). Instances live for the whole
    // program, so raw pointers to them stay valid.
    static const GF* get(int64_t p, int64_t m);
    // Convenience: q must be a prime power.
    static const GF* of_order(int64_t q);

    int64_t p() const { return p_; }
    int64_t m() const { return m_; }
    int64_t q() const { return q_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(int64_t n) const;
    // Primitive element and its powers.
    Elem gen() const { return exp_[1 % (q_ - 1)]; }
    Elem gen_pow(int64_t k) const;

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, int64_t k) const;

    // c^(1/p) = c^(p^(m-1)).
    Elem frobenius_root(Elem c) const;
    // Primitive n-th root of unity; throws "residue field too small" unless n | q-1.
    Elem root_of_unity(int64_t n) const;

    // Discrete log base gen(); a must be nonzero.
    int64_t log(Elem a) const { return log_[a]; }

    // "0", "3", "g", "g^5".
    std::string str(Elem a) const;

private:
    GF(int64_t p, int64_t m);
    int64_t p_, m_, q_;
    std::vector<int64_t> modulus_;  // monic, degree m, low to high
    std::vector<Elem> exp_;
    std::vector<int64_t> log_;
};

// Primality / prime-power helpers.
bool is_prime(int64_t n);
// Returns (p, m) with q = p^m, or throws.
std::pair<int64_t, int64_t> prime_power(int64_t q);

}  // namespace conductor
