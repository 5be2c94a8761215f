#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conductor/rat.hpp"

namespace conductor {

// Element of Q(zeta_N): coordinates in the power basis 1, z, ..., z^(phi(N)-1)
// reduced modulo the N-th cyclotomic polynomial, so equality is coordinate
// equality.
class Cyclo {
public:
    Cyclo() = default;
    explicit Cyclo(int64_t N);
    static Cyclo rational(int64_t N, const Rat& r);
    static Cyclo zeta_pow(int64_t N, int64_t k);

    int64_t order() const { return N_; }
    const std::vector<Rat>& coords() const { return c_; }
    bool is_zero() const;
    std::optional<Rat> to_rational() const;

    Cyclo operator-() const;
    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    Cyclo scaled(const Rat& r) const;
    Cyclo conj() const;
    friend bool operator==(const Cyclo&, const Cyclo&) = default;

    std::string str() const;

private:
    int64_t N_ = 1;
    std::vector<Rat> c_;
};

// Coefficients (low to high) of the N-th cyclotomic polynomial.
std::vector<int64_t> cyclotomic_poly(int64_t N);

// G = prod Z/n_i; elements are indexed in mixed radix with the first
// factor varying slowest.
class GroupDesc {
public:
    GroupDesc() = default;
    explicit GroupDesc(std::vector<int64_t> factors);

    const std::vector<int64_t>& factors() const { return n_; }
    int64_t order() const { return order_; }
    int64_t exponent() const { return exp_; }

    std::vector<int64_t> elem(int64_t idx) const;
    int64_t index(const std::vector<int64_t>& x) const;
    int64_t add(int64_t a, int64_t b) const;
    int64_t neg(int64_t a) const;
    int64_t identity() const { return 0; }
    std::string elem_str(int64_t idx) const;

    friend bool operator==(const GroupDesc&, const GroupDesc&) = default;
    std::string str() const;

private:
    std::vector<int64_t> n_;
    int64_t order_ = 1, exp_ = 1;
};

struct Subgroup {
    std::vector<int64_t> elems;  // sorted element indices of the ambient group
    int64_t order() const { return int64_t(elems.size()); }
    bool contains(int64_t g) const;
    friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

// All subgroups, ordered by (order, element list).
std::vector<Subgroup> subgroups(const GroupDesc& G);
Subgroup trivial_subgroup(const GroupDesc& G);
Subgroup whole_group(const GroupDesc& G);
bool is_subgroup(const GroupDesc& G, const Subgroup& H);

class ClassFun {
public:
    ClassFun() = default;
    ClassFun(GroupDesc G, std::vector<Cyclo> values);
    static ClassFun zero(const GroupDesc& G);
    static ClassFun from_rationals(const GroupDesc& G, const std::vector<Rat>& values);

    const GroupDesc& group() const { return G_; }
    const std::vector<Cyclo>& values() const { return v_; }
    const Cyclo& at(int64_t g) const { return v_[size_t(g)]; }

    friend ClassFun operator+(const ClassFun& a, const ClassFun& b);
    friend ClassFun operator-(const ClassFun& a, const ClassFun& b);
    ClassFun scaled(const Rat& r) const;
    friend bool operator==(const ClassFun&, const ClassFun&) = default;
    bool is_zero() const;

    std::string str() const;

private:
    GroupDesc G_;
    std::vector<Cyclo> v_;
};

// <f, g> = (1/|G|) sum f(s) conj(g(s)).
Cyclo pairing(const ClassFun& f, const ClassFun& g);
// Pairing that must be rational; throws otherwise.
Rat pairing_rational(const ClassFun& f, const ClassFun& g);

// Class function on H given by its values on H.elems (same order).
struct SubgroupFun {
    Subgroup H;
    std::vector<Cyclo> values;
};
ClassFun induce(const GroupDesc& G, const SubgroupFun& f);
SubgroupFun restrict_to(const ClassFun& f, const Subgroup& H);

// All |G| one-dimensional characters, indexed like the elements: character
// a sends x to prod zeta_{n_i}^(a_i x_i).
std::vector<ClassFun> characters(const GroupDesc& G);
ClassFun trivial_character(const GroupDesc& G);
ClassFun regular_character(const GroupDesc& G);
// Q[G/H] = Ind_H^G 1.
ClassFun permutation_character(const GroupDesc& G, const Subgroup& H);

}  // namespace conductor
