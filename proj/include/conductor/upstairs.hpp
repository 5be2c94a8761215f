#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "conductor/annulus.hpp"
#include "conductor/laurent.hpp"

namespace conductor {

// Internal invariant violated; never swallowed.
struct ModelError : std::logic_error {
    explicit ModelError(const std::string& what) : std::logic_error("model error: " + what) {}
};

// Ring of functions upstairs: Laurent polynomials in xi adjoined with
// variables y_1..y_k, each reduced by a monic relation
//   y_i^(d_i) = sum_{j < d_i} rel_i[j] * y_i^j.
class UpRing {
public:
    struct Var {
        int64_t degree;
        std::vector<LaurentPoly> rel;  // size degree
    };
    using Key = std::vector<int64_t>;
    using Elem = std::map<Key, LaurentPoly>;

    UpRing() = default;
    UpRing(const GF* F, std::vector<Var> vars);

    const GF* field() const { return F_; }
    size_t nvars() const { return vars_.size(); }
    const Var& var_def(size_t i) const { return vars_[i]; }
    int64_t rank() const;  // product of degrees

    Elem zero() const { return {}; }
    Elem constant(const LaurentPoly& c) const;
    Elem monomial(const Key& exps, const LaurentPoly& c) const;  // exponents may exceed degrees
    Elem var(size_t i) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem scale(const Elem& a, const LaurentPoly& c) const;
    Elem pow(const Elem& a, int64_t k) const;

    // Partial derivatives of the i-th relation R_i = y^d - sum rel_j y^j.
    Elem relation_dy(size_t i) const;
    Elem relation_dxi(size_t i) const;

    // Multiplication-by-a matrix in the monomial basis (single variable only),
    // entries M[row][col] = coefficient of y^row in a * y^col.
    std::vector<std::vector<LaurentPoly>> mult_matrix(const Elem& a) const;

private:
    Elem reduce(Elem a) const;
    const GF* F_ = nullptr;
    std::vector<Var> vars_;
};

bool is_zero(const UpRing::Elem& a);

// Valuations of the variables at one boundary branch: y_i has valuation
// (alpha_i, beta_i) with beta in base units (xi-bar has beta = orientation).
struct Frame {
    Rat t;
    int o = 1;
    std::vector<Rat> alpha, beta;
    int64_t index = 1;  // value-group index of the upstairs residue field
};

// A frame describes a single upstairs component exactly when the monomial
// basis has pairwise distinct beta classes modulo Z.
bool frame_is_single_component(const UpRing& R, const Frame& fr);

struct UpVal {
    Rat alpha;
    Rat beta;  // base units; multiply by frame.index for upstairs units
};
// Exact valuation of a nonzero element in a single-component frame.
UpVal valuation(const UpRing& R, const UpRing::Elem& a, const Frame& fr);

// Determinant of a square matrix of Laurent polynomials.
LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& M, const GF* F);

}  // namespace conductor
