#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conductor/annulus.hpp"
#include "conductor/groups.hpp"
#include "conductor/upstairs.hpp"

namespace conductor {

struct CriticalRadius : std::runtime_error {
    explicit CriticalRadius(const std::string& what) : std::runtime_error("critical radius: " + what) {}
};
struct UnsupportedDecomposition : std::runtime_error {
    explicit UnsupportedDecomposition(const std::string& what)
        : std::runtime_error("unsupported decomposition: " + what) {}
};

struct BaseField {
    int64_t p = 2, q = 2, e = 1, precision = 64;
    const GF* F = nullptr;
    static BaseField make(int64_t q, int64_t e, int64_t precision);
};

enum class CoverKind { Kummer, ArtinSchreier, Compositum, Monic };
const char* kind_name(CoverKind k);

// A Galois (or, for Monic, merely finite) cover of the annulus given by
// equations over the Laurent ring.  Variables upstairs: the Kummer variable
// first (if any), then the Artin-Schreier variable.
struct CoverSpec {
    CoverKind kind = CoverKind::Monic;
    BaseField base;
    Interval interval;
    int64_t m = 1;
    LaurentPoly u;                 // Kummer: y^m = u
    LaurentPoly g, g_red;          // Artin-Schreier: y^p - y = g (reduced form used throughout)
    std::vector<LaurentPoly> P;    // Monic: y^d + sum_{j<d} P[j] y^j
    GroupDesc group;
    bool abelian = false;
    UpRing ring;
    int kummer_var = -1, as_var = -1;

    static CoverSpec kummer(const BaseField& b, int64_t m, const LaurentPoly& u, const Interval& iv);
    static CoverSpec artin_schreier(const BaseField& b, const LaurentPoly& g, const Interval& iv);
    static CoverSpec compositum(const BaseField& b, int64_t m, const LaurentPoly& u, const LaurentPoly& g,
                                const Interval& iv);
    static CoverSpec monic(const BaseField& b, const std::vector<LaurentPoly>& coeffs, const Interval& iv);
    static CoverSpec identity(const BaseField& b, const Interval& iv);

    int64_t degree() const { return ring.rank(); }
    bool has_kummer() const { return kummer_var >= 0; }
    bool has_as() const { return as_var >= 0; }
    bool is_identity() const { return degree() == 1; }
    CoverSpec restricted(const Interval& iv) const;
    std::string describe() const;
};

// Artin-Schreier reduction: drops the constant term and replaces a*xi^i with
// a^(1/p)*xi^(i/p) while p | i.
LaurentPoly as_reduce(const LaurentPoly& g, int64_t p);

// Action of a group element on an upstairs element (abelian kinds).
UpRing::Elem apply_automorphism(const CoverSpec& c, int64_t sigma, const UpRing::Elem& a);

// Quotient cover by a subgroup (abelian kinds).
CoverSpec quotient(const CoverSpec& c, const Subgroup& H);

// Fiber structure over one radius.
struct LocalStructure {
    Rat t;
    int64_t components = 1;   // number of upstairs components over the circle
    int64_t comp_degree = 1;  // degree of each component
    bool wild = false;
};
LocalStructure local_structure(const CoverSpec& c, const Rat& t);

// Valuations of the upstairs variables at a branch; single component only.
Frame frame_at(const CoverSpec& c, const Rat& t, int o);

// Monomial y^a xi^w whose residue has order exactly one upstairs.
struct Uniformizer {
    UpRing::Key a;
    int64_t w = 0;
};
Uniformizer uniformizer(const CoverSpec& c, const Frame& fr);
UpRing::Elem uniformizer_elem(const CoverSpec& c, const Uniformizer& u);

// Order (upstairs units) of dlog xi / dlog eta at the branch, eta the uniformizer.
int64_t dlog_order(const CoverSpec& c, const Frame& fr, const Uniformizer& un);
// Derivative order of xi with respect to the uniformizer at the outer branch,
// with the alpha-slope cross-check between two radii.
int64_t derivative_order(const CoverSpec& c, const Rat& t, const Rat& t_check);
// Boundary discriminant order of the fiber at radius t, branch b (sum over components).
int64_t boundary_disc_order(const CoverSpec& c, const Rat& t, Branch b);

std::vector<Rat> critical_radii(const CoverSpec& c);

struct ComponentData {
    int64_t degree;
    int64_t sigma;
};
struct AnnulusPiece {
    Interval iv;  // open interval
    std::vector<ComponentData> components;
    int64_t delta_f = 1;
    bool wild = false;
    int64_t sigma_total() const;
};
std::vector<AnnulusPiece> decompose(const CoverSpec& c);

// Non-critical sample radii strictly inside (lo, hi).
std::vector<Rat> interior_samples(const Interval& iv, int k);
// Closed pieces between consecutive critical radii.
std::vector<Interval> piece_intervals(const CoverSpec& c);

// Lattice data for single-variable covers.
std::optional<LaurentPoly> defining_poly_disc(const CoverSpec& c);  // disc_y of the defining polynomial
bool lattice_applies(const CoverSpec& c, const Rat& t);
Rat lattice_disc_at(const CoverSpec& c, const Rat& t);

}  // namespace conductor
