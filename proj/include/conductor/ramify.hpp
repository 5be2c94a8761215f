#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conductor/covers.hpp"

namespace conductor {

// Generator of the boundary extension at one branch: the monomial
// uniformizer b, with the valuations of sigma(b)/b - 1 for sigma != 1.
struct GeneratorModel {
    Rat t;
    Branch branch = Branch::Outer;
    bool split = false;  // tame multi-component fiber: no generator data needed
    Uniformizer gen;
    UpVal gen_val;
    struct Diff {
        int64_t sigma;
        Rat alpha;     // v^alpha(sigma(b)/b - 1)
        int64_t beta;  // v^beta(sigma(b)/b - 1), upstairs units
    };
    std::vector<Diff> diffs;
};
GeneratorModel generator_model(const CoverSpec& c, const Rat& t, Branch b);

enum class DiscRoute { Auto, Pairing, Lattice };
const char* route_name(DiscRoute r);

struct Check {
    std::string name;
    std::string status;  // "pass" | "fail" | "not-computed"
    std::string lhs, rhs;
    std::vector<std::string> witnesses;
    std::string detail;
    bool passed() const { return status != "fail"; }
};
Check make_check(std::string name, bool ok, std::string lhs, std::string rhs, std::vector<std::string> witnesses = {},
                 std::string detail = {});

struct NearbyCyclesLedger {
    int64_t sigma = 0, sigma_prime = 0, delta_f = 0, delta_f_prime = 0;
    std::optional<int64_t> lhs_sum;  // only for the catalogue of known singularity invariants
    int64_t rhs = 0;
    Rat disc_slope_difference;
};

struct PhiSample {
    Rat t;
    Rat phi;
};

struct OneSidedLimits {
    Rat t;
    Rat left, right;
};

struct ConductorReport {
    PLFun sw_fun;
    std::vector<AffinePiece> pieces;
    std::vector<PhiSample> phi_vals;
    std::vector<OneSidedLimits> critical_limits;
    std::vector<Check> checks;
    NearbyCyclesLedger ledger;
    bool all_pass() const;
};

// Per-cover engine with memoized per-radius results.  Thread-safe.
class Ramify {
public:
    explicit Ramify(CoverSpec c);
    const CoverSpec& cover() const { return c_; }

    const std::vector<Rat>& critical() const { return crit_; }
    const std::vector<Interval>& pieces() const { return pieces_; }
    const std::vector<AnnulusPiece>& decomposition();
    bool is_critical(const Rat& t) const;

    ClassFun artin_classfun(const Rat& t);
    ClassFun swan_beta_branch(const Rat& t, Branch b);
    ClassFun swan_beta_classfun(const Interval& iv);

    // Evaluate f at interior samples of every piece, fit affine pieces
    // (two fit points, `witnesses` further checks), and assemble.
    std::vector<AffinePiece> piecewise(const std::function<Rat(const Rat&)>& f, int witnesses = 3);

    Rat disc_at(const Rat& t, DiscRoute route);
    PLFun discriminant_fun(DiscRoute route = DiscRoute::Auto);
    PLFun swan_as(const ClassFun& chi);
    Rat phi_s(const ClassFun& chi, const Rat& t);
    ConductorReport conductor_battery(const ClassFun& chi);

    NearbyCyclesLedger nearby_cycles();
    bool in_delta_catalogue() const;

    // Cover-level batteries.
    Check discriminant_slope_check();
    Check route_agreement_check();
    Check discvar_check(int samples_per_piece = 7);
    std::vector<Check> subgroup_battery();

private:
    DiscRoute resolve(DiscRoute r) const;
    void require_abelian() const;
    CoverSpec c_;
    std::vector<Rat> crit_;
    std::vector<Interval> pieces_;
    std::mutex mu_;
    std::optional<std::vector<AnnulusPiece>> decomp_;
    std::map<Rat, ClassFun> artin_cache_;
    std::map<std::pair<Rat, int>, ClassFun> swan_cache_;
};

}  // namespace conductor
