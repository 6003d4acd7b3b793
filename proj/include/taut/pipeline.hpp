#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "taut/bps.hpp"
#include "taut/relations.hpp"

namespace taut {

// Rings of computed types, one per (d, chi up to chi -> chi+d and chi -> -chi, kind).
class Registry {
public:
    struct Lookup {
        Ring* ring = nullptr;
        bool sign_map = false;  // the stored ring is reached by c_k(j) -> (-1)^k c_k(j)
    };

    // Representative chi0 in [0, d/2] and whether chi ~ -chi0.
    static std::pair<int, bool> canonical(int d, int chi);
    static std::string key(int d, int chi, Kind kind);

    Lookup lookup(const ToppType& a, Kind kind) const;
    Ring& insert(std::unique_ptr<Ring> r);
    std::vector<const Ring*> rings() const;

    void save(const std::string& path) const;
    static Registry load(const std::string& path);  // re-verifies stored ranks

private:
    std::map<std::string, std::unique_ptr<Ring>> rings_;
};

struct BuildOptions {
    int dmax = 0;
    std::optional<std::vector<long>> target;  // Hilbert function of the quotient, degrees 0..dmax
    bool virasoro = true, mr = true, gmr = true, br = true;
    bool use_ln = false;
    bool primitive_only = false;  // skip the full MR and GMR sweeps
    int gmr_max_dprime = 0;  // 0: every partner in the window
    bool gmr_spaces_only = true;
    bool exhaust = false;     // run every family at every degree even when the target is met
    bool pd_complete = false; // spaces: finish with Poincare-duality completion
    std::function<void(const std::string&)> log;
};

struct TraceStep {
    int degree;
    std::string family;  // Virasoro, PrimMR, MR, PrimGMR, GMR, BR, PD
    int rows;            // candidate relations generated
    int pivots;          // variables newly expressed
    int relations;       // independent relations added to the ideal
    int hilbert;         // quotient dimension after the step
};

enum class BuildStatus { Complete, Incomplete };

struct BuildReport {
    BuildStatus status = BuildStatus::Complete;
    int stuck_degree = -1;
    std::string reason;
    std::vector<TraceStep> trace;
    std::vector<int> hilbert;
    bool gorenstein = false;  // spaces only
};

std::unique_ptr<Ring> build_ring(const ToppType& a, Kind kind, const Registry& reg, const BuildOptions& opt,
                                 BuildReport& rep);

// Returns the registry representative for a (reached from a as Registry::lookup reports), building it (and first every ring it depends on, with
// default options) when missing. Stacks get their target series unless opt supplies one.
Ring& ensure_ring(const ToppType& a, Kind kind, Registry& reg, const BuildOptions& opt, BuildReport* rep = nullptr);

// R_n (R_n^delta on spaces, or L_n / L_n^delta) of each generator into degrees <= Dtarget,
// normal-formed; only nonzero results.
std::vector<Polynomial> virasoro_closure(Ring& r, const std::vector<Polynomial>& gens, int Dtarget, bool use_ln = false);

// Generators (and elimination relations v - E_v) whose images under the Virasoro operators
// n = 1..nmax fall outside the ideal; empty when the ideal is preserved.
std::vector<std::string> virasoro_defects(Ring& r, int nmax);
// Mutual containment of the two ideals through the smaller truncation.
bool same_ideal(Ring& a, Ring& b);

// Spaces: quotient by the kernel of the pairing into the top degree, to a fixpoint.
// Returns the number of relations added; throws if the top degree is not one-dimensional.
int pd_complete(Ring& r);
bool is_gorenstein(Ring& r);

// Substitutes c_1(1) = 0 into a stack ring of coprime type.
std::unique_ptr<Ring> descend_to_space(Ring& stack);

// Minimal presentation counts: generators surviving linear relations, and minimal
// relations per degree net of those linear ones.
struct TrimmedShape {
    int generators = 0;
    std::map<int, int> relations;  // q-degree -> count
    int total() const;
};
TrimmedShape trimmed_shape(Ring& r);

// Stacks: Hilbert function 0..dmax from the integrality identity along the slope of a, using
// the space rings M_{k r, 1} of the registry (chi-independence). Spaces: none.
std::optional<std::vector<long>> target_series(const ToppType& a, Kind kind, const Registry& reg, int dmax);

// Default truncation: spaces dim+1, stacks as given.
int default_dmax(const ToppType& a, Kind kind);

}  // namespace taut
