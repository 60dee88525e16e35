#pragma once

// Additive functors as first-class values, the comparison maps between
// functor-of-(co)limit and (co)limit-of-functor, left satellites, Tor and
// Ext in degree one, and the audit harnesses for the triviality and
// satellite-commutation claims.
//
// A functor is a pair of closures (module action, hom action) plus a
// variance tag. User-supplied functors are never trusted: audits re-check
// the functor laws empirically before relying on them.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modlim/corpus.hpp"
#include "modlim/limits.hpp"

namespace modlim {

enum class Variance { covariant, contravariant };

struct FunctorSpec {
    Variance variance = Variance::covariant;
    std::function<FPModule(const FPModule&)> on_module;
    std::function<ModHom(const ModHom&)> on_hom;
    std::string name;

    FPModule operator()(const FPModule& a) const { return on_module(a); }
    ModHom operator()(const ModHom& f) const { return on_hom(f); }
};

FunctorSpec tensor_by(const FPModule& b);
FunctorSpec hom_from(const FPModule& b);   // Hom(b, -), covariant
FunctorSpec hom_into(const FPModule& c);   // Hom(-, c), contravariant
FunctorSpec identity_functor(Modulus n);

struct FunctorLawReport {
    bool identities = true;
    bool composition = true;
    bool additivity = true;
    std::optional<std::string> failure;
    bool ok() const { return identities && composition && additivity; }
};
/// Empirical law check on seeded random modules and hom pairs.
FunctorLawReport check_functor_laws(const FunctorSpec& t, Modulus n, std::uint64_t seed,
                                    int samples);

/// Apply a covariant functor node-wise; the result is again a direct system.
DirectSystem map_direct_system(const FunctorSpec& t, const DirectSystem& s);
/// A contravariant functor turns a direct system into an inverse system.
InverseSystem map_direct_system_contra(const FunctorSpec& t, const DirectSystem& s);
InverseSystem map_inverse_system(const FunctorSpec& t, const InverseSystem& s);
DirectSystem map_inverse_system_contra(const FunctorSpec& t, const InverseSystem& s);

/// The comparison map for a direct system S:
///   covariant t:      colim t(S) -> t(colim S)  (theta . sigma_a = t(sigma_a))
///   contravariant t:  t(colim S) -> lim t(S)
struct ColimitComparison {
    ModHom map;
    ColimitData base;  // colimit of S
};
ColimitComparison colimit_comparison(const FunctorSpec& t, const DirectSystem& s);
/// True iff the comparison map is an isomorphism.
bool preserves_colimit(const FunctorSpec& t, const DirectSystem& s);

/// The comparison map for an inverse system S:
///   covariant t:      t(lim S) -> lim t(S)   (xi_a . theta = t(xi_a))
///   contravariant t:  colim t(S) -> t(lim S)
struct LimitComparison {
    ModHom map;
    LimitData base;  // limit of S
};
LimitComparison limit_comparison(const FunctorSpec& t, const InverseSystem& s);
bool preserves_limit(const FunctorSpec& t, const InverseSystem& s);

/// First left satellite at a fixed free presentation: the kernel of
/// t(syzygies) -> t(cover).
struct SatelliteValue {
    FPModule value;
    ModHom witness_inclusion;  // value -> t(syzygies)
    Presentation presentation;
};
SatelliteValue satellite(const FunctorSpec& t, const FPModule& a,
                         PresentationMode mode = PresentationMode::economical,
                         const Int& cap = Int(4096));

/// The induced map on satellites, computed by lifting g across the two
/// presentations. When check_second_lift is set and a second lift exists,
/// the result is recomputed with it and compared (lift independence).
ModHom satellite_hom(const FunctorSpec& t, const ModHom& g, const SatelliteValue& src,
                     const SatelliteValue& dst, bool check_second_lift = false);

/// The satellite as a functor; presentations are fixed (economical) and
/// cached per module presentation so repeated calls agree on the nose.
FunctorSpec satellite_functor(const FunctorSpec& t);

/// k-fold iterated satellite; k = 0 gives t(a).
FPModule satellite_iterate(const FunctorSpec& t, const FPModule& a, unsigned k,
                           const Int& cap = Int(4096));

FPModule tor1(const FPModule& b, const FPModule& a);
FPModule ext1(const FPModule& b, const FPModule& a);

/// Audit of the claim: a right exact colimit-preserving functor vanishing
/// on all cyclic quotients (covariant case), or a left exact
/// limit-preserving functor vanishing on all ideals (contravariant case),
/// vanishes on everything. The hypothesis is evaluated over the divisors of
/// n, the conclusion over the given corpus.
struct TrivialityAudit {
    std::string functor_name;
    Variance variance = Variance::covariant;
    Modulus modulus = 0;
    struct HypothesisRow {
        Modulus d;
        std::vector<Modulus> factors;  // invariant factors of t at the test module
    };
    std::vector<HypothesisRow> hypothesis_rows;
    bool hypothesis_holds = false;
    struct CorpusRow {
        std::vector<Modulus> module_factors;
        std::vector<Modulus> value_factors;
        bool vanishes = false;
    };
    std::vector<CorpusRow> corpus_rows;
    bool all_vanish = false;
    std::string verdict;  // CONSISTENT | REFUTED | HYPOTHESIS_NOT_MET
    std::optional<std::size_t> counterexample_index;
};
TrivialityAudit audit_functor_triviality(const FunctorSpec& t, Modulus n,
                                         const std::vector<FPModule>& corpus);

/// Audit of the satellite-commutation claims on a batch of direct systems:
/// (i) if t preserves colimits then so does its satellite; (ii) if the
/// satellite preserves colimits and t preserves colimits of free modules
/// (checked on the node-wise free cover system), then t preserves colimits.
struct SatelliteCommutationAudit {
    std::string functor_name;
    struct Row {
        bool base_preserves = false;
        bool satellite_preserves = false;
        std::optional<bool> free_system_preserves;  // empty: skipped (capacity)
        bool implication_forward = true;
        std::optional<bool> implication_backward;
    };
    std::vector<Row> rows;
    bool forward_holds_everywhere = true;
    bool backward_holds_everywhere = true;  // over rows where it was evaluated
    std::vector<std::size_t> violations;
};
SatelliteCommutationAudit audit_satellite_commutation(const FunctorSpec& t,
                                                      const std::vector<DirectSystem>& systems,
                                                      const Int& free_node_cap = Int(16));

}  // namespace modlim
