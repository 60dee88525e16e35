#pragma once

// Finite posets, direct and inverse systems of modules, and the explicit
// colimit/limit constructions: canonical maps, mediating maps, normal forms,
// induced maps, and exactness checks.
//
// Systems store one validated hom per comparable pair (identities are
// implied), so functoriality is checked once, at construction. Colimit data
// keeps the direct-sum-modulo-compatibility presentation alongside the
// quotient module itself.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "modlim/fpmodule.hpp"

namespace modlim {

class Poset {
public:
    /// relations are (a <= b) pairs; reflexive pairs are implied and the
    /// transitive closure is computed. Antisymmetry violations are rejected.
    Poset(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& relations);

    static Poset chain(std::size_t k);
    static Poset antichain(std::size_t k);

    std::size_t size() const { return size_; }
    bool leq(std::size_t a, std::size_t b) const;

    /// Every pair has an upper bound.
    bool is_directed() const;
    std::optional<std::size_t> maximum() const;
    /// Smallest-index common upper bound of the given nodes, if any.
    std::optional<std::size_t> upper_bound(const std::vector<std::size_t>& nodes) const;

    /// All strictly comparable pairs (a, b) with a <= b, a != b, lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

private:
    std::size_t size_;
    std::vector<char> leq_;
};

class DirectSystem {
public:
    /// maps must contain one hom A_a -> A_b per strict pair a <= b; supplying
    /// reflexive pairs is allowed (they must be identities).
    DirectSystem(Poset poset, std::vector<FPModule> modules,
                 std::map<std::pair<std::size_t, std::size_t>, ModHom> maps);

    static DirectSystem single(const FPModule& a);
    /// A linear chain A_0 -> A_1 -> ... built from consecutive maps.
    static DirectSystem chain_of(const std::vector<ModHom>& steps);

    const Poset& poset() const { return poset_; }
    std::size_t size() const { return poset_.size(); }
    const FPModule& module_at(std::size_t i) const { return modules_[i]; }
    const std::vector<FPModule>& modules() const { return modules_; }
    /// The hom A_a -> A_b for a <= b (identity when a == b).
    ModHom map(std::size_t a, std::size_t b) const;
    Modulus modulus() const { return modules_[0].modulus(); }
    Int total_order() const;

private:
    Poset poset_;
    std::vector<FPModule> modules_;
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps_;
};

class InverseSystem {
public:
    /// maps must contain one hom A_b -> A_a per strict pair a <= b.
    InverseSystem(Poset poset, std::vector<FPModule> modules,
                  std::map<std::pair<std::size_t, std::size_t>, ModHom> maps);

    static InverseSystem single(const FPModule& a);
    /// A linear chain ... -> A_1 -> A_0 built from steps[i]: A_{i+1} -> A_i.
    static InverseSystem chain_of(const std::vector<ModHom>& steps);

    const Poset& poset() const { return poset_; }
    std::size_t size() const { return poset_.size(); }
    const FPModule& module_at(std::size_t i) const { return modules_[i]; }
    const std::vector<FPModule>& modules() const { return modules_; }
    /// The hom A_b -> A_a for a <= b (identity when a == b).
    ModHom map(std::size_t a, std::size_t b) const;
    Modulus modulus() const { return modules_[0].modulus(); }
    Int total_order() const;

private:
    Poset poset_;
    std::vector<FPModule> modules_;
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps_;
};

/// A node-wise family f_i : S'_i -> S_i commuting with the system maps.
struct DirectSystemHom {
    std::vector<ModHom> components;
};
DirectSystemHom make_direct_system_hom(const DirectSystem& src, const DirectSystem& dst,
                                       std::vector<ModHom> components);

struct InverseSystemHom {
    std::vector<ModHom> components;
};
InverseSystemHom make_inverse_system_hom(const InverseSystem& src, const InverseSystem& dst,
                                         std::vector<ModHom> components);

/// The colimit presented as (direct sum of the nodes) / (compatibility
/// submodule), with its canonical maps.
struct ColimitData {
    FPModule colimit;
    std::vector<ModHom> canonical;   // sigma_a : A_a -> colimit
    FPModule big_sum;                // direct sum of all nodes
    std::vector<ModHom> block_injections;  // A_a -> big_sum
    IntMatrix compat_generators;     // columns span the compatibility submodule
    ModHom projection;               // big_sum -> colimit
};
ColimitData colimit(const DirectSystem& s);

/// theta with theta . sigma_a = cocone_a for all nodes.
ModHom colimit_mediating(const DirectSystem& s, const ColimitData& cd,
                         const std::vector<ModHom>& cocone);

/// A single-node representative (a, x_a) of x with sigma_a(x_a) = x.
/// Requires a directed poset.
std::pair<std::size_t, Element> colimit_normal_form(const DirectSystem& s,
                                                    const ColimitData& cd,
                                                    const Element& x);

struct VanishingCheck {
    bool image_zero;      // sigma_a(x) = 0 in the colimit
    bool killed_upward;   // some map A_a -> A_b sends x to 0
};
VanishingCheck colimit_vanishes_detail(const DirectSystem& s, const ColimitData& cd,
                                       std::size_t node, const Element& x);
/// Requires a directed poset; both characterizations are computed and must
/// agree.
bool colimit_vanishes(const DirectSystem& s, std::size_t node, const Element& x);

/// The unique F with F . sigma'_a = sigma_a . f_a.
ModHom induced_colimit_map(const DirectSystemHom& h, const DirectSystem& src,
                           const ColimitData& src_cd, const DirectSystem& dst,
                           const ColimitData& dst_cd);

/// Node-wise short exact 0 -> sub -> mid -> quot -> 0, validated.
struct DirectSystemSES {
    DirectSystem sub, mid, quot;
    DirectSystemHom inj, surj;
};
DirectSystemSES make_direct_system_ses(DirectSystem sub, DirectSystem mid, DirectSystem quot,
                                       std::vector<ModHom> inj, std::vector<ModHom> surj);

struct ColimitExactnessReport {
    bool middle_exact;
    bool right_surjective;
    bool exact;  // both of the above
    // first witness coordinates on failure, in the respective colimit
    std::optional<std::vector<Int>> middle_certificate;
    std::optional<std::vector<Int>> surjectivity_certificate;
};
ColimitExactnessReport check_colimit_right_exact(const DirectSystemSES& ses);

/// The limit presented as the compatible-tuples submodule of the product.
struct LimitData {
    FPModule limit;
    std::vector<ModHom> canonical;   // xi_a : limit -> A_a
    FPModule product;
    std::vector<ModHom> projections; // product -> A_a
    ModHom inclusion;                // limit -> product
};
LimitData limit(const InverseSystem& s);

/// theta with xi_a . theta = cone_a for all nodes.
ModHom limit_mediating(const InverseSystem& s, const LimitData& ld,
                       const std::vector<ModHom>& cone);

ModHom induced_limit_map(const InverseSystemHom& h, const InverseSystem& src,
                         const LimitData& src_ld, const InverseSystem& dst,
                         const LimitData& dst_ld);

struct InverseSystemSES {
    InverseSystem sub, mid, quot;
    InverseSystemHom inj, surj;
};
InverseSystemSES make_inverse_system_ses(InverseSystem sub, InverseSystem mid,
                                         InverseSystem quot, std::vector<ModHom> inj,
                                         std::vector<ModHom> surj);

struct LimitExactnessReport {
    bool left_injective;
    bool middle_exact;
    bool left_exact;          // the verdict: both of the above
    bool right_surjective;    // reported, not asserted
    std::optional<std::vector<Int>> left_certificate;
    std::optional<std::vector<Int>> middle_certificate;
};
LimitExactnessReport check_limit_left_exact(const InverseSystemSES& ses);

}  // namespace modlim
