#pragma once

// Deterministic, seeded generators for modules, homs, systems, and short
// exact sequences of systems. Random direct/inverse systems are built on
// posets whose Hasse diagram is a tree pointing at the maximum element, so
// comparable pairs have a unique cover path and functoriality holds by
// construction; diamonds (canonical inclusions) and constant systems add
// non-tree shapes.

#include <random>
#include <vector>

#include "modlim/limits.hpp"

namespace modlim {

using Rng = std::mt19937_64;

/// Random module with at most max_gens generators and order at most max_order.
FPModule random_module(Rng& rng, Modulus n, std::size_t max_gens, const Int& max_order);

/// Uniform-ish random hom src -> dst (sampled through the hom module).
ModHom random_hom(Rng& rng, const FPModule& src, const FPModule& dst);

/// All isomorphism classes with at most max_factors invariant factors
/// (order-capped when cap > 0), as direct sums of cyclics. Includes the zero
/// module.
std::vector<FPModule> standard_modules(Modulus n, std::size_t max_factors,
                                       const Int& order_cap = Int(0));

struct SystemOptions {
    std::size_t max_nodes = 5;
    Int max_node_order = Int(64);
    std::size_t max_gens = 3;
};

DirectSystem random_direct_system(Rng& rng, Modulus n, const SystemOptions& opt = {});
InverseSystem random_inverse_system(Rng& rng, Modulus n, const SystemOptions& opt = {});

/// Node-wise short exact sequence of direct systems over a shared poset:
/// split sums, or a constant non-split extension when n admits one.
DirectSystemSES random_direct_system_ses(Rng& rng, Modulus n, const SystemOptions& opt = {});
InverseSystemSES random_inverse_system_ses(Rng& rng, Modulus n, const SystemOptions& opt = {});

}  // namespace modlim
