#include "modlim/functors.hpp"

#include <map>

namespace modlim {

namespace {

void require_covariant(const FunctorSpec& t, const char* where) {
    if (t.variance != Variance::covariant)
        throw InputError(std::string(where) + ": covariant functor required");
}

void require_contravariant(const FunctorSpec& t, const char* where) {
    if (t.variance != Variance::contravariant)
        throw InputError(std::string(where) + ": contravariant functor required");
}

std::string factor_list(const FPModule& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.invariant_factors().size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a.invariant_factors()[i]);
    }
    return out + "]";
}

}  // namespace

FunctorSpec tensor_by(const FPModule& b) {
    FunctorSpec t;
    t.variance = Variance::covariant;
    t.name = "tensor_by" + factor_list(b);
    t.on_module = [b](const FPModule& a) { return tensor_product(a, b).module; };
    t.on_hom = [b](const ModHom& f) {
        FPModule ts = tensor_product(f.src(), b).module;
        FPModule td = tensor_product(f.dst(), b).module;
        return ModHom(ts, td,
                      IntMatrix::kronecker(f.matrix(), IntMatrix::identity(b.generators())));
    };
    return t;
}

FunctorSpec hom_from(const FPModule& b) {
    FunctorSpec t;
    t.variance = Variance::covariant;
    t.name = "hom_from" + factor_list(b);
    t.on_module = [b](const FPModule& a) { return hom_module(b, a).module; };
    t.on_hom = [b](const ModHom& f) {
        HomModule hs = hom_module(b, f.src());
        HomModule hd = hom_module(b, f.dst());
        IntMatrix m(hd.module.generators(), hs.module.generators());
        for (std::size_t j = 0; j < hs.module.generators(); ++j) {
            std::vector<Int> unit(hs.module.generators(), Int(0));
            unit[j] = 1;
            ModHom post = compose(f, hs.decode(unit));
            m.set_col(j, hd.encode(post));
        }
        return ModHom(hs.module, hd.module, std::move(m));
    };
    return t;
}

FunctorSpec hom_into(const FPModule& c) {
    FunctorSpec t;
    t.variance = Variance::contravariant;
    t.name = "hom_into" + factor_list(c);
    t.on_module = [c](const FPModule& a) { return hom_module(a, c).module; };
    t.on_hom = [c](const ModHom& f) {
        HomModule hd = hom_module(f.dst(), c);
        HomModule hs = hom_module(f.src(), c);
        IntMatrix m(hs.module.generators(), hd.module.generators());
        for (std::size_t j = 0; j < hd.module.generators(); ++j) {
            std::vector<Int> unit(hd.module.generators(), Int(0));
            unit[j] = 1;
            ModHom pre = compose(hd.decode(unit), f);
            m.set_col(j, hs.encode(pre));
        }
        return ModHom(hd.module, hs.module, std::move(m));
    };
    return t;
}

FunctorSpec identity_functor(Modulus n) {
    FunctorSpec t;
    t.variance = Variance::covariant;
    t.name = "identity(" + std::to_string(n) + ")";
    t.on_module = [](const FPModule& a) { return a; };
    t.on_hom = [](const ModHom& f) { return f; };
    return t;
}

FunctorLawReport check_functor_laws(const FunctorSpec& t, Modulus n, std::uint64_t seed,
                                    int samples) {
    FunctorLawReport rep;
    Rng rng(seed);
    for (int iter = 0; iter < samples && rep.ok(); ++iter) {
        FPModule a = random_module(rng, n, 2, Int(16));
        FPModule b = random_module(rng, n, 2, Int(16));
        FPModule c = random_module(rng, n, 2, Int(16));
        ModHom f = random_hom(rng, a, b);
        ModHom g = random_hom(rng, b, c);
        ModHom f2 = random_hom(rng, a, b);

        if (!t(ModHom::identity(a)).equal_as_maps(ModHom::identity(t(a)))) {
            rep.identities = false;
            rep.failure = "identity not preserved on a module with factors " + factor_list(a);
            break;
        }
        ModHom gf = compose(g, f);
        ModHom lhs = t(gf);
        ModHom rhs = t.variance == Variance::covariant ? compose(t(g), t(f))
                                                       : compose(t(f), t(g));
        if (!lhs.equal_as_maps(rhs)) {
            rep.composition = false;
            rep.failure = "composition law fails on a random pair (sample " +
                          std::to_string(iter) + ")";
            break;
        }
        if (!t(f + f2).equal_as_maps(t(f) + t(f2))) {
            rep.additivity = false;
            rep.failure = "additivity fails on a random pair (sample " +
                          std::to_string(iter) + ")";
            break;
        }
    }
    return rep;
}

// --- systems under a functor ---------------------------------------------------

DirectSystem map_direct_system(const FunctorSpec& t, const DirectSystem& s) {
    require_covariant(t, "map_direct_system");
    std::vector<FPModule> modules;
    for (std::size_t a = 0; a < s.size(); ++a) modules.push_back(t(s.module_at(a)));
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& pr : s.poset().strict_pairs())
        maps.insert({pr, t(s.map(pr.first, pr.second))});
    try {
        return DirectSystem(s.poset(), std::move(modules), std::move(maps));
    } catch (const InputError& e) {
        throw InputError("functor " + t.name + " is not functorial on the system: " + e.what());
    }
}

InverseSystem map_direct_system_contra(const FunctorSpec& t, const DirectSystem& s) {
    require_contravariant(t, "map_direct_system_contra");
    std::vector<FPModule> modules;
    for (std::size_t a = 0; a < s.size(); ++a) modules.push_back(t(s.module_at(a)));
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& pr : s.poset().strict_pairs())
        maps.insert({pr, t(s.map(pr.first, pr.second))});  // t(A_b) -> t(A_a)
    try {
        return InverseSystem(s.poset(), std::move(modules), std::move(maps));
    } catch (const InputError& e) {
        throw InputError("functor " + t.name + " is not functorial on the system: " + e.what());
    }
}

InverseSystem map_inverse_system(const FunctorSpec& t, const InverseSystem& s) {
    require_covariant(t, "map_inverse_system");
    std::vector<FPModule> modules;
    for (std::size_t a = 0; a < s.size(); ++a) modules.push_back(t(s.module_at(a)));
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& pr : s.poset().strict_pairs())
        maps.insert({pr, t(s.map(pr.first, pr.second))});
    try {
        return InverseSystem(s.poset(), std::move(modules), std::move(maps));
    } catch (const InputError& e) {
        throw InputError("functor " + t.name + " is not functorial on the system: " + e.what());
    }
}

DirectSystem map_inverse_system_contra(const FunctorSpec& t, const InverseSystem& s) {
    require_contravariant(t, "map_inverse_system_contra");
    std::vector<FPModule> modules;
    for (std::size_t a = 0; a < s.size(); ++a) modules.push_back(t(s.module_at(a)));
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& pr : s.poset().strict_pairs())
        maps.insert({pr, t(s.map(pr.first, pr.second))});  // t(A_a) -> t(A_b)
    try {
        return DirectSystem(s.poset(), std::move(modules), std::move(maps));
    } catch (const InputError& e) {
        throw InputError("functor " + t.name + " is not functorial on the system: " + e.what());
    }
}

// --- comparison maps -------------------------------------------------------------

ColimitComparison colimit_comparison(const FunctorSpec& t, const DirectSystem& s) {
    if (!s.poset().is_directed())
        throw InputError("colimit_comparison: poset must be directed");
    ColimitData cd = colimit(s);
    if (t.variance == Variance::covariant) {
        DirectSystem ts = map_direct_system(t, s);
        ColimitData tcd = colimit(ts);
        std::vector<ModHom> cocone;
        for (std::size_t a = 0; a < s.size(); ++a) cocone.push_back(t(cd.canonical[a]));
        ModHom theta = colimit_mediating(ts, tcd, cocone);
        return {std::move(theta), std::move(cd)};
    }
    InverseSystem ts = map_direct_system_contra(t, s);
    LimitData tld = limit(ts);
    std::vector<ModHom> cone;
    for (std::size_t a = 0; a < s.size(); ++a) cone.push_back(t(cd.canonical[a]));
    ModHom theta = limit_mediating(ts, tld, cone);
    return {std::move(theta), std::move(cd)};
}

bool preserves_colimit(const FunctorSpec& t, const DirectSystem& s) {
    return colimit_comparison(t, s).map.is_isomorphism();
}

LimitComparison limit_comparison(const FunctorSpec& t, const InverseSystem& s) {
    if (!s.poset().is_directed())
        throw InputError("limit_comparison: poset must be directed");
    LimitData ld = limit(s);
    if (t.variance == Variance::covariant) {
        InverseSystem ts = map_inverse_system(t, s);
        LimitData tld = limit(ts);
        std::vector<ModHom> cone;
        for (std::size_t a = 0; a < s.size(); ++a) cone.push_back(t(ld.canonical[a]));
        ModHom theta = limit_mediating(ts, tld, cone);
        return {std::move(theta), std::move(ld)};
    }
    DirectSystem ts = map_inverse_system_contra(t, s);
    ColimitData tcd = colimit(ts);
    std::vector<ModHom> cocone;
    for (std::size_t a = 0; a < s.size(); ++a) cocone.push_back(t(ld.canonical[a]));
    ModHom theta = colimit_mediating(ts, tcd, cocone);
    return {std::move(theta), std::move(ld)};
}

bool preserves_limit(const FunctorSpec& t, const InverseSystem& s) {
    return limit_comparison(t, s).map.is_isomorphism();
}

// --- satellites --------------------------------------------------------------------

SatelliteValue satellite(const FunctorSpec& t, const FPModule& a, PresentationMode mode,
                         const Int& cap) {
    require_covariant(t, "satellite");
    Presentation pres = free_presentation(a, mode, cap);
    ModHom tincl = t(pres.inclusion);
    KernelResult k = kernel(tincl);
    return {k.module, k.inclusion, std::move(pres)};
}

namespace {

// lift g : A' -> A through the two free covers, i.e. find f with
// onto . f = g . onto'
IntMatrix lift_through_covers(const ModHom& g, const Presentation& src,
                              const Presentation& dst) {
    const Modulus n = g.src().modulus();
    const IntMatrix& q_src = src.onto.matrix();
    const IntMatrix& q_dst = dst.onto.matrix();
    SmithSolver onto_solver(IntMatrix::hstack(
        IntMatrix::hstack(q_dst, g.dst().relations()),
        IntMatrix::identity(g.dst().generators()).scaled(Int(n))));
    IntMatrix lift(dst.cover.generators(), src.cover.generators());
    for (std::size_t j = 0; j < src.cover.generators(); ++j) {
        std::vector<Int> target = g.apply(q_src.col(j));
        auto z = onto_solver.solve(target);
        if (!z) throw InternalError("satellite_hom: no lift through a free cover");
        for (std::size_t i = 0; i < dst.cover.generators(); ++i) lift.at(i, j) = (*z)[i];
    }
    return lift.reduced_mod(Int(n));
}

ModHom restrict_to_syzygies(const IntMatrix& lift, const Presentation& src,
                            const Presentation& dst, Modulus n) {
    const IntMatrix& j_src = src.inclusion.matrix();
    const IntMatrix& j_dst = dst.inclusion.matrix();
    IntMatrix mapped = lift * j_src;  // lands inside the syzygies of dst
    SmithSolver through(IntMatrix::hstack(
        j_dst, IntMatrix::identity(dst.cover.generators()).scaled(Int(n))));
    IntMatrix x(dst.syzygies.generators(), src.syzygies.generators());
    for (std::size_t j = 0; j < mapped.cols(); ++j) {
        auto z = through.solve(mapped.col(j));
        if (!z) throw InternalError("satellite_hom: restriction misses the syzygies");
        for (std::size_t i = 0; i < dst.syzygies.generators(); ++i) x.at(i, j) = (*z)[i];
    }
    return ModHom(src.syzygies, dst.syzygies, std::move(x));
}

ModHom satellite_hom_from_lift(const FunctorSpec& t, const IntMatrix& lift,
                               const SatelliteValue& src, const SatelliteValue& dst) {
    const Modulus n = src.presentation.cover.modulus();
    ModHom f_syz = restrict_to_syzygies(lift, src.presentation, dst.presentation, n);
    ModHom tf = t(f_syz);
    IntMatrix composite = tf.matrix() * src.witness_inclusion.matrix();
    const FPModule& tm_dst = dst.witness_inclusion.dst();
    SmithSolver through(IntMatrix::hstack(
        IntMatrix::hstack(dst.witness_inclusion.matrix(), tm_dst.relations()),
        IntMatrix::identity(tm_dst.generators()).scaled(Int(n))));
    IntMatrix y(dst.value.generators(), src.value.generators());
    for (std::size_t j = 0; j < composite.cols(); ++j) {
        auto z = through.solve(composite.col(j));
        if (!z) throw InternalError("satellite_hom: image misses the satellite submodule");
        for (std::size_t i = 0; i < dst.value.generators(); ++i) y.at(i, j) = (*z)[i];
    }
    return ModHom(src.value, dst.value, std::move(y));
}

}  // namespace

ModHom satellite_hom(const FunctorSpec& t, const ModHom& g, const SatelliteValue& src,
                     const SatelliteValue& dst, bool check_second_lift) {
    require_covariant(t, "satellite_hom");
    if (!src.presentation.onto.dst().same_presentation(g.src()) ||
        !dst.presentation.onto.dst().same_presentation(g.dst()))
        throw InputError("satellite_hom: presentations do not match the hom endpoints");

    IntMatrix lift = lift_through_covers(g, src.presentation, dst.presentation);
    ModHom result = satellite_hom_from_lift(t, lift, src, dst);

    if (check_second_lift && src.presentation.cover.generators() > 0) {
        const Modulus n = g.src().modulus();
        IntMatrix homogeneous = preimage_generators(
            dst.presentation.onto.matrix(), g.dst().relations(), n);
        for (std::size_t j = 0; j < homogeneous.cols(); ++j) {
            if (dst.presentation.cover.element_is_zero(homogeneous.col(j))) continue;
            IntMatrix second = lift;
            for (std::size_t i = 0; i < second.rows(); ++i)
                second.at(i, 0) += homogeneous.at(i, j);
            ModHom other = satellite_hom_from_lift(t, second, src, dst);
            if (!other.equal_as_maps(result))
                throw InternalError("satellite_hom: result depends on the chosen lift");
            break;
        }
    }
    return result;
}

FunctorSpec satellite_functor(const FunctorSpec& t) {
    require_covariant(t, "satellite_functor");
    auto cache = std::make_shared<std::map<std::string, SatelliteValue>>();
    auto lookup = [t, cache](const FPModule& a) -> const SatelliteValue& {
        auto it = cache->find(a.cache_key());
        if (it == cache->end())
            it = cache->emplace(a.cache_key(), satellite(t, a, PresentationMode::economical))
                     .first;
        return it->second;
    };
    FunctorSpec s;
    s.variance = Variance::covariant;
    s.name = "satellite(" + t.name + ")";
    s.on_module = [lookup](const FPModule& a) { return lookup(a).value; };
    s.on_hom = [t, lookup](const ModHom& g) {
        return satellite_hom(t, g, lookup(g.src()), lookup(g.dst()));
    };
    return s;
}

FPModule satellite_iterate(const FunctorSpec& t, const FPModule& a, unsigned k,
                           const Int& cap) {
    require_covariant(t, "satellite_iterate");
    if (k == 0) return t(a);
    FunctorSpec cur = t;
    for (unsigned i = 1; i < k; ++i) cur = satellite_functor(cur);
    return satellite(cur, a, PresentationMode::economical, cap).value;
}

FPModule tor1(const FPModule& b, const FPModule& a) {
    if (b.modulus() != a.modulus()) throw InputError("tor1: modulus mismatch");
    return satellite(tensor_by(b), a).value;
}

FPModule ext1(const FPModule& b, const FPModule& a) {
    if (b.modulus() != a.modulus()) throw InputError("ext1: modulus mismatch");
    Presentation pres = free_presentation(b, PresentationMode::economical);
    ModHom restrict = hom_into(a)(pres.inclusion);  // Hom(cover,a) -> Hom(syzygies,a)
    return cokernel(restrict).module;
}

// --- audits -------------------------------------------------------------------------

TrivialityAudit audit_functor_triviality(const FunctorSpec& t, Modulus n,
                                         const std::vector<FPModule>& corpus) {
    TrivialityAudit audit;
    audit.functor_name = t.name;
    audit.variance = t.variance;
    audit.modulus = n;
    audit.hypothesis_holds = true;
    for (Modulus d : divisors_of(n)) {
        FPModule probe = t.variance == Variance::covariant ? FPModule::cyclic(n, d)
                                                           : FPModule::ideal(n, d);
        FPModule value = t(probe);
        audit.hypothesis_rows.push_back({d, value.invariant_factors()});
        if (!value.is_zero_module()) audit.hypothesis_holds = false;
    }
    audit.all_vanish = true;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        FPModule value = t(corpus[i]);
        bool vanishes = value.is_zero_module();
        audit.corpus_rows.push_back(
            {corpus[i].invariant_factors(), value.invariant_factors(), vanishes});
        if (!vanishes && audit.all_vanish) {
            audit.all_vanish = false;
            audit.counterexample_index = i;
        }
    }
    if (!audit.hypothesis_holds)
        audit.verdict = "HYPOTHESIS_NOT_MET";
    else
        audit.verdict = audit.all_vanish ? "CONSISTENT" : "REFUTED";
    return audit;
}

namespace {

// node-wise free covers on element bases, with maps e_x -> e_{phi(x)}
DirectSystem free_cover_system(const DirectSystem& s, const Int& cap) {
    const Modulus n = s.modulus();
    std::vector<std::vector<Element>> bases;
    std::vector<FPModule> covers;
    for (std::size_t a = 0; a < s.size(); ++a) {
        bases.push_back(s.module_at(a).elements(cap));
        covers.push_back(FPModule::free_module(n, bases.back().size()));
    }
    auto locate = [&](std::size_t node, const Element& x) -> std::size_t {
        for (std::size_t i = 0; i < bases[node].size(); ++i)
            if (bases[node][i] == x) return i;
        throw InternalError("free_cover_system: element not found in the base");
    };
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& [a, b] : s.poset().strict_pairs()) {
        IntMatrix m(bases[b].size(), bases[a].size());
        const ModHom step = s.map(a, b);
        for (std::size_t i = 0; i < bases[a].size(); ++i)
            m.at(locate(b, step.apply(bases[a][i])), i) = 1;
        maps.insert({{a, b}, ModHom(covers[a], covers[b], std::move(m))});
    }
    return DirectSystem(s.poset(), std::move(covers), std::move(maps));
}

}  // namespace

SatelliteCommutationAudit audit_satellite_commutation(const FunctorSpec& t,
                                                      const std::vector<DirectSystem>& systems,
                                                      const Int& free_node_cap) {
    require_covariant(t, "audit_satellite_commutation");
    SatelliteCommutationAudit audit;
    audit.functor_name = t.name;
    FunctorSpec s1t = satellite_functor(t);
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const DirectSystem& s = systems[i];
        SatelliteCommutationAudit::Row row;
        row.base_preserves = preserves_colimit(t, s);
        row.satellite_preserves = preserves_colimit(s1t, s);
        bool small_enough = true;
        for (std::size_t a = 0; a < s.size(); ++a)
            if (s.module_at(a).cardinality() > free_node_cap) small_enough = false;
        if (small_enough)
            row.free_system_preserves =
                preserves_colimit(t, free_cover_system(s, free_node_cap));
        row.implication_forward = !row.base_preserves || row.satellite_preserves;
        if (row.free_system_preserves)
            row.implication_backward =
                !(row.satellite_preserves && *row.free_system_preserves) ||
                row.base_preserves;
        if (!row.implication_forward) {
            audit.forward_holds_everywhere = false;
            audit.violations.push_back(i);
        }
        if (row.implication_backward && !*row.implication_backward) {
            audit.backward_holds_everywhere = false;
            audit.violations.push_back(i);
        }
        audit.rows.push_back(std::move(row));
    }
    return audit;
}

}  // namespace modlim
