#include "modlim/limits.hpp"

#include <sstream>

namespace modlim {

namespace {

std::string pair_name(std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << "(" << a << " <= " << b << ")";
    return os.str();
}

std::vector<std::size_t> block_offsets(const std::vector<FPModule>& ms) {
    std::vector<std::size_t> off(ms.size() + 1, 0);
    for (std::size_t i = 0; i < ms.size(); ++i) off[i + 1] = off[i] + ms[i].generators();
    return off;
}

// first kernel generator of f that is nonzero in the source, if any
std::optional<std::vector<Int>> nonzero_kernel_witness(const ModHom& f) {
    IntMatrix k = preimage_generators(f.matrix(), f.dst().relations(), f.src().modulus());
    for (std::size_t j = 0; j < k.cols(); ++j)
        if (!f.src().element_is_zero(k.col(j))) return k.col(j);
    return std::nullopt;
}

}  // namespace

// --- Poset -------------------------------------------------------------------

Poset::Poset(std::size_t size,
             const std::vector<std::pair<std::size_t, std::size_t>>& relations)
    : size_(size), leq_(size * size, 0) {
    if (size == 0) throw InputError("Poset: at least one element required");
    for (std::size_t i = 0; i < size; ++i) leq_[i * size + i] = 1;
    for (const auto& [a, b] : relations) {
        if (a >= size || b >= size) throw InputError("Poset: relation index out of range");
        leq_[a * size + b] = 1;
    }
    // transitive closure
    for (std::size_t k = 0; k < size; ++k)
        for (std::size_t i = 0; i < size; ++i)
            if (leq_[i * size + k])
                for (std::size_t j = 0; j < size; ++j)
                    if (leq_[k * size + j]) leq_[i * size + j] = 1;
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j)
            if (leq_[i * size + j] && leq_[j * size + i])
                throw InputError("Poset: antisymmetry violated at " + pair_name(i, j));
}

Poset Poset::chain(std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i + 1 < k; ++i) rel.push_back({i, i + 1});
    return Poset(k, rel);
}

Poset Poset::antichain(std::size_t k) { return Poset(k, {}); }

bool Poset::leq(std::size_t a, std::size_t b) const {
    if (a >= size_ || b >= size_) throw InputError("Poset::leq: index out of range");
    return leq_[a * size_ + b] != 0;
}

bool Poset::is_directed() const {
    for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = a + 1; b < size_; ++b) {
            bool ok = false;
            for (std::size_t c = 0; c < size_ && !ok; ++c)
                if (leq(a, c) && leq(b, c)) ok = true;
            if (!ok) return false;
        }
    return true;
}

std::optional<std::size_t> Poset::maximum() const {
    for (std::size_t t = 0; t < size_; ++t) {
        bool top = true;
        for (std::size_t a = 0; a < size_ && top; ++a)
            if (!leq(a, t)) top = false;
        if (top) return t;
    }
    return std::nullopt;
}

std::optional<std::size_t> Poset::upper_bound(const std::vector<std::size_t>& nodes) const {
    for (std::size_t c = 0; c < size_; ++c) {
        bool ok = true;
        for (std::size_t a : nodes)
            if (!leq(a, c)) { ok = false; break; }
        if (ok) return c;
    }
    return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size_; ++a)
        for (std::size_t b = 0; b < size_; ++b)
            if (a != b && leq(a, b)) out.push_back({a, b});
    return out;
}

// --- systems -----------------------------------------------------------------

namespace {

template <bool Inverse>
void validate_system(const Poset& poset, const std::vector<FPModule>& modules,
                     std::map<std::pair<std::size_t, std::size_t>, ModHom>& maps) {
    if (modules.size() != poset.size())
        throw InputError("system: one module per poset element required");
    const Modulus n = modules[0].modulus();
    for (const auto& m : modules)
        if (m.modulus() != n) throw InputError("system: mixed moduli");

    // drop reflexive entries after checking they are identities
    for (std::size_t a = 0; a < poset.size(); ++a) {
        auto it = maps.find({a, a});
        if (it != maps.end()) {
            if (!it->second.equal_as_maps(ModHom::identity(modules[a])))
                throw InputError("system: map at " + pair_name(a, a) + " is not the identity");
            maps.erase(it);
        }
    }

    for (const auto& [a, b] : poset.strict_pairs()) {
        auto it = maps.find({a, b});
        if (it == maps.end())
            throw InputError("system: missing map for pair " + pair_name(a, b));
        const FPModule& s = Inverse ? modules[b] : modules[a];
        const FPModule& d = Inverse ? modules[a] : modules[b];
        if (!it->second.src().same_presentation(s) || !it->second.dst().same_presentation(d))
            throw InputError("system: map at " + pair_name(a, b) + " has wrong endpoints");
    }
    for (const auto& [key, hom] : maps) {
        (void)hom;
        if (key.first == key.second) continue;
        if (!poset.leq(key.first, key.second))
            throw InputError("system: map given for incomparable pair " +
                             pair_name(key.first, key.second));
    }

    // functoriality on every composable triple
    for (std::size_t a = 0; a < poset.size(); ++a)
        for (std::size_t b = 0; b < poset.size(); ++b) {
            if (a == b || !poset.leq(a, b)) continue;
            for (std::size_t c = 0; c < poset.size(); ++c) {
                if (b == c || c == a || !poset.leq(b, c)) continue;
                const ModHom& ab = maps.at({a, b});
                const ModHom& bc = maps.at({b, c});
                const ModHom& ac = maps.at({a, c});
                bool ok = Inverse ? compose(ab, bc).equal_as_maps(ac)
                                  : compose(bc, ab).equal_as_maps(ac);
                if (!ok)
                    throw InputError("system: composition fails on the square " +
                                     pair_name(a, b) + ", " + pair_name(b, c));
            }
        }
}

}  // namespace

DirectSystem::DirectSystem(Poset poset, std::vector<FPModule> modules,
                           std::map<std::pair<std::size_t, std::size_t>, ModHom> maps)
    : poset_(std::move(poset)), modules_(std::move(modules)), maps_(std::move(maps)) {
    validate_system<false>(poset_, modules_, maps_);
}

DirectSystem DirectSystem::single(const FPModule& a) {
    return DirectSystem(Poset::chain(1), {a}, {});
}

DirectSystem DirectSystem::chain_of(const std::vector<ModHom>& steps) {
    if (steps.empty()) throw InputError("chain_of: at least one step required");
    const std::size_t k = steps.size() + 1;
    std::vector<FPModule> modules;
    modules.push_back(steps[0].src());
    for (const auto& s : steps) modules.push_back(s.dst());
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            ModHom m = steps[a];
            for (std::size_t i = a + 1; i < b; ++i) m = compose(steps[i], m);
            maps.insert({{a, b}, m});
        }
    }
    return DirectSystem(Poset::chain(k), std::move(modules), std::move(maps));
}

ModHom DirectSystem::map(std::size_t a, std::size_t b) const {
    if (a == b) return ModHom::identity(modules_[a]);
    auto it = maps_.find({a, b});
    if (it == maps_.end()) throw InputError("DirectSystem::map: pair not comparable");
    return it->second;
}

Int DirectSystem::total_order() const {
    Int t = 1;
    for (const auto& m : modules_) t *= m.cardinality();
    return t;
}

InverseSystem::InverseSystem(Poset poset, std::vector<FPModule> modules,
                             std::map<std::pair<std::size_t, std::size_t>, ModHom> maps)
    : poset_(std::move(poset)), modules_(std::move(modules)), maps_(std::move(maps)) {
    validate_system<true>(poset_, modules_, maps_);
}

InverseSystem InverseSystem::single(const FPModule& a) {
    return InverseSystem(Poset::chain(1), {a}, {});
}

InverseSystem InverseSystem::chain_of(const std::vector<ModHom>& steps) {
    if (steps.empty()) throw InputError("chain_of: at least one step required");
    const std::size_t k = steps.size() + 1;
    std::vector<FPModule> modules;
    modules.push_back(steps[0].dst());
    for (const auto& s : steps) modules.push_back(s.src());
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            ModHom m = steps[a];
            for (std::size_t i = a + 1; i < b; ++i) m = compose(m, steps[i]);
            maps.insert({{a, b}, m});
        }
    }
    return InverseSystem(Poset::chain(k), std::move(modules), std::move(maps));
}

ModHom InverseSystem::map(std::size_t a, std::size_t b) const {
    if (a == b) return ModHom::identity(modules_[a]);
    auto it = maps_.find({a, b});
    if (it == maps_.end()) throw InputError("InverseSystem::map: pair not comparable");
    return it->second;
}

Int InverseSystem::total_order() const {
    Int t = 1;
    for (const auto& m : modules_) t *= m.cardinality();
    return t;
}

DirectSystemHom make_direct_system_hom(const DirectSystem& src, const DirectSystem& dst,
                                       std::vector<ModHom> components) {
    if (components.size() != src.size() || src.size() != dst.size())
        throw InputError("system hom: one component per node required");
    for (std::size_t a = 0; a < src.size(); ++a) {
        if (!components[a].src().same_presentation(src.module_at(a)) ||
            !components[a].dst().same_presentation(dst.module_at(a)))
            throw InputError("system hom: component endpoints wrong at node " +
                             std::to_string(a));
    }
    for (const auto& [a, b] : src.poset().strict_pairs()) {
        if (!compose(components[b], src.map(a, b))
                 .equal_as_maps(compose(dst.map(a, b), components[a])))
            throw InputError("system hom: naturality fails at " + pair_name(a, b));
    }
    return {std::move(components)};
}

InverseSystemHom make_inverse_system_hom(const InverseSystem& src, const InverseSystem& dst,
                                         std::vector<ModHom> components) {
    if (components.size() != src.size() || src.size() != dst.size())
        throw InputError("system hom: one component per node required");
    for (std::size_t a = 0; a < src.size(); ++a) {
        if (!components[a].src().same_presentation(src.module_at(a)) ||
            !components[a].dst().same_presentation(dst.module_at(a)))
            throw InputError("system hom: component endpoints wrong at node " +
                             std::to_string(a));
    }
    for (const auto& [a, b] : src.poset().strict_pairs()) {
        if (!compose(components[a], src.map(a, b))
                 .equal_as_maps(compose(dst.map(a, b), components[b])))
            throw InputError("system hom: naturality fails at " + pair_name(a, b));
    }
    return {std::move(components)};
}

// --- colimit -------------------------------------------------------------------

ColimitData colimit(const DirectSystem& s) {
    const Modulus n = s.modulus();
    const auto off = block_offsets(s.modules());
    const std::size_t total = off.back();

    std::vector<IntMatrix> rel_blocks;
    for (const auto& m : s.modules()) rel_blocks.push_back(m.relations());
    IntMatrix sum_rels = IntMatrix::block_diag(rel_blocks);
    FPModule big(n, total, sum_rels);

    std::vector<ModHom> injections;
    for (std::size_t a = 0; a < s.size(); ++a) {
        IntMatrix inj(total, s.module_at(a).generators());
        for (std::size_t i = 0; i < s.module_at(a).generators(); ++i)
            inj.at(off[a] + i, i) = 1;
        injections.push_back(ModHom(s.module_at(a), big, inj));
    }

    const auto pairs = s.poset().strict_pairs();
    std::size_t ncols = 0;
    for (const auto& [a, b] : pairs) { (void)b; ncols += s.module_at(a).generators(); }
    IntMatrix compat(total, ncols);
    std::size_t c = 0;
    for (const auto& [a, b] : pairs) {
        const ModHom step = s.map(a, b);
        const IntMatrix& phi = step.matrix();
        for (std::size_t i = 0; i < s.module_at(a).generators(); ++i) {
            for (std::size_t r = 0; r < phi.rows(); ++r)
                compat.at(off[b] + r, c) = phi.at(r, i);
            compat.at(off[a] + i, c) -= 1;
            ++c;
        }
    }

    FPModule colim(n, total,
                   compress_columns(IntMatrix::hstack(sum_rels, compat), n));
    ModHom proj(big, colim, IntMatrix::identity(total));

    std::vector<ModHom> canonical;
    for (std::size_t a = 0; a < s.size(); ++a)
        canonical.push_back(ModHom(s.module_at(a), colim, injections[a].matrix()));

    for (const auto& [a, b] : pairs) {
        if (!compose(canonical[b], s.map(a, b)).equal_as_maps(canonical[a]))
            throw InternalError("colimit: canonical cocone fails at " + pair_name(a, b));
    }
    return {colim, std::move(canonical), big, std::move(injections), std::move(compat),
            std::move(proj)};
}

ModHom colimit_mediating(const DirectSystem& s, const ColimitData& cd,
                         const std::vector<ModHom>& cocone) {
    if (cocone.size() != s.size())
        throw InputError("colimit_mediating: one cocone map per node required");
    const FPModule& x = cocone[0].dst();
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (!cocone[a].src().same_presentation(s.module_at(a)) ||
            !cocone[a].dst().same_presentation(x))
            throw InputError("colimit_mediating: cocone endpoints wrong at node " +
                             std::to_string(a));
    }
    for (const auto& [a, b] : s.poset().strict_pairs()) {
        if (!compose(cocone[b], s.map(a, b)).equal_as_maps(cocone[a]))
            throw InputError("colimit_mediating: incompatible cocone at " + pair_name(a, b));
    }
    IntMatrix theta(x.generators(), cd.colimit.generators());
    const auto off = block_offsets(s.modules());
    for (std::size_t a = 0; a < s.size(); ++a) {
        const IntMatrix& m = cocone[a].matrix();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) theta.at(i, off[a] + j) = m.at(i, j);
    }
    ModHom out(cd.colimit, x, std::move(theta));
    for (std::size_t a = 0; a < s.size(); ++a)
        if (!compose(out, cd.canonical[a]).equal_as_maps(cocone[a]))
            throw InternalError("colimit_mediating: factorization identity fails");
    return out;
}

std::pair<std::size_t, Element> colimit_normal_form(const DirectSystem& s,
                                                    const ColimitData& cd,
                                                    const Element& x) {
    if (!s.poset().is_directed())
        throw InputError("colimit_normal_form: poset must be directed");
    if (!x.parent().same_presentation(cd.colimit))
        throw InputError("colimit_normal_form: element not in the colimit");

    const auto off = block_offsets(s.modules());
    std::vector<std::size_t> support;
    for (std::size_t a = 0; a < s.size(); ++a) {
        bool nonzero = false;
        for (std::size_t i = off[a]; i < off[a + 1]; ++i)
            if (x.coords()[i] != 0) nonzero = true;
        if (nonzero) support.push_back(a);
    }
    if (support.empty()) return {0, s.module_at(0).zero_element()};

    auto bound = s.poset().upper_bound(support);
    if (!bound) throw InternalError("colimit_normal_form: directed poset has no upper bound");
    const std::size_t beta = *bound;

    std::vector<Int> acc(s.module_at(beta).generators(), Int(0));
    for (std::size_t a : support) {
        std::vector<Int> block(x.coords().begin() + off[a], x.coords().begin() + off[a + 1]);
        std::vector<Int> pushed = s.map(a, beta).apply(block);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += pushed[i];
    }
    Element rep = s.module_at(beta).element(acc);
    if (!(cd.canonical[beta].apply(rep) == x))
        throw InternalError("colimit_normal_form: representative check failed");
    return {beta, rep};
}

VanishingCheck colimit_vanishes_detail(const DirectSystem& s, const ColimitData& cd,
                                       std::size_t node, const Element& x) {
    if (node >= s.size()) throw InputError("colimit_vanishes: node out of range");
    if (!x.parent().same_presentation(s.module_at(node)))
        throw InputError("colimit_vanishes: element not at the given node");
    VanishingCheck out{false, false};
    out.image_zero = cd.canonical[node].apply(x).is_zero();
    for (std::size_t b = 0; b < s.size(); ++b) {
        if (!s.poset().leq(node, b)) continue;
        if (s.map(node, b).apply(x).is_zero()) { out.killed_upward = true; break; }
    }
    return out;
}

bool colimit_vanishes(const DirectSystem& s, std::size_t node, const Element& x) {
    if (!s.poset().is_directed())
        throw InputError("colimit_vanishes: poset must be directed");
    ColimitData cd = colimit(s);
    VanishingCheck v = colimit_vanishes_detail(s, cd, node, x);
    if (v.image_zero != v.killed_upward)
        throw InternalError("colimit_vanishes: characterizations disagree");
    return v.image_zero;
}

ModHom induced_colimit_map(const DirectSystemHom& h, const DirectSystem& src,
                           const ColimitData& src_cd, const DirectSystem& dst,
                           const ColimitData& dst_cd) {
    (void)dst;
    std::vector<ModHom> cocone;
    for (std::size_t a = 0; a < src.size(); ++a)
        cocone.push_back(compose(dst_cd.canonical[a], h.components[a]));
    return colimit_mediating(src, src_cd, cocone);
}

DirectSystemSES make_direct_system_ses(DirectSystem sub, DirectSystem mid, DirectSystem quot,
                                       std::vector<ModHom> inj, std::vector<ModHom> surj) {
    DirectSystemHom u = make_direct_system_hom(sub, mid, std::move(inj));
    DirectSystemHom v = make_direct_system_hom(mid, quot, std::move(surj));
    for (std::size_t a = 0; a < sub.size(); ++a) {
        if (!is_short_exact(u.components[a], v.components[a]))
            throw InputError("system SES: node " + std::to_string(a) + " is not short exact");
    }
    return {std::move(sub), std::move(mid), std::move(quot), std::move(u), std::move(v)};
}

ColimitExactnessReport check_colimit_right_exact(const DirectSystemSES& ses) {
    ColimitData c_sub = colimit(ses.sub);
    ColimitData c_mid = colimit(ses.mid);
    ColimitData c_quot = colimit(ses.quot);
    ModHom fu = induced_colimit_map(ses.inj, ses.sub, c_sub, ses.mid, c_mid);
    ModHom fv = induced_colimit_map(ses.surj, ses.mid, c_mid, ses.quot, c_quot);

    ColimitExactnessReport rep{true, true, true, std::nullopt, std::nullopt};
    rep.middle_exact = is_exact_at(fu, fv);
    rep.right_surjective = fv.is_surjective();
    rep.exact = rep.middle_exact && rep.right_surjective;

    if (!rep.middle_exact) {
        const Modulus n = c_mid.colimit.modulus();
        IntMatrix ker = preimage_generators(fv.matrix(), c_quot.colimit.relations(), n);
        SmithSolver into_image(IntMatrix::hstack(
            IntMatrix::hstack(fu.matrix(), c_mid.colimit.relations()),
            IntMatrix::identity(c_mid.colimit.generators()).scaled(Int(n))));
        for (std::size_t j = 0; j < ker.cols(); ++j)
            if (!into_image.solve(ker.col(j))) { rep.middle_certificate = ker.col(j); break; }
    }
    if (!rep.right_surjective) {
        CokernelResult ck = cokernel(fv);
        for (std::size_t i = 0; i < c_quot.colimit.generators(); ++i) {
            std::vector<Int> e(c_quot.colimit.generators(), Int(0));
            e[i] = 1;
            if (!ck.module.element_is_zero(e)) { rep.surjectivity_certificate = e; break; }
        }
    }
    return rep;
}

// --- limit ---------------------------------------------------------------------

LimitData limit(const InverseSystem& s) {
    const Modulus n = s.modulus();
    const auto off = block_offsets(s.modules());
    const std::size_t total = off.back();

    std::vector<IntMatrix> rel_blocks;
    for (const auto& m : s.modules()) rel_blocks.push_back(m.relations());
    FPModule product(n, total, IntMatrix::block_diag(rel_blocks));

    std::vector<ModHom> projections;
    for (std::size_t a = 0; a < s.size(); ++a) {
        IntMatrix pr(s.module_at(a).generators(), total);
        for (std::size_t i = 0; i < s.module_at(a).generators(); ++i) pr.at(i, off[a] + i) = 1;
        projections.push_back(ModHom(product, s.module_at(a), pr));
    }

    const auto pairs = s.poset().strict_pairs();
    std::size_t crows = 0;
    std::vector<IntMatrix> c_rel_blocks;
    for (const auto& [a, b] : pairs) {
        (void)b;
        crows += s.module_at(a).generators();
        c_rel_blocks.push_back(s.module_at(a).relations());
    }
    IntMatrix constraint(crows, total);
    std::size_t ro = 0;
    for (const auto& [a, b] : pairs) {
        const ModHom step = s.map(a, b);  // A_b -> A_a
        const IntMatrix& psi = step.matrix();
        const std::size_t ga = s.module_at(a).generators();
        for (std::size_t i = 0; i < ga; ++i) {
            constraint.at(ro + i, off[a] + i) -= 1;
            for (std::size_t j = 0; j < psi.cols(); ++j)
                constraint.at(ro + i, off[b] + j) += psi.at(i, j);
        }
        ro += ga;
    }
    FPModule pair_sum(n, crows, IntMatrix::block_diag(c_rel_blocks));
    ModHom constraint_hom(product, pair_sum, std::move(constraint));

    KernelResult k = kernel(constraint_hom);
    std::vector<ModHom> canonical;
    for (std::size_t a = 0; a < s.size(); ++a)
        canonical.push_back(compose(projections[a], k.inclusion));

    for (const auto& [a, b] : pairs) {
        if (!compose(s.map(a, b), canonical[b]).equal_as_maps(canonical[a]))
            throw InternalError("limit: canonical cone fails at " + pair_name(a, b));
    }
    return {k.module, std::move(canonical), std::move(product), std::move(projections),
            k.inclusion};
}

ModHom limit_mediating(const InverseSystem& s, const LimitData& ld,
                       const std::vector<ModHom>& cone) {
    if (cone.size() != s.size())
        throw InputError("limit_mediating: one cone map per node required");
    const FPModule& x = cone[0].src();
    for (std::size_t a = 0; a < s.size(); ++a) {
        if (!cone[a].dst().same_presentation(s.module_at(a)) ||
            !cone[a].src().same_presentation(x))
            throw InputError("limit_mediating: cone endpoints wrong at node " +
                             std::to_string(a));
    }
    for (const auto& [a, b] : s.poset().strict_pairs()) {
        if (!compose(s.map(a, b), cone[b]).equal_as_maps(cone[a]))
            throw InputError("limit_mediating: incompatible cone at " + pair_name(a, b));
    }

    // stack the cone into a map X -> product, then factor through the limit
    IntMatrix stacked(ld.product.generators(), x.generators());
    const auto off = block_offsets(s.modules());
    for (std::size_t a = 0; a < s.size(); ++a) {
        const IntMatrix& m = cone[a].matrix();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) stacked.at(off[a] + i, j) = m.at(i, j);
    }
    const Modulus n = x.modulus();
    SmithSolver through(IntMatrix::hstack(
        IntMatrix::hstack(ld.inclusion.matrix(), ld.product.relations()),
        IntMatrix::identity(ld.product.generators()).scaled(Int(n))));
    IntMatrix theta(ld.limit.generators(), x.generators());
    for (std::size_t j = 0; j < x.generators(); ++j) {
        auto z = through.solve(stacked.col(j));
        if (!z) throw InternalError("limit_mediating: cone does not factor through the limit");
        for (std::size_t i = 0; i < ld.limit.generators(); ++i) theta.at(i, j) = (*z)[i];
    }
    ModHom out(x, ld.limit, std::move(theta));
    for (std::size_t a = 0; a < s.size(); ++a)
        if (!compose(ld.canonical[a], out).equal_as_maps(cone[a]))
            throw InternalError("limit_mediating: factorization identity fails");
    return out;
}

ModHom induced_limit_map(const InverseSystemHom& h, const InverseSystem& src,
                         const LimitData& src_ld, const InverseSystem& dst,
                         const LimitData& dst_ld) {
    std::vector<ModHom> cone;
    for (std::size_t a = 0; a < src.size(); ++a)
        cone.push_back(compose(h.components[a], src_ld.canonical[a]));
    return limit_mediating(dst, dst_ld, cone);
}

InverseSystemSES make_inverse_system_ses(InverseSystem sub, InverseSystem mid,
                                         InverseSystem quot, std::vector<ModHom> inj,
                                         std::vector<ModHom> surj) {
    InverseSystemHom u = make_inverse_system_hom(sub, mid, std::move(inj));
    InverseSystemHom v = make_inverse_system_hom(mid, quot, std::move(surj));
    for (std::size_t a = 0; a < sub.size(); ++a) {
        if (!is_short_exact(u.components[a], v.components[a]))
            throw InputError("system SES: node " + std::to_string(a) + " is not short exact");
    }
    return {std::move(sub), std::move(mid), std::move(quot), std::move(u), std::move(v)};
}

LimitExactnessReport check_limit_left_exact(const InverseSystemSES& ses) {
    LimitData l_sub = limit(ses.sub);
    LimitData l_mid = limit(ses.mid);
    LimitData l_quot = limit(ses.quot);
    ModHom fu = induced_limit_map(ses.inj, ses.sub, l_sub, ses.mid, l_mid);
    ModHom fv = induced_limit_map(ses.surj, ses.mid, l_mid, ses.quot, l_quot);

    LimitExactnessReport rep{true, true, true, true, std::nullopt, std::nullopt};
    rep.left_injective = fu.is_injective();
    rep.middle_exact = is_exact_at(fu, fv);
    rep.left_exact = rep.left_injective && rep.middle_exact;
    rep.right_surjective = fv.is_surjective();

    if (!rep.left_injective) rep.left_certificate = nonzero_kernel_witness(fu);
    if (!rep.middle_exact) {
        const Modulus n = l_mid.limit.modulus();
        IntMatrix ker = preimage_generators(fv.matrix(), l_quot.limit.relations(), n);
        SmithSolver into_image(IntMatrix::hstack(
            IntMatrix::hstack(fu.matrix(), l_mid.limit.relations()),
            IntMatrix::identity(l_mid.limit.generators()).scaled(Int(n))));
        for (std::size_t j = 0; j < ker.cols(); ++j)
            if (!into_image.solve(ker.col(j))) { rep.middle_certificate = ker.col(j); break; }
    }
    return rep;
}

}  // namespace modlim
