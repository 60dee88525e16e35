#include "modlim/corpus.hpp"

#include <algorithm>

namespace modlim {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> d(lo, hi);
    return d(rng);
}

Modulus pick_mod(Rng& rng, Modulus n) {
    std::uniform_int_distribution<Modulus> d(0, n - 1);
    return d(rng);
}

Modulus smallest_prime_divisor(Modulus n) {
    for (Modulus p = 2; p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

// poset whose Hasse diagram is a tree pointing at node k-1 (the maximum)
struct TreeShape {
    std::size_t size;
    std::vector<std::size_t> parent;  // parent[i] > i for i < size-1
    Poset poset;
};

TreeShape random_tree_shape(Rng& rng, std::size_t max_nodes) {
    std::size_t k = pick(rng, 1, max_nodes);
    std::vector<std::size_t> parent(k, 0);
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        parent[i] = pick(rng, i + 1, k - 1);
        rel.push_back({i, parent[i]});
    }
    return {k, std::move(parent), Poset(k, rel)};
}

void chain_enumerate(Modulus n, std::size_t max_factors, const Int& order_cap, Modulus from,
                     std::vector<Modulus>& chain, std::vector<FPModule>& out, Int order) {
    if (!chain.empty()) {
        IntMatrix rel(chain.size(), chain.size());
        for (std::size_t i = 0; i < chain.size(); ++i) rel.at(i, i) = chain[i];
        out.push_back(FPModule(n, chain.size(), std::move(rel)));
    } else {
        out.push_back(FPModule::zero(n));
    }
    if (chain.size() == max_factors) return;
    for (Modulus d = from; d <= n; ++d) {
        if (n % d != 0 || d < 2) continue;
        if (!chain.empty() && d % chain.back() != 0) continue;
        Int next_order = order * d;
        if (order_cap > 0 && next_order > order_cap) continue;
        chain.push_back(d);
        chain_enumerate(n, max_factors, order_cap, d, chain, out, next_order);
        chain.pop_back();
    }
}

}  // namespace

FPModule random_module(Rng& rng, Modulus n, std::size_t max_gens, const Int& max_order) {
    for (int attempt = 0; attempt < 30; ++attempt) {
        std::size_t g = pick(rng, 0, max_gens);
        IntMatrix rel(g, g);
        for (std::size_t i = 0; i < g; ++i)
            for (std::size_t j = 0; j < g; ++j) rel.at(i, j) = pick_mod(rng, n);
        FPModule m(n, g, std::move(rel));
        if (m.cardinality() <= max_order) return m;
    }
    return FPModule::cyclic(n, smallest_prime_divisor(n));
}

ModHom random_hom(Rng& rng, const FPModule& src, const FPModule& dst) {
    HomModule h = hom_module(src, dst);
    std::vector<Int> coords(h.module.generators());
    for (auto& c : coords) c = pick_mod(rng, src.modulus());
    return h.decode(coords);
}

std::vector<FPModule> standard_modules(Modulus n, std::size_t max_factors,
                                       const Int& order_cap) {
    std::vector<FPModule> out;
    std::vector<Modulus> chain;
    chain_enumerate(n, max_factors, order_cap, 2, chain, out, Int(1));
    return out;
}

namespace {

DirectSystem tree_direct_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    TreeShape shape = random_tree_shape(rng, opt.max_nodes);
    std::vector<FPModule> modules;
    for (std::size_t i = 0; i < shape.size; ++i)
        modules.push_back(random_module(rng, n, opt.max_gens, opt.max_node_order));

    std::vector<ModHom> covers;  // covers[i] : A_i -> A_parent(i)
    for (std::size_t i = 0; i + 1 < shape.size; ++i)
        covers.push_back(random_hom(rng, modules[i], modules[shape.parent[i]]));

    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& [a, b] : shape.poset.strict_pairs()) {
        ModHom m = covers[a];
        std::size_t at = shape.parent[a];
        while (at != b) {
            m = compose(covers[at], m);
            at = shape.parent[at];
        }
        maps.insert({{a, b}, m});
    }
    return DirectSystem(shape.poset, std::move(modules), std::move(maps));
}

InverseSystem tree_inverse_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    TreeShape shape = random_tree_shape(rng, opt.max_nodes);
    std::vector<FPModule> modules;
    for (std::size_t i = 0; i < shape.size; ++i)
        modules.push_back(random_module(rng, n, opt.max_gens, opt.max_node_order));

    std::vector<ModHom> covers;  // covers[i] : A_parent(i) -> A_i
    for (std::size_t i = 0; i + 1 < shape.size; ++i)
        covers.push_back(random_hom(rng, modules[shape.parent[i]], modules[i]));

    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& [a, b] : shape.poset.strict_pairs()) {
        // walk b down to a along the unique path
        std::vector<std::size_t> path{a};
        std::size_t at = a;
        while (at != b) {
            at = shape.parent[at];
            path.push_back(at);
        }
        ModHom m = covers[path[0]];  // A_path1 -> A_a
        for (std::size_t i = 1; i + 1 < path.size(); ++i) m = compose(m, covers[path[i]]);
        maps.insert({{a, b}, m});
    }
    return InverseSystem(shape.poset, std::move(modules), std::move(maps));
}

struct DiamondModules {
    FPModule x, y, z, xy, xz, xyz;
    IntMatrix m01, m02, m13, m23, m03;  // inclusion matrices
};

DiamondModules diamond_modules(Rng& rng, Modulus n, const SystemOptions& opt) {
    // cap each summand so the top node stays within the node-order budget
    Int per_factor = 2;
    while ((per_factor + 1) * (per_factor + 1) * (per_factor + 1) <= opt.max_node_order)
        ++per_factor;
    FPModule x = random_module(rng, n, 1, per_factor);
    FPModule y = random_module(rng, n, 1, per_factor);
    FPModule z = random_module(rng, n, 1, per_factor);
    auto dxy = direct_sum(x, y);
    auto dxz = direct_sum(x, z);
    auto dxyz = direct_sum(dxy.sum, z);

    const std::size_t gx = x.generators(), gy = y.generators(), gz = z.generators();
    IntMatrix m01 = dxy.inj_a.matrix();
    IntMatrix m02 = dxz.inj_a.matrix();
    IntMatrix m13 = dxyz.inj_a.matrix();
    IntMatrix m23(gx + gy + gz, gx + gz);
    for (std::size_t i = 0; i < gx; ++i) m23.at(i, i) = 1;
    for (std::size_t i = 0; i < gz; ++i) m23.at(gx + gy + i, gx + i) = 1;
    IntMatrix m03(gx + gy + gz, gx);
    for (std::size_t i = 0; i < gx; ++i) m03.at(i, i) = 1;
    return {x, y, z, dxy.sum, dxz.sum, dxyz.sum, m01, m02, m13, m23, m03};
}

Poset diamond_poset() { return Poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

DirectSystem diamond_direct_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    DiamondModules d = diamond_modules(rng, n, opt);
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    maps.insert({{0, 1}, ModHom(d.x, d.xy, d.m01)});
    maps.insert({{0, 2}, ModHom(d.x, d.xz, d.m02)});
    maps.insert({{1, 3}, ModHom(d.xy, d.xyz, d.m13)});
    maps.insert({{2, 3}, ModHom(d.xz, d.xyz, d.m23)});
    maps.insert({{0, 3}, ModHom(d.x, d.xyz, d.m03)});
    return DirectSystem(diamond_poset(), {d.x, d.xy, d.xz, d.xyz}, std::move(maps));
}

InverseSystem diamond_inverse_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    DiamondModules d = diamond_modules(rng, n, opt);
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    maps.insert({{0, 1}, ModHom(d.xy, d.x, d.m01.transpose())});
    maps.insert({{0, 2}, ModHom(d.xz, d.x, d.m02.transpose())});
    maps.insert({{1, 3}, ModHom(d.xyz, d.xy, d.m13.transpose())});
    maps.insert({{2, 3}, ModHom(d.xyz, d.xz, d.m23.transpose())});
    maps.insert({{0, 3}, ModHom(d.xyz, d.x, d.m03.transpose())});
    return InverseSystem(diamond_poset(), {d.x, d.xy, d.xz, d.xyz}, std::move(maps));
}

Poset random_poset_with_maximum(Rng& rng, std::size_t max_nodes) {
    std::size_t k = pick(rng, 1, max_nodes);
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (pick(rng, 0, 2) == 0) rel.push_back({i, j});
    for (std::size_t i = 0; i + 1 < k; ++i) rel.push_back({i, k - 1});
    return Poset(k, rel);
}

DirectSystem constant_direct_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    Poset p = random_poset_with_maximum(rng, opt.max_nodes);
    FPModule m = random_module(rng, n, opt.max_gens, opt.max_node_order);
    std::vector<FPModule> modules(p.size(), m);
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& pr : p.strict_pairs()) maps.insert({pr, ModHom::identity(m)});
    return DirectSystem(std::move(p), std::move(modules), std::move(maps));
}

InverseSystem constant_inverse_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    Poset p = random_poset_with_maximum(rng, opt.max_nodes);
    FPModule m = random_module(rng, n, opt.max_gens, opt.max_node_order);
    std::vector<FPModule> modules(p.size(), m);
    std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
    for (const auto& pr : p.strict_pairs()) maps.insert({pr, ModHom::identity(m)});
    return InverseSystem(std::move(p), std::move(modules), std::move(maps));
}

}  // namespace

DirectSystem random_direct_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    switch (pick(rng, 0, 9)) {
        case 0: case 1: return diamond_direct_system(rng, n, opt);
        case 2: return constant_direct_system(rng, n, opt);
        default: return tree_direct_system(rng, n, opt);
    }
}

InverseSystem random_inverse_system(Rng& rng, Modulus n, const SystemOptions& opt) {
    switch (pick(rng, 0, 9)) {
        case 0: case 1: return diamond_inverse_system(rng, n, opt);
        case 2: return constant_inverse_system(rng, n, opt);
        default: return tree_inverse_system(rng, n, opt);
    }
}

DirectSystemSES random_direct_system_ses(Rng& rng, Modulus n, const SystemOptions& opt) {
    // constant non-split extension when n has a square divisor
    if (pick(rng, 0, 2) == 0) {
        for (Modulus d = 2; d * d <= n; ++d) {
            if (n % (d * d) != 0) continue;
            Poset p = random_poset_with_maximum(rng, opt.max_nodes);
            FPModule sub = FPModule::cyclic(n, d);
            FPModule mid = FPModule::cyclic(n, d * d);
            FPModule quot = FPModule::cyclic(n, d);
            IntMatrix inc(1, 1), prj(1, 1);
            inc.at(0, 0) = d;
            prj.at(0, 0) = 1;
            auto constant = [&](const FPModule& m) {
                std::vector<FPModule> modules(p.size(), m);
                std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
                for (const auto& pr : p.strict_pairs()) maps.insert({pr, ModHom::identity(m)});
                return DirectSystem(p, std::move(modules), std::move(maps));
            };
            std::vector<ModHom> inj(p.size(), ModHom(sub, mid, inc));
            std::vector<ModHom> surj(p.size(), ModHom(mid, quot, prj));
            return make_direct_system_ses(constant(sub), constant(mid), constant(quot),
                                          std::move(inj), std::move(surj));
        }
    }

    // node-wise split sum of two tree systems over a shared shape
    TreeShape shape = random_tree_shape(rng, opt.max_nodes);
    auto build = [&](std::vector<FPModule>& modules, std::vector<ModHom>& covers) {
        for (std::size_t i = 0; i < shape.size; ++i)
            modules.push_back(random_module(rng, n, 2, opt.max_node_order));
        for (std::size_t i = 0; i + 1 < shape.size; ++i)
            covers.push_back(random_hom(rng, modules[i], modules[shape.parent[i]]));
    };
    std::vector<FPModule> sub_m, quot_m;
    std::vector<ModHom> sub_c, quot_c;
    build(sub_m, sub_c);
    build(quot_m, quot_c);

    std::vector<FPModule> mid_m;
    std::vector<ModHom> inj, surj;
    for (std::size_t i = 0; i < shape.size; ++i) {
        auto d = direct_sum(sub_m[i], quot_m[i]);
        mid_m.push_back(d.sum);
        inj.push_back(d.inj_a);
        surj.push_back(d.proj_b);
    }
    auto path_map = [&](const std::vector<ModHom>& covers, std::size_t a, std::size_t b) {
        ModHom m = covers[a];
        std::size_t at = shape.parent[a];
        while (at != b) {
            m = compose(covers[at], m);
            at = shape.parent[at];
        }
        return m;
    };
    std::map<std::pair<std::size_t, std::size_t>, ModHom> sub_maps, mid_maps, quot_maps;
    for (const auto& [a, b] : shape.poset.strict_pairs()) {
        ModHom fs = path_map(sub_c, a, b);
        ModHom fq = path_map(quot_c, a, b);
        sub_maps.insert({{a, b}, fs});
        quot_maps.insert({{a, b}, fq});
        mid_maps.insert({{a, b}, ModHom(mid_m[a], mid_m[b],
                                        IntMatrix::block_diag({fs.matrix(), fq.matrix()}))});
    }
    DirectSystem sub(shape.poset, sub_m, std::move(sub_maps));
    DirectSystem mid(shape.poset, mid_m, std::move(mid_maps));
    DirectSystem quot(shape.poset, quot_m, std::move(quot_maps));
    return make_direct_system_ses(std::move(sub), std::move(mid), std::move(quot),
                                  std::move(inj), std::move(surj));
}

InverseSystemSES random_inverse_system_ses(Rng& rng, Modulus n, const SystemOptions& opt) {
    if (pick(rng, 0, 2) == 0) {
        for (Modulus d = 2; d * d <= n; ++d) {
            if (n % (d * d) != 0) continue;
            Poset p = random_poset_with_maximum(rng, opt.max_nodes);
            FPModule sub = FPModule::cyclic(n, d);
            FPModule mid = FPModule::cyclic(n, d * d);
            FPModule quot = FPModule::cyclic(n, d);
            IntMatrix inc(1, 1), prj(1, 1);
            inc.at(0, 0) = d;
            prj.at(0, 0) = 1;
            auto constant = [&](const FPModule& m) {
                std::vector<FPModule> modules(p.size(), m);
                std::map<std::pair<std::size_t, std::size_t>, ModHom> maps;
                for (const auto& pr : p.strict_pairs()) maps.insert({pr, ModHom::identity(m)});
                return InverseSystem(p, std::move(modules), std::move(maps));
            };
            std::vector<ModHom> inj(p.size(), ModHom(sub, mid, inc));
            std::vector<ModHom> surj(p.size(), ModHom(mid, quot, prj));
            return make_inverse_system_ses(constant(sub), constant(mid), constant(quot),
                                           std::move(inj), std::move(surj));
        }
    }

    TreeShape shape = random_tree_shape(rng, opt.max_nodes);
    auto build = [&](std::vector<FPModule>& modules, std::vector<ModHom>& covers) {
        for (std::size_t i = 0; i < shape.size; ++i)
            modules.push_back(random_module(rng, n, 2, opt.max_node_order));
        for (std::size_t i = 0; i + 1 < shape.size; ++i)
            covers.push_back(random_hom(rng, modules[shape.parent[i]], modules[i]));
    };
    std::vector<FPModule> sub_m, quot_m;
    std::vector<ModHom> sub_c, quot_c;
    build(sub_m, sub_c);
    build(quot_m, quot_c);

    std::vector<FPModule> mid_m;
    std::vector<ModHom> inj, surj;
    for (std::size_t i = 0; i < shape.size; ++i) {
        auto d = direct_sum(sub_m[i], quot_m[i]);
        mid_m.push_back(d.sum);
        inj.push_back(d.inj_a);
        surj.push_back(d.proj_b);
    }
    auto path_map = [&](const std::vector<ModHom>& covers, std::size_t a, std::size_t b) {
        std::vector<std::size_t> path{a};
        std::size_t at = a;
        while (at != b) {
            at = shape.parent[at];
            path.push_back(at);
        }
        ModHom m = covers[path[0]];
        for (std::size_t i = 1; i + 1 < path.size(); ++i) m = compose(m, covers[path[i]]);
        return m;
    };
    std::map<std::pair<std::size_t, std::size_t>, ModHom> sub_maps, mid_maps, quot_maps;
    for (const auto& [a, b] : shape.poset.strict_pairs()) {
        ModHom fs = path_map(sub_c, a, b);
        ModHom fq = path_map(quot_c, a, b);
        sub_maps.insert({{a, b}, fs});
        quot_maps.insert({{a, b}, fq});
        mid_maps.insert({{a, b}, ModHom(mid_m[b], mid_m[a],
                                        IntMatrix::block_diag({fs.matrix(), fq.matrix()}))});
    }
    InverseSystem sub(shape.poset, sub_m, std::move(sub_maps));
    InverseSystem mid(shape.poset, mid_m, std::move(mid_maps));
    InverseSystem quot(shape.poset, quot_m, std::move(quot_maps));
    return make_inverse_system_ses(std::move(sub), std::move(mid), std::move(quot),
                                   std::move(inj), std::move(surj));
}

}  // namespace modlim
