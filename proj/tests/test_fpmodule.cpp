#include <doctest.h>

#include <random>
#include <set>

#include "modlim/fpmodule.hpp"
#include "test_util.hpp"

using namespace modlim;
using testutil::Tuple;

namespace {

FPModule module_from(Modulus n, const std::vector<std::vector<std::int64_t>>& rel_rows) {
    std::vector<std::vector<Int>> conv;
    for (const auto& r : rel_rows) conv.emplace_back(r.begin(), r.end());
    IntMatrix m = IntMatrix::from_rows(conv);
    return FPModule(n, m.rows(), m);
}

std::vector<Modulus> factors(const FPModule& a) { return a.invariant_factors(); }

// Brute-force order of (Z/n)^g modulo the relation span (independent route).
Int brute_order(const FPModule& a) {
    auto span = testutil::column_span_set(a.relations(), a.modulus());
    Int total = 1;
    for (std::size_t i = 0; i < a.generators(); ++i) total *= a.modulus();
    return total / Int(span.size());
}

ModHom hom_from_rows(const FPModule& src, const FPModule& dst,
                     const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<Int>> conv;
    for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
    return ModHom(src, dst, IntMatrix::from_rows(conv));
}

}  // namespace

TEST_CASE("free and cyclic constructors") {
    CHECK(factors(FPModule::free_module(4, 1)) == std::vector<Modulus>{4});
    CHECK(FPModule::free_module(6, 0).is_zero_module());
    CHECK(factors(FPModule::free_module(4, 2)) == std::vector<Modulus>{4, 4});

    CHECK(factors(FPModule::cyclic(4, 2)) == std::vector<Modulus>{2});
    CHECK(factors(FPModule::cyclic(4, 4)) == std::vector<Modulus>{4});
    CHECK(FPModule::cyclic(4, 1).is_zero_module());
    CHECK(factors(FPModule::cyclic(6, 3)) == std::vector<Modulus>{3});
    CHECK_THROWS_AS(FPModule::cyclic(4, 3), InputError);

    // the ideal (2) in Z/4 is cyclic of order 2
    CHECK(factors(FPModule::ideal(4, 2)) == std::vector<Modulus>{2});
    CHECK(FPModule::ideal(4, 4).is_zero_module());
}

TEST_CASE("invariant factors from a non-diagonal presentation") {
    // columns (2,0) and (1,2): second relation eliminates x, leaving Z/4
    FPModule a = module_from(4, {{2, 1}, {0, 2}});
    CHECK(factors(a) == std::vector<Modulus>{4});
    CHECK(a.cardinality() == brute_order(a));
}

TEST_CASE("direct sum") {
    FPModule z2 = FPModule::cyclic(4, 2), z4 = FPModule::cyclic(4, 4);
    auto s = direct_sum(z2, z4);
    CHECK(factors(s.sum) == std::vector<Modulus>{2, 4});
    CHECK(compose(s.proj_a, s.inj_a).equal_as_maps(ModHom::identity(z2)));
    CHECK(compose(s.proj_b, s.inj_b).equal_as_maps(ModHom::identity(z4)));
    CHECK(s.sum.cardinality() == z2.cardinality() * z4.cardinality());

    auto with_zero = direct_sum(z2, FPModule::zero(4));
    CHECK(is_isomorphic(with_zero.sum, z2));
    auto twice = direct_sum(z2, z2);
    CHECK(factors(twice.sum) == std::vector<Modulus>{2, 2});
    CHECK_THROWS_AS(direct_sum(z2, FPModule::cyclic(6, 2)), InputError);
}

TEST_CASE("isomorphism tests") {
    FPModule z2 = FPModule::cyclic(4, 2), z4 = FPModule::cyclic(4, 4);
    CHECK(is_isomorphic(direct_sum(z2, z4).sum, direct_sum(z4, z2).sum));
    CHECK(!is_isomorphic(z4, direct_sum(z2, z2).sum));
    CHECK(is_isomorphic(FPModule::zero(4), FPModule::zero(4)));
}

TEST_CASE("element enumeration") {
    CHECK(FPModule::cyclic(4, 2).elements(Int(100)).size() == 2);
    CHECK(FPModule::zero(6).elements(Int(100)).size() == 1);
    auto s = direct_sum(FPModule::cyclic(4, 2), FPModule::cyclic(4, 4)).sum;
    auto els = s.elements(Int(100));
    CHECK(els.size() == 8);
    CHECK(els[0].is_zero());  // zero representative first
    // all distinct as cosets
    for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = i + 1; j < els.size(); ++j) CHECK(!(els[i] == els[j]));
    CHECK_THROWS_AS(s.elements(Int(4)), CapacityError);
}

TEST_CASE("kernel, image, cokernel of multiplication by 2 on Z/4") {
    FPModule z4 = FPModule::cyclic(4, 4);
    ModHom twice = ModHom::scalar(z4, 2);

    auto k = kernel(twice);
    CHECK(factors(k.module) == std::vector<Modulus>{2});
    CHECK(k.inclusion.is_injective());
    CHECK(compose(twice, k.inclusion).is_zero_map());
    // oracle: enumerate {0,1,2,3}
    std::set<std::int64_t> brute;
    for (std::int64_t x = 0; x < 4; ++x)
        if ((2 * x) % 4 == 0) brute.insert(x);
    std::set<std::int64_t> got;
    for (const auto& e : k.module.elements(Int(16))) {
        auto img = k.inclusion.apply(e);
        got.insert(img.coords()[0].convert_to<std::int64_t>());
    }
    CHECK(got == brute);

    auto im = image(twice);
    CHECK(factors(im.module) == std::vector<Modulus>{2});
    CHECK(im.inclusion.is_injective());
    auto ck = cokernel(twice);
    CHECK(factors(ck.module) == std::vector<Modulus>{2});
    CHECK(ck.projection.is_surjective());
    CHECK(compose(ck.projection, twice).is_zero_map());

    auto kid = kernel(ModHom::identity(z4));
    CHECK(kid.module.is_zero_module());
    auto kz = kernel(ModHom::zero_map(z4, z4));
    CHECK(is_isomorphic(kz.module, z4));
    CHECK(image(ModHom::identity(z4)).module.cardinality() == 4);
    CHECK(cokernel(ModHom::identity(z4)).module.is_zero_module());
    CHECK(image(ModHom::zero_map(z4, z4)).module.is_zero_module());
    CHECK(is_isomorphic(cokernel(ModHom::zero_map(z4, z4)).module, z4));
}

TEST_CASE("exactness of 0 -> Z/2 -> Z/4 -> Z/2 -> 0") {
    FPModule z2 = FPModule::cyclic(4, 2), z4 = FPModule::cyclic(4, 4);
    ModHom inc = hom_from_rows(z2, z4, {{2}});
    ModHom proj = hom_from_rows(z4, z2, {{1}});
    CHECK(is_exact_at(inc, proj));
    CHECK(is_short_exact(inc, proj));

    CHECK(is_exact_at(ModHom::identity(z4), ModHom::zero_map(z4, z2)));
    // image(0) = 0 = kernel(id), so a (0, id) pair is exact at any middle;
    // a (0, 0) pair is exact only when the middle vanishes
    CHECK(is_exact_at(ModHom::zero_map(z2, z4), ModHom::identity(z4)));
    CHECK(!is_exact_at(ModHom::zero_map(z2, z4), ModHom::zero_map(z4, z2)));
    CHECK(is_exact_at(ModHom::zero_map(z2, FPModule::zero(4)),
                      ModHom::zero_map(FPModule::zero(4), z2)));
}

TEST_CASE("kernel/image/cokernel agree with exhaustive element computation") {
    std::mt19937_64 rng(314);
    for (Modulus n : {4, 6, 9}) {
        for (int iter = 0; iter < 6; ++iter) {
            std::uniform_int_distribution<std::size_t> gdist(0, 2);
            std::size_t ga = gdist(rng), gb = gdist(rng);
            FPModule a(n, ga, testutil::random_matrix(rng, ga, 2, 0, n - 1));
            FPModule b(n, gb, testutil::random_matrix(rng, gb, 2, 0, n - 1));
            auto h = hom_module(a, b);
            if (h.module.cardinality() == 0) continue;
            std::uniform_int_distribution<std::int64_t> cdist(0, n - 1);
            std::vector<Int> coords(h.module.generators());
            for (auto& c : coords) c = cdist(rng);
            ModHom f = h.decode(coords);

            // brute element-level kernel/image sizes
            auto els_a = a.elements(Int(256));
            auto els_b = b.elements(Int(256));
            std::size_t ker_count = 0;
            std::set<std::size_t> image_classes;
            for (const auto& x : els_a) {
                Element y = f.apply(x);
                if (y.is_zero()) ++ker_count;
                for (std::size_t i = 0; i < els_b.size(); ++i)
                    if (els_b[i] == y) { image_classes.insert(i); break; }
            }
            CHECK(kernel(f).module.cardinality() == Int(ker_count));
            CHECK(image(f).module.cardinality() == Int(image_classes.size()));
            CHECK(cokernel(f).module.cardinality() ==
                  b.cardinality() / Int(image_classes.size()));
        }
    }
}

TEST_CASE("hom module") {
    FPModule z2 = FPModule::cyclic(4, 2), z4 = FPModule::cyclic(4, 4);
    auto h = hom_module(z2, z4);
    CHECK(factors(h.module) == std::vector<Modulus>{2});
    CHECK(h.decode(h.module.zero_element()).is_zero_map());

    // decode is additive
    auto els = h.module.elements(Int(16));
    for (const auto& x : els)
        for (const auto& y : els)
            CHECK(h.decode(x + y).equal_as_maps(
                ModHom(z2, z4, h.decode(x).matrix() + h.decode(y).matrix())));

    // Hom(R, B) is isomorphic to B; Hom(A, 0) = 0
    FPModule r = FPModule::free_module(4, 1);
    CHECK(is_isomorphic(hom_module(r, z4).module, z4));
    CHECK(hom_module(z4, FPModule::zero(4)).module.is_zero_module());
    CHECK(hom_module(FPModule::zero(4), z4).module.is_zero_module());

    // encode round-trips
    auto coords = h.encode(h.decode({Int(1)}));
    CHECK(h.decode(coords).equal_as_maps(h.decode({Int(1)})));
}

TEST_CASE("hom and tensor cardinalities for cyclic modules") {
    for (Modulus n : {4, 6, 12}) {
        for (Modulus a : divisors_of(n)) {
            for (Modulus b : divisors_of(n)) {
                if (a < 2 || b < 2) continue;
                FPModule ca = FPModule::cyclic(n, a), cb = FPModule::cyclic(n, b);
                Int expected(positive_gcd(Int(a), Int(b)));
                CHECK(hom_module(ca, cb).module.cardinality() == expected);
                CHECK(tensor_product(ca, cb).module.cardinality() == expected);
            }
        }
    }
}

TEST_CASE("tensor product") {
    FPModule z2 = FPModule::cyclic(4, 2);
    auto t = tensor_product(z2, z2);
    CHECK(factors(t.module) == std::vector<Modulus>{2});

    FPModule r = FPModule::free_module(4, 1);
    FPModule b = direct_sum(FPModule::cyclic(4, 2), FPModule::cyclic(4, 4)).sum;
    CHECK(is_isomorphic(tensor_product(r, b).module, b));
    CHECK(tensor_product(b, FPModule::zero(4)).module.is_zero_module());

    // pure tensors are bilinear
    auto els = z2.elements(Int(8));
    for (const auto& x : els)
        for (const auto& y : els) {
            CHECK(t.pure(x + y, els[1]) == t.pure(x, els[1]) + t.pure(y, els[1]));
            CHECK(t.pure(x, y.scaled(Int(3))) == t.pure(x, y).scaled(Int(3)));
        }
}

TEST_CASE("free presentations") {
    FPModule z2 = FPModule::cyclic(4, 2);

    auto p = free_presentation(z2, PresentationMode::economical);
    CHECK(p.cover.invariant_factors() == std::vector<Modulus>{4});
    CHECK(p.onto.is_surjective());
    CHECK(factors(p.syzygies) == std::vector<Modulus>{2});  // the ideal (2)
    CHECK(is_exact_at(p.inclusion, p.onto));
    CHECK(compose(p.onto, p.inclusion).is_zero_map());

    auto pf = free_presentation(FPModule::free_module(4, 2), PresentationMode::economical);
    CHECK(pf.syzygies.is_zero_module());

    auto pe = free_presentation(z2, PresentationMode::elementwise);
    CHECK(pe.cover.invariant_factors() == std::vector<Modulus>{4, 4});
    CHECK(pe.onto.matrix().col(0) == std::vector<Int>{Int(0)});  // e_0 -> 0
    CHECK(pe.onto.is_surjective());
    CHECK(is_exact_at(pe.inclusion, pe.onto));

    CHECK_THROWS_AS(
        free_presentation(FPModule::free_module(4, 4), PresentationMode::elementwise, Int(16)),
        CapacityError);
}

TEST_CASE("direct sum invariant factors against order and p-rank oracles") {
    std::mt19937_64 rng(2718);
    for (Modulus n : {4, 6, 8, 9, 12}) {
        for (int iter = 0; iter < 5; ++iter) {
            std::uniform_int_distribution<std::size_t> gdist(0, 3);
            std::size_t ga = gdist(rng), gb = gdist(rng);
            FPModule a(n, ga, testutil::random_matrix(rng, ga, 3, 0, n - 1));
            FPModule b(n, gb, testutil::random_matrix(rng, gb, 3, 0, n - 1));
            auto s = direct_sum(a, b).sum;
            CHECK(s.cardinality() == a.cardinality() * b.cardinality());
            for (Modulus p : {2, 3}) {
                if (n % p != 0) continue;
                auto prank = [&](const FPModule& m) {
                    std::size_t r = 0;
                    for (Modulus d : m.invariant_factors())
                        if (d % p == 0) ++r;
                    return r;
                };
                CHECK(prank(s) == prank(a) + prank(b));
            }
            // the factor list is a divisibility chain of divisors of n
            const auto& fs = s.invariant_factors();
            for (std::size_t i = 0; i < fs.size(); ++i) {
                CHECK(n % fs[i] == 0);
                CHECK(fs[i] > 1);
                if (i + 1 < fs.size()) CHECK(fs[i + 1] % fs[i] == 0);
            }
        }
    }
}
