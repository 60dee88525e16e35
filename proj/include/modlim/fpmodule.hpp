#pragma once

// Finitely presented modules over Z/n and their homomorphisms.
//
// A module is (Z/n)^g modulo the column span of its relation matrix; a hom
// is a matrix acting on column coordinate vectors, so composition is plain
// matrix product. All values are immutable once constructed and safe to
// share across threads; the invariant-factor decomposition and the
// membership solver are computed once, eagerly, and cached in the shared
// payload.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modlim/linalg.hpp"

namespace modlim {

class Element;

class FPModule {
public:
    /// relations: one column per relation, `generators` rows.
    FPModule(Modulus n, std::size_t generators, IntMatrix relations);

    static FPModule zero(Modulus n);
    static FPModule free_module(Modulus n, std::size_t g);
    /// The cyclic quotient by (d); requires d | n, d >= 1.
    static FPModule cyclic(Modulus n, Modulus d);
    /// The ideal generated by d inside Z/n, presented as a module.
    static FPModule ideal(Modulus n, Modulus d);

    Modulus modulus() const;
    std::size_t generators() const;
    const IntMatrix& relations() const;

    /// Ascending divisibility chain d_1 | d_2 | ..., each 1 < d_i | n.
    const std::vector<Modulus>& invariant_factors() const;
    Int cardinality() const;
    bool is_zero_module() const;

    bool element_is_zero(const std::vector<Int>& coords) const;
    bool elements_equal(const std::vector<Int>& a, const std::vector<Int>& b) const;
    std::vector<Int> reduce(const std::vector<Int>& coords) const;

    Element element(std::vector<Int> coords) const;
    Element zero_element() const;

    /// One representative per coset, deterministic order; the zero element
    /// comes first. Throws CapacityError when cardinality exceeds cap.
    std::vector<Element> elements(const Int& cap) const;
    /// The subgroup { a : m*a = 0 }, listed in the same order as elements().
    std::vector<Element> torsion_elements(Modulus m, const Int& cap) const;

    /// Smith solver for [relations | n*I]; membership queries reuse it.
    const SmithSolver& membership_solver() const;

    bool same_presentation(const FPModule& other) const;
    std::string cache_key() const;

private:
    struct Payload;
    std::shared_ptr<const Payload> p_;
};

/// An element of an FPModule, stored as one coordinate representative.
class Element {
public:
    Element(FPModule parent, std::vector<Int> coords);

    const FPModule& parent() const { return parent_; }
    const std::vector<Int>& coords() const { return coords_; }

    bool is_zero() const;
    Element operator+(const Element& rhs) const;
    Element operator-(const Element& rhs) const;
    Element scaled(const Int& c) const;
    /// Coset equality in the parent module.
    bool operator==(const Element& rhs) const;

private:
    FPModule parent_;
    std::vector<Int> coords_;
};

/// A homomorphism src -> dst given by a (dst.generators x src.generators)
/// matrix; well-definedness is validated at construction.
class ModHom {
public:
    ModHom(FPModule src, FPModule dst, IntMatrix matrix);

    static ModHom identity(const FPModule& a);
    static ModHom zero_map(FPModule src, FPModule dst);
    /// Multiplication by c as an endomorphism.
    static ModHom scalar(const FPModule& a, const Int& c);

    const FPModule& src() const { return src_; }
    const FPModule& dst() const { return dst_; }
    const IntMatrix& matrix() const { return matrix_; }

    std::vector<Int> apply(const std::vector<Int>& coords) const;
    Element apply(const Element& x) const;

    ModHom operator+(const ModHom& rhs) const;
    ModHom scaled(const Int& c) const;

    /// Pointwise equality of maps (not of matrices).
    bool equal_as_maps(const ModHom& rhs) const;
    bool is_zero_map() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const;

private:
    FPModule src_, dst_;
    IntMatrix matrix_;
};

/// g after f.
ModHom compose(const ModHom& g, const ModHom& f);

struct DirectSumResult {
    FPModule sum;
    ModHom inj_a, inj_b, proj_a, proj_b;
};
DirectSumResult direct_sum(const FPModule& a, const FPModule& b);

bool is_isomorphic(const FPModule& a, const FPModule& b);

struct KernelResult {
    FPModule module;
    ModHom inclusion;  // module -> f.src()
};
KernelResult kernel(const ModHom& f);

struct ImageResult {
    FPModule module;
    ModHom inclusion;  // module -> f.dst()
};
ImageResult image(const ModHom& f);

struct CokernelResult {
    FPModule module;
    ModHom projection;  // f.dst() -> module
};
CokernelResult cokernel(const ModHom& f);

/// image(f) == kernel(g) as submodules of the middle module.
bool is_exact_at(const ModHom& f, const ModHom& g);

/// True when 0 -> A -(f)-> B -(g)-> C -> 0 is short exact.
bool is_short_exact(const ModHom& f, const ModHom& g);

/// Hom(source, target) as a module: elements correspond bijectively to
/// homomorphisms, addition is pointwise. basis columns are vectorized homs
/// (column-major: entry (i,j) of a hom matrix sits at j*g_target + i).
struct HomModule {
    FPModule module;
    FPModule source, target;
    IntMatrix basis;  // (g_source*g_target) x module.generators()

    ModHom decode(const std::vector<Int>& coords) const;
    ModHom decode(const Element& x) const;
    std::vector<Int> encode(const ModHom& f) const;
};
HomModule hom_module(const FPModule& a, const FPModule& b);

/// a (x) b presented on generator pairs; index of e_i (x) e_j is
/// i * b.generators() + j.
struct TensorProduct {
    FPModule module;
    FPModule lhs, rhs;

    Element pure(const Element& x, const Element& y) const;
};
TensorProduct tensor_product(const FPModule& a, const FPModule& b);

enum class PresentationMode { economical, elementwise };

/// 0 -> syzygies -> cover -(onto)-> A -> 0 with cover free.
struct Presentation {
    FPModule cover;
    ModHom onto;        // cover -> A
    FPModule syzygies;  // kernel of onto
    ModHom inclusion;   // syzygies -> cover
};
Presentation free_presentation(const FPModule& a, PresentationMode mode,
                               const Int& cap = Int(4096));

}  // namespace modlim
