#include "modlim/fpmodule.hpp"

#include <sstream>

namespace modlim {

namespace {

std::vector<Int> mod_reduce(const std::vector<Int>& v, Modulus n) {
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Int r = v[i] % n;
        if (r < 0) r += n;
        out[i] = r;
    }
    return out;
}

}  // namespace

struct FPModule::Payload {
    Modulus n;
    std::size_t g;
    IntMatrix relations;
    SmithSolver solver;
    std::vector<Modulus> factors;
    Int cardinality;
    std::string key;

    Payload(Modulus n_, std::size_t g_, IntMatrix rel)
        : n(n_),
          g(g_),
          relations(std::move(rel)),
          solver(IntMatrix::hstack(relations, IntMatrix::identity(g_).scaled(Int(n_)))) {
        const IntMatrix& s = solver.factorization().S;
        cardinality = 1;
        for (std::size_t i = 0; i < g; ++i) {
            const Int& d = s.at(i, i);
            if (d == 0 || d > n || n % d.convert_to<Modulus>() != 0)
                throw InternalError("invariant factor outside divisors of n");
            if (d > 1) {
                factors.push_back(d.convert_to<Modulus>());
                cardinality *= d;
            }
        }
        std::ostringstream os;
        os << n << ":" << g << ":" << relations.to_string();
        key = os.str();
    }
};

FPModule::FPModule(Modulus n, std::size_t generators, IntMatrix relations) {
    if (n < 2) throw InputError("FPModule: modulus must be >= 2");
    if (relations.rows() != generators)
        throw InputError("FPModule: relation matrix must have one row per generator");
    p_ = std::make_shared<const Payload>(n, generators, std::move(relations));
}

FPModule FPModule::zero(Modulus n) { return FPModule(n, 0, IntMatrix(0, 0)); }

FPModule FPModule::free_module(Modulus n, std::size_t g) {
    return FPModule(n, g, IntMatrix(g, 0));
}

FPModule FPModule::cyclic(Modulus n, Modulus d) {
    if (d < 1 || n % d != 0) throw InputError("cyclic: d must be a positive divisor of n");
    IntMatrix rel(1, 1);
    rel.at(0, 0) = d;
    return FPModule(n, 1, std::move(rel));
}

FPModule FPModule::ideal(Modulus n, Modulus d) {
    if (d < 1 || n % d != 0) throw InputError("ideal: d must be a positive divisor of n");
    return cyclic(n, n / d);  // (d) is cyclic with annihilator (n/d)
}

Modulus FPModule::modulus() const { return p_->n; }
std::size_t FPModule::generators() const { return p_->g; }
const IntMatrix& FPModule::relations() const { return p_->relations; }
const std::vector<Modulus>& FPModule::invariant_factors() const { return p_->factors; }
Int FPModule::cardinality() const { return p_->cardinality; }
bool FPModule::is_zero_module() const { return p_->factors.empty(); }
const SmithSolver& FPModule::membership_solver() const { return p_->solver; }
std::string FPModule::cache_key() const { return p_->key; }

bool FPModule::same_presentation(const FPModule& other) const {
    return p_ == other.p_ || p_->key == other.p_->key;
}

bool FPModule::element_is_zero(const std::vector<Int>& coords) const {
    if (coords.size() != p_->g) throw InputError("element_is_zero: coordinate length mismatch");
    return p_->solver.solve(coords).has_value();
}

bool FPModule::elements_equal(const std::vector<Int>& a, const std::vector<Int>& b) const {
    if (a.size() != p_->g || b.size() != p_->g)
        throw InputError("elements_equal: coordinate length mismatch");
    std::vector<Int> d(p_->g);
    for (std::size_t i = 0; i < p_->g; ++i) d[i] = a[i] - b[i];
    return element_is_zero(d);
}

std::vector<Int> FPModule::reduce(const std::vector<Int>& coords) const {
    return mod_reduce(coords, p_->n);
}

Element FPModule::element(std::vector<Int> coords) const {
    return Element(*this, std::move(coords));
}

Element FPModule::zero_element() const {
    return Element(*this, std::vector<Int>(p_->g, Int(0)));
}

std::vector<Element> FPModule::elements(const Int& cap) const {
    return torsion_elements(p_->n, cap);
}

std::vector<Element> FPModule::torsion_elements(Modulus m, const Int& cap) const {
    const std::size_t g = p_->g;
    const IntMatrix& s = p_->solver.factorization().S;
    const IntMatrix& u_inv = p_->solver.factorization().U_inv;

    std::vector<Modulus> counts(g), strides(g);
    Int total = 1;
    for (std::size_t i = 0; i < g; ++i) {
        Modulus d = s.at(i, i).convert_to<Modulus>();
        Modulus c = positive_gcd(Int(d), Int(m)).convert_to<Modulus>();
        counts[i] = c;
        strides[i] = d / c;
        total *= c;
    }
    if (total > cap) throw CapacityError("torsion_elements: subgroup larger than cap");

    std::vector<Element> out;
    std::vector<Modulus> idx(g, 0);
    while (true) {
        std::vector<Int> t(g);
        for (std::size_t i = 0; i < g; ++i) t[i] = Int(idx[i]) * strides[i];
        out.push_back(Element(*this, u_inv.apply(t)));
        std::size_t i = g;
        bool done = true;
        while (i > 0) {
            --i;
            if (++idx[i] < counts[i]) { done = false; break; }
            idx[i] = 0;
        }
        if (done) break;
    }
    return out;
}

// --- Element ---------------------------------------------------------------

Element::Element(FPModule parent, std::vector<Int> coords) : parent_(std::move(parent)) {
    if (coords.size() != parent_.generators())
        throw InputError("Element: coordinate length mismatch");
    coords_ = parent_.reduce(coords);
}

bool Element::is_zero() const { return parent_.element_is_zero(coords_); }

Element Element::operator+(const Element& rhs) const {
    if (!parent_.same_presentation(rhs.parent_))
        throw InputError("element sum: different parent modules");
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + rhs.coords_[i];
    return Element(parent_, std::move(c));
}

Element Element::operator-(const Element& rhs) const {
    if (!parent_.same_presentation(rhs.parent_))
        throw InputError("element difference: different parent modules");
    std::vector<Int> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - rhs.coords_[i];
    return Element(parent_, std::move(c));
}

Element Element::scaled(const Int& c) const {
    std::vector<Int> v(coords_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coords_[i] * c;
    return Element(parent_, std::move(v));
}

bool Element::operator==(const Element& rhs) const {
    if (!parent_.same_presentation(rhs.parent_))
        throw InputError("element comparison: different parent modules");
    return parent_.elements_equal(coords_, rhs.coords_);
}

// --- ModHom ----------------------------------------------------------------

ModHom::ModHom(FPModule src, FPModule dst, IntMatrix matrix)
    : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_.modulus() != dst_.modulus()) throw InputError("ModHom: modulus mismatch");
    if (matrix.rows() != dst_.generators() || matrix.cols() != src_.generators())
        throw InputError("ModHom: matrix must be dst.generators x src.generators");
    matrix_ = matrix.reduced_mod(Int(src_.modulus()));
    // well-definedness: relations of the source must die in the target
    const IntMatrix img = matrix_ * src_.relations();
    for (std::size_t j = 0; j < img.cols(); ++j) {
        if (!dst_.element_is_zero(img.col(j)))
            throw InputError("ModHom: matrix does not kill source relation " + std::to_string(j));
    }
}

ModHom ModHom::identity(const FPModule& a) {
    return ModHom(a, a, IntMatrix::identity(a.generators()));
}

ModHom ModHom::zero_map(FPModule src, FPModule dst) {
    IntMatrix z(dst.generators(), src.generators());
    return ModHom(std::move(src), std::move(dst), std::move(z));
}

ModHom ModHom::scalar(const FPModule& a, const Int& c) {
    return ModHom(a, a, IntMatrix::identity(a.generators()).scaled(c));
}

std::vector<Int> ModHom::apply(const std::vector<Int>& coords) const {
    return dst_.reduce(matrix_.apply(coords));
}

Element ModHom::apply(const Element& x) const {
    if (!x.parent().same_presentation(src_))
        throw InputError("ModHom::apply: element not in the source module");
    return Element(dst_, matrix_.apply(x.coords()));
}

ModHom ModHom::operator+(const ModHom& rhs) const {
    if (!src_.same_presentation(rhs.src_) || !dst_.same_presentation(rhs.dst_))
        throw InputError("hom sum: source/target mismatch");
    return ModHom(src_, dst_, matrix_ + rhs.matrix_);
}

ModHom ModHom::scaled(const Int& c) const { return ModHom(src_, dst_, matrix_.scaled(c)); }

bool ModHom::equal_as_maps(const ModHom& rhs) const {
    if (!src_.same_presentation(rhs.src_) || !dst_.same_presentation(rhs.dst_))
        throw InputError("hom comparison: source/target mismatch");
    const IntMatrix d = matrix_ - rhs.matrix_;
    for (std::size_t j = 0; j < d.cols(); ++j)
        if (!dst_.element_is_zero(d.col(j))) return false;
    return true;
}

bool ModHom::is_zero_map() const {
    for (std::size_t j = 0; j < matrix_.cols(); ++j)
        if (!dst_.element_is_zero(matrix_.col(j))) return false;
    return true;
}

bool ModHom::is_injective() const {
    IntMatrix k = preimage_generators(matrix_, dst_.relations(), src_.modulus());
    for (std::size_t j = 0; j < k.cols(); ++j)
        if (!src_.element_is_zero(k.col(j))) return false;
    return true;
}

bool ModHom::is_surjective() const {
    FPModule coker(dst_.modulus(), dst_.generators(),
                   IntMatrix::hstack(dst_.relations(), matrix_));
    return coker.is_zero_module();
}

bool ModHom::is_isomorphism() const { return is_injective() && is_surjective(); }

ModHom compose(const ModHom& g, const ModHom& f) {
    if (!g.src().same_presentation(f.dst()))
        throw InputError("compose: inner modules do not match");
    return ModHom(f.src(), g.dst(), g.matrix() * f.matrix());
}

// --- constructions ----------------------------------------------------------

DirectSumResult direct_sum(const FPModule& a, const FPModule& b) {
    if (a.modulus() != b.modulus()) throw InputError("direct_sum: modulus mismatch");
    const std::size_t ga = a.generators(), gb = b.generators();
    FPModule sum(a.modulus(), ga + gb,
                 IntMatrix::block_diag({a.relations(), b.relations()}));

    IntMatrix ia(ga + gb, ga), ib(ga + gb, gb), pa(ga, ga + gb), pb(gb, ga + gb);
    for (std::size_t i = 0; i < ga; ++i) { ia.at(i, i) = 1; pa.at(i, i) = 1; }
    for (std::size_t i = 0; i < gb; ++i) { ib.at(ga + i, i) = 1; pb.at(i, ga + i) = 1; }
    return {sum, ModHom(a, sum, ia), ModHom(b, sum, ib), ModHom(sum, a, pa),
            ModHom(sum, b, pb)};
}

bool is_isomorphic(const FPModule& a, const FPModule& b) {
    if (a.modulus() != b.modulus()) throw InputError("is_isomorphic: modulus mismatch");
    return a.invariant_factors() == b.invariant_factors();
}

KernelResult kernel(const ModHom& f) {
    const Modulus n = f.src().modulus();
    IntMatrix gens = preimage_generators(f.matrix(), f.dst().relations(), n);
    IntMatrix rels = preimage_generators(gens, f.src().relations(), n);
    FPModule k(n, gens.cols(), std::move(rels));
    return {k, ModHom(k, f.src(), std::move(gens))};
}

ImageResult image(const ModHom& f) {
    const Modulus n = f.src().modulus();
    IntMatrix rels = preimage_generators(f.matrix(), f.dst().relations(), n);
    FPModule img(n, f.src().generators(), std::move(rels));
    return {img, ModHom(img, f.dst(), f.matrix())};
}

CokernelResult cokernel(const ModHom& f) {
    const Modulus n = f.src().modulus();
    IntMatrix rels = compress_columns(IntMatrix::hstack(f.dst().relations(), f.matrix()), n);
    FPModule c(n, f.dst().generators(), std::move(rels));
    return {c, ModHom(f.dst(), c, IntMatrix::identity(f.dst().generators()))};
}

bool is_exact_at(const ModHom& f, const ModHom& g) {
    if (!f.dst().same_presentation(g.src()))
        throw InputError("is_exact_at: maps are not composable");
    const FPModule& mid = f.dst();
    const Modulus n = mid.modulus();
    IntMatrix ker_gens = preimage_generators(g.matrix(), g.dst().relations(), n);

    const Int nn(n);
    SmithSolver into_kernel(IntMatrix::hstack(
        IntMatrix::hstack(ker_gens, mid.relations()),
        IntMatrix::identity(mid.generators()).scaled(nn)));
    for (std::size_t j = 0; j < f.matrix().cols(); ++j)
        if (!into_kernel.solve(f.matrix().col(j))) return false;

    SmithSolver into_image(IntMatrix::hstack(
        IntMatrix::hstack(f.matrix(), mid.relations()),
        IntMatrix::identity(mid.generators()).scaled(nn)));
    for (std::size_t j = 0; j < ker_gens.cols(); ++j)
        if (!into_image.solve(ker_gens.col(j))) return false;
    return true;
}

bool is_short_exact(const ModHom& f, const ModHom& g) {
    return f.is_injective() && g.is_surjective() && is_exact_at(f, g);
}

// --- Hom and tensor ----------------------------------------------------------

ModHom HomModule::decode(const std::vector<Int>& coords) const {
    if (coords.size() != module.generators()) throw InputError("decode: coordinate mismatch");
    std::vector<Int> v = basis.apply(coords);
    const std::size_t gt = target.generators();
    IntMatrix m(gt, source.generators());
    for (std::size_t j = 0; j < source.generators(); ++j)
        for (std::size_t i = 0; i < gt; ++i) m.at(i, j) = v[j * gt + i];
    return ModHom(source, target, std::move(m));
}

ModHom HomModule::decode(const Element& x) const {
    if (!x.parent().same_presentation(module))
        throw InputError("decode: element not in the hom module");
    return decode(x.coords());
}

std::vector<Int> HomModule::encode(const ModHom& f) const {
    if (!f.src().same_presentation(source) || !f.dst().same_presentation(target))
        throw InputError("encode: hom has wrong source/target");
    const std::size_t gt = target.generators();
    std::vector<Int> v(source.generators() * gt);
    for (std::size_t j = 0; j < source.generators(); ++j)
        for (std::size_t i = 0; i < gt; ++i) v[j * gt + i] = f.matrix().at(i, j);
    const Modulus n = source.modulus();
    SmithSolver solver(IntMatrix::hstack(
        basis, IntMatrix::identity(v.size()).scaled(Int(n))));
    auto z = solver.solve(v);
    if (!z) throw InternalError("encode: hom not in the computed hom module");
    std::vector<Int> coords(module.generators());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        Int r = (*z)[i] % n;
        if (r < 0) r += n;
        coords[i] = r;
    }
    return coords;
}

HomModule hom_module(const FPModule& a, const FPModule& b) {
    if (a.modulus() != b.modulus()) throw InputError("hom_module: modulus mismatch");
    const Modulus n = a.modulus();
    const std::size_t gs = a.generators(), gt = b.generators();
    const std::size_t dim = gs * gt;
    const std::size_t ka = a.relations().cols();

    // constraint: X * (each source relation) must die in the target
    IntMatrix constraint(ka * gt, dim);
    for (std::size_t rel = 0; rel < ka; ++rel)
        for (std::size_t i = 0; i < gt; ++i)
            for (std::size_t j = 0; j < gs; ++j)
                constraint.at(rel * gt + i, j * gt + i) = a.relations().at(j, rel);
    std::vector<IntMatrix> tgt_blocks(ka, b.relations());
    IntMatrix target_span = IntMatrix::block_diag(tgt_blocks);

    IntMatrix basis = dim == 0 ? IntMatrix(0, 0)
                               : preimage_generators(constraint, target_span, n);

    // maps equal to zero: every generator image lies in the target relations
    std::vector<IntMatrix> zero_blocks(gs, b.relations());
    IntMatrix zero_span = IntMatrix::block_diag(zero_blocks);
    IntMatrix rels = preimage_generators(basis, zero_span, n);

    FPModule h(n, basis.cols(), std::move(rels));
    return {h, a, b, std::move(basis)};
}

Element TensorProduct::pure(const Element& x, const Element& y) const {
    if (!x.parent().same_presentation(lhs) || !y.parent().same_presentation(rhs))
        throw InputError("pure: elements not in the tensor factors");
    const std::size_t gb = rhs.generators();
    std::vector<Int> c(lhs.generators() * gb);
    for (std::size_t i = 0; i < lhs.generators(); ++i)
        for (std::size_t j = 0; j < gb; ++j) c[i * gb + j] = x.coords()[i] * y.coords()[j];
    return Element(module, std::move(c));
}

TensorProduct tensor_product(const FPModule& a, const FPModule& b) {
    if (a.modulus() != b.modulus()) throw InputError("tensor_product: modulus mismatch");
    const Modulus n = a.modulus();
    IntMatrix rels = IntMatrix::hstack(
        IntMatrix::kronecker(a.relations(), IntMatrix::identity(b.generators())),
        IntMatrix::kronecker(IntMatrix::identity(a.generators()), b.relations()));
    FPModule t(n, a.generators() * b.generators(), compress_columns(rels, n));
    return {t, a, b};
}

Presentation free_presentation(const FPModule& a, PresentationMode mode, const Int& cap) {
    const Modulus n = a.modulus();
    if (mode == PresentationMode::economical) {
        FPModule cover = FPModule::free_module(n, a.generators());
        ModHom onto(cover, a, IntMatrix::identity(a.generators()));
        KernelResult k = kernel(onto);
        return {cover, onto, k.module, k.inclusion};
    }
    std::vector<Element> els = a.elements(cap);
    FPModule cover = FPModule::free_module(n, els.size());
    IntMatrix q(a.generators(), els.size());
    for (std::size_t j = 0; j < els.size(); ++j) q.set_col(j, els[j].coords());
    ModHom onto(cover, a, std::move(q));
    KernelResult k = kernel(onto);
    return {cover, onto, k.module, k.inclusion};
}

}  // namespace modlim
