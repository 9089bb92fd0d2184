#include "dialg/speciality.hpp"

#include <map>

#include "dialg/errors.hpp"

namespace dialg {

OperadMorphism::OperadMorphism(std::string name, std::shared_ptr<const Signature> source, VarietyPresentation target,
                               std::vector<std::optional<Polynomial>> images)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (!source_) throw ArgumentError("morphism without a source signature");
    if (images_.size() != source_->size())
        throw ArgumentError("morphism " + name_ + " lists " + std::to_string(images_.size()) + " images for " +
                            std::to_string(source_->size()) + " source symbols");
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (!images_[s]) continue;
        const auto& img = *images_[s];
        if (!(img.signature() == target_.signature()))
            throw ArgumentError("image of " + source_->op(s).name + " is not over the target signature");
        if (img.degree() != source_->arity(s))
            throw ArgumentError("image of " + source_->op(s).name + " has degree " + std::to_string(img.degree()) +
                                ", expected " + std::to_string(source_->arity(s)));
        images_[s] = img.in_field(FieldSpec::rationals());
    }
}

const Polynomial& OperadMorphism::image(std::size_t symbol) const {
    if (symbol >= images_.size() || !images_[symbol])
        throw ArgumentError("symbol " + (symbol < source_->size() ? source_->op(symbol).name : std::to_string(symbol)) +
                            " has no image under " + name_);
    return *images_[symbol];
}

namespace {

// Evaluates monomials whose leaves read 1..n left to right.
class SkeletonEvaluator {
public:
    SkeletonEvaluator(const OperadMorphism& w, FieldSpec field) : w_(w), field_(field) {}

    Polynomial eval(const Monomial& standard) {
        auto it = memo_.find(standard.tokens());
        if (it != memo_.end()) return it->second;
        Polynomial out = standard.is_leaf() ? Polynomial::identity(w_.target().signature_ptr(), field_) : [&] {
            std::vector<Polynomial> inner;
            int offset = 0;
            for (const auto& c : standard.children(w_.source())) {
                inner.push_back(eval(c.shifted(-offset)));
                offset += static_cast<int>(c.degree());
            }
            return compose(w_.image(standard.root_symbol()).in_field(field_), inner);
        }();
        memo_.emplace(standard.tokens(), out);
        return out;
    }

    // Image of an arbitrary multilinear monomial.
    Polynomial eval_any(const Monomial& m) {
        int next = 0;
        Monomial standard = m.relabeled([&](int) { return ++next; });
        auto word = m.leaf_word();
        return apply_permutation(Permutation(word.begin(), word.end()), eval(standard));
    }

private:
    const OperadMorphism& w_;
    FieldSpec field_;
    std::map<std::vector<std::int32_t>, Polynomial> memo_;
};

} // namespace

Polynomial evaluate_morphism(const OperadMorphism& w, const Polynomial& p) {
    if (!(p.signature() == w.source())) throw ArgumentError("polynomial is not over the morphism's source signature");
    SkeletonEvaluator ev(w, p.field());
    Polynomial out(w.target().signature_ptr(), p.degree(), p.field());
    for (const auto& [m, c] : p.terms()) out += c * ev.eval_any(m);
    return out;
}

template <class K>
std::vector<SparseVec<typename K::value_type>> reduced_images(const OperadMorphism& w, const MonomialBasis& source,
                                                              const K& field, const IdealOptions& opts) {
    const std::size_t d = source.degree();
    auto target = consequences_at_degree(w.target(), d, field, opts);
    SkeletonEvaluator ev(w, field.spec());
    std::vector<SparseVec<typename K::value_type>> out(source.size());
    const std::size_t labelings = source.labelings();
    for (std::size_t s = 0; s < source.skeleton_count(); ++s) {
        // Labeling 0 is the identity word, so this is the standard tree.
        Polynomial base = ev.eval(source.monomial(s * labelings));
        for (std::size_t r = 0; r < labelings; ++r) {
            auto word = permutation_unrank(r, d);
            Polynomial img = apply_permutation(Permutation(word.begin(), word.end()), base);
            out[s * labelings + r] = target.ideal->reduce(to_vector(img, *target.basis, field));
        }
    }
    return out;
}

template <class K>
KernelComponent<K> morphism_kernel_at_degree(const OperadMorphism& w, std::size_t d, const K& field,
                                             const IdealOptions& opts) {
    if (d < 2) throw ArgumentError("kernels are computed for degree >= 2");
    if (d > opts.max_degree)
        throw ResourceLimitError("degree " + std::to_string(d) + " exceeds the degree cap " +
                                     std::to_string(opts.max_degree),
                                 opts.max_degree);
    auto basis = basis_for(w.source(), d, opts.max_degree);
    auto images = reduced_images(w, *basis, field, opts);
    const std::size_t target_dim = basis_for(w.target().signature(), d, opts.max_degree)->size();
    auto kernel = kernel_of_images(field, target_dim, images);
    KernelComponent<K> out{basis, span_of(field, basis->size(), kernel), 0};
    out.image_rank = span_of(field, target_dim, images).rank();
    return out;
}

void check_induced_morphism(const OperadMorphism& w, const VarietyPresentation& source, const FieldSpec& field,
                            const IdealOptions& opts) {
    if (!(source.signature() == w.source()))
        throw ArgumentError("variety " + source.name() + " is not over the source signature of " + w.name());
    for (std::size_t i = 0; i < source.generators().size(); ++i) {
        Polynomial img = evaluate_morphism(w, source.generators()[i].in_field(field));
        if (!identity_implies(w.target(), img, opts)) {
            const std::string gname =
                i < source.generator_names().size() ? source.generator_names()[i] : "#" + std::to_string(i + 1);
            throw ArgumentError("generator " + gname + " of " + source.name() + " does not map to an identity of " +
                                w.target().name() + " under " + w.name());
        }
    }
}

namespace {

template <class K>
std::vector<SparseVec<typename K::value_type>> residues(const Subspace<K>& ideal,
                                                        const std::vector<SparseVec<typename K::value_type>>& rows) {
    std::vector<SparseVec<typename K::value_type>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(ideal.reduce(r));
    return out;
}

template <class K>
Subspace<K> special_span(const OperadMorphism& w, const VarietyPresentation& source, std::size_t d, const K& field,
                         const IdealOptions& opts, DegreeComponent<K>& source_ideal) {
    auto kernel = morphism_kernel_at_degree(w, d, field, opts);
    source_ideal = consequences_at_degree(source, d, field, opts);
    return span_of(field, kernel.basis->size(), residues(*source_ideal.ideal, kernel.kernel.rows()));
}

} // namespace

std::vector<Polynomial> special_identities(const OperadMorphism& w, const VarietyPresentation& source, std::size_t d,
                                           const FieldSpec& field, const IdealOptions& opts) {
    check_induced_morphism(w, source, field, opts);
    return with_field(field, [&](const auto& k) {
        using KF = std::decay_t<decltype(k)>;
        DegreeComponent<KF> src;
        auto span = special_span(w, source, d, k, opts, src);
        std::vector<Polynomial> out;
        for (const auto& r : span.rows()) out.push_back(to_polynomial(r, *src.basis, k, source.signature_ptr()));
        return out;
    });
}

DiSpecialResult di_special_identities(const OperadMorphism& w, const VarietyPresentation& source, std::size_t d,
                                      const FieldSpec& field, const IdealOptions& opts) {
    check_induced_morphism(w, source, field, opts);
    return with_field(field, [&](const auto& k) {
        using KF = std::decay_t<decltype(k)>;
        using Row = SparseVec<typename KF::value_type>;
        DegreeComponent<KF> src;
        auto special = special_span(w, source, d, k, opts, src);
        const auto N = static_cast<std::uint32_t>(src.ambient_dim());

        // Componentwise kernel on the whole di-space, computed as one map.
        auto base_images = reduced_images(w, *src.basis, k, opts);
        const auto T = static_cast<std::uint32_t>(basis_for(w.target().signature(), d, opts.max_degree)->size());
        std::vector<Row> images;
        images.reserve(d * N);
        for (std::uint32_t block = 0; block < d; ++block)
            for (std::uint32_t i = 0; i < N; ++i) {
                Row img = base_images[i];
                for (auto& e : img) e.first += block * T;
                images.push_back(std::move(img));
            }
        auto kernel = kernel_of_images(k, d * T, images);
        auto di = di_ideal_at_degree(source, d, k, opts);
        Subspace<KF> computed = span_of(k, d * N, residues(di.ideal, kernel));

        std::vector<Row> lifts;
        for (std::uint32_t block = 0; block < d; ++block)
            for (const auto& r : special.rows()) {
                Row l = r;
                for (auto& e : l) e.first += block * N;
                lifts.push_back(std::move(l));
            }
        Subspace<KF> predicted = span_of(k, d * N, lifts);

        DiSpecialResult out;
        out.special_dim = special.rank();
        out.lift_contained = computed.contains(predicted);
        out.lift_match = out.lift_contained && computed.rank() == predicted.rank();
        for (const auto& r : computed.rows()) out.basis.push_back(di_from_vector(r, *src.basis, k, source.signature_ptr()));
        return out;
    });
}

namespace {

template <class K>
BsoReport bso_theorem(const OperadMorphism& w, std::size_t d, const K& field, const IdealOptions& opts) {
    using Row = SparseVec<typename K::value_type>;
    Doubling dbl(w.source_ptr());
    auto source_basis = basis_for(w.source(), d, opts.max_degree);
    auto doubled_basis = basis_for(dbl.doubled(), d, opts.max_degree);
    const std::size_t T = basis_for(w.target().signature(), d, opts.max_degree)->size();

    auto base_images = reduced_images(w, *source_basis, field, opts);
    auto images = zeta_images<K>(*doubled_basis, dbl.map(), *source_basis, T, base_images);

    BsoReport r;
    r.ambient_dim = doubled_basis->size();
    r.kernel_dim = r.ambient_dim - span_of(field, d * T, images).rank();

    std::vector<Polynomial> gens = zero_identities(dbl);
    for (std::size_t m = 2; m <= d; ++m) {
        auto kernel = morphism_kernel_at_degree(w, m, field, opts);
        r.kernel_dims_by_degree.push_back(kernel.kernel.rank());
        for (const Row& row : kernel.kernel.rows()) {
            Polynomial s = to_polynomial(row, *kernel.basis, field, w.source_ptr());
            for (std::size_t k = 1; k <= m; ++k) gens.push_back(rho_poly(s, k, dbl).in_field(field.spec()));
        }
    }
    for (auto& g : gens) g = g.in_field(field.spec());
    VarietyPresentation lifted("lifted-" + w.name(), dbl.doubled_ptr(), std::move(gens));
    auto lhs = consequences_at_degree(lifted, d, field, opts);
    r.presentation_ideal = lhs.ideal_dim();
    r.equal = r.presentation_ideal == r.kernel_dim && annihilates(field, images, lhs.ideal->rows());
    return r;
}

} // namespace

BsoReport verify_bso_theorem(const OperadMorphism& w, std::size_t d, const FieldSpec& field, const IdealOptions& opts) {
    if (d < 2) throw ArgumentError("the theorem is checked for degree >= 2");
    if (!field.is_rational() && d >= field.characteristic())
        throw CharacteristicGuardError("degree " + std::to_string(d) + " is not below the characteristic " +
                                       std::to_string(field.characteristic()));
    return with_field(field, [&](const auto& k) { return bso_theorem(w, d, k, opts); });
}

#define DIALG_INSTANTIATE(K)                                                                                   \
    template std::vector<SparseVec<K::value_type>> reduced_images<K>(const OperadMorphism&,                   \
                                                                     const MonomialBasis&, const K&,          \
                                                                     const IdealOptions&);                    \
    template KernelComponent<K> morphism_kernel_at_degree<K>(const OperadMorphism&, std::size_t, const K&,    \
                                                             const IdealOptions&);

DIALG_INSTANTIATE(PrimeField)
DIALG_INSTANTIATE(RationalField)

#undef DIALG_INSTANTIATE

} // namespace dialg
