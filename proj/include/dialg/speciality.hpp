#pragma once

// Operad morphisms given on generators, their per-degree kernels, special
// identities, and the transfer of speciality to dialgebras.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dialg/dialgebra.hpp"
#include "dialg/ideal.hpp"
#include "dialg/polynomial.hpp"
#include "dialg/presentation.hpp"

namespace dialg {

// A morphism from the free operad on `source` to the operad of `target`,
// fixed by one multilinear image per source symbol.
class OperadMorphism {
public:
    OperadMorphism(std::string name, std::shared_ptr<const Signature> source, VarietyPresentation target,
                   std::vector<std::optional<Polynomial>> images);

    const std::string& name() const { return name_; }
    const Signature& source() const { return *source_; }
    const std::shared_ptr<const Signature>& source_ptr() const { return source_; }
    const VarietyPresentation& target() const { return target_; }
    bool has_image(std::size_t symbol) const { return images_.at(symbol).has_value(); }
    // Throws ArgumentError for a symbol without an image.
    const Polynomial& image(std::size_t symbol) const;

private:
    std::string name_;
    std::shared_ptr<const Signature> source_;
    VarietyPresentation target_;
    std::vector<std::optional<Polynomial>> images_;
};

// Replaces every node by the image of its symbol, composing bottom-up.
Polynomial evaluate_morphism(const OperadMorphism& w, const Polynomial& p);

// ker(F_source(d) -> F_target(d) / Id_target(d)).
template <class K>
struct KernelComponent {
    std::shared_ptr<const MonomialBasis> basis;
    Subspace<K> kernel;
    std::size_t image_rank = 0;
};

template <class K>
KernelComponent<K> morphism_kernel_at_degree(const OperadMorphism& w, std::size_t d, const K& field,
                                             const IdealOptions& opts = {});

// Images of the source basis reduced modulo the target ideal (normal forms).
template <class K>
std::vector<SparseVec<typename K::value_type>> reduced_images(const OperadMorphism& w, const MonomialBasis& source,
                                                              const K& field, const IdealOptions& opts = {});

// Throws ArgumentError naming the first generator of `source` whose image
// is not an identity of the target.
void check_induced_morphism(const OperadMorphism& w, const VarietyPresentation& source, const FieldSpec& field,
                            const IdealOptions& opts = {});

// Basis of ker w modulo the consequences of `source` at degree d.
std::vector<Polynomial> special_identities(const OperadMorphism& w, const VarietyPresentation& source, std::size_t d,
                                           const FieldSpec& field, const IdealOptions& opts = {});

struct DiSpecialResult {
    std::vector<DiPolynomial> basis;
    std::size_t special_dim = 0;
    bool lift_contained = false;  // every f (x) e_k lies in the computed span
    bool lift_match = false;      // the two spans coincide
};

DiSpecialResult di_special_identities(const OperadMorphism& w, const VarietyPresentation& source, std::size_t d,
                                      const FieldSpec& field, const IdealOptions& opts = {});

struct BsoReport {
    bool equal = false;
    std::size_t ambient_dim = 0;       // dim F_{doubled}(d)
    std::size_t kernel_dim = 0;        // identities of the doubled morphism
    std::size_t presentation_ideal = 0;  // consequences of the lifted kernel
    std::vector<std::size_t> kernel_dims_by_degree;  // dim Id_m(w), m = 2..d
};

// Compares the identities of the doubled morphism at degree d with the
// degree-d consequences of the zero identities and rho(s, k) over kernel
// bases s of every degree m <= d.  Over F_p this requires d < p.
BsoReport verify_bso_theorem(const OperadMorphism& w, std::size_t d, const FieldSpec& field,
                             const IdealOptions& opts = {});

} // namespace dialg
