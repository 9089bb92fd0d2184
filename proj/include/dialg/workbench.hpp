#pragma once

// The workbench text format: signatures, varieties, identities and
// morphisms written as s-expressions.
//
//   (signature (op mul 2))                    ; anonymous variety "main"
//   (identity assoc (- (mul (mul 1 2) 3) (mul 1 (mul 2 3))))
//   (variety NAME (signature ...) (identity NAME POLY) ...)
//   (morphism NAME (source VARIETY) (target VARIETY) (image OP POLY) ...)
//
// Polynomials: positive integers are variables; (OP P ...) applies an
// operation (expanding sums); (+ P ...), (- P), (- P Q ...), (* C ... P)
// with rational coefficients C such as 3 or -1/2; (linearize P) takes the
// complete linearization of a multihomogeneous polynomial.  Doubled
// operations are written name^k; for a signature with a single binary
// pair name^1, name^2 the aliases dashv and vdash name them.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dialg/presentation.hpp"
#include "dialg/sexpr.hpp"
#include "dialg/speciality.hpp"

namespace dialg {

struct MorphismDef {
    std::string name;
    std::string source;
    std::string target;
    OperadMorphism morphism;
};

class WorkbenchInput {
public:
    std::vector<VarietyPresentation> varieties;
    std::vector<MorphismDef> morphisms;

    const VarietyPresentation* find_variety(const std::string& name) const;
    const MorphismDef* find_morphism(const std::string& name) const;
};

// Names not defined in `text` are resolved in `context` (typically the
// built-in catalog), with or without a "builtin:" prefix.
WorkbenchInput parse_input(const std::string& text, const WorkbenchInput* context = nullptr);

// A single multilinear polynomial over `sig`.
Polynomial parse_polynomial(const std::string& text, std::shared_ptr<const Signature> sig,
                            FieldSpec field = FieldSpec::rationals());

std::string format_variety(const VarietyPresentation& v);
std::string format_morphism(const MorphismDef& m);
std::string format_input(const WorkbenchInput& input);

// Same name, signature, generator names and generators.
bool same_structure(const WorkbenchInput& a, const WorkbenchInput& b);

// Parsed once on first use.
const WorkbenchInput& builtin_catalog();
// Resolves "builtin:name" or "name" against the catalog.
const VarietyPresentation& builtin_variety(const std::string& name);
const MorphismDef& builtin_morphism(const std::string& name);

} // namespace dialg
