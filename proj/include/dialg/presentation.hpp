#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dialg/polynomial.hpp"
#include "dialg/signature.hpp"

namespace dialg {

// A signature plus multilinear defining identities (generators of the
// kernel of the projection onto the governing operad).
class VarietyPresentation {
public:
    VarietyPresentation(std::string name, std::shared_ptr<const Signature> sig, std::vector<Polynomial> generators = {},
                        std::vector<std::string> generator_names = {});

    const std::string& name() const { return name_; }
    const Signature& signature() const { return *sig_; }
    const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
    const std::vector<Polynomial>& generators() const { return generators_; }
    const std::vector<std::string>& generator_names() const { return generator_names_; }
    std::size_t min_generator_degree() const;

    // Signature plus generators with coefficients as exact rationals; two
    // presentations with the same canonical text define the same ideal.
    std::string canonical_text() const;
    // 16 hex digits of FNV-1a over canonical_text().
    std::string digest() const;

private:
    std::string name_;
    std::shared_ptr<const Signature> sig_;
    std::vector<Polynomial> generators_;
    std::vector<std::string> generator_names_;
};

std::string fnv1a_hex(const std::string& text);

} // namespace dialg
