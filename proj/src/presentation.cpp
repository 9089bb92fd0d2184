#include "dialg/presentation.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "dialg/errors.hpp"

namespace dialg {

VarietyPresentation::VarietyPresentation(std::string name, std::shared_ptr<const Signature> sig,
                                         std::vector<Polynomial> generators, std::vector<std::string> generator_names)
    : name_(std::move(name)),
      sig_(std::move(sig)),
      generators_(std::move(generators)),
      generator_names_(std::move(generator_names)) {
    if (!sig_) throw ArgumentError("presentation without a signature");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        const auto& g = generators_[i];
        if (!(g.signature() == *sig_))
            throw ArgumentError("generator " + std::to_string(i + 1) + " of '" + name_ +
                                "' is over a different signature");
        if (g.degree() < 2)
            throw ArgumentError("generator " + std::to_string(i + 1) + " of '" + name_ + "' has degree < 2");
    }
    while (generator_names_.size() < generators_.size())
        generator_names_.push_back("g" + std::to_string(generator_names_.size() + 1));
}

std::size_t VarietyPresentation::min_generator_degree() const {
    std::size_t d = std::numeric_limits<std::size_t>::max();
    for (const auto& g : generators_) d = std::min(d, g.degree());
    return d;
}

std::string VarietyPresentation::canonical_text() const {
    std::string out = sig_->to_string();
    for (const auto& g : generators_) out += "\n" + g.to_string();
    return out;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string VarietyPresentation::digest() const { return fnv1a_hex(canonical_text()); }

} // namespace dialg
