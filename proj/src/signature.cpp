#include "dialg/signature.hpp"

#include <set>

#include "dialg/errors.hpp"

namespace dialg {

Signature::Signature(std::vector<Operation> ops) : ops_(std::move(ops)) {
    std::set<std::string> seen;
    for (const auto& op : ops_) {
        if (op.name.empty()) throw ArgumentError("operation with empty name");
        if (op.arity < 2)
            throw ArgumentError("operation '" + op.name + "' has arity " + std::to_string(op.arity) +
                                "; arities must be at least 2");
        if (!seen.insert(op.name).second) throw ArgumentError("duplicate operation name '" + op.name + "'");
    }
}

std::optional<std::size_t> Signature::find(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
        if (ops_[i].name == name) return i;
    return std::nullopt;
}

std::string Signature::to_string() const {
    std::string out = "(signature";
    for (const auto& op : ops_) out += " (op " + op.name + " " + std::to_string(op.arity) + ")";
    return out + ")";
}

std::string superscript_name(const std::string& base, std::size_t k) { return base + "^" + std::to_string(k); }

DoubledSignature::DoubledSignature(Signature base) : base_(std::move(base)) {
    std::vector<Operation> ops;
    for (std::size_t i = 0; i < base_.size(); ++i) {
        offset_.push_back(ops.size());
        const auto& op = base_.op(i);
        for (std::size_t k = 1; k <= op.arity; ++k) {
            split_.emplace_back(i, k);
            ops.push_back({superscript_name(op.name, k), op.arity});
        }
    }
    doubled_ = Signature(std::move(ops));
}

std::size_t DoubledSignature::symbol(std::size_t base_symbol, std::size_t k) const {
    if (base_symbol >= base_.size() || k < 1 || k > base_.arity(base_symbol))
        throw ArgumentError("no doubled symbol for superscript " + std::to_string(k));
    return offset_[base_symbol] + k - 1;
}

DoubledSignature double_signature(const Signature& sig) { return DoubledSignature(sig); }

} // namespace dialg
