#pragma once

#include <filesystem>

#include "dialg/ideal.hpp"

namespace dialg {

// Ideal layers stored one file per layer key inside a directory. Writes go
// to a temporary file that is renamed into place; unreadable or mismatched
// files are treated as misses.
class DiskLayerStore : public LayerStore {
public:
    explicit DiskLayerStore(std::filesystem::path dir);

    std::optional<std::vector<SparseVec<Rational>>> load(const std::string& key) override;
    void save(const std::string& key, const std::vector<SparseVec<Rational>>& rows) override;

    std::filesystem::path path_for(const std::string& key) const;
    std::size_t hits() const { return hits_; }
    std::size_t writes() const { return writes_; }

private:
    std::filesystem::path dir_;
    std::size_t hits_ = 0;
    std::size_t writes_ = 0;
};

} // namespace dialg
