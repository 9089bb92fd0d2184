#include "dialg/cache.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace dialg {

namespace {

constexpr const char* kMagic = "dialg-layer 1";

} // namespace

DiskLayerStore::DiskLayerStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path DiskLayerStore::path_for(const std::string& key) const {
    std::string name = key;
    for (auto& c : name)
        if (c == ':') c = '-';
    return dir_ / (name + ".layer");
}

std::optional<std::vector<SparseVec<Rational>>> DiskLayerStore::load(const std::string& key) {
    std::ifstream in(path_for(key));
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != kMagic) return std::nullopt;
    if (!std::getline(in, line) || line != key) return std::nullopt;
    std::size_t count = 0;
    if (!std::getline(in, line)) return std::nullopt;
    try {
        count = std::stoul(line);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::vector<SparseVec<Rational>> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) return std::nullopt;
        std::istringstream ls(line);
        SparseVec<Rational> row;
        std::string entry;
        while (ls >> entry) {
            auto eq = entry.find('=');
            if (eq == std::string::npos) return std::nullopt;
            try {
                Rational q(entry.substr(eq + 1));
                if (q.get_den() == 0) return std::nullopt;
                q.canonicalize();
                if (q == 0) return std::nullopt;
                row.emplace_back(static_cast<std::uint32_t>(std::stoul(entry.substr(0, eq))), q);
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        rows.push_back(std::move(row));
    }
    if (!std::getline(in, line) || line != "end") return std::nullopt;
    ++hits_;
    return rows;
}

void DiskLayerStore::save(const std::string& key, const std::vector<SparseVec<Rational>>& rows) {
    static std::atomic<unsigned> counter{0};
    const auto target = path_for(key);
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp);
        out << kMagic << "\n" << key << "\n" << rows.size() << "\n";
        for (const auto& row : rows) {
            bool first = true;
            for (const auto& [c, q] : row) {
                out << (first ? "" : " ") << c << "=" << q.get_str();
                first = false;
            }
            out << "\n";
        }
        out << "end\n";
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
    else ++writes_;
}

} // namespace dialg
