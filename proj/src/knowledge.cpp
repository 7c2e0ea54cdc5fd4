#include "autocd/knowledge.hpp"

#include <stdexcept>
#include <unordered_map>

namespace autocd {

KnowledgeIndex::KnowledgeIndex(const Knowledge& kn, const std::vector<std::string>& ids)
    : n_(static_cast<int>(ids.size())), empty_(kn.empty()) {
    if (empty_) return;

    std::unordered_map<std::string, int> pos;
    for (int i = 0; i < n_; ++i) pos.emplace(ids[i], i);
    auto lookup = [&pos](const std::string& id) {
        auto it = pos.find(id);
        return it == pos.end() ? -1 : it->second;
    };

    tier_.assign(n_, -1);
    for (size_t t = 0; t < kn.tiers.size(); ++t) {
        for (const auto& id : kn.tiers[t]) {
            const int i = lookup(id);
            if (i < 0) continue;
            if (tier_[i] != -1)
                throw std::invalid_argument("knowledge tiers overlap at node " + id);
            tier_[i] = static_cast<int>(t);
        }
    }

    forb_.assign(static_cast<size_t>(n_) * n_, 0);
    req_.assign(static_cast<size_t>(n_) * n_, 0);
    for (const auto& [a, b] : kn.forbidden) {
        const int i = lookup(a), j = lookup(b);
        if (i >= 0 && j >= 0) forb_[static_cast<size_t>(i) * n_ + j] = 1;
    }
    for (const auto& [a, b] : kn.required) {
        const int i = lookup(a), j = lookup(b);
        if (i < 0 || j < 0) continue;
        if (forb_[static_cast<size_t>(i) * n_ + j])
            throw std::invalid_argument("edge " + a + " -> " + b + " both forbidden and required");
        if (req_[static_cast<size_t>(j) * n_ + i])
            throw std::invalid_argument("edge " + a + " - " + b + " required in both directions");
        req_[static_cast<size_t>(i) * n_ + j] = 1;
    }
}

bool KnowledgeIndex::forbidden(int a, int b) const {
    if (empty_) return false;
    if (forb_[static_cast<size_t>(a) * n_ + b]) return true;
    if (req_[static_cast<size_t>(b) * n_ + a]) return true;
    return tier_[a] != -1 && tier_[b] != -1 && tier_[a] > tier_[b];
}

bool KnowledgeIndex::required(int a, int b) const {
    if (empty_) return false;
    return req_[static_cast<size_t>(a) * n_ + b] != 0;
}

} // namespace autocd
