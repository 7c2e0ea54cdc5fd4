#pragma once

#include <string>
#include <utility>
#include <vector>

namespace autocd {

// Background knowledge for constraint-based discovery. Tiers are ordered
// oldest first; an edge from a later (newer) tier into an earlier (older)
// tier is forbidden. forbidden/required hold ordered pairs (a, b) meaning
// the directed edge a -> b.
struct Knowledge {
    std::vector<std::vector<std::string>> tiers;
    std::vector<std::pair<std::string, std::string>> forbidden;
    std::vector<std::pair<std::string, std::string>> required;

    bool empty() const { return tiers.empty() && forbidden.empty() && required.empty(); }
};

// Knowledge resolved against a concrete node list. Ids mentioned in the
// knowledge but absent from the node list are ignored, so the same Knowledge
// can be applied to datasets restricted to a column subset.
class KnowledgeIndex {
public:
    KnowledgeIndex() = default;
    KnowledgeIndex(const Knowledge& kn, const std::vector<std::string>& ids);

    // True if the directed edge a -> b is disallowed: explicitly forbidden,
    // the reverse is required, or a sits in a newer tier than b.
    bool forbidden(int a, int b) const;
    bool required(int a, int b) const;
    int tier_of(int a) const { return tier_.empty() ? -1 : tier_[a]; }
    bool empty() const { return empty_; }
    int n() const { return n_; }

private:
    int n_ = 0;
    bool empty_ = true;
    std::vector<int> tier_;
    std::vector<char> forb_;
    std::vector<char> req_;
};

} // namespace autocd
