#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "autocd/ci_tests.hpp"
#include "autocd/dataset.hpp"
#include "autocd/graph.hpp"
#include "autocd/knowledge.hpp"

namespace autocd {

enum class ClAlgorithm { Pc, PcStable, Cpc, Fci };

std::string to_string(ClAlgorithm a);
ClAlgorithm cl_algorithm_from_string(const std::string& s);

struct ClConfig {
    ClAlgorithm algorithm = ClAlgorithm::PcStable;
    double alpha = 0.05;
    CiKind ci = CiKind::Auto;
    std::optional<int> max_cond_size; // unset: unlimited here, capped at 4 by Dataset overloads
    Knowledge knowledge;
};

// Separating sets found while thinning the skeleton, keyed by the node-index
// pair (smaller index first). Pairs removed by background knowledge have no
// entry.
using SepsetMap = std::map<std::pair<int, int>, std::vector<int>>;

struct SkeletonResult {
    MixedGraph graph;
    SepsetMap sepsets;
};

// Edge-deletion phase shared by the PC family and FCI. Starts from the
// complete graph (minus knowledge-forbidden pairs) and removes an edge as
// soon as some conditioning set of growing size makes the pair independent
// at cfg.alpha. PC_STABLE and FCI freeze the candidate adjacency sets per
// level, making the result order-independent. CI failures and degenerate or
// low-power results count as dependence and are reported through `warnings`.
SkeletonResult learn_skeleton(CiSource& ci, const std::vector<GraphNode>& nodes,
                              const ClConfig& cfg, std::vector<std::string>* warnings = nullptr);
SkeletonResult learn_skeleton(const Dataset& d, const ClConfig& cfg,
                              std::vector<std::string>* warnings = nullptr);

// PC / PC_STABLE / CPC: skeleton, v-structure orientation (CPC leaves
// ambiguous triples unoriented), knowledge orientations, Meek closure.
MixedGraph run_pc(CiSource& ci, const std::vector<GraphNode>& nodes, const ClConfig& cfg,
                  std::vector<std::string>* warnings = nullptr);
MixedGraph run_pc(const Dataset& d, const ClConfig& cfg,
                  std::vector<std::string>* warnings = nullptr);

// FCI: stable skeleton, initial colliders, Possible-D-Sep pruning, knowledge
// marks, closure under orientation rules R1-R4 and R8-R10 (R5-R7 need
// selection bias, which is out of scope).
MixedGraph run_fci(CiSource& ci, const std::vector<GraphNode>& nodes, const ClConfig& cfg,
                   std::vector<std::string>* warnings = nullptr);
MixedGraph run_fci(const Dataset& d, const ClConfig& cfg,
                   std::vector<std::string>* warnings = nullptr);

// Runs the configured algorithm; the dataset overload defaults
// max_cond_size to 4.
MixedGraph run_discovery(const Dataset& d, const ClConfig& cfg,
                         std::vector<std::string>* warnings = nullptr);

// Tiers from lag metadata, oldest lag first. Nodes without lag metadata are
// rejected.
Knowledge tier_knowledge(const std::vector<GraphNode>& nodes);
Knowledge tier_knowledge(const Dataset& d);

} // namespace autocd
