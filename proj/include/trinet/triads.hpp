#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trinet/temporal_graph.hpp"

namespace trinet::triads {

struct TriadClassCounts {
    // 3-node subsets with exactly 0..3 internal edges.
    std::uint64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
    std::uint64_t total() const { return c0 + c1 + c2 + c3; }
    std::uint64_t operator[](int i) const {
        return i == 0 ? c0 : i == 1 ? c1 : i == 2 ? c2 : c3;
    }
};

// Per-node occurrence counts over the three non-empty triad shapes:
//   pos1 = edge endpoint in a 1-edge triad
//   pos2 = isolated third node in a 1-edge triad
//   pos3 = endpoint of an open (2-edge) triad
//   pos4 = center of an open triad
//   pos5 = member of a closed triad
using PositionCounts = std::array<std::uint64_t, 5>;

struct TriadPositionProfile {
    std::vector<PositionCounts> counts;  // indexed by NodeId; zeros for absent nodes
    PositionCounts at(NodeId v) const { return counts[v]; }
};

struct TriadEvolutionMatrix {
    std::array<std::array<double, 4>, 4> m{};       // row-stochastic
    std::array<std::uint64_t, 4> row_count{};       // observed triads per source class
    std::array<bool, 4> observed{};                 // false -> identity default
    bool identical_snapshots = false;
};

// Third-node configurations around a non-adjacent pair: neither edge, only
// s-side, only t-side, both.
using TceVector = std::array<std::uint64_t, 4>;
using LikelihoodVector = std::array<double, 4>;

TriadClassCounts triad_class_counts(const Snapshot& s);
double balance_rate(const Snapshot& s);
TriadPositionProfile tpp(const Snapshot& s);

// Presence-based co-occurrence: (Prob(3|4), Prob(4|3)).
std::pair<double, double> position_conditionals(const TriadPositionProfile& p);

TriadEvolutionMatrix tem(const Snapshot& s_t, const Snapshot& s_t1);
TceVector tce(const Snapshot& s, NodeId u, NodeId v);
LikelihoodVector tce_likelihoods(const TriadEvolutionMatrix& m);
std::array<double, 4> tem_prob(const TceVector& tce, const LikelihoodVector& l);

// Class (edge count) of the triple {a,b,c} in s; membership is not checked.
int classify_triple(const Snapshot& s, NodeId a, NodeId b, NodeId c);

}  // namespace trinet::triads
