#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drunktext/corpus.hpp"
#include "drunktext/temporal.hpp"

namespace drunktext {

// Weighted undirected graph; no self-loops, no parallel edges. Nodes keep
// their insertion order, edges are stored once with u < v.
struct Graph {
    struct Edge {
        std::size_t u, v;
        double weight;
    };
    std::vector<std::string> nodes;
    std::vector<Edge> edges;

    void add_edge(std::size_t u, std::size_t v, double weight);
    double total_weight() const;
};

struct Partition {
    std::vector<std::size_t> community_of;  // per node, dense ids
    double modularity = 0;
    std::vector<double> pass_modularity;  // Q after each Louvain pass
    std::size_t n_communities() const;
};

/// The six-feature profile vector used for interest graphs; absent stats
/// encode as 0.
std::vector<double> profile_vector(const PeakProfile& profile);

/// Edge (u, v) with weight = cosine similarity, present iff the similarity
/// strictly exceeds the threshold. Zero vectors never produce edges.
Graph interest_graph(const std::vector<PeakProfile>& profiles, double threshold);

enum class BondRelation { Friends, Followers };

/// Edge weight = number of common neighbors, present iff >= min_common.
Graph bond_graph(const std::vector<UserRecord>& users, BondRelation relation,
                 std::size_t min_common);

/// Newman modularity with weighted degrees: Q = sum_c [in_c/(2m) -
/// (tot_c/(2m))^2], where in_c counts ordered internal pairs.
double modularity(const Graph& graph, const Partition& partition);

/// Two-phase Louvain: seeded node visiting order, greedy positive-gain moves
/// (ties to the lowest community id), then aggregation, repeated until no
/// improvement. Resolution 1.0.
Partition louvain(const Graph& graph, std::uint64_t seed);

/// Descriptive log-log slope of the degree distribution (least squares over
/// positive-degree nodes); the bond graphs tend toward power-law shapes.
double degree_loglog_slope(const Graph& graph);

}  // namespace drunktext
