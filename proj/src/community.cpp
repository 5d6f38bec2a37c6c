#include "drunktext/community.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "drunktext/errors.hpp"
#include "drunktext/rng.hpp"

namespace drunktext {

void Graph::add_edge(std::size_t u, std::size_t v, double weight) {
    if (u == v) throw PipelineError("self loops are not allowed");
    if (weight <= 0) throw PipelineError("edge weight must be positive");
    if (u > v) std::swap(u, v);
    edges.push_back({u, v, weight});
}

double Graph::total_weight() const {
    double m = 0;
    for (const auto& e : edges) m += e.weight;
    return m;
}

std::size_t Partition::n_communities() const {
    std::size_t n = 0;
    for (std::size_t c : community_of) n = std::max(n, c + 1);
    return community_of.empty() ? 0 : n;
}

std::vector<double> profile_vector(const PeakProfile& p) {
    return {static_cast<double>(p.n_peaks), p.mean_height.value_or(0.0),
            p.se_height.value_or(0.0),      p.max_height.value_or(0.0),
            p.mean_interval.value_or(0.0),  p.se_interval.value_or(0.0)};
}

namespace {

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

Graph interest_graph(const std::vector<PeakProfile>& profiles, double threshold) {
    Graph g;
    std::vector<std::vector<double>> vecs;
    std::vector<bool> nonzero;
    for (const auto& p : profiles) {
        g.nodes.push_back(p.user_id);
        vecs.push_back(profile_vector(p));
        double norm = 0;
        for (double v : vecs.back()) norm += v * v;
        nonzero.push_back(norm > 0);
    }
    for (std::size_t u = 0; u < vecs.size(); ++u) {
        if (!nonzero[u]) continue;
        for (std::size_t v = u + 1; v < vecs.size(); ++v) {
            if (!nonzero[v]) continue;
            double sim = cosine(vecs[u], vecs[v]);
            if (sim > threshold) g.add_edge(u, v, sim);
        }
    }
    return g;
}

Graph bond_graph(const std::vector<UserRecord>& users, BondRelation relation,
                 std::size_t min_common) {
    if (min_common < 1) throw InvalidConfig("min_common must be >= 1");
    Graph g;
    for (const auto& u : users) g.nodes.push_back(u.user_id);
    for (std::size_t a = 0; a < users.size(); ++a) {
        const auto& sa =
            relation == BondRelation::Friends ? users[a].friends : users[a].followers;
        for (std::size_t b = a + 1; b < users.size(); ++b) {
            const auto& sb =
                relation == BondRelation::Friends ? users[b].friends : users[b].followers;
            std::size_t common = 0;
            for (const auto& id : sa) common += sb.count(id);
            if (common >= min_common) g.add_edge(a, b, static_cast<double>(common));
        }
    }
    return g;
}

double modularity(const Graph& graph, const Partition& partition) {
    if (graph.nodes.empty()) throw EmptyGraph();
    const double m = graph.total_weight();
    if (m <= 0) throw EmptyGraph();
    if (partition.community_of.size() != graph.nodes.size())
        throw PipelineError("partition does not cover the graph");

    std::size_t n_comm = 0;
    for (std::size_t c : partition.community_of) n_comm = std::max(n_comm, c + 1);
    std::vector<double> internal(n_comm, 0.0), total(n_comm, 0.0);
    for (const auto& e : graph.edges) {
        std::size_t cu = partition.community_of[e.u], cv = partition.community_of[e.v];
        total[cu] += e.weight;
        total[cv] += e.weight;
        if (cu == cv) internal[cu] += 2.0 * e.weight;  // ordered pairs
    }
    double q = 0;
    for (std::size_t c = 0; c < n_comm; ++c) {
        double frac = total[c] / (2.0 * m);
        q += internal[c] / (2.0 * m) - frac * frac;
    }
    return q;
}

namespace {

// adjacency with per-node weighted degree; aggregated graphs carry self-loop
// weight separately
struct WorkGraph {
    std::vector<std::vector<std::pair<std::size_t, double>>> adj;
    std::vector<double> self_loop;  // weight of edges folded inside a supernode
    std::vector<double> degree;     // weighted degree incl. 2*self_loop
    double m = 0;                   // total weight incl. self loops

    static WorkGraph from(const Graph& g) {
        WorkGraph w;
        w.adj.resize(g.nodes.size());
        w.self_loop.assign(g.nodes.size(), 0.0);
        w.degree.assign(g.nodes.size(), 0.0);
        for (const auto& e : g.edges) {
            w.adj[e.u].push_back({e.v, e.weight});
            w.adj[e.v].push_back({e.u, e.weight});
            w.degree[e.u] += e.weight;
            w.degree[e.v] += e.weight;
            w.m += e.weight;
        }
        return w;
    }
};

double work_modularity(const WorkGraph& g, const std::vector<std::size_t>& comm) {
    std::size_t n_comm = 0;
    for (std::size_t c : comm) n_comm = std::max(n_comm, c + 1);
    std::vector<double> internal(n_comm, 0.0), total(n_comm, 0.0);
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        total[comm[u]] += g.degree[u];
        internal[comm[u]] += 2.0 * g.self_loop[u];
        for (const auto& [v, w] : g.adj[u])
            if (comm[v] == comm[u]) internal[comm[u]] += w;  // each edge seen from both ends
    }
    double q = 0;
    for (std::size_t c = 0; c < n_comm; ++c) {
        double frac = total[c] / (2.0 * g.m);
        q += internal[c] / (2.0 * g.m) - frac * frac;
    }
    return q;
}

// One local-moving phase. Returns true when at least one node moved.
bool local_moving(const WorkGraph& g, std::vector<std::size_t>& comm, std::mt19937_64& rng) {
    const std::size_t n = g.adj.size();
    std::vector<double> comm_total(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) comm_total[comm[u]] += g.degree[u];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle_seeded(order, rng);

    bool any_move = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t u : order) {
            const std::size_t old_comm = comm[u];
            // weight from u to each neighboring community
            std::map<std::size_t, double> to_comm;
            to_comm[old_comm] += 0.0;
            for (const auto& [v, w] : g.adj[u]) to_comm[comm[v]] += w;

            comm_total[old_comm] -= g.degree[u];
            const double base = to_comm[old_comm] - comm_total[old_comm] * g.degree[u] / (2.0 * g.m);

            std::size_t best_comm = old_comm;
            double best_gain = base;
            for (const auto& [c, w_uc] : to_comm) {
                if (c == old_comm) continue;
                double gain = w_uc - comm_total[c] * g.degree[u] / (2.0 * g.m);
                // strict improvement, ties to the lowest community id
                if (gain > best_gain + 1e-12 ||
                    (std::fabs(gain - best_gain) <= 1e-12 && c < best_comm)) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            comm_total[best_comm] += g.degree[u];
            comm[u] = best_comm;
            if (best_comm != old_comm) {
                improved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

void renumber(std::vector<std::size_t>& comm) {
    std::map<std::size_t, std::size_t> remap;
    for (std::size_t c : comm) remap.emplace(c, remap.size());
    for (auto& c : comm) c = remap[c];
}

WorkGraph aggregate(const WorkGraph& g, const std::vector<std::size_t>& comm,
                    std::size_t n_comm) {
    WorkGraph out;
    out.adj.resize(n_comm);
    out.self_loop.assign(n_comm, 0.0);
    out.degree.assign(n_comm, 0.0);
    out.m = g.m;

    std::vector<std::map<std::size_t, double>> merged(n_comm);
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        out.self_loop[comm[u]] += g.self_loop[u];
        for (const auto& [v, w] : g.adj[u]) {
            if (comm[v] == comm[u]) {
                if (u < v) out.self_loop[comm[u]] += w;
            } else {
                merged[comm[u]][comm[v]] += w;
            }
        }
    }
    for (std::size_t c = 0; c < n_comm; ++c) {
        for (const auto& [d, w] : merged[c]) out.adj[c].push_back({d, w});
        out.degree[c] = 2.0 * out.self_loop[c];
        for (const auto& [d, w] : out.adj[c]) out.degree[c] += w;
    }
    return out;
}

}  // namespace

Partition louvain(const Graph& graph, std::uint64_t seed) {
    if (graph.nodes.empty()) throw EmptyGraph();

    Partition result;
    result.community_of.resize(graph.nodes.size());
    std::iota(result.community_of.begin(), result.community_of.end(), 0);

    WorkGraph work = WorkGraph::from(graph);
    if (work.m <= 0) {
        // edgeless graph: every node is its own community, Q undefined -> 0
        result.modularity = 0.0;
        return result;
    }

    // node_comm maps original nodes through every aggregation level
    std::vector<std::size_t> node_comm = result.community_of;
    auto rng = substream(seed, "louvain");

    for (;;) {
        std::vector<std::size_t> comm(work.adj.size());
        std::iota(comm.begin(), comm.end(), 0);
        bool moved = local_moving(work, comm, rng);
        renumber(comm);
        for (auto& c : node_comm) c = comm[c];
        result.pass_modularity.push_back(work_modularity(work, comm));
        if (!moved) break;
        std::size_t n_comm = 0;
        for (std::size_t c : comm) n_comm = std::max(n_comm, c + 1);
        if (n_comm == work.adj.size() || n_comm == 1) break;
        work = aggregate(work, comm, n_comm);
    }

    result.community_of = node_comm;
    renumber(result.community_of);
    result.modularity = modularity(graph, result);
    return result;
}

double degree_loglog_slope(const Graph& graph) {
    std::vector<double> degree(graph.nodes.size(), 0.0);
    for (const auto& e : graph.edges) {
        degree[e.u] += 1;
        degree[e.v] += 1;
    }
    std::map<std::size_t, std::size_t> histogram;
    for (double d : degree)
        if (d > 0) ++histogram[static_cast<std::size_t>(d)];
    if (histogram.size() < 2) return 0.0;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(histogram.size());
    for (const auto& [deg, count] : histogram) {
        double x = std::log(static_cast<double>(deg));
        double y = std::log(static_cast<double>(count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    return denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
}

}  // namespace drunktext
