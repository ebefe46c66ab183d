#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwc/rng.hpp"

namespace qwc {

/// Undirected simple graph held as a dense symmetric 0/1 adjacency matrix
/// with zero diagonal. Immutable after construction.
struct Graph {
    int n = 0;
    Eigen::MatrixXd adjacency;

    static Graph from_edges(const std::vector<std::pair<int, int>>& edges, int n);
    /// Validates symmetry, zero diagonal and binary entries.
    static Graph from_adjacency(Eigen::MatrixXd a);

    std::vector<std::pair<int, int>> edge_list() const; // i < j, lexicographic
    long long edge_count() const;
    bool has_edge(int i, int j) const { return adjacency(i, j) != 0.0; }
};

struct DegreeData {
    Eigen::VectorXi degrees;
    Eigen::MatrixXd degree_matrix; // diagonal D
};

DegreeData degree_data(const Graph& g);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

enum class EnsembleKind { ErdosRenyi, BarabasiAlbert };

struct GraphEnsembleSpec {
    EnsembleKind kind = EnsembleKind::ErdosRenyi;
    int n = 0;
    double p = 0.0; // ER only
    int m = 0;      // BA only
    int count = 1;
    std::uint64_t seed = 0;
    bool require_connected = false;

    void validate() const; // throws InputError
};

Graph generate_erdos_renyi(int n, double p, Rng& rng);
Graph generate_barabasi_albert(int n, int m, Rng& rng);

/// Draws one graph per the spec, resampling until connected when
/// require_connected is set (retry limit 10000).
Graph ensure_connected(const GraphEnsembleSpec& spec, Rng& rng);

// --- file formats ---
// Edge list: first line "n <count>", then one "i j" line per edge with i<j,
// UTF-8, LF. A ".json" path uses {"n": int, "edges": [[i,j],...]}.
void write_graph(const Graph& g, const std::string& path);
Graph read_graph(const std::string& path);

} // namespace qwc
