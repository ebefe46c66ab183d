#include "qwc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "qwc/errors.hpp"

namespace qwc {

Graph Graph::from_edges(const std::vector<std::pair<int, int>>& edges, int n) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [i, j] : edges) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw InputError("edge endpoint out of range: (" + std::to_string(i) + "," +
                             std::to_string(j) + ") with n=" + std::to_string(n));
        if (i == j)
            throw InputError("self-loop not allowed: vertex " + std::to_string(i));
        a(i, j) = 1.0;
        a(j, i) = 1.0; // duplicates collapse
    }
    return Graph{n, std::move(a)};
}

Graph Graph::from_adjacency(Eigen::MatrixXd a) {
    if (a.rows() != a.cols()) throw InputError("adjacency matrix must be square");
    const int n = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i) {
        if (a(i, i) != 0.0) throw InputError("adjacency diagonal must be zero");
        for (int j = 0; j < n; ++j) {
            if (a(i, j) != 0.0 && a(i, j) != 1.0)
                throw InputError("adjacency entries must be 0 or 1");
            if (a(i, j) != a(j, i)) throw InputError("adjacency matrix must be symmetric");
        }
    }
    return Graph{n, std::move(a)};
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (adjacency(i, j) != 0.0) edges.emplace_back(i, j);
    return edges;
}

long long Graph::edge_count() const {
    return static_cast<long long>(adjacency.sum() / 2.0 + 0.5);
}

DegreeData degree_data(const Graph& g) {
    DegreeData d;
    d.degrees = g.adjacency.colwise().sum().cast<int>();
    d.degree_matrix = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int j = 0; j < g.n; ++j) d.degree_matrix(j, j) = d.degrees(j);
    return d;
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < g.n; ++v) {
            if (g.adjacency(u, v) != 0.0 && !seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == g.n;
}

bool is_bipartite(const Graph& g) {
    std::vector<int> color(g.n, -1);
    for (int s = 0; s < g.n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < g.n; ++v) {
                if (g.adjacency(u, v) == 0.0) continue;
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

void GraphEnsembleSpec::validate() const {
    if (n < 1) throw InputError("ensemble spec: n must be >= 1");
    if (count < 1) throw InputError("ensemble spec: count must be >= 1");
    if (kind == EnsembleKind::ErdosRenyi) {
        if (p < 0.0 || p > 1.0) throw InputError("ensemble spec: p must be in [0,1]");
    } else {
        if (m < 1 || m >= n) throw InputError("ensemble spec: m must satisfy 1 <= m < n");
    }
}

Graph generate_erdos_renyi(int n, double p, Rng& rng) {
    if (n < 1) throw InputError("erdos_renyi: n must be >= 1");
    if (p < 0.0 || p > 1.0) throw InputError("erdos_renyi: p must be in [0,1]");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) {
                a(i, j) = 1.0;
                a(j, i) = 1.0;
            }
    return Graph{n, std::move(a)};
}

Graph generate_barabasi_albert(int n, int m, Rng& rng) {
    if (m < 1 || m >= n) throw InputError("barabasi_albert: m must satisfy 1 <= m < n");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    // seed: complete graph on m+1 vertices
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            a(i, j) = 1.0;
            a(j, i) = 1.0;
        }
    std::vector<double> deg(n, 0.0);
    for (int i = 0; i <= m; ++i) deg[i] = m;
    for (int v = m + 1; v < n; ++v) {
        // m distinct targets, probability proportional to current degree;
        // degrees are frozen while this vertex picks its targets
        std::unordered_set<int> targets;
        double total = 0.0;
        for (int w = 0; w < v; ++w) total += deg[w];
        while (static_cast<int>(targets.size()) < m) {
            double r = rng.uniform() * total;
            int pick = v - 1;
            for (int w = 0; w < v; ++w) {
                r -= deg[w];
                if (r < 0.0) {
                    pick = w;
                    break;
                }
            }
            targets.insert(pick);
        }
        for (int w : targets) {
            a(v, w) = 1.0;
            a(w, v) = 1.0;
            deg[v] += 1.0;
            deg[w] += 1.0;
        }
    }
    return Graph{n, std::move(a)};
}

Graph ensure_connected(const GraphEnsembleSpec& spec, Rng& rng) {
    spec.validate();
    constexpr int kRetryLimit = 10000;
    for (int attempt = 0; attempt < kRetryLimit; ++attempt) {
        Graph g = spec.kind == EnsembleKind::ErdosRenyi
                      ? generate_erdos_renyi(spec.n, spec.p, rng)
                      : generate_barabasi_albert(spec.n, spec.m, rng);
        if (!spec.require_connected || is_connected(g)) return g;
    }
    throw GenerationError(
        "could not generate a connected graph within 10000 attempts (kind=" +
        std::string(spec.kind == EnsembleKind::ErdosRenyi ? "erdos-renyi" : "barabasi-albert") +
        ", n=" + std::to_string(spec.n) +
        (spec.kind == EnsembleKind::ErdosRenyi ? ", p=" + std::to_string(spec.p)
                                               : ", m=" + std::to_string(spec.m)) +
        ")");
}

static bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void write_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    if (ends_with(path, ".json")) {
        nlohmann::json j;
        j["n"] = g.n;
        j["edges"] = nlohmann::json::array();
        for (const auto& [a, b] : g.edge_list()) j["edges"].push_back({a, b});
        out << j.dump(2) << "\n";
    } else {
        out << "n " << g.n << "\n";
        for (const auto& [a, b] : g.edge_list()) out << a << " " << b << "\n";
    }
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    if (ends_with(path, ".json")) {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw InputError(path + ": invalid JSON: " + e.what());
        }
        if (!j.contains("n") || !j.contains("edges"))
            throw InputError(path + ": graph JSON requires \"n\" and \"edges\"");
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2)
                throw InputError(path + ": each edge must be a pair [i,j]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
        return Graph::from_edges(edges, j["n"].get<int>());
    }
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        if (n < 0) {
            std::string tag;
            ss >> tag >> n;
            if (tag != "n" || ss.fail() || n < 0)
                throw InputError(path + ":" + std::to_string(lineno) +
                                 ": expected header \"n <count>\", got \"" + line + "\"");
            continue;
        }
        int i, j;
        ss >> i >> j;
        if (ss.fail())
            throw InputError(path + ":" + std::to_string(lineno) +
                             ": expected edge \"i j\", got \"" + line + "\"");
        edges.emplace_back(i, j);
    }
    if (n < 0) throw InputError(path + ": missing \"n <count>\" header line");
    try {
        return Graph::from_edges(edges, n);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace qwc
