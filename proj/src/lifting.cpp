#include "selfcomm/lifting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace selfcomm {

void SocialGraph::add_edge(MemberId i, MemberId j, const Rational& w) {
    if (i < 0 || i >= n || j < 0 || j >= n) throw std::invalid_argument("edge endpoint out of range");
    if (w <= 0 || w > 1) throw std::invalid_argument("edge weight must be in (0,1]");
    auto insert = [&](MemberId a, MemberId b) {
        auto& row = out[a];
        auto it = std::lower_bound(row.begin(), row.end(), b,
                                   [](const auto& e, MemberId v) { return e.first < v; });
        if (it != row.end() && it->first == b)
            throw std::invalid_argument("parallel edge (" + std::to_string(a) + "," +
                                        std::to_string(b) + ")");
        row.insert(it, {b, w});
    };
    insert(i, j);
    if (!directed && i != j) insert(j, i);
}

bool SocialGraph::has_selfloop(MemberId i) const {
    const auto& row = out[i];
    auto it = std::lower_bound(row.begin(), row.end(), i,
                               [](const auto& e, MemberId v) { return e.first < v; });
    return it != row.end() && it->first == i;
}

void SocialGraph::validate() const {
    if (static_cast<int>(out.size()) != n) throw std::invalid_argument("adjacency size mismatch");
    for (int i = 0; i < n; ++i) {
        MemberId prev = -1;
        for (const auto& [j, w] : out[i]) {
            if (j < 0 || j >= n || j <= prev) throw std::invalid_argument("bad adjacency row");
            if (w <= 0 || w > 1) throw std::invalid_argument("edge weight outside (0,1]");
            prev = j;
        }
    }
}

WeightedSystem direct_lift(const SocialGraph& graph) {
    WeightedSystem sys;
    sys.n = graph.n;
    sys.rows = graph.out;
    return sys;
}

namespace {

std::vector<double> dijkstra(const SocialGraph& graph, MemberId source) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(graph.n, inf);
    using Item = std::pair<double, MemberId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.push({0, source});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (const auto& [u, w] : graph.out[v]) {
            double nd = d + to_double(w);
            if (nd < dist[u]) {
                dist[u] = nd;
                heap.push({nd, u});
            }
        }
    }
    return dist;
}

Rational rational_unit(double v) {
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    return Rational(v);  // exact binary expansion of the double
}

// Undirected connected components (directed edges treated as undirected).
std::vector<int> component_labels(const SocialGraph& graph) {
    std::vector<std::vector<int>> adj(graph.n);
    for (int i = 0; i < graph.n; ++i)
        for (const auto& [j, w] : graph.out[i]) {
            if (i == j) continue;
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    std::vector<int> label(graph.n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int i = 0; i < graph.n; ++i) {
        if (label[i] >= 0) continue;
        label[i] = next;
        stack.push_back(i);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : adj[v])
                if (label[u] < 0) {
                    label[u] = next;
                    stack.push_back(u);
                }
        }
        ++next;
    }
    return label;
}

}  // namespace

WeightedSystem shortest_path_lift(const SocialGraph& graph) {
    WeightedSystem sys;
    sys.n = graph.n;
    sys.rows.assign(graph.n, {});
    std::vector<std::vector<double>> dist(graph.n);
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < graph.n; ++i) {
        dist[i] = dijkstra(graph, i);
        for (int j = 0; j < graph.n; ++j)
            if (j != i && std::isfinite(dist[i][j]) && dist[i][j] > 0 && dist[i][j] < dmin)
                dmin = dist[i][j];
    }
    for (int i = 0; i < graph.n; ++i) {
        for (int j = 0; j < graph.n; ++j) {
            if (j == i) {
                sys.set_weight(i, i, Rational(1));
            } else if (std::isfinite(dist[i][j]) && dist[i][j] > 0) {
                sys.set_weight(i, j, rational_unit(dmin / dist[i][j]));
            }
        }
    }
    return sys;
}

WeightedSystem ppr_lift(const SocialGraph& graph, const LiftConfig& config) {
    if (graph.n < 1) throw std::invalid_argument("empty graph");
    if (config.teleport <= 0 || config.teleport >= 1)
        throw std::invalid_argument("teleport must be in (0,1)");
    std::vector<double> out_weight(graph.n, 0.0);
    for (int i = 0; i < graph.n; ++i)
        for (const auto& [j, w] : graph.out[i]) out_weight[i] += to_double(w);

    WeightedSystem sys;
    sys.n = graph.n;
    sys.rows.assign(graph.n, {});
    std::vector<double> p(graph.n), next(graph.n);
    for (int src = 0; src < graph.n; ++src) {
        std::fill(p.begin(), p.end(), 0.0);
        p[src] = 1.0;
        bool converged = false;
        for (long long it = 0; it < config.ppr_max_iter; ++it) {
            std::fill(next.begin(), next.end(), 0.0);
            double dangling = 0.0;
            for (int v = 0; v < graph.n; ++v) {
                if (p[v] == 0.0) continue;
                if (out_weight[v] == 0.0) {
                    dangling += p[v];  // dangling mass teleports home
                    continue;
                }
                double scale = (1.0 - config.teleport) * p[v] / out_weight[v];
                for (const auto& [u, w] : graph.out[v]) next[u] += scale * to_double(w);
            }
            next[src] += config.teleport * (1.0 - dangling) + dangling;
            double diff = 0.0;
            for (int v = 0; v < graph.n; ++v) diff += std::abs(next[v] - p[v]);
            p.swap(next);
            if (diff < config.ppr_tol) {
                converged = true;
                break;
            }
        }
        if (!converged) throw SolverFailure("personalized pagerank did not converge");
        double pmax = 0.0;
        for (double v : p) pmax = std::max(pmax, v);
        for (int j = 0; j < graph.n; ++j)
            if (p[j] > 0) sys.set_weight(src, j, rational_unit(p[j] / pmax));
    }
    return sys;
}

std::vector<double> effective_resistances(const SocialGraph& graph, MemberId source) {
    if (source < 0 || source >= graph.n) throw std::invalid_argument("source out of range");
    std::vector<int> label = component_labels(graph);
    std::vector<int> nodes;
    for (int i = 0; i < graph.n; ++i)
        if (label[i] == label[source]) nodes.push_back(i);
    int m = static_cast<int>(nodes.size());
    std::vector<double> r(graph.n, -1.0);
    r[source] = 0.0;
    if (m == 1) return r;

    std::vector<int> pos(graph.n, -1);
    for (int idx = 0; idx < m; ++idx) pos[nodes[idx]] = idx;
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
    for (int idx = 0; idx < m; ++idx) {
        int i = nodes[idx];
        for (const auto& [j, w] : graph.out[i]) {
            if (j == i) continue;  // self-loop carries no current
            // conductance 1/w per edge; undirected rows double-count, halve
            double c = 1.0 / to_double(w);
            if (!graph.directed) c *= 0.5;
            int jdx = pos[j];
            L(idx, idx) += c;
            L(jdx, jdx) += c;
            L(idx, jdx) -= c;
            L(jdx, idx) -= c;
        }
    }
    // ground the last node of the component and invert the reduced Laplacian
    Eigen::MatrixXd reduced = L.topLeftCorner(m - 1, m - 1);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(reduced);
    if (!lu.isInvertible()) throw SolverFailure("singular laplacian solve");
    Eigen::MatrixXd M = lu.inverse();
    auto entry = [&](int a, int b) {
        if (a == m - 1 || b == m - 1) return 0.0;
        return M(a, b);
    };
    int s = pos[source];
    for (int idx = 0; idx < m; ++idx) {
        if (nodes[idx] == source) continue;
        r[nodes[idx]] = entry(s, s) + entry(idx, idx) - 2 * entry(s, idx);
    }
    return r;
}

WeightedSystem resistance_lift(const SocialGraph& graph, const LiftConfig& config) {
    (void)config;
    WeightedSystem sys;
    sys.n = graph.n;
    sys.rows.assign(graph.n, {});
    for (int i = 0; i < graph.n; ++i) {
        std::vector<double> r = effective_resistances(graph, i);
        double rmin = std::numeric_limits<double>::infinity();
        for (int k = 0; k < graph.n; ++k)
            if (k != i && r[k] > 0) rmin = std::min(rmin, r[k]);
        sys.set_weight(i, i, Rational(1));
        if (!std::isfinite(rmin)) continue;  // isolated vertex
        for (int j = 0; j < graph.n; ++j)
            if (j != i && r[j] > 0) sys.set_weight(i, j, rational_unit(rmin / r[j]));
    }
    return sys;
}

WeightedSystem lift(const SocialGraph& graph, const LiftConfig& config) {
    switch (config.method) {
        case LiftConfig::Method::direct: return direct_lift(graph);
        case LiftConfig::Method::shortest_path: return shortest_path_lift(graph);
        case LiftConfig::Method::ppr: return ppr_lift(graph, config);
        case LiftConfig::Method::resistance: return resistance_lift(graph, config);
    }
    throw std::invalid_argument("unknown lift method");
}

VerifyResult verify_graph_community(const SocialGraph& graph, const MemberSet& S,
                                    const CommunityParams& params) {
    return verify_weighted_community(direct_lift(graph), S, params);
}

bool verify_alpha_beta_cluster(const SocialGraph& graph, const MemberSet& S,
                               const Rational& alpha, const Rational& beta) {
    if (graph.directed) throw std::invalid_argument("cluster check needs an undirected graph");
    if (S.empty()) throw std::invalid_argument("empty member set");
    for (int i = 0; i < graph.n; ++i)
        if (!graph.has_selfloop(i))
            throw std::invalid_argument("cluster check requires a self-loop on every vertex");
    long long t = static_cast<long long>(S.size());
    Rational inside = alpha * t;
    Rational outside = beta * t;
    for (int i = 0; i < graph.n; ++i) {
        bool member = set_contains(S, i);
        long long deg = 0;
        for (const auto& [j, w] : graph.out[i]) {
            if (j == i && !member) continue;  // outsider self-loop is not an edge into S
            if (set_contains(S, j)) ++deg;
        }
        if (member && Rational(deg) < inside) return false;
        if (!member && Rational(deg) > outside) return false;
    }
    return true;
}

}  // namespace selfcomm
