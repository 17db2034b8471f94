#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gslope/rng.hpp"

namespace gslope {

using Vec = std::vector<double>;

struct Edge {
    int u;  // min endpoint
    int v;  // max endpoint
};

// Undirected simple graph with canonical edge orientation (u < v).
// Immutable after construction; all linear operators (D^T, D, L) are
// applied matrix-free from the edge list.
class Graph {
public:
    // Canonicalizes to (min,max), drops duplicates (stable order), rejects
    // self-loops and out-of-range endpoints. Vertex ids are 0-based.
    static Graph build(int n, const std::vector<std::pair<int, int>>& edge_list);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    int max_degree() const { return max_degree_; }

    // (D^T x)_e = x_u - x_v for e = (u,v), u < v.
    Vec incidence_t_apply(const Vec& x) const;
    // D theta; adjoint of incidence_t_apply.
    Vec incidence_apply(const Vec& theta) const;
    // L x = D D^T x.
    Vec laplacian_apply(const Vec& x) const;

private:
    Graph() = default;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
    int max_degree_ = 0;
};

struct ComponentLabeling {
    std::vector<int> labels;  // vertex -> component id, ids 0..count-1
    int count = 0;
    std::vector<int> sizes;
};

ComponentLabeling connected_components(const Graph& g);

// Orthogonal projection onto ker(D^T): per-component averaging.
Vec project_kernel(const Graph& g, const Vec& x);
Vec project_kernel(const ComponentLabeling& comps, const Vec& x);

struct LaplacianSolveConfig {
    double tolerance = 1e-10;  // relative residual
    int max_iterations = 0;    // 0 means 10 * n
};

// x = L^+ b: solves L x = (Id - Pi) b with Pi x = 0, by conjugate gradient
// restricted to the component-mean-zero subspace.
Vec laplacian_pinv_solve(const Graph& g, const Vec& b,
                         const LaplacianSolveConfig& cfg = {});

// rho(G) = max over edges (u,v) of || L^+ (e_u - e_v) ||_2.
double rho(const Graph& g, const LaplacianSolveConfig& cfg = {});

// Lower-bound variant: max over a random subset of sample_edges edges.
double rho_sampled(const Graph& g, int sample_edges, Rng& rng,
                   const LaplacianSolveConfig& cfg = {});

// lambda_max(L) via power iteration, clipped to the Gershgorin bound
// 2 * max_degree. Any upper bound is a safe FISTA step-size denominator.
double spectral_norm_sq(const Graph& g);

Graph gen_path(int n);

// Relaxed caveman: l disjoint k-cliques; each intra-clique edge has one
// endpoint rewired with probability q to a uniform vertex of another clique.
// Resamples until connected (throws after max_attempts failures).
Graph gen_caveman(int l, int k, double q, Rng& rng, int max_attempts = 100);

// Edge-list text format: "n p" header then p lines "u v" (0-based);
// '#' starts a comment. Writer emits canonicalized edges.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);

}  // namespace gslope
