#include "gslope/graph.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

using namespace gslope;

namespace {

Graph random_connected_graph(int n, double extra_edge_prob, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(rng.uniform_int(0, i - 1), i);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (rng.uniform() < extra_edge_prob) edges.emplace_back(u, v);
        }
    }
    return Graph::build(n, edges);
}

}  // namespace

TEST_CASE("build canonicalizes and deduplicates") {
    Graph g = Graph::build(3, {{1, 0}, {1, 2}, {2, 1}});
    REQUIRE(g.num_edges() == 2);
    CHECK(g.edges()[0].u == 0);
    CHECK(g.edges()[0].v == 1);
    CHECK(g.edges()[1].u == 1);
    CHECK(g.edges()[1].v == 2);
}

TEST_CASE("build rejects bad input") {
    CHECK_THROWS_AS(Graph::build(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::build(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::build(2, {}), std::invalid_argument);
}

TEST_CASE("incidence transpose on small paths") {
    Graph p3 = gen_path(3);
    Vec d = p3.incidence_t_apply({1, 2, 4});
    CHECK(d[0] == doctest::Approx(-1));
    CHECK(d[1] == doctest::Approx(-2));

    Vec ones(3, 1.0);
    for (double x : p3.incidence_t_apply(ones)) CHECK(x == 0.0);

    Graph p2 = gen_path(2);
    CHECK(p2.incidence_t_apply({3, 1})[0] == doctest::Approx(2));
    CHECK_THROWS_AS(p2.incidence_t_apply({1, 2, 3}), std::invalid_argument);
}

TEST_CASE("incidence apply and adjoint identity") {
    Graph p2 = gen_path(2);
    Vec d = p2.incidence_apply({1});
    CHECK(d[0] == doctest::Approx(1));
    CHECK(d[1] == doctest::Approx(-1));

    Rng rng(7);
    Graph g = gen_path(5);
    for (int trial = 0; trial < 50; ++trial) {
        Vec x = rng.normal_vec(5), theta = rng.normal_vec(4);
        Vec dtx = g.incidence_t_apply(x);
        Vec dth = g.incidence_apply(theta);
        double lhs = 0, rhs = 0;
        for (int j = 0; j < 4; ++j) lhs += dtx[j] * theta[j];
        for (int i = 0; i < 5; ++i) rhs += x[i] * dth[i];
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("laplacian matches dense oracle") {
    Graph p3 = gen_path(3);
    // dense L = [[1,-1,0],[-1,2,-1],[0,-1,1]]
    Vec e1 = p3.laplacian_apply({1, 0, 0});
    CHECK(e1[0] == doctest::Approx(1));
    CHECK(e1[1] == doctest::Approx(-1));
    CHECK(e1[2] == doctest::Approx(0));

    Rng rng(11);
    Graph g = random_connected_graph(10, 0.2, rng);
    Eigen::MatrixXd l = oracle::dense_laplacian(g);
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = rng.normal_vec(10);
        Eigen::VectorXd want = l * oracle::to_eigen(x);
        Vec got = g.laplacian_apply(x);
        for (int i = 0; i < 10; ++i) CHECK(got[i] == doctest::Approx(want(i)).epsilon(1e-12));
    }
}

TEST_CASE("connected components") {
    CHECK(connected_components(gen_path(4)).count == 1);
    Graph two = Graph::build(4, {{0, 1}, {2, 3}});
    auto comps = connected_components(two);
    CHECK(comps.count == 2);
    CHECK(comps.labels[0] == comps.labels[1]);
    CHECK(comps.labels[2] == comps.labels[3]);
    CHECK(comps.labels[0] != comps.labels[2]);
}

TEST_CASE("kernel projection") {
    Graph p3 = gen_path(3);
    Vec pr = project_kernel(p3, {1, 2, 3});
    for (double x : pr) CHECK(x == doctest::Approx(2));
    // idempotence
    Vec pr2 = project_kernel(p3, pr);
    for (int i = 0; i < 3; ++i) CHECK(pr2[i] == doctest::Approx(pr[i]));
    // D^T Pi x = 0 exactly
    for (double x : p3.incidence_t_apply(pr)) CHECK(x == 0.0);

    Graph two = Graph::build(3, {{0, 1}});
    Vec prt = project_kernel(two, {1, 3, 5});
    CHECK(prt[0] == doctest::Approx(2));
    CHECK(prt[1] == doctest::Approx(2));
    CHECK(prt[2] == doctest::Approx(5));

    // symmetry of Pi
    Rng rng(3);
    Graph g = random_connected_graph(8, 0.2, rng);
    for (int trial = 0; trial < 20; ++trial) {
        Vec x = rng.normal_vec(8), y = rng.normal_vec(8);
        Vec px = project_kernel(g, x), py = project_kernel(g, y);
        double a = 0, b = 0;
        for (int i = 0; i < 8; ++i) {
            a += px[i] * y[i];
            b += x[i] * py[i];
        }
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("laplacian pseudo-inverse solve") {
    Graph p2 = gen_path(2);
    Vec x = laplacian_pinv_solve(p2, {1, -1});
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(-0.5));

    // constant rhs maps to zero
    Vec z = laplacian_pinv_solve(p2, {3, 3});
    CHECK(z[0] == doctest::Approx(0.0));
    CHECK(z[1] == doctest::Approx(0.0));

    Rng rng(19);
    Graph g = random_connected_graph(20, 0.15, rng);
    for (int trial = 0; trial < 10; ++trial) {
        Vec b = rng.normal_vec(20);
        Vec sol = laplacian_pinv_solve(g, b);
        // Pi sol = 0
        for (double m : project_kernel(g, sol)) CHECK(std::abs(m) < 1e-8);
        // L sol = (Id - Pi) b
        Vec ls = g.laplacian_apply(sol);
        Vec pb = project_kernel(g, b);
        for (int i = 0; i < 20; ++i) CHECK(ls[i] == doctest::Approx(b[i] - pb[i]).epsilon(1e-8));
        // matches dense pinv
        Eigen::VectorXd want = oracle::pinv(oracle::dense_laplacian(g)) * oracle::to_eigen(b);
        for (int i = 0; i < 20; ++i) CHECK(sol[i] == doctest::Approx(want(i)).epsilon(1e-7));
    }
}

TEST_CASE("rho against dense oracle") {
    CHECK(rho(gen_path(2)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    Graph p3 = gen_path(3);
    CHECK(rho(p3) == doctest::Approx(oracle::dense_rho(p3)));

    Rng rng(5);
    Graph g = random_connected_graph(12, 0.25, rng);
    CHECK(rho(g) == doctest::Approx(oracle::dense_rho(g)).epsilon(1e-8));

    // sampled variant is a lower bound
    Rng rng2(9);
    CHECK(rho_sampled(g, 3, rng2) <= rho(g) + 1e-12);
}

TEST_CASE("spectral norm") {
    CHECK(spectral_norm_sq(gen_path(2)) == doctest::Approx(2.0));
    Graph k3 = Graph::build(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(spectral_norm_sq(k3) == doctest::Approx(3.0).epsilon(1e-5));

    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = random_connected_graph(15, 0.2, rng);
        double est = spectral_norm_sq(g);
        double truth = oracle::dense_lambda_max(g);
        CHECK(est >= truth * (1 - 1e-6));
        CHECK(est <= 2.0 * g.max_degree() + 1e-12);
    }
}

TEST_CASE("generators") {
    CHECK(gen_path(100).num_edges() == 99);

    Rng rng(23);
    Graph cave = gen_caveman(4, 10, 0.1, rng);
    CHECK(cave.num_vertices() == 40);
    CHECK(connected_components(cave).count == 1);
    CHECK(cave.num_edges() <= 180);

    // q = 0 with several cliques can never connect
    Rng rng2(1);
    CHECK_THROWS_AS(gen_caveman(4, 10, 0.0, rng2, 5), std::runtime_error);
}

TEST_CASE("edge list round trip") {
    Rng rng(31);
    Graph g = gen_caveman(2, 4, 0.2, rng);
    std::stringstream buf;
    write_edge_list(buf, g);
    Graph h = read_edge_list(buf);
    REQUIRE(h.num_vertices() == g.num_vertices());
    REQUIRE(h.num_edges() == g.num_edges());
    for (int j = 0; j < g.num_edges(); ++j) {
        CHECK(h.edges()[j].u == g.edges()[j].u);
        CHECK(h.edges()[j].v == g.edges()[j].v);
    }
}

TEST_CASE("edge list comments and errors") {
    std::stringstream ok("# a comment\n3 2\n0 1 # inline\n1 2\n");
    Graph g = read_edge_list(ok);
    CHECK(g.num_vertices() == 3);
    CHECK(g.num_edges() == 2);

    std::stringstream bad("3 2\n0 1\n");
    CHECK_THROWS(read_edge_list(bad));
}
