#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <vector>

#include "qwc/errors.hpp"
#include "qwc/graph.hpp"
#include "qwc/rng.hpp"

using namespace qwc;

namespace {

// Upper regularized incomplete gamma Q(a,x), for chi-square tail
// probabilities: P(chi2 >= x | df) = Q(df/2, x/2).
double gamma_q(double a, double x) {
    if (x < a + 1.0) {
        // series for P(a,x), return 1 - P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-14) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

} // namespace

TEST_CASE("build_graph: star, empty, duplicate collapse") {
    const Graph star = Graph::from_edges({{0, 1}, {0, 2}, {0, 3}}, 4);
    CHECK(star.adjacency(0, 1) == 1.0);
    CHECK(star.adjacency(0, 2) == 1.0);
    CHECK(star.adjacency(0, 3) == 1.0);
    CHECK(star.adjacency(1, 2) == 0.0);
    CHECK(star.edge_count() == 3);

    const Graph empty = Graph::from_edges({}, 3);
    CHECK(empty.adjacency.isZero());

    const Graph dup = Graph::from_edges({{0, 1}, {1, 0}}, 2);
    CHECK(dup.edge_count() == 1);
    CHECK(dup.adjacency(0, 1) == 1.0);
}

TEST_CASE("build_graph rejects bad endpoints") {
    CHECK_THROWS_AS(Graph::from_edges({{0, 4}}, 4), InputError);
    CHECK_THROWS_AS(Graph::from_edges({{-1, 0}}, 4), InputError);
    CHECK_THROWS_AS(Graph::from_edges({{2, 2}}, 4), InputError);
}

TEST_CASE("degree data") {
    const Graph star = Graph::from_edges({{0, 1}, {0, 2}, {0, 3}}, 4);
    const DegreeData d = degree_data(star);
    CHECK(d.degrees(0) == 3);
    CHECK(d.degrees(1) == 1);
    CHECK(d.degree_matrix(0, 0) == 3.0);
    CHECK(d.degree_matrix(0, 1) == 0.0);
}

TEST_CASE("erdos-renyi p=0 and p=1") {
    Rng rng(1);
    CHECK(generate_erdos_renyi(4, 0.0, rng).edge_count() == 0);
    CHECK(generate_erdos_renyi(4, 1.0, rng).edge_count() == 6);
    CHECK_THROWS_AS(generate_erdos_renyi(4, 1.5, rng), InputError);
}

TEST_CASE("erdos-renyi mean edge count, 1000 samples of G(100,0.3)") {
    Rng rng(20240915);
    double total = 0.0;
    for (int i = 0; i < 1000; ++i) total += generate_erdos_renyi(100, 0.3, rng).edge_count();
    const double mean = total / 1000.0;
    // Binomial(4950, 0.3): mean 1485, sd of the sample mean sqrt(npq/1000)
    const double sd_mean = std::sqrt(4950.0 * 0.3 * 0.7 / 1000.0);
    CHECK(std::fabs(mean - 1485.0) <= 3.0 * sd_mean);
}

TEST_CASE("erdos-renyi edge counts fit Binomial: chi-square p > 0.001") {
    // G(10, 0.3): 45 possible edges
    Rng rng(77);
    const int samples = 1000, pairs = 45;
    const double p = 0.3;
    std::vector<int> counts(pairs + 1, 0);
    for (int s = 0; s < samples; ++s)
        ++counts[static_cast<int>(generate_erdos_renyi(10, p, rng).edge_count())];
    // pool bins with expected < 5
    std::vector<double> expected(pairs + 1);
    for (int k = 0; k <= pairs; ++k)
        expected[k] = samples * std::exp(std::log(static_cast<double>(binom(pairs, k))) +
                                         k * std::log(p) + (pairs - k) * std::log(1.0 - p));
    double chi2 = 0.0;
    int bins = 0;
    double obs_pool = 0.0, exp_pool = 0.0;
    for (int k = 0; k <= pairs; ++k) {
        obs_pool += counts[k];
        exp_pool += expected[k];
        if (exp_pool >= 5.0) {
            chi2 += (obs_pool - exp_pool) * (obs_pool - exp_pool) / exp_pool;
            ++bins;
            obs_pool = exp_pool = 0.0;
        }
    }
    if (exp_pool > 0.0) {
        chi2 += (obs_pool - exp_pool) * (obs_pool - exp_pool) / exp_pool;
        ++bins;
    }
    const double pvalue = gamma_q((bins - 1) / 2.0, chi2 / 2.0);
    CHECK(pvalue > 0.001);
}

TEST_CASE("barabasi-albert: seed clique and exact edge count") {
    Rng rng(3);
    const Graph k3 = generate_barabasi_albert(3, 2, rng);
    CHECK(k3.edge_count() == 3); // triangle
    CHECK(k3.adjacency(0, 1) == 1.0);
    CHECK(k3.adjacency(1, 2) == 1.0);

    const Graph g = generate_barabasi_albert(100, 2, rng);
    // independent tally by construction rule: C(3,2) + 2*(100-3)
    long long tally = 0;
    for (int i = 0; i < 100; ++i)
        for (int j = i + 1; j < 100; ++j)
            if (g.adjacency(i, j) != 0.0) ++tally;
    CHECK(tally == 197);
    // closed form m(n-m-1) + (m+1)m/2
    CHECK(tally == 2 * (100 - 2 - 1) + 3);
    CHECK(is_connected(g));

    CHECK_THROWS_AS(generate_barabasi_albert(3, 3, rng), InputError);
}

TEST_CASE("barabasi-albert degree tail follows a power law") {
    Rng rng(161);
    std::map<int, long long> hist;
    for (int s = 0; s < 200; ++s) {
        const Graph g = generate_barabasi_albert(100, 2, rng);
        const DegreeData d = degree_data(g);
        for (int i = 0; i < g.n; ++i) ++hist[d.degrees(i)];
    }
    // log-log least squares slope over k in [3, 20]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (int k = 3; k <= 20; ++k) {
        if (!hist.count(k) || hist[k] == 0) continue;
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(static_cast<double>(hist[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++npts;
    }
    REQUIRE(npts >= 5);
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    CHECK(slope < -2.0);
    CHECK(slope > -3.5);
}

TEST_CASE("generator invariants: symmetric, zero diagonal, binary") {
    Rng rng(9);
    for (int s = 0; s < 1000; ++s) {
        const Graph g = (s % 2 == 0) ? generate_erdos_renyi(30, 0.2, rng)
                                     : generate_barabasi_albert(30, 3, rng);
        bool ok = true;
        for (int i = 0; i < g.n && ok; ++i) {
            if (g.adjacency(i, i) != 0.0) ok = false;
            for (int j = 0; j < g.n && ok; ++j) {
                const double v = g.adjacency(i, j);
                if (v != 0.0 && v != 1.0) ok = false;
                if (v != g.adjacency(j, i)) ok = false;
            }
        }
        REQUIRE(ok);
    }
}

TEST_CASE("identical seed gives bit-identical graphs") {
    Rng a(123456), b(123456);
    const Graph ga = generate_erdos_renyi(50, 0.4, a);
    const Graph gb = generate_erdos_renyi(50, 0.4, b);
    CHECK(ga.adjacency == gb.adjacency);
    Rng sa = Rng::stream(7, 3), sb = Rng::stream(7, 3);
    CHECK(generate_barabasi_albert(40, 2, sa).adjacency ==
          generate_barabasi_albert(40, 2, sb).adjacency);
}

TEST_CASE("ensure_connected") {
    GraphEnsembleSpec spec;
    spec.kind = EnsembleKind::ErdosRenyi;
    spec.n = 20;
    spec.p = 0.3;
    spec.require_connected = true;
    Rng rng(5);
    CHECK(is_connected(ensure_connected(spec, rng)));

    spec.kind = EnsembleKind::BarabasiAlbert;
    spec.m = 2;
    CHECK(is_connected(ensure_connected(spec, rng)));

    spec.kind = EnsembleKind::ErdosRenyi;
    spec.n = 10;
    spec.p = 0.0;
    CHECK_THROWS_AS(ensure_connected(spec, rng), GenerationError);
}

TEST_CASE("ensure_connected returns the first barabasi-albert sample") {
    GraphEnsembleSpec spec;
    spec.kind = EnsembleKind::BarabasiAlbert;
    spec.n = 30;
    spec.m = 2;
    spec.require_connected = true;
    Rng a(71), b(71);
    CHECK(ensure_connected(spec, a).adjacency == generate_barabasi_albert(30, 2, b).adjacency);
}

TEST_CASE("malformed graph JSON is an input error") {
    {
        std::ofstream out("bad.json");
        out << "{\"edges\": [[0,1]]}"; // missing n
    }
    CHECK_THROWS_AS(read_graph("bad.json"), InputError);
    {
        std::ofstream out("bad.json");
        out << "not json";
    }
    CHECK_THROWS_AS(read_graph("bad.json"), InputError);
    std::remove("bad.json");
}

TEST_CASE("connectivity and bipartiteness checks") {
    CHECK(is_connected(Graph::from_edges({{0, 1}, {1, 2}}, 3)));
    CHECK_FALSE(is_connected(Graph::from_edges({{0, 1}}, 3)));
    CHECK(is_bipartite(Graph::from_edges({{0, 1}}, 2)));
    CHECK_FALSE(is_bipartite(Graph::from_edges({{0, 1}, {1, 2}, {0, 2}}, 3)));
}

TEST_CASE("edge list and JSON round trip") {
    Rng rng(31);
    const Graph g = generate_erdos_renyi(12, 0.4, rng);
    write_graph(g, "roundtrip.edges");
    CHECK(read_graph("roundtrip.edges").adjacency == g.adjacency);
    write_graph(g, "roundtrip.json");
    CHECK(read_graph("roundtrip.json").adjacency == g.adjacency);
    std::remove("roundtrip.edges");
    std::remove("roundtrip.json");
}

TEST_CASE("malformed edge file reports the line") {
    {
        std::ofstream out("bad.edges");
        out << "n 4\n0 1\nnot an edge\n";
    }
    try {
        read_graph("bad.edges");
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
    std::remove("bad.edges");
}
