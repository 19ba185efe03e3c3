#include <doctest.h>

#include <set>
#include <stdexcept>

#include "pstneps/errors.hpp"
#include "pstneps/neps.hpp"
#include "support/corpus.hpp"

using namespace pstneps;
using corpus::bv;
using corpus::make_spec;

TEST_CASE("spec validation") {
  const NepsSpec k3 = corpus::complete_graph(3);
  CHECK(k3.vertex_count() == 3);
  CHECK(k3.h() == 3);
  CHECK(k3.binary_indices().empty());

  CHECK_THROWS_AS(make_spec({2, 2}, {{0, 0}}), validation_error);          // zero vector
  CHECK_THROWS_AS(make_spec({3, 2}, {{1, 0}, {1, 0}}), validation_error);  // duplicate
  CHECK_THROWS_AS(make_spec({3, 2}, {{1}}), validation_error);             // length
  CHECK_THROWS_AS(make_spec({3, 1}, {{1, 0}}), validation_error);          // factor < 2
  CHECK_THROWS_AS(make_spec({}, {}), validation_error);
  CHECK_THROWS_AS(BasisSet({}), validation_error);
}

TEST_CASE("large/binary classification ignores factor order") {
  const NepsSpec spec = make_spec({2, 4, 3}, {{1, 1, 0}});
  CHECK(spec.large_indices() == std::vector<std::size_t>{1, 2});
  CHECK(spec.binary_indices() == std::vector<std::size_t>{0});
  CHECK(spec.h() == 1);  // gcd(4, 3)
  CHECK(!make_spec({2, 2}, {{1, 0}}).h().has_value());
}

TEST_CASE("vertex indexing is the mixed-radix bijection") {
  const NepsSpec spec = make_spec({3, 2}, {{1, 1}});
  CHECK(vertex_index(spec, Vertex{{0, 0}}) == 0);
  CHECK(vertex_index(spec, Vertex{{2, 1}}) == 5);
  CHECK(index_vertex(spec, 5) == Vertex{{2, 1}});
  CHECK_THROWS_AS(vertex_index(spec, Vertex{{3, 0}}), std::out_of_range);
  CHECK_THROWS_AS(index_vertex(spec, 6), std::out_of_range);

  const NepsSpec spec3 = make_spec({3, 2, 2}, {{1, 1, 1}});
  for (std::size_t k = 0; k < spec3.vertex_count(); ++k)
    CHECK(vertex_index(spec3, index_vertex(spec3, k)) == k);
}

TEST_CASE("vertex addition is componentwise modular") {
  const NepsSpec spec = make_spec({3, 2}, {{1, 1}});
  CHECK(vertex_add(spec, Vertex{{2, 1}}, bv({1, 1})) == Vertex{{0, 0}});
  CHECK(vertex_add(spec, Vertex{{0, 0}}, bv({0, 0})) == Vertex{{0, 0}});
  // adding twice restores binary coordinates
  const Vertex u{{1, 1}};
  const Vertex once = vertex_add(spec, u, bv({0, 1}));
  CHECK(vertex_add(spec, once, bv({0, 1})) == u);
  CHECK_THROWS_AS(vertex_add(spec, u, bv({1})), std::invalid_argument);
}

TEST_CASE("xor fold") {
  CHECK(c_of({bv({1, 0}), bv({0, 1})}, 2) == bv({1, 1}));
  CHECK(c_of({bv({1, 0}), bv({0, 1}), bv({1, 1})}, 2) == bv({0, 0}));
  CHECK(c_of({bv({1, 0, 1})}, 3) == bv({1, 0, 1}));
  CHECK(c_of({}, 3) == bv({0, 0, 0}));

  // disjoint-union additivity
  const std::vector<BasisVector> a = {bv({1, 0, 0}), bv({1, 1, 0})};
  const std::vector<BasisVector> b = {bv({0, 0, 1})};
  std::vector<BasisVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(c_of(both, 3) == (c_of(a, 3) ^ c_of(b, 3)));
}

TEST_CASE("hamming weight") {
  CHECK(hamming_weight(bv({0, 0, 0})) == 0);
  CHECK(hamming_weight(bv({1, 0, 1, 1})) == 3);
  // subadditivity over the whole 4-bit space
  for (int x = 0; x < 16; ++x)
    for (int y = 0; y < 16; ++y) {
      auto vec = [](int v) {
        return bv({(v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1});
      };
      CHECK(hamming_weight(vec(x)) + hamming_weight(vec(y)) >=
            hamming_weight(vec(x) ^ vec(y)));
    }
}

TEST_CASE("projection and fibers") {
  const NepsSpec spec = make_spec({3, 2, 2}, {{1, 0, 1}, {1, 1, 0}});
  const auto star = project_star(spec);
  REQUIRE(star.size() == 1);
  CHECK(star.front() == bv({1}));
  const auto tails = fiber(spec, bv({1}));
  CHECK(tails == std::vector<BasisVector>{bv({0, 1}), bv({1, 0})});
  CHECK(fiber(spec, bv({0})).empty());

  const NepsSpec ex2 = corpus::example_k3_cube5();
  const auto zero_fiber = fiber(ex2, bv({0}));
  CHECK(zero_fiber.size() == 11);
  CHECK(c_of(zero_fiber, 5).is_zero());
}

TEST_CASE("support split partitions the basis") {
  CHECK(split_support(make_spec({3, 2}, {{1, 0}})).a1.size() == 1);
  CHECK(split_support(make_spec({3, 2}, {{0, 1}})).a2.size() == 1);
  CHECK(split_support(make_spec({4, 2}, {{1, 1}})).a3.size() == 1);

  const NepsSpec spec = make_spec({4, 2}, {{1, 0}, {0, 1}, {1, 1}});
  const auto split = split_support(spec);
  CHECK(split.a1.size() + split.a2.size() + split.a3.size() == spec.basis().size());
  std::set<BasisVector> seen;
  for (const auto* part : {&split.a1, &split.a2, &split.a3})
    for (const auto& v : *part) CHECK(seen.insert(v).second);
  CHECK(seen.size() == spec.basis().size());
}

TEST_CASE("adjacency of the 2-cube is the 4-cycle") {
  const auto adj = neps_adjacency(corpus::hamming({2, 2}));
  for (std::size_t u = 0; u < 4; ++u) {
    double degree = 0;
    for (std::size_t v = 0; v < 4; ++v) degree += adj(u, v).real();
    CHECK(degree == 2.0);
    CHECK(adj(u, u) == cplx{});
  }
  CHECK(adj(0, 3) == cplx{});  // opposite corners not adjacent
  CHECK(adj(0, 1) == cplx{1.0, 0.0});
  CHECK(adj(0, 2) == cplx{1.0, 0.0});
}

TEST_CASE("adjacency of a complete factor is all-ones minus identity") {
  const auto adj = neps_adjacency(corpus::complete_graph(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(adj(i, j) == (i == j ? cplx{} : cplx{1.0, 0.0}));
}

TEST_CASE("adjacency constructions agree and the graph is a regular Cayley graph") {
  for (const auto& [name, spec] : corpus::certification_corpus()) {
    if (spec.vertex_count() > 128) continue;
    CAPTURE(name);
    const auto adj = neps_adjacency(spec);
    CHECK(max_norm_diff(adj, adjacency_from_edge_rule(spec)) == 0.0);
    CHECK(symmetry_residual(adj) == 0.0);

    const double expected_degree = static_cast<double>(neps_degree(spec));
    const std::size_t n = spec.vertex_count();
    for (std::size_t u = 0; u < n; ++u) {
      double row_sum = 0;
      for (std::size_t v = 0; v < n; ++v) row_sum += adj(u, v).real();
      CHECK(row_sum == expected_degree);
    }

    // entries depend only on the coordinate difference v - u
    for (std::size_t u = 0; u < n; ++u) {
      const Vertex vu = index_vertex(spec, u);
      for (std::size_t v = 0; v < n; ++v) {
        const Vertex vv = index_vertex(spec, v);
        std::vector<int> diff(spec.factor_count());
        for (std::size_t i = 0; i < diff.size(); ++i) {
          const int ni = spec.factor_sizes()[i];
          diff[i] = ((vv.coords[i] - vu.coords[i]) % ni + ni) % ni;
        }
        CHECK(adj(u, v) == adj(0, vertex_index(spec, Vertex{diff})));
      }
    }
  }
}

TEST_CASE("degree formula on a tensor-like pattern") {
  CHECK(neps_degree(make_spec({3, 2}, {{1, 1}})) == 2);
  CHECK(neps_degree(make_spec({4, 2, 2}, {{1, 1, 0}, {0, 0, 1}})) == 4);
}

TEST_CASE("size cap") {
  const NepsSpec spec = corpus::hamming({8, 4, 2, 2});  // order 128
  CHECK_THROWS_AS(neps_adjacency(spec, 64), size_cap_error);
  CHECK_NOTHROW(neps_adjacency(spec, 128));
}
