#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pstneps/linalg.hpp"

namespace pstneps {

inline constexpr std::size_t kDefaultSizeCap = 4096;

// Element of Z_2^m; activation pattern for one adjacency term.
class BasisVector {
 public:
  BasisVector() = default;
  explicit BasisVector(std::vector<std::uint8_t> bits);
  static BasisVector zeros(std::size_t m);

  std::size_t size() const { return bits_.size(); }
  bool bit(std::size_t i) const { return bits_[i] != 0; }
  bool is_zero() const;
  BasisVector operator^(const BasisVector& other) const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string str() const;  // e.g. "(1,0,1)"

  auto operator<=>(const BasisVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

int hamming_weight(const BasisVector& a);

// Nonempty duplicate-free set of nonzero vectors of one common length,
// stored sorted. Duplicates are rejected, not collapsed: the set size
// enters phase formulas.
class BasisSet {
 public:
  explicit BasisSet(std::vector<BasisVector> vectors);

  std::size_t size() const { return vectors_.size(); }
  std::size_t length() const { return vectors_.front().size(); }
  auto begin() const { return vectors_.begin(); }
  auto end() const { return vectors_.end(); }
  const std::vector<BasisVector>& vectors() const { return vectors_; }
  bool contains(const BasisVector& v) const;

  bool operator==(const BasisSet&) const = default;

 private:
  std::vector<BasisVector> vectors_;
};

// XOR-fold of all vectors.
BasisVector c_of(const BasisSet& set);
// Same, for plain collections (fibers, projections); m disambiguates the
// empty case.
BasisVector c_of(const std::vector<BasisVector>& vectors, std::size_t m);

// Vertex of the product group Z_{n_1} x ... x Z_{n_m}.
struct Vertex {
  std::vector<int> coords;
  auto operator<=>(const Vertex&) const = default;
};

// Factor sizes plus basis set; fully determines the graph. Factors of size
// >= 3 are "large", factors of size 2 "binary"; the two index sets drive
// every structural predicate, so factor order is free.
class NepsSpec {
 public:
  NepsSpec(std::vector<int> factor_sizes, BasisSet basis);

  std::size_t factor_count() const { return factor_sizes_.size(); }
  const std::vector<int>& factor_sizes() const { return factor_sizes_; }
  const BasisSet& basis() const { return basis_; }
  std::size_t vertex_count() const { return vertex_count_; }

  const std::vector<std::size_t>& large_indices() const { return large_indices_; }
  const std::vector<std::size_t>& binary_indices() const { return binary_indices_; }
  // gcd of the large factor sizes; empty when there are none
  std::optional<long long> h() const;

  bool operator==(const NepsSpec&) const = default;

 private:
  std::vector<int> factor_sizes_;
  BasisSet basis_;
  std::size_t vertex_count_ = 0;
  std::vector<std::size_t> large_indices_;
  std::vector<std::size_t> binary_indices_;
};

// Mixed-radix bijections; coordinate 0 is most significant, matching the
// Kronecker factor order of the adjacency construction.
std::size_t vertex_index(const NepsSpec& spec, const Vertex& v);
Vertex index_vertex(const NepsSpec& spec, std::size_t k);
// (u_i + a_i) mod n_i componentwise
Vertex vertex_add(const NepsSpec& spec, const Vertex& u, const BasisVector& a);

// Restriction of a full-length vector to an index subset, ascending.
BasisVector restrict_to(const BasisVector& a, const std::vector<std::size_t>& indices);
// Inverse: place bits of `part` at `indices` of an m-length zero vector.
BasisVector embed_at(const BasisVector& part, const std::vector<std::size_t>& indices,
                     std::size_t m);

// Distinct large-coordinate parts of the basis (duplicates collapse).
std::vector<BasisVector> project_star(const NepsSpec& spec);
// Binary-coordinate parts of the basis vectors whose large part equals x;
// empty when x never occurs. May contain the zero tail.
std::vector<BasisVector> fiber(const NepsSpec& spec, const BasisVector& large_part);

// Partition by support: a1 zero on binary coordinates, a2 zero on large
// coordinates, a3 the rest.
struct BasisSplit {
  std::vector<BasisVector> a1, a2, a3;
};
BasisSplit split_support(const NepsSpec& spec);

// Regular graph degree from the activation patterns.
long long neps_degree(const NepsSpec& spec);

// 0/1 adjacency via the Kronecker-sum construction; cross-checked against
// the edge-rule construction for small orders.
ComplexMatrix neps_adjacency(const NepsSpec& spec, std::size_t size_cap = kDefaultSizeCap);
// Edge-rule construction: u ~ v iff some pattern a matches their
// coordinate-wise agreement/disagreement exactly.
ComplexMatrix adjacency_from_edge_rule(const NepsSpec& spec,
                                       std::size_t size_cap = kDefaultSizeCap);

}  // namespace pstneps
