#include "pstneps/neps.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pstneps/errors.hpp"

namespace pstneps {

BasisVector::BasisVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b > 1) throw validation_error("basis vector entries must be 0 or 1");
}

BasisVector BasisVector::zeros(std::size_t m) {
  return BasisVector(std::vector<std::uint8_t>(m, 0));
}

bool BasisVector::is_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

BasisVector BasisVector::operator^(const BasisVector& other) const {
  if (size() != other.size())
    throw std::invalid_argument("basis vector length mismatch in xor");
  std::vector<std::uint8_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = bits_[i] ^ other.bits_[i];
  return BasisVector(std::move(out));
}

std::string BasisVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i) out += ",";
    out += bits_[i] ? "1" : "0";
  }
  return out + ")";
}

int hamming_weight(const BasisVector& a) {
  int w = 0;
  for (auto b : a.bits()) w += b;
  return w;
}

BasisSet::BasisSet(std::vector<BasisVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw validation_error("basis set must be nonempty");
  const std::size_t m = vectors_.front().size();
  if (m == 0) throw validation_error("basis vectors must have positive length");
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].size() != m)
      throw validation_error("basis vector " + std::to_string(i) +
                             " has inconsistent length");
    if (vectors_[i].is_zero())
      throw validation_error("basis set must not contain the zero vector (row " +
                             std::to_string(i) + ")");
  }
  std::sort(vectors_.begin(), vectors_.end());
  auto dup = std::adjacent_find(vectors_.begin(), vectors_.end());
  if (dup != vectors_.end())
    throw validation_error("duplicate basis vector " + dup->str());
}

bool BasisSet::contains(const BasisVector& v) const {
  return std::binary_search(vectors_.begin(), vectors_.end(), v);
}

BasisVector c_of(const BasisSet& set) {
  return c_of(set.vectors(), set.length());
}

BasisVector c_of(const std::vector<BasisVector>& vectors, std::size_t m) {
  BasisVector acc = BasisVector::zeros(m);
  for (const auto& v : vectors) acc = acc ^ v;
  return acc;
}

NepsSpec::NepsSpec(std::vector<int> factor_sizes, BasisSet basis)
    : factor_sizes_(std::move(factor_sizes)), basis_(std::move(basis)) {
  if (factor_sizes_.empty()) throw validation_error("spec needs at least one factor");
  if (basis_.length() != factor_sizes_.size())
    throw validation_error("basis vector length " + std::to_string(basis_.length()) +
                           " does not match factor count " +
                           std::to_string(factor_sizes_.size()));
  unsigned long long count = 1;
  for (std::size_t i = 0; i < factor_sizes_.size(); ++i) {
    const int n = factor_sizes_[i];
    if (n < 2)
      throw validation_error("factor " + std::to_string(i) + " has size " +
                             std::to_string(n) + "; factors must have size >= 2");
    count *= static_cast<unsigned long long>(n);
    if (count > (1ULL << 40)) throw validation_error("vertex count overflow");
    (n >= 3 ? large_indices_ : binary_indices_).push_back(i);
  }
  vertex_count_ = static_cast<std::size_t>(count);
}

std::optional<long long> NepsSpec::h() const {
  if (large_indices_.empty()) return std::nullopt;
  long long g = 0;
  for (std::size_t i : large_indices_) g = std::gcd(g, static_cast<long long>(factor_sizes_[i]));
  return g;
}

std::size_t vertex_index(const NepsSpec& spec, const Vertex& v) {
  if (v.coords.size() != spec.factor_count())
    throw std::invalid_argument("vertex has wrong coordinate count");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    const int n = spec.factor_sizes()[i];
    if (v.coords[i] < 0 || v.coords[i] >= n)
      throw std::out_of_range("vertex coordinate " + std::to_string(i) + " out of range");
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(v.coords[i]);
  }
  return idx;
}

Vertex index_vertex(const NepsSpec& spec, std::size_t k) {
  if (k >= spec.vertex_count()) throw std::out_of_range("vertex index out of range");
  std::vector<int> coords(spec.factor_count());
  for (std::size_t i = spec.factor_count(); i-- > 0;) {
    const auto n = static_cast<std::size_t>(spec.factor_sizes()[i]);
    coords[i] = static_cast<int>(k % n);
    k /= n;
  }
  return Vertex{std::move(coords)};
}

Vertex vertex_add(const NepsSpec& spec, const Vertex& u, const BasisVector& a) {
  if (u.coords.size() != a.size() || u.coords.size() != spec.factor_count())
    throw std::invalid_argument("vertex_add: length mismatch");
  std::vector<int> coords(u.coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    coords[i] = (u.coords[i] + (a.bit(i) ? 1 : 0)) % spec.factor_sizes()[i];
  return Vertex{std::move(coords)};
}

BasisVector restrict_to(const BasisVector& a, const std::vector<std::size_t>& indices) {
  std::vector<std::uint8_t> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(a.bit(i) ? 1 : 0);
  return BasisVector(std::move(out));
}

BasisVector embed_at(const BasisVector& part, const std::vector<std::size_t>& indices,
                     std::size_t m) {
  if (part.size() != indices.size())
    throw std::invalid_argument("embed_at: part length does not match index count");
  std::vector<std::uint8_t> out(m, 0);
  for (std::size_t i = 0; i < indices.size(); ++i) out[indices[i]] = part.bit(i) ? 1 : 0;
  return BasisVector(std::move(out));
}

std::vector<BasisVector> project_star(const NepsSpec& spec) {
  std::vector<BasisVector> out;
  for (const auto& a : spec.basis()) out.push_back(restrict_to(a, spec.large_indices()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<BasisVector> fiber(const NepsSpec& spec, const BasisVector& large_part) {
  if (large_part.size() != spec.large_indices().size())
    throw std::invalid_argument("fiber: wrong large-part length");
  std::vector<BasisVector> out;
  for (const auto& a : spec.basis())
    if (restrict_to(a, spec.large_indices()) == large_part)
      out.push_back(restrict_to(a, spec.binary_indices()));
  std::sort(out.begin(), out.end());
  return out;
}

BasisSplit split_support(const NepsSpec& spec) {
  BasisSplit split;
  for (const auto& a : spec.basis()) {
    const bool binary_active = !restrict_to(a, spec.binary_indices()).is_zero();
    const bool large_active = !restrict_to(a, spec.large_indices()).is_zero();
    if (!binary_active)
      split.a1.push_back(a);
    else if (!large_active)
      split.a2.push_back(a);
    else
      split.a3.push_back(a);
  }
  return split;
}

long long neps_degree(const NepsSpec& spec) {
  long long degree = 0;
  for (const auto& a : spec.basis()) {
    long long d = 1;
    for (std::size_t i = 0; i < spec.factor_count(); ++i)
      if (a.bit(i)) d *= spec.factor_sizes()[i] - 1;
    degree += d;
  }
  return degree;
}

namespace {

void check_cap(const NepsSpec& spec, std::size_t size_cap) {
  if (spec.vertex_count() > size_cap)
    throw size_cap_error("vertex count " + std::to_string(spec.vertex_count()) +
                         " exceeds cap " + std::to_string(size_cap));
}

ComplexMatrix adjacency_by_kron(const NepsSpec& spec) {
  const std::size_t n = spec.vertex_count();
  ComplexMatrix acc(n);
  for (const auto& a : spec.basis()) {
    ComplexMatrix term = ComplexMatrix::identity(1);
    for (std::size_t i = 0; i < spec.factor_count(); ++i) {
      const auto ni = static_cast<std::size_t>(spec.factor_sizes()[i]);
      ComplexMatrix factor = ComplexMatrix::identity(ni);
      if (a.bit(i)) {
        for (std::size_t r = 0; r < ni; ++r)
          for (std::size_t c = 0; c < ni; ++c) factor(r, c) = (r == c) ? 0.0 : 1.0;
      }
      term = kron(term, factor);
    }
    acc = add(acc, term);
  }
  return acc;
}

}  // namespace

ComplexMatrix adjacency_from_edge_rule(const NepsSpec& spec, std::size_t size_cap) {
  check_cap(spec, size_cap);
  const std::size_t n = spec.vertex_count();
  const std::size_t m = spec.factor_count();
  std::vector<Vertex> verts;
  verts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) verts.push_back(index_vertex(spec, k));
  ComplexMatrix adj(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      bool adjacent = false;
      for (const auto& a : spec.basis()) {
        bool match = true;
        for (std::size_t i = 0; i < m && match; ++i) {
          const bool differ = verts[u].coords[i] != verts[v].coords[i];
          match = a.bit(i) ? differ : !differ;
        }
        if (match) {
          adjacent = true;
          break;
        }
      }
      adj(u, v) = adjacent ? 1.0 : 0.0;
    }
  }
  return adj;
}

ComplexMatrix neps_adjacency(const NepsSpec& spec, std::size_t size_cap) {
  check_cap(spec, size_cap);
  ComplexMatrix adj = adjacency_by_kron(spec);
  if (spec.vertex_count() <= 256) {
    // Both constructions are exact 0/1; any gap is a construction bug.
    if (max_norm_diff(adj, adjacency_from_edge_rule(spec, size_cap)) != 0.0)
      throw computation_error("adjacency constructions disagree");
  }
  return adj;
}

}  // namespace pstneps
