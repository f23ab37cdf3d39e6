#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace clusterent {

class FVector;

inline constexpr int kQubits = 4;
inline constexpr int kBasisSize = 16;

/// Index of the cluster basis label (alpha, beta, gamma, delta); qubit 1 is
/// the most significant bit. Computational basis strings use the same order.
constexpr int basis_index(int alpha, int beta, int gamma, int delta) {
  return 8 * alpha + 4 * beta + 2 * gamma + delta;
}

/// Simple undirected graph on n vertices (0-based) stored as a dense
/// adjacency matrix.
class Graph {
 public:
  explicit Graph(int n, const std::vector<std::pair<int, int>>& edges = {});

  /// Linear cluster on four qubits: the path 0-1-2-3.
  static Graph cluster();

  int size() const { return n_; }
  bool adjacent(int i, int j) const { return adj_[index(i, j)] != 0; }
  std::vector<int> neighborhood(int i) const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_;
  std::vector<std::uint8_t> adj_;
};

enum class Pauli : char { I = 'I', X = 'X', Z = 'Z' };

struct PauliString {
  std::vector<Pauli> ops;
  int sign = 1;

  /// e.g. "XZII", with a leading '-' for negative sign.
  std::string str() const;
};

/// Real amplitudes over the computational basis, 2^n entries.
using StateVector = std::vector<double>;

/// 16x16 complex matrix used as the density-matrix ingestion carrier.
using HermitianMatrix = Eigen::Matrix<std::complex<double>, kBasisSize, kBasisSize>;

/// K_i = X_i prod_{j in N_i} Z_j for every vertex.
std::vector<PauliString> stabilizer_generators(const Graph& g);

/// Applies a Pauli string to a real state vector. X and Z keep real vectors
/// real, which is all the stabilizer generators need.
StateVector apply(const PauliString& op, const StateVector& psi);

/// Z_1^{a_1} ... Z_n^{a_n} |G>, where label bit i (most significant first)
/// is a_i. Amplitudes are exactly +-2^{-n/2}.
StateVector basis_state(const Graph& g, int label);

/// Cluster-basis fidelities F_a = <Cl_a|rho|Cl_a> of a 16x16 density matrix.
/// Only the extracted diagonal is checked for positivity.
FVector twirl_to_fvector(const HermitianMatrix& rho);

}  // namespace clusterent
