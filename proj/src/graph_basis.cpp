#include "clusterent/graph_basis.hpp"

#include <cmath>
#include <string>

#include "clusterent/error.hpp"
#include "clusterent/state_model.hpp"

namespace clusterent {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges)
    : n_(n), adj_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {
  for (auto [i, j] : edges) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) {
      throw Error(ErrorCode::DomainError,
                  "invalid edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    adj_[index(i, j)] = 1;
    adj_[index(j, i)] = 1;
  }
}

Graph Graph::cluster() { return Graph(kQubits, {{0, 1}, {1, 2}, {2, 3}}); }

std::vector<int> Graph::neighborhood(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if (adjacent(i, j)) out.push_back(j);
  }
  return out;
}

std::string PauliString::str() const {
  std::string s = sign < 0 ? "-" : "";
  for (Pauli p : ops) s.push_back(static_cast<char>(p));
  return s;
}

std::vector<PauliString> stabilizer_generators(const Graph& g) {
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    PauliString k{std::vector<Pauli>(static_cast<std::size_t>(g.size()), Pauli::I), 1};
    k.ops[static_cast<std::size_t>(i)] = Pauli::X;
    for (int j : g.neighborhood(i)) k.ops[static_cast<std::size_t>(j)] = Pauli::Z;
    out.push_back(std::move(k));
  }
  return out;
}

namespace {

// Bit of qubit q (0-based, most significant first) in an n-qubit index.
int qubit_bit(int index, int q, int n) { return (index >> (n - 1 - q)) & 1; }

}  // namespace

StateVector apply(const PauliString& op, const StateVector& psi) {
  const int n = static_cast<int>(op.ops.size());
  const int dim = 1 << n;
  StateVector out(static_cast<std::size_t>(dim), 0.0);
  for (int mu = 0; mu < dim; ++mu) {
    int target = mu;
    int parity = 0;
    for (int q = 0; q < n; ++q) {
      switch (op.ops[static_cast<std::size_t>(q)]) {
        case Pauli::X:
          target ^= 1 << (n - 1 - q);
          break;
        case Pauli::Z:
          parity ^= qubit_bit(mu, q, n);
          break;
        case Pauli::I:
          break;
      }
    }
    const double s = (parity ? -1.0 : 1.0) * op.sign;
    out[static_cast<std::size_t>(target)] += s * psi[static_cast<std::size_t>(mu)];
  }
  return out;
}

StateVector basis_state(const Graph& g, int label) {
  const int n = g.size();
  const int dim = 1 << n;
  const double amp = std::pow(2.0, -0.5 * n);
  StateVector psi(static_cast<std::size_t>(dim));
  for (int mu = 0; mu < dim; ++mu) {
    // (1/2) mu Gamma mu^T counts each edge once.
    int parity = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (g.adjacent(i, j)) parity ^= qubit_bit(mu, i, n) & qubit_bit(mu, j, n);
      }
      parity ^= qubit_bit(label, i, n) & qubit_bit(mu, i, n);
    }
    psi[static_cast<std::size_t>(mu)] = parity ? -amp : amp;
  }
  return psi;
}

FVector twirl_to_fvector(const HermitianMatrix& rho) {
  constexpr double kHermitianTol = 1e-10;
  constexpr double kTraceTol = 1e-10;

  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw Error(ErrorCode::NonHermitian,
                "density matrix deviates from Hermitian by " + std::to_string(asym));
  }
  const std::complex<double> tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorCode::TraceNotOne, "density matrix trace is " + std::to_string(tr.real()));
  }

  const Graph g = Graph::cluster();
  std::array<double, kBasisSize> f{};
  for (int a = 0; a < kBasisSize; ++a) {
    const StateVector cl = basis_state(g, a);
    Eigen::Map<const Eigen::Matrix<double, kBasisSize, 1>> v(cl.data());
    const std::complex<double> fid = v.transpose().cast<std::complex<double>>() * rho *
                                     v.cast<std::complex<double>>();
    double x = fid.real();
    if (x < -kNegativeTol) {
      throw Error(ErrorCode::NegativeFidelity,
                  "fidelity with basis state " + std::to_string(a) + " is " + std::to_string(x));
    }
    f[static_cast<std::size_t>(a)] = x < 0 ? 0.0 : x;
  }
  return FVector::validate(f);
}

}  // namespace clusterent
