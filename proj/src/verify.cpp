// Copyright 2026 The qroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qroute/verify.hpp"

#include <string>
#include <utility>

#include "qroute/error.hpp"

namespace qroute {

Gf2Map::Gf2Map(std::size_t n) : n_(n), m_(n * n, 0) {
  for (std::size_t i = 0; i < n; ++i) m_[i * n + i] = 1;
}

void Gf2Map::cnot(Qubit control, Qubit target) {
  for (std::size_t j = 0; j < n_; ++j) {
    m_[target * n_ + j] ^= m_[control * n_ + j];
  }
}

bool Gf2Map::is_identity() const { return *this == Gf2Map(n_); }

CliffordTableau::CliffordTableau(std::size_t n)
    : n_(n), x_(2 * n * n, 0), z_(2 * n * n, 0), r_(2 * n, 0) {
  for (std::size_t i = 0; i < n; ++i) {
    x_[i * n + i] = 1;
    z_[(n + i) * n + i] = 1;
  }
}

void CliffordTableau::h(Qubit a) {
  for (std::size_t i = 0; i < 2 * n_; ++i) {
    auto& xa = x_[i * n_ + a];
    auto& za = z_[i * n_ + a];
    r_[i] ^= xa & za;
    std::swap(xa, za);
  }
}

void CliffordTableau::cnot(Qubit control, Qubit target) {
  for (std::size_t i = 0; i < 2 * n_; ++i) {
    auto& xa = x_[i * n_ + control];
    auto& za = z_[i * n_ + control];
    auto& xb = x_[i * n_ + target];
    auto& zb = z_[i * n_ + target];
    r_[i] ^= xa & zb & (xb ^ za ^ 1);
    xb ^= xa;
    za ^= zb;
  }
}

void CliffordTableau::permute_wires(std::span<const Qubit> image) {
  if (image.size() != n_) {
    throw ContractError("wire permutation size does not match the tableau");
  }
  std::vector<std::uint8_t> nx(x_.size()), nz(z_.size());
  for (std::size_t i = 0; i < 2 * n_; ++i) {
    for (std::size_t v = 0; v < n_; ++v) {
      nx[i * n_ + image[v]] = x_[i * n_ + v];
      nz[i * n_ + image[v]] = z_[i * n_ + v];
    }
  }
  x_ = std::move(nx);
  z_ = std::move(nz);
}

bool CliffordTableau::is_identity() const {
  return *this == CliffordTableau(n_);
}

bool CliffordTableau::is_symplectic() const {
  // Image of X_i must anticommute with image of Z_i and commute otherwise.
  for (std::size_t a = 0; a < 2 * n_; ++a) {
    for (std::size_t b = a + 1; b < 2 * n_; ++b) {
      unsigned form = 0;
      for (std::size_t k = 0; k < n_; ++k) {
        form ^= (x_[a * n_ + k] & z_[b * n_ + k]) ^
                (z_[a * n_ + k] & x_[b * n_ + k]);
      }
      const unsigned want = (a < n_ && b == a + n_) ? 1u : 0u;
      if (form != want) return false;
    }
  }
  return true;
}

Gf2Map gf2_of(std::span<const Gate> gates, std::size_t n) {
  Gf2Map m(n);
  for (const Gate& g : gates) {
    if (!g.is_cnot()) {
      throw ContractError("GF(2) semantics only cover CNOT, got " +
                          g.mnemonic());
    }
    if (g.control() >= n || g.target() >= n) {
      throw ContractError("gate index outside the GF(2) map");
    }
    m.cnot(g.control(), g.target());
  }
  return m;
}

CliffordTableau tableau_of(std::span<const Gate> gates, std::size_t n) {
  CliffordTableau t(n);
  for (const Gate& g : gates) {
    if (g.control() >= n || (g.is_cnot() && g.target() >= n)) {
      throw ContractError("gate index outside the tableau");
    }
    switch (g.kind) {
      case GateKind::cnot:
        t.cnot(g.control(), g.target());
        break;
      case GateKind::h:
        t.h(g.target());
        break;
      default:
        throw ContractError(
            "tableau semantics only cover H and CNOT, got " + g.mnemonic());
    }
  }
  return t;
}

Circuit clifford_part(const Circuit& c) {
  Circuit out(c.num_qubits, c.space);
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::other) out.gates.push_back(g);
  }
  return out;
}

Verdict check_equivalence(
    const Circuit& lc, const Circuit& pc, const Mapping& tau_ini,
    const WirePermutation& sigma_final) {
  const std::size_t n = pc.num_qubits;
  if (tau_ini.num_physical() != n || sigma_final.size() != n ||
      tau_ini.num_logical() < lc.num_qubits) {
    throw ContractError(
        "dimension mismatch: physical circuit has " + std::to_string(n) +
        " wires, mapping covers " + std::to_string(tau_ini.num_logical()) +
        " -> " + std::to_string(tau_ini.num_physical()) +
        ", permutation has " + std::to_string(sigma_final.size()));
  }
  std::vector<Gate> embedded;
  embedded.reserve(lc.gates.size());
  for (Gate g : lc.gates) {
    g.q0 = tau_ini[g.q0];
    if (g.is_cnot()) g.q1 = tau_ini[g.q1];
    embedded.push_back(std::move(g));
  }
  CliffordTableau want = tableau_of(embedded, n);
  want.permute_wires(sigma_final.images());
  const CliffordTableau got = tableau_of(pc.gates, n);
  if (got == want) return {true, ""};

  for (std::size_t i = 0; i < 2 * n; ++i) {
    bool ops_differ = false;
    for (std::size_t k = 0; k < n; ++k) {
      ops_differ |= got.x(i, k) != want.x(i, k) || got.z(i, k) != want.z(i, k);
    }
    if (ops_differ || got.phase(i) != want.phase(i)) {
      const std::string gen =
          (i < n ? "X" : "Z") + std::to_string(i < n ? i : i - n);
      return {false, "image of " + gen + (ops_differ ? " differs" :
                                                      " differs in sign")};
    }
  }
  return {false, "tableaux differ"};
}

}  // namespace qroute
