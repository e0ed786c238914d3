#pragma once

#include "otoc/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace otoc {

// Qubit ordering convention used throughout: site 0 is the leftmost
// (most significant) tensor factor, so embed_local(X, {0}, 4) is
// X (x) I (x) I (x) I and basis index bit (n-1-s) belongs to site s.

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

const ComplexMatrix& pauli_matrix(Pauli p);
char pauli_char(Pauli p);

struct PauliString {
  std::vector<Pauli> word;
  Complex coefficient{1.0, 0.0};

  PauliString() = default;
  PauliString(std::vector<Pauli> w, Complex c = {1.0, 0.0})
      : word(std::move(w)), coefficient(c) {}
  /// Parse e.g. "XIZY".
  explicit PauliString(const std::string& letters, Complex c = {1.0, 0.0});

  int n_qubits() const { return static_cast<int>(word.size()); }
  std::string word_str() const;
  ComplexMatrix to_matrix() const;
};

/// Tensor-embed a 2^k x 2^k operator acting on `sites` into an n-qubit space.
ComplexMatrix embed_local(const ComplexMatrix& op, const std::vector<int>& sites,
                          int n);

/// Coefficients gamma_i = Tr(Gamma_i^dag op) / 2^n over all 4^n Pauli words.
std::vector<PauliString> pauli_decompose(const ComplexMatrix& op, int n);

/// Resum a decomposition back into a dense matrix.
ComplexMatrix pauli_resum(const std::vector<PauliString>& terms, int n);

}  // namespace otoc
