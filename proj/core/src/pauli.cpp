#include "otoc/pauli.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace otoc {

namespace {

const Complex kI(0.0, 1.0);

ComplexMatrix make_pauli(char which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

const ComplexMatrix& pauli_matrix(Pauli p) {
  static const ComplexMatrix mats[4] = {make_pauli('I'), make_pauli('X'),
                                        make_pauli('Y'), make_pauli('Z')};
  return mats[static_cast<int>(p)];
}

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(const std::string& letters, Complex c)
    : coefficient(c) {
  word.reserve(letters.size());
  for (char ch : letters) {
    switch (ch) {
      case 'I': word.push_back(Pauli::I); break;
      case 'X': word.push_back(Pauli::X); break;
      case 'Y': word.push_back(Pauli::Y); break;
      case 'Z': word.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("PauliString: bad letter in word");
    }
  }
}

std::string PauliString::word_str() const {
  std::string s;
  s.reserve(word.size());
  for (Pauli p : word) s.push_back(pauli_char(p));
  return s;
}

ComplexMatrix PauliString::to_matrix() const {
  const int n = n_qubits();
  const Eigen::Index dim = Eigen::Index(1) << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index row = col;
    Complex phase = coefficient;
    for (int s = 0; s < n; ++s) {
      const Eigen::Index mask = Eigen::Index(1) << (n - 1 - s);
      const bool bit = (col & mask) != 0;
      switch (word[s]) {
        case Pauli::I: break;
        case Pauli::X: row ^= mask; break;
        case Pauli::Y: row ^= mask; phase *= bit ? -kI : kI; break;
        case Pauli::Z: if (bit) phase = -phase; break;
      }
    }
    out(row, col) += phase;
  }
  return out;
}

ComplexMatrix embed_local(const ComplexMatrix& op, const std::vector<int>& sites,
                          int n) {
  const int k = static_cast<int>(sites.size());
  const Eigen::Index opdim = Eigen::Index(1) << k;
  if (op.rows() != opdim || op.cols() != opdim)
    throw std::invalid_argument("embed_local: operator dimension mismatch");
  std::set<int> uniq(sites.begin(), sites.end());
  if (static_cast<int>(uniq.size()) != k)
    throw std::invalid_argument("embed_local: duplicate site index");
  for (int s : sites)
    if (s < 0 || s >= n)
      throw std::invalid_argument("embed_local: site index out of range");

  const Eigen::Index dim = Eigen::Index(1) << n;
  // bit position of each target site, op's index bit (k-1-j) <-> sites[j]
  std::vector<Eigen::Index> bitpos(k);
  Eigen::Index site_mask = 0;
  for (int j = 0; j < k; ++j) {
    bitpos[j] = Eigen::Index(1) << (n - 1 - sites[j]);
    site_mask |= bitpos[j];
  }
  auto offset = [&](Eigen::Index m) {
    Eigen::Index off = 0;
    for (int j = 0; j < k; ++j)
      if ((m >> (k - 1 - j)) & 1) off |= bitpos[j];
    return off;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index base = 0; base < dim; ++base) {
    if (base & site_mask) continue;
    for (Eigen::Index mr = 0; mr < opdim; ++mr)
      for (Eigen::Index mc = 0; mc < opdim; ++mc)
        out(base | offset(mr), base | offset(mc)) = op(mr, mc);
  }
  return out;
}

std::vector<PauliString> pauli_decompose(const ComplexMatrix& op, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  if (op.rows() != dim || op.cols() != dim)
    throw std::invalid_argument("pauli_decompose: dimension mismatch");
  const std::size_t n_words = std::size_t(1) << (2 * n);
  std::vector<PauliString> out;
  out.reserve(n_words);
  std::vector<Pauli> word(n);
  for (std::size_t w = 0; w < n_words; ++w) {
    for (int s = 0; s < n; ++s)
      word[s] = static_cast<Pauli>((w >> (2 * (n - 1 - s))) & 3);
    // Tr(Gamma^dag op): Pauli words are monomial matrices, walk columns.
    Complex tr = 0.0;
    for (Eigen::Index col = 0; col < dim; ++col) {
      Eigen::Index row = col;
      Complex phase = 1.0;
      for (int s = 0; s < n; ++s) {
        const Eigen::Index mask = Eigen::Index(1) << (n - 1 - s);
        const bool bit = (col & mask) != 0;
        switch (word[s]) {
          case Pauli::I: break;
          case Pauli::X: row ^= mask; break;
          case Pauli::Y: row ^= mask; phase *= bit ? -kI : kI; break;
          case Pauli::Z: if (bit) phase = -phase; break;
        }
      }
      tr += std::conj(phase) * op(row, col);
    }
    out.emplace_back(word, tr / static_cast<double>(dim));
  }
  return out;
}

ComplexMatrix pauli_resum(const std::vector<PauliString>& terms, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const PauliString& t : terms) {
    if (t.n_qubits() != n)
      throw std::invalid_argument("pauli_resum: word length mismatch");
    if (t.coefficient == Complex(0.0, 0.0)) continue;
    out += t.to_matrix();
  }
  return out;
}

}  // namespace otoc
