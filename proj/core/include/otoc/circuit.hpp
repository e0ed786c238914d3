#pragma once

#include "otoc/linalg.hpp"

#include <string>
#include <vector>

namespace otoc {

enum class Basis { X, Y, Z };

struct Gate {
  enum class Kind { LocalUnitary, ControlledUnitary, Coupling };

  Kind kind = Kind::LocalUnitary;
  std::vector<int> sites;     // target sites (tensor order of `matrix`)
  int control = -1;           // ControlledUnitary only
  int ancilla = -1;           // Coupling only
  ComplexMatrix matrix;       // unitary payload, or axis operator A for Coupling
  ComplexMatrix ancilla_op;   // Coupling: 2x2 Hermitian P
  double angle = 0.0;         // Coupling: exp(-i * angle * A (x) P)
  std::string label;

  static Gate local(const ComplexMatrix& u, std::vector<int> sites,
                    std::string label = {});
  static Gate controlled(int control, const ComplexMatrix& u,
                         std::vector<int> targets, std::string label = {});
  /// exp(-i * angle * A (x) P) with A on `targets`, P on `ancilla`.
  static Gate coupling(const ComplexMatrix& axis_op, double angle, int ancilla,
                       std::vector<int> targets,
                       const ComplexMatrix& ancilla_op,
                       std::string label = {});

  /// Sites the gate touches, in the tensor order of expanded_unitary().
  std::vector<int> acting_sites() const;
  /// Dense unitary over acting_sites().
  ComplexMatrix expanded_unitary() const;
  Gate inverse() const;
};

struct Measurement {
  int site;
  Basis basis;
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<Measurement> measurements;

  explicit Circuit(int n = 0) : n_qubits(n) {}

  Circuit& add(Gate g);
  Circuit& measure(int site, Basis basis);
  /// Appends another circuit's gates (same register).
  Circuit& extend(const Circuit& other);
  void check_sites() const;
};

/// Reversed, daggered gate sequence; measurements dropped.
Circuit inverse_of(const Circuit& c);

}  // namespace otoc
