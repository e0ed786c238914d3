#include "otoc/circuit.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace otoc {

Gate Gate::local(const ComplexMatrix& u, std::vector<int> sites,
                 std::string label) {
  if (!is_unitary(u))
    throw std::invalid_argument("Gate::local: payload is not unitary");
  if (u.rows() != Eigen::Index(1) << sites.size())
    throw std::invalid_argument("Gate::local: matrix/site-count mismatch");
  Gate g;
  g.kind = Kind::LocalUnitary;
  g.matrix = u;
  g.sites = std::move(sites);
  g.label = std::move(label);
  return g;
}

Gate Gate::controlled(int control, const ComplexMatrix& u,
                      std::vector<int> targets, std::string label) {
  if (!is_unitary(u))
    throw std::invalid_argument("Gate::controlled: payload is not unitary");
  if (u.rows() != Eigen::Index(1) << targets.size())
    throw std::invalid_argument("Gate::controlled: matrix/site-count mismatch");
  Gate g;
  g.kind = Kind::ControlledUnitary;
  g.control = control;
  g.matrix = u;
  g.sites = std::move(targets);
  g.label = std::move(label);
  return g;
}

Gate Gate::coupling(const ComplexMatrix& axis_op, double angle, int ancilla,
                    std::vector<int> targets, const ComplexMatrix& ancilla_op,
                    std::string label) {
  if (!is_hermitian(axis_op))
    throw std::invalid_argument("Gate::coupling: axis operator not Hermitian");
  if (!is_hermitian(ancilla_op) || ancilla_op.rows() != 2)
    throw std::invalid_argument("Gate::coupling: bad ancilla operator");
  if (axis_op.rows() != Eigen::Index(1) << targets.size())
    throw std::invalid_argument("Gate::coupling: matrix/site-count mismatch");
  Gate g;
  g.kind = Kind::Coupling;
  g.ancilla = ancilla;
  g.matrix = axis_op;
  g.ancilla_op = ancilla_op;
  g.angle = angle;
  g.sites = std::move(targets);
  g.label = std::move(label);
  return g;
}

std::vector<int> Gate::acting_sites() const {
  std::vector<int> out;
  if (kind == Kind::ControlledUnitary) out.push_back(control);
  out.insert(out.end(), sites.begin(), sites.end());
  if (kind == Kind::Coupling) out.push_back(ancilla);
  return out;
}

ComplexMatrix Gate::expanded_unitary() const {
  switch (kind) {
    case Kind::LocalUnitary:
      return matrix;
    case Kind::ControlledUnitary: {
      const Eigen::Index d = matrix.rows();
      ComplexMatrix u = ComplexMatrix::Identity(2 * d, 2 * d);
      u.block(d, d, d, d) = matrix;  // control bit 1 -> apply payload
      return u;
    }
    case Kind::Coupling: {
      const ComplexMatrix gen = kron(matrix, ancilla_op);
      const double t = angle;
      return herm_fn_complex(gen, [t](double lambda) {
        return std::exp(Complex(0.0, -lambda * t));
      });
    }
  }
  throw std::logic_error("Gate::expanded_unitary: bad kind");
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (kind == Kind::Coupling)
    g.angle = -angle;
  else
    g.matrix = matrix.adjoint();
  if (!g.label.empty()) g.label += "^dag";
  return g;
}

Circuit& Circuit::add(Gate g) {
  gates.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::measure(int site, Basis basis) {
  for (const Measurement& m : measurements)
    if (m.site == site)
      throw std::invalid_argument("Circuit::measure: site measured twice");
  measurements.push_back({site, basis});
  return *this;
}

Circuit& Circuit::extend(const Circuit& other) {
  if (other.n_qubits != n_qubits)
    throw std::invalid_argument("Circuit::extend: register size mismatch");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
  return *this;
}

void Circuit::check_sites() const {
  auto in_range = [this](int s) { return s >= 0 && s < n_qubits; };
  for (const Gate& g : gates) {
    std::vector<int> acting = g.acting_sites();
    std::set<int> uniq(acting.begin(), acting.end());
    if (uniq.size() != acting.size())
      throw std::invalid_argument("Circuit: gate touches a site twice");
    for (int s : acting)
      if (!in_range(s))
        throw std::invalid_argument("Circuit: gate site out of range");
  }
  for (const Measurement& m : measurements)
    if (!in_range(m.site))
      throw std::invalid_argument("Circuit: measurement site out of range");
}

Circuit inverse_of(const Circuit& c) {
  Circuit inv(c.n_qubits);
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
    inv.add(it->inverse());
  return inv;
}

}  // namespace otoc
