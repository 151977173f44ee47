#include "bellkit/instances.hpp"

#include <cmath>

namespace bellkit {

ComplexVector max_entangled_state(int d) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i) * d + i) = 1.0;
  return v / std::sqrt(static_cast<double>(d));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Strategy chsh_strategy() {
  const double r = 1.0 / std::sqrt(2.0);
  return strategy_from_observables(
      max_entangled_state(2), 2, 2, {pauli_z(), pauli_x()},
      {r * (pauli_z() + pauli_x()), r * (pauli_z() - pauli_x())});
}

Strategy pauli3_strategy() {
  const std::vector<ComplexMatrix> obs = {pauli_x(), pauli_y(), pauli_z()};
  return strategy_from_observables(max_entangled_state(2), 2, 2, obs, obs);
}

Strategy real_pair_strategy() {
  const std::vector<ComplexMatrix> obs = {pauli_z(), pauli_x()};
  return strategy_from_observables(max_entangled_state(2), 2, 2, obs, obs);
}

}  // namespace bellkit
