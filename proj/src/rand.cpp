#include "bellkit/rand.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace bellkit {

double Rng::uniform() {
  return std::ldexp(static_cast<double>(gen_() >> 11), -53);
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
  // Rejection sampling on the top bits keeps the result unbiased.
  const std::uint64_t bound = n;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t raw = 0;
  do {
    raw = gen_();
  } while (raw >= limit);
  return static_cast<int>(raw % bound);
}

ComplexMatrix Rng::haar_unitary(int d) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

ComplexMatrix Rng::hermitian(int d) {
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = complex_normal();
  return (g + g.adjoint()) / 2.0;
}

ComplexVector Rng::state(int d) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = complex_normal();
  return v / v.norm();
}

}  // namespace bellkit
