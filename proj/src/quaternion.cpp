#include "bellkit/quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace bellkit {

double Quaternion::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

QuaternionMatrix::QuaternionMatrix(int rows, int cols)
    : w_(RealMatrix::Zero(rows, cols)),
      x_(RealMatrix::Zero(rows, cols)),
      y_(RealMatrix::Zero(rows, cols)),
      z_(RealMatrix::Zero(rows, cols)) {}

QuaternionMatrix QuaternionMatrix::identity(int n) {
  QuaternionMatrix out(n, n);
  out.w_ = RealMatrix::Identity(n, n);
  return out;
}

Quaternion QuaternionMatrix::operator()(int i, int j) const {
  return {w_(i, j), x_(i, j), y_(i, j), z_(i, j)};
}

void QuaternionMatrix::set(int i, int j, const Quaternion& q) {
  w_(i, j) = q.w;
  x_(i, j) = q.x;
  y_(i, j) = q.y;
  z_(i, j) = q.z;
}

QuaternionMatrix QuaternionMatrix::adjoint() const {
  QuaternionMatrix out(cols(), rows());
  out.w_ = w_.transpose();
  out.x_ = -x_.transpose();
  out.y_ = -y_.transpose();
  out.z_ = -z_.transpose();
  return out;
}

double QuaternionMatrix::norm() const {
  return std::sqrt(w_.squaredNorm() + x_.squaredNorm() + y_.squaredNorm() +
                   z_.squaredNorm());
}

QuaternionMatrix operator+(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  QuaternionMatrix out(a.rows(), a.cols());
  out.w_ = a.w_ + b.w_;
  out.x_ = a.x_ + b.x_;
  out.y_ = a.y_ + b.y_;
  out.z_ = a.z_ + b.z_;
  return out;
}

QuaternionMatrix operator-(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  QuaternionMatrix out(a.rows(), a.cols());
  out.w_ = a.w_ - b.w_;
  out.x_ = a.x_ - b.x_;
  out.y_ = a.y_ - b.y_;
  out.z_ = a.z_ - b.z_;
  return out;
}

QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("quaternion matrix product: shape mismatch");
  // Componentwise expansion of the Hamilton product.
  QuaternionMatrix out(a.rows(), b.cols());
  out.w_ = a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_;
  out.x_ = a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_;
  out.y_ = a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_;
  out.z_ = a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_;
  return out;
}

QuaternionMatrix operator*(double s, const QuaternionMatrix& a) {
  QuaternionMatrix out(a.rows(), a.cols());
  out.w_ = s * a.w_;
  out.x_ = s * a.x_;
  out.y_ = s * a.y_;
  out.z_ = s * a.z_;
  return out;
}

ComplexMatrix phi_embed(const Quaternion& q) {
  ComplexMatrix out(2, 2);
  out(0, 0) = Complex(q.w, q.x);
  out(0, 1) = Complex(q.y, q.z);
  out(1, 0) = Complex(-q.y, q.z);
  out(1, 1) = Complex(q.w, -q.x);
  return out;
}

ComplexMatrix phi_embed(const QuaternionMatrix& q) {
  const int rows = q.rows();
  const int cols = q.cols();
  const Complex iu(0.0, 1.0);
  const ComplexMatrix a = q.part_w().cast<Complex>() + iu * q.part_x().cast<Complex>();
  const ComplexMatrix b = q.part_y().cast<Complex>() + iu * q.part_z().cast<Complex>();
  ComplexMatrix out(2 * rows, 2 * cols);
  out.topLeftCorner(rows, cols) = a;
  out.topRightCorner(rows, cols) = b;
  out.bottomLeftCorner(rows, cols) = -b.conjugate();
  out.bottomRightCorner(rows, cols) = a.conjugate();
  return out;
}

ComplexMatrix quaternion_conjugator(int n) {
  ComplexMatrix j(2, 2);
  j << 0, -1, 1, 0;
  return tensor(j, ComplexMatrix::Identity(n, n));
}

bool in_phi_range(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) return false;
  const ComplexMatrix k = quaternion_conjugator(static_cast<int>(m.rows()) / 2);
  return (m.conjugate() - k * m * k.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

QuaternionMatrix phi_extract(const ComplexMatrix& m, double tol) {
  if (!in_phi_range(m, tol))
    throw std::invalid_argument("phi_extract: matrix is not an embedded quaternion matrix");
  const int n = static_cast<int>(m.rows()) / 2;
  QuaternionMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex a = m(i, j);      // w + xi
      const Complex b = m(i, j + n);  // y + zi
      out.set(i, j, {a.real(), a.imag(), b.real(), b.imag()});
    }
  return out;
}

}  // namespace bellkit
