#pragma once

#include <vector>

#include "bellkit/linalg.hpp"

namespace bellkit {

// Quaternion q = w + x i + y j + z k with Hamilton's product rules
// i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  Quaternion conjugate() const { return {w, -x, -y, -z}; }
  double norm() const;

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b);
  friend Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.w, s * q.x, s * q.y, s * q.z};
  }
};

// Dense matrix over the quaternions, stored as four real component matrices
// (entry (i,j) is w(i,j) + x(i,j) i + y(i,j) j + z(i,j) k).
class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;
  QuaternionMatrix(int rows, int cols);

  static QuaternionMatrix identity(int n);

  int rows() const { return static_cast<int>(w_.rows()); }
  int cols() const { return static_cast<int>(w_.cols()); }

  Quaternion operator()(int i, int j) const;
  void set(int i, int j, const Quaternion& q);

  // Quaternionic adjoint: transpose with entrywise quaternion conjugation.
  QuaternionMatrix adjoint() const;

  double norm() const;  // Frobenius norm.

  friend QuaternionMatrix operator+(const QuaternionMatrix& a, const QuaternionMatrix& b);
  friend QuaternionMatrix operator-(const QuaternionMatrix& a, const QuaternionMatrix& b);
  friend QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b);
  friend QuaternionMatrix operator*(double s, const QuaternionMatrix& a);

  const RealMatrix& part_w() const { return w_; }
  const RealMatrix& part_x() const { return x_; }
  const RealMatrix& part_y() const { return y_; }
  const RealMatrix& part_z() const { return z_; }

 private:
  RealMatrix w_, x_, y_, z_;
};

// Complex embedding of a single quaternion:
//   Phi(w + xi + yj + zk) = [[w + xi, y + zi], [-y + zi, w - xi]].
ComplexMatrix phi_embed(const Quaternion& q);

// Complex embedding of an n x n quaternion matrix Q = W + Xi + Yj + Zk
// (component matrices W, X, Y, Z) as the 2n x 2n block matrix
//   Phi_n(Q) = [[A, B], [-conj(B), conj(A)]],  A = W + iX,  B = Y + iZ.
// The embedding is a *-algebra homomorphism.
ComplexMatrix phi_embed(const QuaternionMatrix& q);

// The conjugator K = J (x) I_n with J = [[0, -1], [1, 0]].  A complex
// 2n x 2n matrix M lies in the range of the embedding iff conj(M) = K M K^†.
ComplexMatrix quaternion_conjugator(int n);

// Whether a complex matrix of even size lies in the range of phi_embed.
bool in_phi_range(const ComplexMatrix& m, double tol = kDefaultTol);

// Inverse of phi_embed on its range.  Throws if the matrix is not (close to)
// an embedded quaternion matrix.
QuaternionMatrix phi_extract(const ComplexMatrix& m, double tol = kDefaultTol);

}  // namespace bellkit
