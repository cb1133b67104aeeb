#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace tlm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return s * a; }
  friend Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline constexpr Vec3 kAxisX{1.0, 0.0, 0.0};
inline constexpr Vec3 kAxisY{0.0, 1.0, 0.0};
inline constexpr Vec3 kAxisZ{0.0, 0.0, 1.0};

// Below this angle the axis is meaningless and replaced by the z placeholder.
inline constexpr double kDegenerateAngle = 1e-14;

// SU(2) element exp(-i theta axis.sigma) with unit axis and theta >= 0
// (a negative angle flips the axis). Magnus angles may exceed pi;
// canonical() folds into [0, pi]. Placeholder z axis when theta vanishes.
class AngleAxis {
 public:
  AngleAxis() = default;
  AngleAxis(double theta, Vec3 axis);

  static AngleAxis identity() { return {}; }
  // From cos(theta) and sin(theta)*axis, e.g. the scalar and vector parts
  // of a matrix. The axis is flagged degenerate when |sin_axis| underflows.
  static AngleAxis from_components(double cos_theta, Vec3 sin_axis);

  double theta() const { return theta_; }
  const Vec3& axis() const { return axis_; }
  // theta * axis, the rotation vector.
  Vec3 rotation_vector() const { return theta_ * axis_; }
  bool degenerate() const { return degenerate_; }
  // True when canonicalization had to fold theta into [0, pi].
  bool folded() const { return folded_; }
  // Same group element with theta in [0, pi]; at theta = pi the axis sign
  // follows n_x >= 0, then n_y >= 0, then n_z >= 0.
  AngleAxis canonical() const;

  AngleAxis inverse() const { return {theta_, -axis_}; }

 private:
  double theta_ = 0.0;
  Vec3 axis_ = kAxisZ;
  bool degenerate_ = true;
  bool folded_ = false;
};

// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct SU2Matrix {
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};
  cplx c{0.0, 0.0};
  cplx d{1.0, 0.0};

  static SU2Matrix identity() { return {}; }

  friend SU2Matrix operator*(const SU2Matrix& l, const SU2Matrix& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
  }
  friend SU2Matrix operator+(const SU2Matrix& l, const SU2Matrix& r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
  }
  friend SU2Matrix operator-(const SU2Matrix& l, const SU2Matrix& r) {
    return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
  }
  friend SU2Matrix operator*(cplx s, const SU2Matrix& m) {
    return {s * m.a, s * m.b, s * m.c, s * m.d};
  }

  SU2Matrix adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  SU2Matrix conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  double frobenius_norm() const;
  // max(|U^dag U - I|_F, |det U - 1|)
  double special_unitary_defect() const;
};

double frobenius_distance(const SU2Matrix& l, const SU2Matrix& r);

namespace pauli {
inline const SU2Matrix I{{1, 0}, {0, 0}, {0, 0}, {1, 0}};
inline const SU2Matrix X{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
inline const SU2Matrix Y{{0, 0}, {0, -1}, {0, 1}, {0, 0}};
inline const SU2Matrix Z{{1, 0}, {0, 0}, {0, 0}, {-1, 0}};
inline const SU2Matrix Plus{{0, 0}, {1, 0}, {0, 0}, {0, 0}};
inline const SU2Matrix Minus{{0, 0}, {0, 0}, {1, 0}, {0, 0}};
}  // namespace pauli

// Per-order coefficients of Omega = A sigma+ + A* sigma- + C sigma_z.
struct MagnusCoefficients {
  int order = 0;
  std::vector<cplx> A;    // A_1..A_order
  std::vector<double> C;  // C_1..C_order
  double time = 0.0;

  cplx summed_A() const;
  double summed_C() const;
  // Sums truncated to the first n orders.
  cplx summed_A(int n) const;
  double summed_C(int n) const;
};

AngleAxis from_magnus_coeffs(cplx A, double C);
AngleAxis from_magnus_coeffs(const MagnusCoefficients& m);
SU2Matrix to_matrix(const AngleAxis& r);
// exp(-i theta n.sigma) for an arbitrary rotation vector theta*n.
SU2Matrix exp_rotation(Vec3 rotation_vector);
// Product first*second expressed in angle-axis form.
AngleAxis compose_bch(const AngleAxis& first, const AngleAxis& second);
AngleAxis principal_log(const SU2Matrix& m);
// H r H with H the Hadamard matrix: (nx, ny, nz) -> (nz, -ny, nx).
AngleAxis hadamard_conjugate(const AngleAxis& r);
SU2Matrix hadamard_conjugate(const SU2Matrix& m);
// Frobenius distance between the matrix realizations.
double distance(const AngleAxis& l, const AngleAxis& r);

}  // namespace tlm
