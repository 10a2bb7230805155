#pragma once

#include <array>
#include <cstddef>
#include <string>

// Small fixed-dimension (d = 2, 3) linear algebra: symmetric matrices with
// packed storage, rotations, closed-form symmetric eigendecomposition, and
// the matrix <-> ellipsoid dictionary M = R diag(a^2) R^T.

namespace ellopt {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Volume of the unit ball: pi (d=2), 4pi/3 (d=3).
double unit_ball_volume(int dim);

struct Vec {
    int dim = 0;
    std::array<double, 3> c{0.0, 0.0, 0.0};

    Vec() = default;
    Vec(double x, double y) : dim(2), c{x, y, 0.0} {}
    Vec(double x, double y, double z) : dim(3), c{x, y, z} {}

    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
};

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
Vec scaled(const Vec& v, double s);
Vec cross(const Vec& a, const Vec& b);  // dim 3 only

// Symmetric d x d matrix, packed as [m11, m22, m12] (d=2) or
// [m11, m22, m33, m12, m13, m23] (d=3). The packed order doubles as the
// coordinate chart used by the optimiser.
struct SymMat {
    int dim = 0;
    std::array<double, 6> a{};

    static SymMat zero(int dim);
    static SymMat identity(int dim);

    int packed_size() const { return dim == 2 ? 3 : 6; }
    double operator()(int i, int j) const;
    void set(int i, int j, double v);

    double packed(int k) const { return a[static_cast<std::size_t>(k)]; }
    void set_packed(int k, double v) { a[static_cast<std::size_t>(k)] = v; }

    double trace() const;
    double det() const;
    SymMat adjugate() const;
    double qform(const Vec& y) const;  // y . M y

    double frobenius_norm() const;
    double max_abs() const;

    SymMat operator+(const SymMat& o) const;
    SymMat operator-(const SymMat& o) const;
    SymMat operator*(double s) const;
};

double frobenius_dot(const SymMat& x, const SymMat& y);

// Rotation (or general d x d) matrix, row-major; only the leading d x d
// block is used.
struct RotMat {
    int dim = 0;
    std::array<double, 9> m{};

    static RotMat identity(int dim);
    double operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }
    void set(int i, int j, double v) { m[static_cast<std::size_t>(3 * i + j)] = v; }

    Vec apply(const Vec& v) const;            // R v
    Vec apply_transpose(const Vec& v) const;  // R^T v
    double det() const;
    double orthogonality_defect() const;  // max |(R^T R - I)_ij|
};

// R diag(d) R^T as a SymMat.
SymMat rotate_diag(const RotMat& r, const std::array<double, 3>& diag, int dim);
// R S R^T.
SymMat conjugate(const RotMat& r, const SymMat& s);

struct EigenSym {
    int dim = 0;
    std::array<double, 3> values{};  // descending
    RotMat vectors;                  // columns are eigenvectors, det +1
};

// Closed-form eigendecomposition of a symmetric matrix (half-angle formula
// for d=2, trigonometric cubic for d=3). Canonicalised: eigenvalues
// descending, each eigenvector's largest-magnitude component positive,
// det = +1 restored by flipping the last column.
EigenSym eigen_sym(const SymMat& s);

// Symmetric positive definite matrix; positivity is checked on construction
// (relative tolerance 1e-14) and the eigendecomposition is cached.
class SpdMatrix {
  public:
    explicit SpdMatrix(const SymMat& s);

    int dim() const { return sym_.dim; }
    const SymMat& sym() const { return sym_; }
    const EigenSym& eigen() const { return eig_; }

    double operator()(int i, int j) const { return sym_(i, j); }
    double trace() const { return sym_.trace(); }
    double det() const { return sym_.det(); }
    double qform(const Vec& y) const { return sym_.qform(y); }
    double inverse_qform(const Vec& x) const;  // x . M^{-1} x
    double condition_number() const;

    SpdMatrix sqrt() const;  // R diag(sqrt(eig)) R^T

    static SpdMatrix scaled_identity(int dim, double s);

  private:
    SymMat sym_;
    EigenSym eig_;
};

// exp(S) for symmetric S; always SPD.
SpdMatrix sym_exp(const SymMat& s);

// Ellipsoid E = M^{1/2} B = R D(a) B, centred at the origin.
// mass = |B_d| * prod(a_i).
struct Ellipsoid {
    SpdMatrix matrix;
    RotMat rotation;
    std::array<double, 3> semi_axes{};  // descending, unused entries 0
    double mass = 0.0;

    int dim() const { return matrix.dim(); }
    bool contains(const Vec& x, double tol = 1e-10) const;
    Vec boundary_point(const Vec& unit_dir) const;  // M^{1/2} u
};

struct AxesDecomposition {
    RotMat rotation;
    std::array<double, 3> semi_axes{};  // descending
};

Ellipsoid from_axes(const RotMat& r, const std::array<double, 3>& axes, int dim);
AxesDecomposition to_axes(const SpdMatrix& m);
Ellipsoid ellipsoid_from_matrix(const SpdMatrix& m);

double mass_of(const SpdMatrix& m);
SpdMatrix matrix_sqrt(const SpdMatrix& m);
SymMat adjugate(const SpdMatrix& m);

}  // namespace ellopt
