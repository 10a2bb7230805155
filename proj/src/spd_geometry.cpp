#include "ellopt/spd_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ellopt {

namespace {

void check_dim(int dim) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
}

// Packed index for (i, j), i <= j, in the order [11, 22, 33, 12, 13, 23].
int packed_index(int dim, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == j) return i;
    if (dim == 2) return 2;        // (0,1)
    if (i == 0 && j == 1) return 3;
    if (i == 0 && j == 2) return 4;
    return 5;                       // (1,2)
}

}  // namespace

double unit_ball_volume(int dim) {
    check_dim(dim);
    return dim == 2 ? kPi : 4.0 * kPi / 3.0;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

Vec scaled(const Vec& v, double s) {
    Vec r = v;
    for (int i = 0; i < v.dim; ++i) r[i] *= s;
    return r;
}

Vec cross(const Vec& a, const Vec& b) {
    return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

SymMat SymMat::zero(int dim) {
    check_dim(dim);
    SymMat s;
    s.dim = dim;
    return s;
}

SymMat SymMat::identity(int dim) {
    SymMat s = zero(dim);
    for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
    return s;
}

double SymMat::operator()(int i, int j) const { return a[static_cast<std::size_t>(packed_index(dim, i, j))]; }

void SymMat::set(int i, int j, double v) { a[static_cast<std::size_t>(packed_index(dim, i, j))] = v; }

double SymMat::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += (*this)(i, i);
    return t;
}

double SymMat::det() const {
    if (dim == 2) return a[0] * a[1] - a[2] * a[2];
    const double m11 = a[0], m22 = a[1], m33 = a[2], m12 = a[3], m13 = a[4], m23 = a[5];
    return m11 * (m22 * m33 - m23 * m23) - m12 * (m12 * m33 - m23 * m13) + m13 * (m12 * m23 - m22 * m13);
}

SymMat SymMat::adjugate() const {
    SymMat r = zero(dim);
    if (dim == 2) {
        r.a[0] = a[1];
        r.a[1] = a[0];
        r.a[2] = -a[2];
        return r;
    }
    const double m11 = a[0], m22 = a[1], m33 = a[2], m12 = a[3], m13 = a[4], m23 = a[5];
    r.set(0, 0, m22 * m33 - m23 * m23);
    r.set(1, 1, m11 * m33 - m13 * m13);
    r.set(2, 2, m11 * m22 - m12 * m12);
    r.set(0, 1, m13 * m23 - m12 * m33);
    r.set(0, 2, m12 * m23 - m13 * m22);
    r.set(1, 2, m12 * m13 - m11 * m23);
    return r;
}

double SymMat::qform(const Vec& y) const {
    if (dim == 2) return a[0] * y[0] * y[0] + a[1] * y[1] * y[1] + 2.0 * a[2] * y[0] * y[1];
    return a[0] * y[0] * y[0] + a[1] * y[1] * y[1] + a[2] * y[2] * y[2] +
           2.0 * (a[3] * y[0] * y[1] + a[4] * y[0] * y[2] + a[5] * y[1] * y[2]);
}

double SymMat::frobenius_norm() const { return std::sqrt(frobenius_dot(*this, *this)); }

double SymMat::max_abs() const {
    double m = 0.0;
    for (int k = 0; k < packed_size(); ++k) m = std::max(m, std::abs(a[static_cast<std::size_t>(k)]));
    return m;
}

SymMat SymMat::operator+(const SymMat& o) const {
    SymMat r = *this;
    for (int k = 0; k < packed_size(); ++k) r.a[static_cast<std::size_t>(k)] += o.a[static_cast<std::size_t>(k)];
    return r;
}

SymMat SymMat::operator-(const SymMat& o) const {
    SymMat r = *this;
    for (int k = 0; k < packed_size(); ++k) r.a[static_cast<std::size_t>(k)] -= o.a[static_cast<std::size_t>(k)];
    return r;
}

SymMat SymMat::operator*(double s) const {
    SymMat r = *this;
    for (int k = 0; k < packed_size(); ++k) r.a[static_cast<std::size_t>(k)] *= s;
    return r;
}

double frobenius_dot(const SymMat& x, const SymMat& y) {
    double s = 0.0;
    for (int i = 0; i < x.dim; ++i)
        for (int j = 0; j < x.dim; ++j) s += x(i, j) * y(i, j);
    return s;
}

RotMat RotMat::identity(int dim) {
    check_dim(dim);
    RotMat r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i) r.set(i, i, 1.0);
    return r;
}

Vec RotMat::apply(const Vec& v) const {
    Vec r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Vec RotMat::apply_transpose(const Vec& v) const {
    Vec r;
    r.dim = dim;
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += (*this)(j, i) * v[j];
        r[i] = s;
    }
    return r;
}

double RotMat::det() const {
    if (dim == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
    const RotMat& r = *this;
    return r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) - r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
           r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
}

double RotMat::orthogonality_defect() const {
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) s += (*this)(k, i) * (*this)(k, j);
            worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

SymMat rotate_diag(const RotMat& r, const std::array<double, 3>& diag, int dim) {
    SymMat s = SymMat::zero(dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            double v = 0.0;
            for (int k = 0; k < dim; ++k) v += r(i, k) * diag[static_cast<std::size_t>(k)] * r(j, k);
            s.set(i, j, v);
        }
    }
    return s;
}

SymMat conjugate(const RotMat& r, const SymMat& s) {
    SymMat out = SymMat::zero(s.dim);
    for (int i = 0; i < s.dim; ++i) {
        for (int j = i; j < s.dim; ++j) {
            double v = 0.0;
            for (int k = 0; k < s.dim; ++k)
                for (int l = 0; l < s.dim; ++l) v += r(i, k) * s(k, l) * r(j, l);
            out.set(i, j, v);
        }
    }
    return out;
}

namespace {

// Sign convention: largest-magnitude component of each eigenvector positive
// (first index wins ties), then det +1 by flipping the last column.
void canonicalize(EigenSym& e) {
    const int d = e.dim;
    for (int col = 0; col < d; ++col) {
        int arg = 0;
        double best = 0.0;
        for (int i = 0; i < d; ++i) {
            const double m = std::abs(e.vectors(i, col));
            if (m > best) {
                best = m;
                arg = i;
            }
        }
        if (e.vectors(arg, col) < 0.0)
            for (int i = 0; i < d; ++i) e.vectors.set(i, col, -e.vectors(i, col));
    }
    if (e.vectors.det() < 0.0)
        for (int i = 0; i < d; ++i) e.vectors.set(i, d - 1, -e.vectors(i, d - 1));
}

EigenSym eigen_sym_2(const SymMat& s) {
    EigenSym e;
    e.dim = 2;
    e.vectors = RotMat::identity(2);
    const double a = s(0, 0), b = s(1, 1), c = s(0, 1);
    const double mean = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), c);
    e.values[0] = mean + rad;
    e.values[1] = mean - rad;
    // Half-angle formula; atan2(0, a-b) keeps diagonal input exactly axis-aligned.
    const double theta = 0.5 * std::atan2(2.0 * c, a - b);
    const double ct = std::cos(theta), st = std::sin(theta);
    e.vectors.set(0, 0, ct);
    e.vectors.set(1, 0, st);
    e.vectors.set(0, 1, -st);
    e.vectors.set(1, 1, ct);
    canonicalize(e);
    return e;
}

Vec col_of(const RotMat& r, int j) {
    Vec v;
    v.dim = 3;
    for (int i = 0; i < 3; ++i) v[i] = r(i, j);
    return v;
}

Vec row_of_sym_shifted(const SymMat& s, double shift, int i) {
    Vec v;
    v.dim = 3;
    for (int j = 0; j < 3; ++j) v[j] = s(i, j) - (i == j ? shift : 0.0);
    return v;
}

Vec normalized_or(const Vec& v, const Vec& fallback) {
    const double n = norm(v);
    if (n <= 0.0) return fallback;
    return scaled(v, 1.0 / n);
}

// Eigenvector for the most isolated eigenvalue: largest cross product of
// rows of (S - lambda I).
Vec eigenvector_isolated(const SymMat& s, double lambda) {
    const Vec r0 = row_of_sym_shifted(s, lambda, 0);
    const Vec r1 = row_of_sym_shifted(s, lambda, 1);
    const Vec r2 = row_of_sym_shifted(s, lambda, 2);
    const Vec c01 = cross(r0, r1), c02 = cross(r0, r2), c12 = cross(r1, r2);
    const double n01 = dot(c01, c01), n02 = dot(c02, c02), n12 = dot(c12, c12);
    Vec best = c01;
    double bn = n01;
    if (n02 > bn) {
        best = c02;
        bn = n02;
    }
    if (n12 > bn) best = c12;
    return normalized_or(best, Vec(1.0, 0.0, 0.0));
}

// Second eigenvector constrained to the orthogonal complement of v0:
// null vector of the projected 2x2 system.
Vec eigenvector_in_complement(const SymMat& s, double lambda, const Vec& v0) {
    Vec u;
    if (std::abs(v0[0]) > std::abs(v0[1])) {
        const double inv = 1.0 / std::hypot(v0[0], v0[2]);
        u = Vec(-v0[2] * inv, 0.0, v0[0] * inv);
    } else {
        const double inv = 1.0 / std::hypot(v0[1], v0[2]);
        u = Vec(0.0, v0[2] * inv, -v0[1] * inv);
    }
    const Vec w = cross(v0, u);
    auto apply_shifted = [&](const Vec& x) {
        Vec r;
        r.dim = 3;
        for (int i = 0; i < 3; ++i) {
            double acc = 0.0;
            for (int j = 0; j < 3; ++j) acc += s(i, j) * x[j];
            r[i] = acc - lambda * x[i];
        }
        return r;
    };
    const Vec au = apply_shifted(u), aw = apply_shifted(w);
    const double k00 = dot(u, au), k01 = dot(u, aw), k11 = dot(w, aw);
    double alpha, beta;
    if (std::abs(k00) >= std::abs(k11)) {
        if (std::max(std::abs(k00), std::abs(k01)) > 0.0) {
            const double n = std::hypot(k00, k01);
            alpha = k01 / n;
            beta = -k00 / n;
        } else {
            alpha = 1.0;
            beta = 0.0;
        }
    } else {
        const double n = std::hypot(k11, k01);
        alpha = k11 / n;
        beta = -k01 / n;
    }
    Vec v;
    v.dim = 3;
    for (int i = 0; i < 3; ++i) v[i] = alpha * u[i] + beta * w[i];
    return v;
}

EigenSym eigen_sym_3(const SymMat& s) {
    EigenSym e;
    e.dim = 3;
    e.vectors = RotMat::identity(3);

    const double off2 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
    const double scale = std::max({std::abs(s(0, 0)), std::abs(s(1, 1)), std::abs(s(2, 2)), 1e-300});
    if (off2 <= (1e-14 * scale) * (1e-14 * scale)) {
        // effectively diagonal: sort axes by value, stable in index
        std::array<int, 3> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return s(i, i) > s(j, j); });
        for (int k = 0; k < 3; ++k) {
            e.values[static_cast<std::size_t>(k)] = s(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
            e.vectors.set(order[static_cast<std::size_t>(k)], k, 1.0);
            for (int i = 0; i < 3; ++i)
                if (i != order[static_cast<std::size_t>(k)]) e.vectors.set(i, k, 0.0);
        }
        canonicalize(e);
        return e;
    }

    // Trigonometric solution of the characteristic cubic.
    const double q = s.trace() / 3.0;
    double p2 = 2.0 * off2;
    for (int i = 0; i < 3; ++i) p2 += (s(i, i) - q) * (s(i, i) - q);
    const double p = std::sqrt(p2 / 6.0);
    SymMat b = s;
    for (int i = 0; i < 3; ++i) b.set(i, i, s(i, i) - q);
    b = b * (1.0 / p);
    const double r = std::clamp(b.det() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    e.values[0] = q + 2.0 * p * std::cos(phi);
    e.values[2] = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    e.values[1] = 3.0 * q - e.values[0] - e.values[2];

    // Most isolated eigenvalue first for a well-conditioned cross product.
    const bool top_isolated = (e.values[0] - e.values[1]) >= (e.values[1] - e.values[2]);
    const int first = top_isolated ? 0 : 2;
    const int last = top_isolated ? 2 : 0;
    const Vec v_first = eigenvector_isolated(s, e.values[static_cast<std::size_t>(first)]);
    const Vec v_mid = eigenvector_in_complement(s, e.values[1], v_first);
    Vec v_last = cross(v_first, v_mid);
    if (first == 2) v_last = cross(v_mid, v_first);
    auto set_col = [&](int j, const Vec& v) {
        for (int i = 0; i < 3; ++i) e.vectors.set(i, j, v[i]);
    };
    set_col(first, v_first);
    set_col(1, v_mid);
    set_col(last, v_last);
    canonicalize(e);
    return e;
}

}  // namespace

EigenSym eigen_sym(const SymMat& s) {
    check_dim(s.dim);
    return s.dim == 2 ? eigen_sym_2(s) : eigen_sym_3(s);
}

SpdMatrix::SpdMatrix(const SymMat& s) : sym_(s), eig_(eigen_sym(s)) {
    const double lo = eig_.values[static_cast<std::size_t>(s.dim - 1)];
    const double hi = eig_.values[0];
    if (!(lo > 1e-14 * std::max(hi, 0.0)) || !(hi > 0.0))
        throw std::invalid_argument("SpdMatrix: matrix is not positive definite");
}

double SpdMatrix::inverse_qform(const Vec& x) const {
    double s = 0.0;
    for (int k = 0; k < dim(); ++k) {
        double proj = 0.0;
        for (int i = 0; i < dim(); ++i) proj += eig_.vectors(i, k) * x[i];
        s += proj * proj / eig_.values[static_cast<std::size_t>(k)];
    }
    return s;
}

double SpdMatrix::condition_number() const {
    return eig_.values[0] / eig_.values[static_cast<std::size_t>(dim() - 1)];
}

SpdMatrix SpdMatrix::sqrt() const {
    std::array<double, 3> d{};
    for (int k = 0; k < dim(); ++k) d[static_cast<std::size_t>(k)] = std::sqrt(eig_.values[static_cast<std::size_t>(k)]);
    return SpdMatrix(rotate_diag(eig_.vectors, d, dim()));
}

SpdMatrix SpdMatrix::scaled_identity(int dim, double s) {
    return SpdMatrix(SymMat::identity(dim) * s);
}

SpdMatrix sym_exp(const SymMat& s) {
    const EigenSym e = eigen_sym(s);
    std::array<double, 3> d{};
    for (int k = 0; k < s.dim; ++k) d[static_cast<std::size_t>(k)] = std::exp(e.values[static_cast<std::size_t>(k)]);
    return SpdMatrix(rotate_diag(e.vectors, d, s.dim));
}

bool Ellipsoid::contains(const Vec& x, double tol) const { return matrix.inverse_qform(x) <= 1.0 + tol; }

Vec Ellipsoid::boundary_point(const Vec& unit_dir) const {
    const SpdMatrix half = matrix.sqrt();
    Vec r;
    r.dim = dim();
    for (int i = 0; i < dim(); ++i) {
        double s = 0.0;
        for (int j = 0; j < dim(); ++j) s += half(i, j) * unit_dir[j];
        r[i] = s;
    }
    return r;
}

Ellipsoid from_axes(const RotMat& r, const std::array<double, 3>& axes, int dim) {
    check_dim(dim);
    if (r.dim != dim) throw std::invalid_argument("from_axes: rotation dimension mismatch");
    if (r.orthogonality_defect() > 1e-12 || std::abs(r.det() - 1.0) > 1e-12)
        throw std::invalid_argument("from_axes: rotation is not special orthogonal");
    std::array<double, 3> a2{};
    double prod = 1.0;
    for (int i = 0; i < dim; ++i) {
        const double ai = axes[static_cast<std::size_t>(i)];
        if (!(ai > 0.0)) throw std::invalid_argument("from_axes: semi-axes must be positive");
        a2[static_cast<std::size_t>(i)] = ai * ai;
        prod *= ai;
    }
    SpdMatrix m(rotate_diag(r, a2, dim));
    const AxesDecomposition canon = to_axes(m);
    return Ellipsoid{std::move(m), canon.rotation, canon.semi_axes, unit_ball_volume(dim) * prod};
}

AxesDecomposition to_axes(const SpdMatrix& m) {
    const EigenSym& e = m.eigen();
    AxesDecomposition d;
    d.rotation = e.vectors;
    for (int k = 0; k < m.dim(); ++k) d.semi_axes[static_cast<std::size_t>(k)] = std::sqrt(e.values[static_cast<std::size_t>(k)]);
    return d;
}

Ellipsoid ellipsoid_from_matrix(const SpdMatrix& m) {
    const AxesDecomposition d = to_axes(m);
    return Ellipsoid{m, d.rotation, d.semi_axes, mass_of(m)};
}

double mass_of(const SpdMatrix& m) { return unit_ball_volume(m.dim()) * std::sqrt(m.det()); }

SpdMatrix matrix_sqrt(const SpdMatrix& m) { return m.sqrt(); }

SymMat adjugate(const SpdMatrix& m) { return m.sym().adjugate(); }

}  // namespace ellopt
