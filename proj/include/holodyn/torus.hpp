#pragma once

// Monomial maps of the 2-torus: an integer matrix A acting on angle pairs
// by theta -> A theta (mod 2 pi).  Lattice computations (coset enumeration,
// periodic points) are done in exact integer arithmetic.

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace holodyn {

struct IntMatrix2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]

    std::int64_t det() const;
    std::int64_t trace() const { return a + d; }
    IntMatrix2 operator*(const IntMatrix2& o) const;
    // Adjugate, so that A * adj(A) = det(A) I.
    IntMatrix2 adjugate() const { return {d, -b, -c, a}; }
    IntMatrix2 minus_identity() const { return {a - 1, b, c, d - 1}; }

    friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;
};

// A^n with overflow detection (throws PrecisionExhausted).
IntMatrix2 matrix_power(const IntMatrix2& m, int n);

// Column Hermite form: A U = H with U unimodular and
// H = [[h11, 0], [h21, h22]], h11 > 0, h22 > 0, 0 <= h21 < h22.
struct HermiteForm {
    IntMatrix2 H;
    IntMatrix2 U;
};
HermiteForm column_hermite_form(const IntMatrix2& m);

// Representatives of Z^2 / A Z^2, |det A| of them.
std::vector<std::array<std::int64_t, 2>> coset_representatives(const IntMatrix2& m);

// Angle reduced into [0, 2 pi).
double reduce_angle(double theta);

struct TorusPoint {
    double theta1 = 0.0;
    double theta2 = 0.0;

    TorusPoint() = default;
    TorusPoint(double t1, double t2);

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

// Flat distance on R^2 / (2 pi Z)^2.
double torus_distance(const TorusPoint& x, const TorusPoint& y);
bool canonical_less(const TorusPoint& a, const TorusPoint& b);

class TorusMap {
public:
    explicit TorusMap(const IntMatrix2& m);  // throws InvalidMap when det = 0
    const IntMatrix2& matrix() const { return m_; }

private:
    IntMatrix2 m_;
};

TorusPoint eval_torus(const TorusMap& f, const TorusPoint& x);

// Eigenvalues of a 2x2 integer matrix, ordered |first| >= |second|.
std::array<std::complex<double>, 2> eigenvalues(const IntMatrix2& m);
double spectral_radius(const IntMatrix2& m);

std::string to_string(const IntMatrix2& m);

}  // namespace holodyn
