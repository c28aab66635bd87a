#pragma once

// Homology-action lower bounds: exact integer linear algebra on the induced
// first-homology matrix, real-Jordan block profiles at unit-modulus
// eigenvalues, the polynomial growth exponent they force, and the
// norm-vs-spanning-count consistency check.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "oge/growth.hpp"

namespace oge {

using BigInt = boost::multiprecision::cpp_int;

/// Dense square integer matrix with exact arithmetic, d <= 12.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int n, std::vector<BigInt> entries);
    static IntMatrix identity(int n);
    /// Parses "1,1;0,1" (rows separated by ';').
    static IntMatrix parse(const std::string& text);
    static IntMatrix from_json(const nlohmann::json& j);

    int size() const { return n_; }
    const BigInt& at(int i, int j) const { return a_[i * n_ + j]; }
    BigInt& at(int i, int j) { return a_[i * n_ + j]; }

    IntMatrix mul(const IntMatrix& other) const;
    BigInt det() const;
    /// Exact rank over the rationals (fraction-free elimination).
    int rank() const;
    /// Max absolute entry.
    BigInt max_norm() const;

private:
    int n_ = 0;
    std::vector<BigInt> a_;
};

/// Integer polynomial, coefficients by ascending degree.
using IntPoly = std::vector<BigInt>;

/// Characteristic polynomial det(xI - A), exact (Faddeev-LeVerrier).
IntPoly char_poly(const IntMatrix& A);

/// Spectral radius with a certified residual bound below 1e-9.
double spectral_radius(const IntMatrix& A);

struct BlockProfile {
    // Real-Jordan block dimensions per eigenvalue class. Keys "1" and "-1"
    // hold blocks at the real unit eigenvalues; keys "cyclo<d>" hold
    // real-Jordan dimensions (twice the complex block size) at the primitive
    // d-th root classes.
    std::map<std::string, std::vector<int>> blocks;
    int k_real = 0;     // max block dimension at +1/-1
    int k_complex = 0;  // max real-Jordan dimension at complex unit classes
};

/// Exact block dimensions at unit-modulus eigenvalues via integer rank
/// sequences of Phi(A)^j per cyclotomic factor Phi. Requires sp(A) = 1 for
/// the full profile (then every eigenvalue is a root of unity).
BlockProfile block_profile(const IntMatrix& A);

/// The guaranteed polynomial lower-bound exponent max{k_R, k_C/2} - 1
/// derived from the Jordan structure; requires sp(A) = 1.
long long homology_growth_exponent(const IntMatrix& A);

/// n -> ||A^{n-1}|| (max-entry norm, exact powers), plus the fitted
/// polynomial degree of the monotone envelope. n_max >= 32.
std::pair<GrowthSequence, double> power_norm_growth(const IntMatrix& A, std::size_t n_max);

struct NormBoundReport {
    bool pass = true;
    std::size_t first_violation = 0;  // n of the first failure, when !pass
    double min_slack = 0.0;           // min over n of rhs/lhs
    std::size_t window = 0;

    nlohmann::json to_json() const;
};

/// Checks ||A^{n-1}|| <= 12 (1 + g(n)) pointwise on the common window,
/// where g is a spanning-count curve from a realizing torus system.
NormBoundReport norm_vs_spanning_check(const IntMatrix& A, const GrowthSequence& spanning_curve);

}  // namespace oge
