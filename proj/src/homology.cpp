#include "oge/homology.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oge {

using boost::multiprecision::cpp_rational;

IntMatrix::IntMatrix(int n, std::vector<BigInt> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1 || n > 12) throw std::invalid_argument("IntMatrix: dimension must be 1..12");
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("IntMatrix: wrong entry count");
}

IntMatrix IntMatrix::identity(int n) {
    std::vector<BigInt> e(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) e[i * n + i] = 1;
    return IntMatrix(n, std::move(e));
}

IntMatrix IntMatrix::parse(const std::string& text) {
    std::vector<std::vector<BigInt>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<BigInt> r;
        std::stringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ',')) {
            cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
            if (!cell.empty()) r.push_back(BigInt(cell));
        }
        if (!r.empty()) rows.push_back(std::move(r));
    }
    if (rows.empty()) throw std::invalid_argument("IntMatrix::parse: empty matrix");
    const int n = static_cast<int>(rows.size());
    std::vector<BigInt> e;
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw std::invalid_argument("IntMatrix::parse: matrix must be square");
        for (auto& x : r) e.push_back(std::move(x));
    }
    return IntMatrix(n, std::move(e));
}

IntMatrix IntMatrix::from_json(const nlohmann::json& j) {
    const int n = static_cast<int>(j.size());
    std::vector<BigInt> e;
    for (const auto& row : j) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("IntMatrix::from_json: matrix must be square");
        for (const auto& x : row) {
            if (x.is_string())
                e.push_back(BigInt(x.get<std::string>()));
            else if (x.is_number_integer())
                e.push_back(BigInt(x.get<long long>()));
            else
                throw std::invalid_argument("IntMatrix::from_json: entries must be exact integers");
        }
    }
    return IntMatrix(n, std::move(e));
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("IntMatrix::mul: size mismatch");
    std::vector<BigInt> e(static_cast<std::size_t>(n_) * n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < n_; ++j) e[i * n_ + j] += at(i, k) * o.at(k, j);
        }
    return IntMatrix(n_, std::move(e));
}

BigInt IntMatrix::max_norm() const {
    BigInt m = 0;
    for (const auto& x : a_) m = std::max(m, BigInt(abs(x)));
    return m;
}

namespace {

// Fraction-free (Bareiss) elimination; rank, plus the determinant from the
// last pivot when requested.
int bareiss(std::vector<BigInt> m, int n, BigInt* det_out) {
    BigInt prev = 1;
    int rank = 0;
    int sign = 1;
    bool full = true;
    for (int col = 0; col < n; ++col) {
        if (rank == n) break;
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (m[r * n + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) {
            full = false;
            continue;
        }
        if (pivot != rank) {
            for (int j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[rank * n + j]);
            sign = -sign;
        }
        const BigInt p = m[rank * n + col];
        for (int r = rank + 1; r < n; ++r) {
            for (int j = col + 1; j < n; ++j) {
                BigInt v = p * m[r * n + j] - m[r * n + col] * m[rank * n + j];
                v /= prev;  // exact by the Bareiss identity
                m[r * n + j] = v;
            }
            m[r * n + col] = 0;
        }
        prev = p;
        ++rank;
    }
    if (det_out) *det_out = (full && rank == n) ? BigInt(sign) * prev : BigInt(0);
    return rank;
}

}  // namespace

int IntMatrix::rank() const { return bareiss(a_, n_, nullptr); }

BigInt IntMatrix::det() const {
    BigInt d;
    bareiss(a_, n_, &d);
    return d;
}

IntPoly char_poly(const IntMatrix& A) {
    // Faddeev-LeVerrier; every division is exact over the integers.
    const int n = A.size();
    IntPoly c(n + 1, 0);
    c[n] = 1;
    IntMatrix M = IntMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        M = A.mul(M);
        BigInt tr = 0;
        for (int i = 0; i < n; ++i) tr += M.at(i, i);
        BigInt ck = -tr / k;
        if (ck * k != -tr) throw std::logic_error("char_poly: inexact trace division");
        c[n - k] = ck;
        for (int i = 0; i < n; ++i) M.at(i, i) += ck;
        M = (k < n) ? M : M;  // M already updated in place
    }
    return c;
}

namespace {

int degree(const IntPoly& p) {
    for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
        if (p[d] != 0) return d;
    return -1;
}

// Exact division p / q over the integers; false when not divisible.
bool divide_exact(const IntPoly& p, const IntPoly& q, IntPoly& quot) {
    const int dp = degree(p), dq = degree(q);
    if (dq < 0 || dp < dq) return false;
    IntPoly r = p;
    quot.assign(dp - dq + 1, 0);
    for (int d = dp; d >= dq; --d) {
        if (r[d] == 0) continue;
        if (r[d] % q[dq] != 0) return false;
        const BigInt f = r[d] / q[dq];
        quot[d - dq] = f;
        for (int j = 0; j <= dq; ++j) r[d - dq + j] -= f * q[j];
    }
    return degree(r) < 0;
}

std::vector<IntPoly>& cyclotomic_table() {
    static std::vector<IntPoly> table = [] {
        std::vector<IntPoly> t(151);
        t[1] = {BigInt(-1), BigInt(1)};  // x - 1
        for (int d = 2; d <= 150; ++d) {
            IntPoly xd(d + 1, 0);
            xd[0] = -1;
            xd[d] = 1;  // x^d - 1
            for (int e = 1; e < d; ++e)
                if (d % e == 0) {
                    IntPoly q;
                    if (!divide_exact(xd, t[e], q)) throw std::logic_error("cyclotomic recursion failed");
                    xd = q;
                }
            t[d] = xd;
        }
        return t;
    }();
    return table;
}

int euler_phi(int d) { return degree(cyclotomic_table()[d]); }

// Peels x^s and all cyclotomic factors; the residual keeps the eigenvalues
// off the unit circle (Kronecker: unit-spectrum integer matrices have only
// roots of unity).
std::pair<std::map<int, int>, IntPoly> peel_unit_factors(const IntPoly& p, int* zero_mult) {
    IntPoly rest = p;
    *zero_mult = 0;
    while (degree(rest) > 0 && rest[0] == 0) {
        rest.erase(rest.begin());
        ++*zero_mult;
    }
    std::map<int, int> mult;
    const int n = std::max(degree(rest), 0);
    for (int d = 1; d <= 150; ++d) {
        if (euler_phi(d) > n) continue;
        int m = 0;
        IntPoly q;
        while (divide_exact(rest, cyclotomic_table()[d], q)) {
            rest = q;
            ++m;
        }
        if (m > 0) mult[d] = m;
    }
    return {mult, rest};
}

IntPoly derivative(const IntPoly& p) {
    IntPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * BigInt(i));
    return d;
}

// gcd over Q via Euclid, returned as a primitive integer polynomial.
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    using RatPoly = std::vector<cpp_rational>;
    auto to_rat = [](const IntPoly& p) {
        RatPoly r;
        for (const auto& c : p) r.push_back(cpp_rational(c));
        return r;
    };
    auto deg = [](const RatPoly& p) {
        for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
            if (p[d] != 0) return d;
        return -1;
    };
    RatPoly x = to_rat(a), y = to_rat(b);
    while (deg(y) >= 0) {
        RatPoly r = x;
        const int dy = deg(y);
        while (deg(r) >= dy) {
            const int dr = deg(r);
            const cpp_rational f = r[dr] / y[dy];
            for (int j = 0; j <= dy; ++j) r[dr - dy + j] -= f * y[j];
            r[dr] = 0;
        }
        x = y;
        y = r;
    }
    BigInt lcm_den = 1;
    for (const auto& c : x)
        if (c != 0) lcm_den = boost::multiprecision::lcm(lcm_den, BigInt(denominator(c)));
    IntPoly g;
    for (const auto& c : x) g.push_back(BigInt(numerator(c)) * (lcm_den / BigInt(denominator(c))));
    BigInt content = 0;
    for (const auto& c : g) content = boost::multiprecision::gcd(content, c);
    if (content > 1)
        for (auto& c : g) c /= content;
    if (degree(g) >= 0 && g[degree(g)] < 0)
        for (auto& c : g) c = -c;
    return g;
}

std::complex<double> poly_eval(const IntPoly& p, std::complex<double> z) {
    std::complex<double> acc = 0;
    for (int d = degree(p); d >= 0; --d) acc = acc * z + static_cast<double>(p[d]);
    return acc;
}

// Deterministic Durand-Kerner on a square-free polynomial.
std::vector<std::complex<double>> all_roots(const IntPoly& g) {
    const int n = degree(g);
    std::vector<std::complex<double>> z(n);
    double cauchy = 0;
    for (int i = 0; i < n; ++i)
        cauchy = std::max(cauchy, std::abs(static_cast<double>(g[i]) / static_cast<double>(g[n])));
    const double radius = 1.0 + cauchy;
    const std::complex<double> seed(0.4, 0.9);
    std::complex<double> w = seed;
    for (int i = 0; i < n; ++i) {
        z[i] = radius * w / std::abs(w) * (0.8 + 0.2 * (i + 1.0) / n);
        w *= seed;
    }
    for (int iter = 0; iter < 600; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = static_cast<double>(g[n]);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            const auto step = poly_eval(g, z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15 * radius) break;
    }
    return z;
}

}  // namespace

double spectral_radius(const IntMatrix& A) {
    IntPoly p = char_poly(A);
    int zero_mult = 0;
    auto [cyclo, rest] = peel_unit_factors(p, &zero_mult);
    double sp = cyclo.empty() ? 0.0 : 1.0;

    const int dr = degree(rest);
    if (dr <= 0) return sp;  // only zeros and roots of unity remain

    IntPoly g = rest;
    const IntPoly common = poly_gcd(g, derivative(g));
    if (degree(common) > 0) {
        IntPoly q;
        if (!divide_exact(g, common, q)) throw std::logic_error("square-free division failed");
        g = q;
    }
    const IntPoly gd = derivative(g);
    for (const auto& z : all_roots(g)) {
        const double resid = std::abs(poly_eval(g, z));
        const double deriv = std::abs(poly_eval(gd, z));
        const double bound = deriv > 0 ? degree(g) * resid / deriv : 1.0;
        if (bound > 1e-9)
            throw std::runtime_error("spectral_radius: root certification failed (bound " +
                                     std::to_string(bound) + ")");
        sp = std::max(sp, std::abs(z));
    }
    return sp;
}

BlockProfile block_profile(const IntMatrix& A) {
    IntPoly p = char_poly(A);
    int zero_mult = 0;
    auto [cyclo, rest] = peel_unit_factors(p, &zero_mult);

    BlockProfile out;
    for (const auto& [d, mult] : cyclo) {
        // Phi_d(A), exactly, by Horner; then integer rank drops of its powers.
        const IntPoly& phi = cyclotomic_table()[d];
        const int n = A.size();
        const int dphi = degree(phi);
        IntMatrix B(n, std::vector<BigInt>(static_cast<std::size_t>(n) * n, 0));
        for (int i = 0; i < n; ++i) B.at(i, i) = phi[dphi];
        for (int deg_i = dphi - 1; deg_i >= 0; --deg_i) {
            B = A.mul(B);
            for (int i = 0; i < n; ++i) B.at(i, i) += phi[deg_i];
        }
        std::vector<int> ranks{n};
        IntMatrix P = IntMatrix::identity(n);
        std::vector<int> count_ge;  // blocks per root of size >= j
        for (int j = 1; j <= mult; ++j) {
            P = P.mul(B);
            ranks.push_back(P.rank());
            const int drop = ranks[j - 1] - ranks[j];
            if (drop % dphi != 0)
                throw std::logic_error("block_profile: rank drop not divisible by factor degree");
            count_ge.push_back(drop / dphi);
        }
        std::vector<int> dims;
        for (int j = static_cast<int>(count_ge.size()); j >= 1; --j) {
            const int exactly =
                count_ge[j - 1] - (j < static_cast<int>(count_ge.size()) ? count_ge[j] : 0);
            for (int b = 0; b < exactly; ++b) dims.push_back(j);
        }
        std::sort(dims.rbegin(), dims.rend());
        if (d <= 2) {
            out.blocks[d == 1 ? "1" : "-1"] = dims;
            if (!dims.empty()) out.k_real = std::max(out.k_real, dims.front());
        } else {
            std::vector<int> real_dims;
            for (int m : dims) real_dims.push_back(2 * m);  // real-Jordan dimension
            out.blocks["cyclo" + std::to_string(d)] = real_dims;
            if (!real_dims.empty()) out.k_complex = std::max(out.k_complex, real_dims.front());
        }
    }
    return out;
}

long long homology_growth_exponent(const IntMatrix& A) {
    IntPoly p = char_poly(A);
    int zero_mult = 0;
    auto [cyclo, rest] = peel_unit_factors(p, &zero_mult);
    if (zero_mult > 0 || degree(rest) > 0)
        throw std::invalid_argument(
            "homology_growth_exponent: spectral radius is not 1; the bound log(sp) <= h(f) "
            "applies instead (see spectral_radius)");
    const auto prof = block_profile(A);
    return std::max<long long>(prof.k_real, prof.k_complex / 2) - 1;
}

std::pair<GrowthSequence, double> power_norm_growth(const IntMatrix& A, std::size_t n_max) {
    if (n_max < 32) throw std::invalid_argument("power_norm_growth: n_max must be >= 32");
    std::vector<double> vals;
    IntMatrix P = IntMatrix::identity(A.size());
    const BigInt cap = BigInt(1) << 1000;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const BigInt norm = P.max_norm();
        if (norm > cap) break;  // integer budget: truncate, report actual horizon
        vals.push_back(static_cast<double>(norm));
        P = A.mul(P);
    }
    auto curve = GrowthSequence::running_max(vals);
    const double deg = project_onto_family(curve, FamilyBase::Polynomial);
    return {curve, deg};
}

nlohmann::json NormBoundReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    j["window"] = window;
    j["min_slack"] = min_slack;
    if (!pass) j["first_violation"] = first_violation;
    return j;
}

NormBoundReport norm_vs_spanning_check(const IntMatrix& A, const GrowthSequence& curve) {
    NormBoundReport rep;
    auto [norms, deg] = power_norm_growth(A, std::max<std::size_t>(32, curve.window()));
    (void)deg;
    rep.window = std::min(norms.window(), curve.window());
    rep.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= rep.window; ++n) {
        const double lhs = norms.value(n);
        const double rhs = 12.0 * (1.0 + curve.value(n));
        rep.min_slack = std::min(rep.min_slack, rhs / std::max(lhs, 1e-300));
        if (lhs > rhs && rep.pass) {
            rep.pass = false;
            rep.first_violation = n;
        }
    }
    return rep;
}

}  // namespace oge
