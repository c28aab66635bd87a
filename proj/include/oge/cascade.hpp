#pragma once

// Slow-entropy cylindrical cascades: continued-fraction convergents with
// approximation brackets, Weyl sums, the inductive choice of amplitudes,
// cutpoints and denominators against a target growth sequence, the
// piecewise-linear envelope, and a machine-checked inequality certificate
// with a dynamical separation witness.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "json.hpp"
#include "oge/growth.hpp"
#include "oge/systems.hpp"

namespace oge {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Target growth sequence a(n), evaluable at big-integer n with directed
/// rational bounds, plus the inverse threshold used for cutpoint sizing.
class TargetSpec {
public:
    enum class Kind { Log2, QuarterPower, Constant };

    static TargetSpec log2_shifted() { return TargetSpec(Kind::Log2); }
    static TargetSpec quarter_power() { return TargetSpec(Kind::QuarterPower); }
    static TargetSpec constant_seq(double c) {
        TargetSpec t(Kind::Constant);
        t.constant_ = c;
        return t;
    }
    static TargetSpec by_name(const std::string& name);

    Kind kind() const { return kind_; }
    bool unbounded() const { return kind_ != Kind::Constant; }
    std::string name() const;

    double eval(const BigInt& n) const;
    /// Rational lower/upper bounds on a(n), within ~1e-12 relative.
    BigRat lower(const BigInt& n) const;
    BigRat upper(const BigInt& n) const;
    /// Some integer m with a(m) >= y (may overshoot by a bounded factor).
    BigInt threshold(const BigRat& y) const;

private:
    explicit TargetSpec(Kind k) : kind_(k) {}
    Kind kind_;
    double constant_ = 1.0;
};

struct ConvergentInfo {
    BigInt p, q;
    BigRat dist;        // ||q_k alpha|| for the finite alpha = p_last/q_last
    BigRat bracket_lo;  // 1 / ((r_{k+1} + 2) q_k)
    BigRat bracket_hi;  // 1 / (r_{k+1} q_k)
    bool bracket_ok = true;
};

/// Exact convergents p_k/q_k of the continued fraction with the given
/// positive partial quotients, with the approximation brackets checked for
/// every k that has a successor quotient.
std::vector<ConvergentInfo> convergents(const std::vector<BigInt>& partial_quotients);

/// Direct Birkhoff sum of b cos(2 pi q x) (or its derivative) along the
/// rotation by alpha, with compensated accumulation.
double weyl_sum(double b, double q, double alpha, std::size_t n, double x, bool derivative);

struct CertItem {
    std::string id;
    int stage = 0;
    double lhs = 0, rhs = 0;
    double slack = 0;  // rhs/lhs (or as documented per id)
    bool pass = true;
    double eps = 0;  // separation scale, where applicable

    nlohmann::json to_json() const;
};

struct CascadeCertificate {
    std::vector<CertItem> items;
    bool all_pass = true;

    void add(CertItem item);
    nlohmann::json to_json() const;
};

/// The full construction data: partial quotients r_1..r_{K+1}, exact
/// convergents, dyadic amplitudes b_k, integer cutpoints m_k, linear ranges
/// n_k (kept as exact squares), envelope slopes/offsets, and the builder's
/// own post-hoc certificate.
struct CascadeParams {
    std::string target_name;
    int stages = 0;   // K
    double eps = 0.05;

    std::vector<BigInt> partial_quotients;  // r_1..r_{K+1}
    std::vector<BigInt> p, q;               // indices 0..K+1 (q_0 = 1)
    std::vector<BigRat> amplitudes;         // b_1..b_K (dyadic)
    std::vector<BigInt> cutpoints;          // m_1..m_K
    std::vector<BigRat> nk_sq;              // n_k^2 = q_{k+1}/(b_k q_k)
    std::vector<BigRat> slopes;             // C_1..C_K
    std::vector<BigRat> offsets;            // D_1..D_{K+1}
    CascadeCertificate certificate;

    TargetSpec target() const { return TargetSpec::by_name(target_name); }
    double alpha() const;  // p_{K+1}/q_{K+1}
    std::vector<CascadeStage> system_stages() const;
    DynamicalSystemSpec to_system() const;

    nlohmann::json to_json() const;  // exact integers/rationals as strings
    static CascadeParams from_json(const nlohmann::json& j);
};

/// Executes the inductive construction for the given unbounded target and
/// stage count; every inequality is re-checked post hoc via verify_bounds
/// and recorded in params.certificate. Throws when the target is bounded or
/// the headroom search exceeds the exact-integer budget, naming the failing
/// inequality and stage.
CascadeParams build_cascade(const TargetSpec& target, int stages, double eps = 0.05);

/// Piecewise-linear envelope value: C_k n + D_k on [m_{k-1}, m_k), with the
/// boundary convention e(m_k) = D_{k+1}. n must not exceed m_K.
double envelope_eval(const CascadeParams& params, const BigInt& n);

/// Independent re-verification from the raw integers/rationals: recomputes
/// the convergents and every inequality, numerically confirms the two Weyl
/// bounds on an x-grid, and certifies the per-stage separation witness
/// (>= q_k points, stages k <= 3) from exact orbit phases.
CascadeCertificate verify_bounds(const CascadeParams& params, std::size_t grid, double eps);

}  // namespace oge
