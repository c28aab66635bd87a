#pragma once

// Orders-of-growth algebra: empirical growth sequences, symbolic growth
// classes with abstract sentinels, the partial order between them, and
// projections onto the exponential / polynomial one-parameter families.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace oge {

/// A finite non-decreasing nonnegative sequence, indexed n = 1..window().
/// Empirical stand-in for one representative of a growth class.
class GrowthSequence {
public:
    GrowthSequence() = default;
    /// Validating constructor; throws std::invalid_argument on a negative
    /// entry or a decrease.
    explicit GrowthSequence(std::vector<double> values);

    /// Builds the running-max envelope of an arbitrary nonnegative sequence.
    static GrowthSequence running_max(const std::vector<double>& values);

    std::size_t window() const { return vals_.size(); }
    double value(std::size_t n) const { return vals_.at(n - 1); }  // 1-based
    const std::vector<double>& values() const { return vals_; }

    std::string to_tsv() const;
    static GrowthSequence from_tsv(const std::string& text);

private:
    std::vector<double> vals_;
};

enum class Sentinel : std::uint8_t { SupE, InfE, SupP, InfP, Zero };

/// Exact symbolic growth class exp(t*n) * n^a * log(n)^b, or an abstract
/// sentinel element of the completed order space (never fit from data).
struct SymbolicOrder {
    double exp_rate = 0.0;  // t >= 0
    double poly_deg = 0.0;  // a >= 0
    double log_deg = 0.0;   // b >= 0
    std::optional<Sentinel> sentinel;

    static SymbolicOrder zero() { return SymbolicOrder{}; }
    static SymbolicOrder exponential(double t) { return {t, 0.0, 0.0, {}}; }
    static SymbolicOrder polynomial(double a) { return {0.0, a, 0.0, {}}; }
    static SymbolicOrder poly_log(double a, double b) { return {0.0, a, b, {}}; }
    static SymbolicOrder abstract(Sentinel s) { return {0.0, 0.0, 0.0, s}; }

    bool is_sentinel() const { return sentinel.has_value(); }
    /// Generator value at n (sentinels have none; throws).
    double eval(std::size_t n) const;

    std::string to_string() const;
    static SymbolicOrder from_string(const std::string& s);
};

enum class OrderRelation : std::uint8_t {
    Equivalent,
    Less,
    Greater,
    Incomparable,
    Inconclusive,
};

std::string to_string(OrderRelation r);

/// Decides the empirical order relation between [a] and [b] from the tail
/// of the common window. Equivalence band, divergence threshold and trend
/// rule are fixed; see compare_sequences in growth.cpp for the decision
/// order. Deterministic. Windows must both be >= 8.
OrderRelation compare_sequences(const GrowthSequence& a, const GrowthSequence& b,
                                double tail_fraction = 0.5);

/// Exact total comparison of symbolic classes; never returns Incomparable
/// or Inconclusive.
OrderRelation compare_symbolic(const SymbolicOrder& o1, const SymbolicOrder& o2);

enum class FamilyBase : std::uint8_t { Exponential, Polynomial };

/// Empirical projection onto a one-parameter family: least-squares slope of
/// log a(n) against n (Exponential) or log n (Polynomial) on the tail.
/// Returns +infinity when the fit diverges over successive tail halves,
/// 0 for an all-zero sequence. Window must be >= 16.
double project_onto_family(const GrowthSequence& a, FamilyBase base);

/// Same, against log b(n) for a custom base sequence.
double project_onto_family(const GrowthSequence& a, const GrowthSequence& base);

struct Classification {
    std::optional<SymbolicOrder> cls;  // empty = Unresolved
    double residual = 0.0;
};

/// Acceptance threshold for classify_sequence residuals.
inline constexpr double kClassifyThreshold = 0.02;

/// Nearest catalog class under the mean-square log residual over a
/// geometric evaluation grid on the tail; Unresolved when the best residual
/// exceeds kClassifyThreshold. Sentinel catalog entries other than Zero are
/// never fit.
Classification classify_sequence(const GrowthSequence& a,
                                 const std::vector<SymbolicOrder>& catalog);

}  // namespace oge
