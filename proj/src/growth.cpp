#include "oge/growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oge {

namespace {

constexpr double kEquivalenceBand = 1.3862943611198906;  // ln 4
constexpr double kDivergenceLog = 4.605170185988092;     // ln 100
constexpr double kSlopeFloor = 0.01;

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < m; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    if (den <= 0) return 0.0;
    return num / den;
}

}  // namespace

GrowthSequence::GrowthSequence(std::vector<double> values) : vals_(std::move(values)) {
    for (std::size_t i = 0; i < vals_.size(); ++i) {
        if (!(vals_[i] >= 0.0) || !std::isfinite(vals_[i]))
            throw std::invalid_argument("GrowthSequence: entries must be finite and >= 0");
        if (i > 0 && vals_[i] < vals_[i - 1])
            throw std::invalid_argument("GrowthSequence: sequence must be non-decreasing");
    }
}

GrowthSequence GrowthSequence::running_max(const std::vector<double>& values) {
    std::vector<double> v(values);
    double m = 0.0;
    for (auto& x : v) {
        m = std::max(m, x);
        x = m;
    }
    return GrowthSequence(std::move(v));
}

std::string GrowthSequence::to_tsv() const {
    std::string out;
    char buf[64];
    for (std::size_t n = 1; n <= window(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu\t%.17g\n", n, value(n));
        out += buf;
    }
    return out;
}

GrowthSequence GrowthSequence::from_tsv(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::size_t n;
        double v;
        if (ls >> n >> v) {
            if (n != vals.size() + 1) throw std::invalid_argument("TSV rows must be consecutive from 1");
            vals.push_back(v);
        }
    }
    return GrowthSequence(std::move(vals));
}

double SymbolicOrder::eval(std::size_t n) const {
    if (sentinel) {
        if (*sentinel == Sentinel::Zero) return 1.0;
        throw std::logic_error("abstract sentinel has no generator sequence");
    }
    const double x = static_cast<double>(n);
    return std::exp(exp_rate * x) * std::pow(x, poly_deg) * std::pow(std::log(x + 1.0), log_deg);
}

std::string SymbolicOrder::to_string() const {
    if (sentinel) {
        switch (*sentinel) {
            case Sentinel::SupE: return "sup(E)";
            case Sentinel::InfE: return "inf(E)";
            case Sentinel::SupP: return "sup(P)";
            case Sentinel::InfP: return "inf(P)";
            case Sentinel::Zero: return "0";
        }
    }
    if (exp_rate == 0.0 && poly_deg == 0.0 && log_deg == 0.0) return "0";
    char buf[96];
    std::snprintf(buf, sizeof buf, "exp(%.6g*n)*n^%.6g*log(n)^%.6g", exp_rate, poly_deg, log_deg);
    return buf;
}

SymbolicOrder SymbolicOrder::from_string(const std::string& s) {
    if (s == "0") return zero();
    if (s == "sup(E)") return abstract(Sentinel::SupE);
    if (s == "inf(E)") return abstract(Sentinel::InfE);
    if (s == "sup(P)") return abstract(Sentinel::SupP);
    if (s == "inf(P)") return abstract(Sentinel::InfP);
    double t = 0, a = 0, b = 0;
    if (std::sscanf(s.c_str(), "exp(%lf*n)*n^%lf*log(n)^%lf", &t, &a, &b) == 3)
        return {t, a, b, {}};
    throw std::invalid_argument("unparseable symbolic order: " + s);
}

std::string to_string(OrderRelation r) {
    switch (r) {
        case OrderRelation::Equivalent: return "Equivalent";
        case OrderRelation::Less: return "Less";
        case OrderRelation::Greater: return "Greater";
        case OrderRelation::Incomparable: return "Incomparable";
        case OrderRelation::Inconclusive: return "Inconclusive";
    }
    return "?";
}

OrderRelation compare_sequences(const GrowthSequence& a, const GrowthSequence& b,
                                double tail_fraction) {
    if (a.window() < 8 || b.window() < 8)
        throw std::invalid_argument("compare_sequences: both windows must be >= 8");
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw std::invalid_argument("compare_sequences: tail_fraction must be in (0,1]");

    // Window mismatch: restrict to the common prefix.
    const std::size_t W = std::min(a.window(), b.window());
    const std::size_t tail_len = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(tail_fraction * W)));
    const std::size_t n0 = W - std::min(tail_len, W) + 1;

    // Zeros form a prefix of a monotone nonnegative sequence, so the two
    // one-sided rules below cannot both fire.
    bool a_all_zero = true, b_all_zero = true;
    for (std::size_t n = n0; n <= W; ++n) {
        if (a.value(n) > 0) a_all_zero = false;
        if (b.value(n) > 0) b_all_zero = false;
    }
    if (a_all_zero && b_all_zero) return OrderRelation::Equivalent;
    for (std::size_t n = n0; n <= W; ++n) {
        if (b.value(n) == 0.0 && a.value(n) > 0.0) return OrderRelation::Greater;
        if (a.value(n) == 0.0 && b.value(n) > 0.0) return OrderRelation::Less;
    }

    std::vector<double> r;
    r.reserve(W - n0 + 1);
    for (std::size_t n = n0; n <= W; ++n) r.push_back(std::log(a.value(n) / b.value(n)));

    const double rmax = *std::max_element(r.begin(), r.end());
    const double rmin = *std::min_element(r.begin(), r.end());

    // Two-decade swing in both directions: incomparable at desk scale.
    if (rmax > kDivergenceLog && -rmin > kDivergenceLog) return OrderRelation::Incomparable;

    if (rmax - rmin <= kEquivalenceBand) return OrderRelation::Equivalent;

    // Range exceeds the band: a monotone trend of block means decides.
    const std::size_t nblocks = 4;
    std::vector<double> mu(nblocks, 0.0);
    for (std::size_t block = 0; block < nblocks; ++block) {
        const std::size_t lo = block * r.size() / nblocks;
        const std::size_t hi = (block + 1) * r.size() / nblocks;
        for (std::size_t i = lo; i < hi; ++i) mu[block] += r[i];
        mu[block] /= static_cast<double>(hi - lo);
    }
    bool dec = true, inc = true;
    for (std::size_t i = 1; i < nblocks; ++i) {
        dec = dec && mu[i] < mu[i - 1];
        inc = inc && mu[i] > mu[i - 1];
    }
    if (dec) return OrderRelation::Less;
    if (inc) return OrderRelation::Greater;
    return OrderRelation::Inconclusive;
}

namespace {

// Rank of a sentinel among the interleaved levels used by the total order.
// Finite classes compare lexicographically; sentinels sit at fixed levels:
//   (0,0,b)  <  inf(P)  <  (0,a>0,b)  <  sup(P)  <  inf(E)  <  (t>0,..)  <  sup(E)
int sentinel_index(Sentinel s) {
    switch (s) {
        case Sentinel::InfP: return 1;
        case Sentinel::SupP: return 2;
        case Sentinel::InfE: return 3;
        case Sentinel::SupE: return 4;
        case Sentinel::Zero: return 0;
    }
    return 0;
}

OrderRelation flip(OrderRelation r) {
    if (r == OrderRelation::Less) return OrderRelation::Greater;
    if (r == OrderRelation::Greater) return OrderRelation::Less;
    return r;
}

OrderRelation cmp_finite_sentinel(const SymbolicOrder& f, Sentinel s) {
    switch (s) {
        case Sentinel::SupE:
            return OrderRelation::Less;
        case Sentinel::InfE:
            return f.exp_rate > 0 ? OrderRelation::Greater : OrderRelation::Less;
        case Sentinel::SupP:
            return f.exp_rate > 0 ? OrderRelation::Greater : OrderRelation::Less;
        case Sentinel::InfP:
            if (f.exp_rate > 0 || f.poly_deg > 0) return OrderRelation::Greater;
            return OrderRelation::Less;
        case Sentinel::Zero:
            break;  // normalized away by caller
    }
    return OrderRelation::Inconclusive;
}

}  // namespace

OrderRelation compare_symbolic(const SymbolicOrder& o1, const SymbolicOrder& o2) {
    SymbolicOrder a = o1, b = o2;
    if (a.sentinel && *a.sentinel == Sentinel::Zero) a = SymbolicOrder::zero();
    if (b.sentinel && *b.sentinel == Sentinel::Zero) b = SymbolicOrder::zero();

    if (!a.sentinel && !b.sentinel) {
        if (a.exp_rate != b.exp_rate)
            return a.exp_rate < b.exp_rate ? OrderRelation::Less : OrderRelation::Greater;
        if (a.poly_deg != b.poly_deg)
            return a.poly_deg < b.poly_deg ? OrderRelation::Less : OrderRelation::Greater;
        if (a.log_deg != b.log_deg)
            return a.log_deg < b.log_deg ? OrderRelation::Less : OrderRelation::Greater;
        return OrderRelation::Equivalent;
    }
    if (a.sentinel && b.sentinel) {
        const int ia = sentinel_index(*a.sentinel), ib = sentinel_index(*b.sentinel);
        if (ia == ib) return OrderRelation::Equivalent;
        return ia < ib ? OrderRelation::Less : OrderRelation::Greater;
    }
    if (!a.sentinel) return cmp_finite_sentinel(a, *b.sentinel);
    return flip(cmp_finite_sentinel(b, *a.sentinel));
}

namespace {

// Slope of log a(n) over [lo, hi] against transform(n).
template <typename F>
double range_slope(const GrowthSequence& a, std::size_t lo, std::size_t hi, F&& transform) {
    std::vector<double> xs, ys;
    for (std::size_t n = lo; n <= hi; ++n) {
        if (a.value(n) <= 0) continue;
        xs.push_back(transform(n));
        ys.push_back(std::log(a.value(n)));
    }
    if (xs.size() < 3) return 0.0;
    return lsq_slope(xs, ys);
}

template <typename F>
double project_impl(const GrowthSequence& a, F&& transform) {
    const std::size_t W = a.window();
    if (W < 8) throw std::invalid_argument("project_onto_family: window must be >= 8");
    bool all_zero = true;
    for (std::size_t n = 1; n <= W; ++n)
        if (a.value(n) > 0) {
            all_zero = false;
            break;
        }
    if (all_zero) return 0.0;

    const double tail = range_slope(a, W / 2, W, transform);

    // Divergence across three octaves: the slope keeps compounding, so the
    // limsup does not settle and the projection escapes the family.
    if (W >= 32) {
        const double u1 = range_slope(a, W / 8, W / 4, transform);
        const double u2 = range_slope(a, W / 4, W / 2, transform);
        if (u1 > kSlopeFloor && u2 > 1.3 * u1 && tail > 1.3 * u2)
            return std::numeric_limits<double>::infinity();
    }

    return tail >= kSlopeFloor ? tail : 0.0;
}

}  // namespace

double project_onto_family(const GrowthSequence& a, FamilyBase base) {
    if (base == FamilyBase::Exponential)
        return project_impl(a, [](std::size_t n) { return static_cast<double>(n); });
    return project_impl(a, [](std::size_t n) { return std::log(static_cast<double>(n)); });
}

double project_onto_family(const GrowthSequence& a, const GrowthSequence& base) {
    const std::size_t W = std::min(a.window(), base.window());
    if (W < 8) throw std::invalid_argument("project_onto_family: window must be >= 8");
    // Reuse the generic path on the common prefix.
    std::vector<double> av(a.values().begin(), a.values().begin() + W);
    GrowthSequence ac(std::move(av));
    return project_impl(ac, [&](std::size_t n) {
        const double b = base.value(n);
        return b > 0 ? std::log(b) : -700.0;
    });
}

Classification classify_sequence(const GrowthSequence& a,
                                 const std::vector<SymbolicOrder>& catalog) {
    if (catalog.empty()) throw std::invalid_argument("classify_sequence: catalog must be non-empty");
    const std::size_t W = a.window();
    if (W < 4) throw std::invalid_argument("classify_sequence: window too small");

    // Geometric evaluation grid over [sqrt(W), W]: class shape is a
    // cross-scale property, a linear tail window cannot see it.
    const std::size_t n_lo = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(W)))));
    std::vector<std::size_t> grid;
    const int points = 48;
    for (int j = 0; j <= points; ++j) {
        const double t = static_cast<double>(j) / points;
        const auto n = static_cast<std::size_t>(std::lround(n_lo * std::pow(static_cast<double>(W) / n_lo, t)));
        if (grid.empty() || n > grid.back()) grid.push_back(std::min(n, W));
    }

    auto is_zero_class = [](const SymbolicOrder& s) {
        if (s.sentinel) return *s.sentinel == Sentinel::Zero;
        return s.exp_rate == 0 && s.poly_deg == 0 && s.log_deg == 0;
    };

    // Bounded sequences belong to the class of constants.
    const double head = std::max(a.value(grid.front()), 1e-300);
    if (a.value(W) <= 4.0 * head || a.value(W) == 0.0) {
        for (const auto& c : catalog)
            if (is_zero_class(c)) {
                double mean = 0, var = 0;
                std::vector<double> v;
                for (auto n : grid) v.push_back(std::log(std::max(a.value(n), 1e-300) / head));
                for (double x : v) mean += x;
                mean /= v.size();
                for (double x : v) var += (x - mean) * (x - mean);
                var /= v.size();
                return {c, var};
            }
    }

    // Two class-preserving readings of the data: the raw values (handles
    // flat-head curves like max(c, n)) and the startup-offset-subtracted
    // values re-seeded with the local increment scale (handles affine
    // curves like 20 + 0.3 n). Each class is scored under both.
    double c0 = a.value(std::min<std::size_t>(2, W)) - a.value(1);
    if (c0 <= 0) c0 = std::max((a.value(W) - a.value(1)) / std::max<double>(1.0, W - 1.0), 1e-300);
    std::vector<double> raw_log, shifted_log;
    raw_log.reserve(grid.size());
    shifted_log.reserve(grid.size());
    for (auto n : grid) {
        raw_log.push_back(std::log(std::max(a.value(n), 1e-300)));
        shifted_log.push_back(std::log(std::max(a.value(n) - a.value(1) + c0, 1e-300)));
    }

    auto variance_against = [&](const std::vector<double>& logs, const SymbolicOrder& c) {
        double mean = 0;
        std::vector<double> v;
        v.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double n = static_cast<double>(grid[i]);
            const double gen = c.sentinel ? 0.0
                                          : c.exp_rate * n + c.poly_deg * std::log(n) +
                                                c.log_deg * std::log(std::log(n + 1.0));
            v.push_back(logs[i] - gen);
        }
        for (double x : v) mean += x;
        mean /= v.size();
        double var = 0;
        for (double x : v) var += (x - mean) * (x - mean);
        return var / v.size();
    };

    double best_res = std::numeric_limits<double>::infinity();
    const SymbolicOrder* best = nullptr;
    for (const auto& c : catalog) {
        if (c.sentinel && *c.sentinel != Sentinel::Zero) continue;  // never fit abstract elements
        const double var = std::min(variance_against(raw_log, c), variance_against(shifted_log, c));
        if (var < best_res) {
            best_res = var;
            best = &c;
        }
    }
    if (best && best_res <= kClassifyThreshold) return {*best, best_res};
    return {std::nullopt, best_res};
}

}  // namespace oge
