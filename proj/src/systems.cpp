#include "oge/systems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace oge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

double arc_dist(double a, double b) {
    double d = std::fabs(frac(a) - frac(b));
    return std::min(d, 1.0 - d);
}

// Signed representative of a - b in (-1/2, 1/2].
double arc_diff(double a, double b) {
    double d = frac(a - b);
    if (d > 0.5) d -= 1.0;
    return d;
}

std::vector<Point> circle_grid(double delta) {
    const auto n = static_cast<std::size_t>(std::ceil(1.0 / delta));
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i) / n});
    return pts;
}

bool nearly_rational(double alpha, long max_q, double tol) {
    for (long q = 1; q <= max_q; ++q) {
        const double p = std::round(alpha * q);
        if (std::fabs(alpha - p / q) < tol) return true;
    }
    return false;
}

}  // namespace

double memory_budget_bytes() {
    if (const char* env = std::getenv("OGE_MEM_BUDGET")) {
        const double v = std::atof(env);
        if (v > 0) return v;
    }
    return 1.5e9;
}

// --- full shift -------------------------------------------------------------

DynamicalSystemSpec full_shift(int k, int word_len) {
    if (k < 2) throw std::invalid_argument("full_shift: alphabet size must be >= 2");
    if (word_len < 2 || word_len > 48) throw std::invalid_argument("full_shift: word_len out of range");

    DynamicalSystemSpec s;
    s.name = "full_shift";
    s.dim = word_len;
    s.params = {{"k", k}, {"word_len", word_len}};
    s.step = [word_len](const Point& x) {
        Point y(word_len);
        for (int i = 0; i + 1 < word_len; ++i) y[i] = x[i + 1];
        y[word_len - 1] = 1.0;  // truncation padding
        return y;
    };
    s.metric = [word_len](const Point& a, const Point& b) {
        for (int j = 0; j < word_len; ++j)
            if (a[j] != b[j]) return std::pow(2.0, -j);
        return 0.0;
    };
    s.sampler = [k, word_len](double delta) {
        int m = std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / delta))));
        m = std::min(m, word_len);
        const double count = std::pow(static_cast<double>(k), m);
        if (count * word_len * 8.0 > memory_budget_bytes()) {
            const double mmax = std::floor(std::log2(memory_budget_bytes() / (8.0 * word_len)) / std::log2(k));
            throw std::runtime_error("full_shift sampler: budget exceeded; minimal admissible delta is 2^-" +
                                     std::to_string(static_cast<int>(mmax)));
        }
        std::vector<Point> pts;
        pts.reserve(static_cast<std::size_t>(count));
        std::vector<int> w(m, 1);
        for (;;) {
            Point p(word_len, 1.0);
            for (int i = 0; i < m; ++i) p[i] = w[i];
            pts.push_back(std::move(p));
            int i = m - 1;
            while (i >= 0 && w[i] == k) w[i--] = 1;
            if (i < 0) break;
            ++w[i];
        }
        return pts;
    };
    s.omega_sampler = s.sampler;  // the whole shift space is nonwandering
    s.separation_key = [word_len](const Point& x, std::size_t n, double eps) {
        // d_n(x,y) <= eps iff the first n + ceil(log2(1/eps)) coordinates
        // agree (2^{-(j-n)} > eps exactly when j < n + log2(1/eps)).
        const int m = static_cast<int>(std::ceil(std::log2(1.0 / eps)));
        const int r = std::clamp<int>(static_cast<int>(n) + m, 1, word_len);
        std::string key(static_cast<std::size_t>(r), '\0');
        for (int i = 0; i < r; ++i) key[i] = static_cast<char>(x[i]);
        return key;
    };
    return s;
}

// --- rotation ---------------------------------------------------------------

DynamicalSystemSpec rotation(double alpha) {
    DynamicalSystemSpec s;
    s.name = "rotation";
    s.dim = 1;
    s.params = {{"alpha", alpha}};
    s.step = [alpha](const Point& x) { return Point{frac(x[0] + alpha)}; };
    s.inverse = [alpha](const Point& x) { return Point{frac(x[0] - alpha)}; };
    s.metric = [](const Point& a, const Point& b) { return arc_dist(a[0], b[0]); };
    s.sampler = [](double delta) { return circle_grid(delta); };
    s.omega_sampler = s.sampler;
    s.coord_periods = {1.0};
    s.max_metric = true;
    s.analytic_dn = [](const Point& a, const Point& b, std::size_t) {
        return arc_dist(a[0], b[0]);  // rotations are isometries
    };
    return s;
}

// --- Morse-Smale circle map ---------------------------------------------------

DynamicalSystemSpec morse_smale_circle(double amplitude, int ladder_depth) {
    if (!(amplitude > 0.0) || !(amplitude < 1.0 / kTwoPi))
        throw std::invalid_argument("morse_smale_circle: amplitude must lie in (0, 1/(2pi))");
    if (ladder_depth < 8) throw std::invalid_argument("morse_smale_circle: ladder_depth too small");

    DynamicalSystemSpec s;
    s.name = "morse_smale_circle";
    s.dim = 1;
    s.params = {{"amplitude", amplitude}, {"ladder_depth", ladder_depth}};
    const double a = amplitude;
    // Lift dynamics (no wrap): orbits are monotone toward the nearest
    // attractor lift, and ladder points near the repeller keep full
    // absolute precision on both sides of 0.
    s.step = [a](const Point& x) { return Point{x[0] + a * std::sin(kTwoPi * x[0])}; };
    s.inverse = [a](const Point& x) {
        // Newton on the lift; g' = 1 + 2 pi a cos > 0 keeps the solve global.
        const double target = x[0];
        double y = target - a * std::sin(kTwoPi * target);
        for (int it = 0; it < 60; ++it) {
            const double g = y + a * std::sin(kTwoPi * y) - target;
            const double gp = 1.0 + a * kTwoPi * std::cos(kTwoPi * y);
            const double d = g / gp;
            y -= d;
            if (std::fabs(d) < 1e-15) break;
        }
        return Point{frac(y)};
    };
    s.metric = [](const Point& p, const Point& q) { return arc_dist(p[0], q[0]); };
    const double lambda = 1.0 + kTwoPi * a;  // multiplier at the repeller
    s.sampler = [ladder_depth, lambda](double delta) {
        auto pts = circle_grid(delta);
        // Geometric refinement toward the repelling fixed point: a uniform
        // grid cannot resolve the backward orbit that carries the linear
        // separated-set growth. The mirror side is stored as a negative
        // lift coordinate so it keeps absolute precision too.
        const double root = std::sqrt(lambda);
        for (int j = 0; j <= 2 * ladder_depth; ++j) {
            const double d = 0.25 * std::pow(root, -j);
            if (d < 1e-300) break;
            pts.push_back({d});
            pts.push_back({-d});
        }
        return pts;
    };
    s.omega_sampler = [](double) { return std::vector<Point>{{0.0}, {0.5}}; };
    s.coord_periods = {1.0};
    s.max_metric = true;
    return s;
}

// --- Denjoy-type piecewise linear circle homeomorphism ------------------------

namespace {

struct DenjoyModel {
    // One entry per inserted interval, sorted by position on the new circle.
    std::vector<double> left, right;  // endpoints, rescaled to circumference 1
    std::vector<int> index;           // orbit index j
    std::vector<double> old_pos;      // base point x_j on the original circle
    std::vector<double> prefix;       // inserted length strictly before x_j
    double L = 1.0;                   // circumference before rescaling
    std::vector<int> slot;            // slot[j + depth] = interval array position
    int depth = 0;

    double h(double y) const {
        y = frac(y);
        auto it = std::upper_bound(old_pos.begin(), old_pos.end(), y);
        double before = 0.0;
        if (it != old_pos.begin()) {
            const std::size_t i = static_cast<std::size_t>(it - old_pos.begin()) - 1;
            before = prefix[i] + (right[i] - left[i]) * L;  // old_pos[i] < y strictly? see below
            if (old_pos[i] == y) before = prefix[i];        // jump point maps to left endpoint
        }
        return frac((y + before) / L);
    }

    double h_inv(double z) const {
        // Collapses each inserted interval onto its base orbit point.
        z = frac(z);
        auto it = std::upper_bound(left.begin(), left.end(), z);
        if (it == left.begin()) return frac(z * L);
        const std::size_t i = static_cast<std::size_t>(it - left.begin()) - 1;
        if (z < right[i]) return old_pos[i];
        return frac(z * L - prefix[i] - (right[i] - left[i]) * L);
    }

    int locate(double z) const {
        z = frac(z);
        auto it = std::upper_bound(left.begin(), left.end(), z);
        if (it == left.begin()) return -1;
        const std::size_t i = static_cast<std::size_t>(it - left.begin()) - 1;
        return z < right[i] ? static_cast<int>(i) : -1;
    }
};

}  // namespace

DynamicalSystemSpec denjoy(double alpha, double tail_exponent, int depth) {
    if (depth < 100) throw std::invalid_argument("denjoy: depth must be >= 100");
    if (tail_exponent <= 1.0) throw std::invalid_argument("denjoy: tail_exponent must exceed 1");
    if (nearly_rational(alpha, 1000, 1e-12))
        throw std::invalid_argument("denjoy: rotation number must be irrational");

    // Wandering intervals of length c/(|j|+2)^tau along the orbit of 0,
    // normalized to total inserted length 1/2.
    const int J = depth;
    double norm = 0;
    for (int j = -J; j <= J; ++j) norm += std::pow(std::abs(j) + 2.0, -tail_exponent);
    const double c = 0.5 / norm;

    struct Ins {
        double pos, len;
        int idx;
    };
    std::vector<Ins> ins;
    ins.reserve(2 * J + 1);
    for (int j = -J; j <= J; ++j)
        ins.push_back({frac(j * alpha), c * std::pow(std::abs(j) + 2.0, -tail_exponent), j});
    std::sort(ins.begin(), ins.end(), [](const Ins& x, const Ins& y) { return x.pos < y.pos; });

    auto model = std::make_shared<DenjoyModel>();
    model->depth = J;
    model->L = 1.5;
    model->slot.assign(2 * J + 1, -1);
    double acc = 0;
    for (const auto& e : ins) {
        model->old_pos.push_back(e.pos);
        model->prefix.push_back(acc);
        model->left.push_back((e.pos + acc) / model->L);
        model->right.push_back((e.pos + acc + e.len) / model->L);
        model->slot[e.idx + J] = static_cast<int>(model->index.size());
        model->index.push_back(e.idx);
        acc += e.len;
    }

    auto fwd = [model, alpha, J](const Point& p) {
        const double z = frac(p[0]);
        const int i = model->locate(z);
        if (i >= 0) {
            const int j = model->index[i];
            if (j < J) {
                const int tgt = model->slot[j + 1 + J];
                const double t = (z - model->left[i]) / (model->right[i] - model->left[i]);
                return Point{model->left[tgt] + t * (model->right[tgt] - model->left[tgt])};
            }
            // Deepest interval: the truncation collapses it onto the next
            // orbit point. Invisible below the fidelity horizon depth/10.
            return Point{model->h(frac((J + 1.0) * alpha))};
        }
        return Point{model->h(frac(model->h_inv(z) + alpha))};
    };

    DynamicalSystemSpec s;
    s.name = "denjoy";
    s.dim = 1;
    s.params = {{"alpha", alpha}, {"tail_exponent", tail_exponent}, {"depth", depth}};
    s.step = fwd;
    s.metric = [](const Point& a, const Point& b) { return arc_dist(a[0], b[0]); };
    s.sampler = [model](double delta) {
        auto pts = circle_grid(delta);
        for (std::size_t i = 0; i < model->left.size(); ++i) {
            pts.push_back({model->left[i]});
            pts.push_back({model->right[i]});
        }
        return pts;
    };
    s.omega_sampler = [model](double) {
        std::vector<Point> pts;
        pts.reserve(2 * model->left.size());
        for (std::size_t i = 0; i < model->left.size(); ++i) {
            pts.push_back({model->left[i]});
            pts.push_back({model->right[i]});
        }
        return pts;
    };
    s.coord_periods = {1.0};
    s.max_metric = true;
    return s;
}

// --- annulus twist ------------------------------------------------------------

DynamicalSystemSpec twist_annulus(double alpha0, double alpha1, int t_refine) {
    if (!(alpha1 > alpha0)) throw std::invalid_argument("twist_annulus: profile must be increasing");
    if (t_refine < 1) throw std::invalid_argument("twist_annulus: t_refine must be >= 1");

    DynamicalSystemSpec s;
    s.name = "twist_annulus";
    s.dim = 2;
    s.params = {{"alpha0", alpha0}, {"alpha1", alpha1}, {"t_refine", t_refine}};
    const double lo = alpha0, span = alpha1 - alpha0;
    auto prof = [lo, span](double t) { return lo + span * t; };
    s.step = [prof](const Point& p) { return Point{frac(p[0] + prof(p[1])), p[1]}; };
    s.inverse = [prof](const Point& p) { return Point{frac(p[0] - prof(p[1])), p[1]}; };
    s.metric = [](const Point& a, const Point& b) {
        return std::max(arc_dist(a[0], b[0]), std::fabs(a[1] - b[1]));
    };
    s.sampler = [t_refine](double delta) {
        const auto ns = static_cast<std::size_t>(std::ceil(1.0 / delta));
        const auto nt = static_cast<std::size_t>(t_refine) * ns + 1;
        if (static_cast<double>(ns) * static_cast<double>(nt) * 16.0 > memory_budget_bytes())
            throw std::runtime_error("twist_annulus sampler: budget exceeded; increase delta");
        std::vector<Point> pts;
        pts.reserve(ns * nt);
        for (std::size_t j = 0; j < nt; ++j)
            for (std::size_t i = 0; i < ns; ++i)
                pts.push_back({static_cast<double>(i) / ns, static_cast<double>(j) / (nt - 1)});
        return pts;
    };
    s.omega_sampler = s.sampler;
    s.coord_periods = {1.0, 0.0};
    s.max_metric = true;
    s.analytic_dn = [prof](const Point& a, const Point& b, std::size_t n) {
        const double dt = std::fabs(a[1] - b[1]);
        const double da = prof(a[1]) - prof(b[1]);
        const double w = arc_diff(a[0], b[0]);
        auto arc_of = [](double x) { return std::fabs(x - std::round(x)); };
        if (da == 0.0) return std::max(dt, arc_of(w));
        // s-offsets walk w, w+da, ..., w+n*da on the line; circle distance
        // peaks at the endpoints or at antipode crossings.
        const double end = w + static_cast<double>(n) * da;
        double best = std::max(dt, std::max(arc_of(w), arc_of(end)));
        const double losw = std::min(w, end), hiw = std::max(w, end);
        for (double m = std::ceil(losw - 0.5) + 0.5; m < hiw; m += 1.0) {
            const double i = std::clamp(std::round((m - w) / da), 0.0, static_cast<double>(n));
            best = std::max(best, arc_of(w + i * da));
            if (best >= 0.5) break;
        }
        return best;
    };
    s.dn_coord_window = [span](std::size_t n, double eps) {
        const double wt = std::min(eps, 2.0 * eps / (span * std::max<double>(1.0, static_cast<double>(n))));
        return std::vector<double>{eps, wt};
    };
    return s;
}

// --- torus automorphism ---------------------------------------------------------

DynamicalSystemSpec torus_linear(const std::array<std::array<long long, 2>, 2>& A) {
    const long long det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    if (det != 1 && det != -1)
        throw std::invalid_argument("torus_linear: |det| must be 1 for a homeomorphism");

    DynamicalSystemSpec s;
    s.name = "torus_linear";
    s.dim = 2;
    s.params = {{"matrix", {{A[0][0], A[0][1]}, {A[1][0], A[1][1]}}}};
    const double a = static_cast<double>(A[0][0]), b = static_cast<double>(A[0][1]);
    const double c = static_cast<double>(A[1][0]), d = static_cast<double>(A[1][1]);
    s.step = [a, b, c, d](const Point& p) {
        return Point{frac(a * p[0] + b * p[1]), frac(c * p[0] + d * p[1])};
    };
    const double di = static_cast<double>(det);
    s.inverse = [a, b, c, d, di](const Point& p) {
        return Point{frac((d * p[0] - b * p[1]) / di), frac((-c * p[0] + a * p[1]) / di)};
    };
    s.metric = [](const Point& p, const Point& q) {
        return std::max(arc_dist(p[0], q[0]), arc_dist(p[1], q[1]));
    };
    s.sampler = [](double delta) {
        const auto n = static_cast<std::size_t>(std::ceil(1.0 / delta));
        std::vector<Point> pts;
        pts.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                pts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        return pts;
    };
    s.omega_sampler = s.sampler;
    s.coord_periods = {1.0, 1.0};
    s.max_metric = true;
    s.analytic_dn = [a, b, c, d](const Point& p, const Point& q, std::size_t n) {
        // f^i p - f^i q = A^i (p - q) mod 1, exactly, by integrality of A.
        double wx = arc_diff(p[0], q[0]);
        double wy = arc_diff(p[1], q[1]);
        double best = 0.0;
        for (std::size_t i = 0;; ++i) {
            best = std::max(best, std::max(std::fabs(wx), std::fabs(wy)));
            if (i == n || best >= 0.5) break;
            const double nx = a * wx + b * wy;
            const double ny = c * wx + d * wy;
            wx = nx - std::round(nx);
            wy = ny - std::round(ny);
        }
        return std::min(best, 0.5);
    };
    if (A[0][0] == 1 && A[0][1] == 1 && A[1][0] == 0 && A[1][1] == 1) {
        s.dn_coord_window = [](std::size_t n, double eps) {
            return std::vector<double>{
                eps, std::min(eps, 2.0 * eps / std::max<double>(1.0, static_cast<double>(n)))};
        };
    }
    return s;
}

// --- cylindrical cascade ---------------------------------------------------------

DynamicalSystemSpec cascade_system(const std::vector<CascadeStage>& stages, double alpha,
                                   const nlohmann::json& params) {
    DynamicalSystemSpec s;
    s.name = "cascade";
    s.dim = 2;
    s.params = params.is_null() ? nlohmann::json{{"alpha", alpha}} : params;

    // Stages whose amplitude is below noise or whose frequency exceeds the
    // double mantissa contribute nothing measurable to sampled orbits.
    std::vector<CascadeStage> st;
    for (const auto& g : stages)
        if (g.amplitude > 1e-18 && g.frequency < 9e15) st.push_back(g);

    auto phi = [st](double x) {
        double y = 0;
        for (const auto& g : st) y += g.amplitude * std::cos(kTwoPi * frac(g.frequency * x));
        return y;
    };
    s.step = [phi, alpha](const Point& p) {
        const double x1 = frac(p[0] + alpha);
        return Point{x1, frac(p[1] + phi(x1))};
    };
    s.inverse = [phi, alpha](const Point& p) {
        return Point{frac(p[0] - alpha), frac(p[1] - phi(p[0]))};
    };
    s.metric = [](const Point& p, const Point& q) {
        return std::max(arc_dist(p[0], q[0]), arc_dist(p[1], q[1]));
    };
    s.sampler = [](double delta) {
        const auto n = static_cast<std::size_t>(std::ceil(1.0 / delta));
        std::vector<Point> pts;
        pts.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                pts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        return pts;
    };
    s.omega_sampler = s.sampler;
    s.coord_periods = {1.0, 1.0};
    s.max_metric = true;
    return s;
}

// --- dispatch ----------------------------------------------------------------

DynamicalSystemSpec make_system(const std::string& kind, const nlohmann::json& params) {
    auto get = [&params](const char* key, double dflt) {
        return params.contains(key) ? params.at(key).get<double>() : dflt;
    };
    if (kind == "full_shift")
        return full_shift(static_cast<int>(get("k", 2)), static_cast<int>(get("word_len", 14)));
    if (kind == "rotation") return rotation(get("alpha", 0.6180339887498949));
    if (kind == "morse_smale")
        return morse_smale_circle(get("amplitude", 0.05), static_cast<int>(get("ladder_depth", 256)));
    if (kind == "denjoy")
        return denjoy(get("alpha", 0.6180339887498949), get("tail_exponent", 2.0),
                      static_cast<int>(get("depth", 2000)));
    if (kind == "twist_annulus")
        return twist_annulus(get("alpha0", 0.0), get("alpha1", 1.0),
                             static_cast<int>(get("t_refine", 1)));
    if (kind == "torus_linear") {
        auto m = params.at("matrix");
        std::array<std::array<long long, 2>, 2> A{
            {{m[0][0].get<long long>(), m[0][1].get<long long>()},
             {m[1][0].get<long long>(), m[1][1].get<long long>()}}};
        return torus_linear(A);
    }
    throw std::invalid_argument("unknown system kind: " + kind);
}

// --- derived systems -----------------------------------------------------------

DynamicalSystemSpec power_system(const DynamicalSystemSpec& spec, int p) {
    if (p < 1) throw std::invalid_argument("power_system: exponent must be >= 1");
    DynamicalSystemSpec s = spec;
    s.name = spec.name + "^" + std::to_string(p);
    s.params["power"] = p;
    auto base = spec.step;
    s.step = [base, p](const Point& x) {
        Point y = x;
        for (int i = 0; i < p; ++i) y = base(y);
        return y;
    };
    if (spec.inverse) {
        auto binv = spec.inverse;
        s.inverse = [binv, p](const Point& x) {
            Point y = x;
            for (int i = 0; i < p; ++i) y = binv(y);
            return y;
        };
    }
    // Single-step acceleration metadata no longer applies.
    s.analytic_dn = nullptr;
    s.dn_coord_window = nullptr;
    s.separation_key = nullptr;
    return s;
}

DynamicalSystemSpec conjugate_system(const DynamicalSystemSpec& spec,
                                     std::function<Point(const Point&)> h,
                                     std::function<Point(const Point&)> h_inv) {
    DynamicalSystemSpec s = spec;
    s.name = spec.name + "_conjugate";
    auto base = spec.step;
    s.step = [base, h, h_inv](const Point& x) { return h(base(h_inv(x))); };
    if (spec.inverse) {
        auto binv = spec.inverse;
        s.inverse = [binv, h, h_inv](const Point& x) { return h(binv(h_inv(x))); };
    }
    auto base_sampler = spec.sampler;
    s.sampler = [base_sampler, h](double delta) {
        auto pts = base_sampler(delta);
        for (auto& p : pts) p = h(p);
        return pts;
    };
    if (spec.omega_sampler) {
        auto base_omega = spec.omega_sampler;
        s.omega_sampler = [base_omega, h](double delta) {
            auto pts = base_omega(delta);
            for (auto& p : pts) p = h(p);
            return pts;
        };
    }
    s.analytic_dn = nullptr;
    s.dn_coord_window = nullptr;
    s.separation_key = nullptr;
    return s;
}

DynamicalSystemSpec restricted_system(const DynamicalSystemSpec& spec, std::vector<Point> samples) {
    DynamicalSystemSpec s = spec;
    s.name = spec.name + "_restricted";
    s.sampler = [samples](double) { return samples; };
    s.omega_sampler = nullptr;
    return s;
}

// --- operations ------------------------------------------------------------------

Point step_n(const DynamicalSystemSpec& spec, Point x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x = spec.step(x);
        for (double v : x)
            if (!std::isfinite(v))
                throw std::runtime_error("step_n: orbit coordinate overflowed at step " +
                                         std::to_string(i + 1));
    }
    return x;
}

std::vector<Point> sample_space(const DynamicalSystemSpec& spec, double delta) {
    if (!(delta > 0)) throw std::invalid_argument("sample_space: delta must be positive");
    return spec.sampler(delta);
}

double rotation_number_estimate(const DynamicalSystemSpec& spec, double x0, std::size_t n) {
    double x = x0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = spec.step({x})[0];
        total += frac(y - x);
        x = y;
    }
    return total / static_cast<double>(n);
}

}  // namespace oge
