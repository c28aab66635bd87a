#include "oge/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace oge {

namespace {

constexpr double kPi = std::numbers::pi;

int bitlen(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<int>(boost::multiprecision::msb(abs(v))) + 1;
}

BigInt ceil_rat(const BigRat& r) {
    BigInt num = numerator(r), den = denominator(r);
    if (num <= 0) return 0;
    return (num + den - 1) / den;
}

BigRat pow2_rat(int e) {
    if (e >= 0) return BigRat(BigInt(1) << e);
    return BigRat(1, BigInt(1) << (-e));
}

// Floor/upper rational square roots with 64 guard bits.
BigRat rat_sqrt_lower(const BigRat& x) {
    if (x <= 0) return 0;
    const int s = 64;
    BigInt v = (numerator(x) << (2 * s)) / denominator(x);
    return BigRat(sqrt(v), BigInt(1) << s);
}

BigRat rat_sqrt_upper(const BigRat& x) {
    if (x <= 0) return 0;
    const int s = 64;
    BigInt v = (numerator(x) << (2 * s)) / denominator(x);
    return BigRat(sqrt(v) + 2, BigInt(1) << s);
}

// Largest power of two <= r (r > 0).
BigRat dyadic_floor_pow2(const BigRat& r) {
    if (r <= 0) throw std::invalid_argument("dyadic_floor_pow2: needs positive input");
    const int e = bitlen(numerator(r)) - bitlen(denominator(r));
    for (int cand = e + 1; cand >= e - 2; --cand) {
        const BigRat p = pow2_rat(cand);
        if (p <= r) return p;
    }
    throw std::logic_error("dyadic_floor_pow2: search failed");
}

// Scaled float m * 2^e for rationals far outside double range.
struct XF {
    double m = 0.0;
    long e = 0;

    void normalize() {
        if (m == 0) {
            e = 0;
            return;
        }
        int ex;
        m = std::frexp(m, &ex);
        e += ex;
    }
    static XF from_rat(const BigRat& r) {
        if (r == 0) return {0.0, 0};
        const bool neg = r < 0;
        const BigInt num = abs(numerator(r)), den = denominator(r);
        const int shift = 64 + std::max(0, bitlen(den) - bitlen(num));
        const BigInt t = (num << shift) / den;
        const int tb = bitlen(t);
        const int drop = std::max(0, tb - 53);
        const double mant = static_cast<double>((t >> drop).convert_to<long long>());
        XF out{neg ? -mant : mant, static_cast<long>(drop - shift)};
        out.normalize();
        return out;
    }
    XF mul(const XF& o) const {
        XF r{m * o.m, e + o.e};
        r.normalize();
        return r;
    }
    XF div(const XF& o) const {
        XF r{m / o.m, e - o.e};
        r.normalize();
        return r;
    }
    double to_double() const {
        if (m == 0) return 0;
        if (e > 1020) return m > 0 ? 1e308 : -1e308;
        if (e < -1060) return 0.0;
        return std::ldexp(m, static_cast<int>(e));
    }
};

double rat_to_double(const BigRat& r) { return XF::from_rat(r).to_double(); }

double log2_big(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("log2_big: positive input required");
    const int bits = bitlen(n);
    if (bits <= 53) return std::log2(n.convert_to<double>());
    const double top = static_cast<double>((n >> (bits - 53)).convert_to<long long>());
    return std::log2(top) + (bits - 53);
}

// sin(pi f) for f in [0,1), accurate for tiny f.
XF sin_pi_frac(const BigRat& f) {
    const BigRat g = f <= BigRat(1, 2) ? f : BigRat(1) - f;
    if (g == 0) return {0.0, 0};
    XF xg = XF::from_rat(g);
    const double gd = xg.to_double();
    if (gd > 1e-8) {
        XF r{std::sin(kPi * gd), 0};
        r.normalize();
        return r;
    }
    const double corr = 1.0 - (kPi * gd) * (kPi * gd) / 6.0;
    return xg.mul(XF{kPi * corr, 0});
}

BigRat frac_rat(BigRat x) {
    x -= BigRat(numerator(x) / denominator(x));
    if (x < 0) x += 1;
    return x;
}

}  // namespace

// --- target ------------------------------------------------------------------

TargetSpec TargetSpec::by_name(const std::string& name) {
    if (name == "log2(n+2)" || name == "log2") return log2_shifted();
    if (name == "n^(1/4)" || name == "quarter") return quarter_power();
    if (name == "constant") return constant_seq(1.0);
    throw std::invalid_argument("unknown cascade target: " + name);
}

std::string TargetSpec::name() const {
    switch (kind_) {
        case Kind::Log2: return "log2(n+2)";
        case Kind::QuarterPower: return "n^(1/4)";
        case Kind::Constant: return "constant";
    }
    return "?";
}

double TargetSpec::eval(const BigInt& n) const {
    switch (kind_) {
        case Kind::Log2: return log2_big(n + 2);
        case Kind::QuarterPower: return std::exp2(log2_big(n) / 4.0);
        case Kind::Constant: return constant_;
    }
    return 0;
}

BigRat TargetSpec::lower(const BigInt& n) const { return BigRat(eval(n) * (1.0 - 1e-9)); }
BigRat TargetSpec::upper(const BigInt& n) const { return BigRat(eval(n) * (1.0 + 1e-9)); }

BigInt TargetSpec::threshold(const BigRat& y) const {
    switch (kind_) {
        case Kind::Log2: {
            const BigInt e = ceil_rat(y);
            if (e <= 0) return 1;
            if (e > 4'000'000)
                throw std::runtime_error(
                    "cascade build: target too slow for the integer budget "
                    "(offset_below_target needs a cutpoint with " +
                    e.convert_to<std::string>() + " bits)");
            return (BigInt(1) << e.convert_to<unsigned>()) - 2;
        }
        case Kind::QuarterPower: {
            const BigInt c = ceil_rat(y) + 1;
            return c * c * c * c;
        }
        case Kind::Constant:
            throw std::invalid_argument("constant target has no thresholds");
    }
    return 1;
}

// --- convergents ---------------------------------------------------------------

std::vector<ConvergentInfo> convergents(const std::vector<BigInt>& partial_quotients) {
    if (partial_quotients.empty()) throw std::invalid_argument("convergents: no quotients");
    for (const auto& r : partial_quotients)
        if (r < 1) throw std::invalid_argument("convergents: quotients must be positive integers");
    const int L = static_cast<int>(partial_quotients.size());
    std::vector<ConvergentInfo> out(L + 1);
    out[0].p = 0;
    out[0].q = 1;
    BigInt pm1 = 1, qm1 = 0;  // index -1
    for (int k = 1; k <= L; ++k) {
        const BigInt& r = partial_quotients[k - 1];
        out[k].p = r * out[k - 1].p + pm1;
        out[k].q = r * out[k - 1].q + qm1;
        pm1 = out[k - 1].p;
        qm1 = out[k - 1].q;
    }
    const BigInt &pL = out[L].p, &qL = out[L].q;
    for (int k = 1; k <= L; ++k) {
        out[k].dist = BigRat(abs(out[k].q * pL - out[k].p * qL), qL);
        if (k < L) {
            const BigInt& rn = partial_quotients[k];
            out[k].bracket_lo = BigRat(1, (rn + 2) * out[k].q);
            out[k].bracket_hi = BigRat(1, rn * out[k].q);
            out[k].bracket_ok = out[k].bracket_lo <= out[k].dist && out[k].dist <= out[k].bracket_hi;
        }
    }
    return out;
}

// --- Weyl sums ------------------------------------------------------------------

double weyl_sum(double b, double q, double alpha, std::size_t n, double x, bool derivative) {
    double sum = 0.0, comp = 0.0;  // compensated accumulation
    for (std::size_t j = 0; j < n; ++j) {
        const double phase = 2.0 * kPi * q * (x + static_cast<double>(j) * alpha);
        const double term = derivative ? -2.0 * kPi * b * q * std::sin(phase) : b * std::cos(phase);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

// --- certificate -----------------------------------------------------------------

nlohmann::json CertItem::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["stage"] = stage;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["slack"] = slack;
    j["pass"] = pass;
    if (eps > 0) j["eps"] = eps;
    return j;
}

void CascadeCertificate::add(CertItem item) {
    all_pass = all_pass && item.pass;
    items.push_back(std::move(item));
}

nlohmann::json CascadeCertificate::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& it : items) arr.push_back(it.to_json());
    nlohmann::json j;
    j["all_pass"] = all_pass;
    j["items"] = arr;
    return j;
}

// --- params ------------------------------------------------------------------------

namespace {

std::string rat_str(const BigRat& r) {
    return numerator(r).convert_to<std::string>() + "/" + denominator(r).convert_to<std::string>();
}

BigRat rat_parse(const std::string& s) {
    const auto pos = s.find('/');
    if (pos == std::string::npos) return BigRat(BigInt(s));
    return BigRat(BigInt(s.substr(0, pos)), BigInt(s.substr(pos + 1)));
}

}  // namespace

double CascadeParams::alpha() const { return rat_to_double(BigRat(p.back(), q.back())); }

std::vector<CascadeStage> CascadeParams::system_stages() const {
    std::vector<CascadeStage> st;
    const BigInt &pa = p.back(), &qa = q.back();
    for (int k = 1; k <= stages; ++k) {
        CascadeStage g;
        g.amplitude = rat_to_double(amplitudes[k - 1]);
        g.frequency = bitlen(q[k]) <= 53 ? q[k].convert_to<double>() : 1e18;
        g.phase_step = rat_to_double(BigRat((q[k] * pa) % qa, qa));
        st.push_back(g);
    }
    return st;
}

DynamicalSystemSpec CascadeParams::to_system() const {
    nlohmann::json meta;
    meta["target"] = target_name;
    meta["stages"] = stages;
    meta["eps"] = eps;
    meta["alpha"] = alpha();
    return cascade_system(system_stages(), alpha(), meta);
}

nlohmann::json CascadeParams::to_json() const {
    nlohmann::json j;
    j["target"] = target_name;
    j["stages"] = stages;
    j["eps"] = eps;
    auto ints = [](const std::vector<BigInt>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v) a.push_back(x.convert_to<std::string>());
        return a;
    };
    auto rats = [](const std::vector<BigRat>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v) a.push_back(rat_str(x));
        return a;
    };
    j["partial_quotients"] = ints(partial_quotients);
    j["p"] = ints(p);
    j["q"] = ints(q);
    j["amplitudes"] = rats(amplitudes);
    j["cutpoints"] = ints(cutpoints);
    j["nk_sq"] = rats(nk_sq);
    j["slopes"] = rats(slopes);
    j["offsets"] = rats(offsets);
    j["certificate"] = certificate.to_json();
    return j;
}

CascadeParams CascadeParams::from_json(const nlohmann::json& j) {
    CascadeParams c;
    c.target_name = j.at("target").get<std::string>();
    c.stages = j.at("stages").get<int>();
    c.eps = j.at("eps").get<double>();
    auto ints = [](const nlohmann::json& a) {
        std::vector<BigInt> v;
        for (const auto& x : a) v.push_back(BigInt(x.get<std::string>()));
        return v;
    };
    auto rats = [](const nlohmann::json& a) {
        std::vector<BigRat> v;
        for (const auto& x : a) v.push_back(rat_parse(x.get<std::string>()));
        return v;
    };
    c.partial_quotients = ints(j.at("partial_quotients"));
    c.p = ints(j.at("p"));
    c.q = ints(j.at("q"));
    c.amplitudes = rats(j.at("amplitudes"));
    c.cutpoints = ints(j.at("cutpoints"));
    c.nk_sq = rats(j.at("nk_sq"));
    c.slopes = rats(j.at("slopes"));
    c.offsets = rats(j.at("offsets"));
    return c;
}

// --- envelope -----------------------------------------------------------------------

double envelope_eval(const CascadeParams& params, const BigInt& n) {
    if (n < 1) throw std::invalid_argument("envelope_eval: n must be >= 1");
    if (n > params.cutpoints.back())
        throw std::invalid_argument("envelope_eval: n exceeds the last cutpoint");
    // The value at a cutpoint is the next offset.
    for (int k = 1; k <= params.stages; ++k)
        if (n == params.cutpoints[k - 1]) return rat_to_double(params.offsets[k]);
    for (int k = 1; k <= params.stages; ++k) {
        const BigInt lo = k == 1 ? BigInt(0) : params.cutpoints[k - 2];
        if (n >= lo && n < params.cutpoints[k - 1])
            return rat_to_double(params.slopes[k - 1] * BigRat(n) + params.offsets[k - 1]);
    }
    throw std::logic_error("envelope_eval: piece lookup failed");
}

// --- exact-phase closed forms ----------------------------------------------------------

namespace {

// Birkhoff sums of the stage cosines in closed form with exact big-rational
// phase reductions; valid at astronomically large times.
struct PhaseEngine {
    BigInt pa, qa;  // alpha = pa/qa

    struct Stage {
        BigInt qk;
        BigRat b;
        BigInt wnum;  // q_k pa mod qa, so w_k = wnum/qa in [0,1)
    };
    std::vector<Stage> st;

    explicit PhaseEngine(const CascadeParams& c) : pa(c.p.back()), qa(c.q.back()) {
        for (int k = 1; k <= c.stages; ++k)
            st.push_back({c.q[k], c.amplitudes[k - 1], (c.q[k] * pa) % qa});
    }

    // S_t(phi_k)(x) = b [sin(pi t w)/sin(pi w)] cos(2 pi theta + pi (t-1) w)
    // (and the phi' variant), theta = frac(q_k x).
    double stage_sum(std::size_t k, const BigRat& x, const BigInt& t, bool derivative) const {
        const Stage& s = st[k];
        if (t == 0 || s.wnum == 0) return 0.0;
        const BigInt tw_num = t * s.wnum;
        XF num = sin_pi_frac(BigRat(tw_num % qa, qa));
        if ((tw_num / qa) % 2 != 0) num.m = -num.m;
        const XF den = sin_pi_frac(BigRat(s.wnum, qa));
        if (den.m == 0.0) return 0.0;
        const XF ratio = num.div(den);

        const BigInt t1w_num = (t - 1) * s.wnum;
        const BigRat theta = frac_rat(x * BigRat(s.qk));
        const double angle =
            2.0 * kPi * rat_to_double(theta) + kPi * rat_to_double(BigRat(t1w_num % qa, qa));
        double trig = derivative ? std::sin(angle) : std::cos(angle);
        if ((t1w_num / qa) % 2 != 0) trig = -trig;

        XF value = XF::from_rat(s.b).mul(ratio).mul(XF{trig, 0});
        if (derivative) {
            value = value.mul(XF::from_rat(BigRat(s.qk)));
            return -2.0 * kPi * value.to_double();
        }
        return value.to_double();
    }

    // Lifted fiber displacement of the orbit of (x, 0) after t steps; the
    // step convention applies phi at the rotated point.
    double lifted_y(const BigRat& x, const BigInt& t, bool derivative = false) const {
        const BigRat xs = frac_rat(x + BigRat(pa, qa));
        double y = 0;
        for (std::size_t k = 0; k < st.size(); ++k) y += stage_sum(k, xs, t, derivative);
        return y;
    }
};

double safe_double(const BigRat& r) { return rat_to_double(r); }

}  // namespace

// --- independent verification -----------------------------------------------------------

CascadeCertificate verify_bounds(const CascadeParams& c, std::size_t grid, double eps) {
    if (c.stages < 1 || c.q.size() != static_cast<std::size_t>(c.stages) + 2)
        throw std::invalid_argument("verify_bounds: incomplete params");
    CascadeCertificate cert;
    const int K = c.stages;
    const BigRat eps_r = BigRat(eps);

    // Convergent recurrence and approximation brackets.
    auto conv = convergents(c.partial_quotients);
    for (int k = 0; k <= K + 1; ++k) {
        CertItem it;
        it.id = "convergent_recurrence";
        it.stage = k;
        it.pass = conv[k].q == c.q[k] && conv[k].p == c.p[k];
        it.lhs = safe_double(BigRat(c.q[k]));
        it.rhs = safe_double(BigRat(conv[k].q));
        it.slack = it.pass ? 1.0 : 0.0;
        cert.add(it);
    }
    for (int k = 1; k <= K; ++k) {
        CertItem it;
        it.id = "approx_bracket";
        it.stage = k;
        it.pass = conv[k].bracket_ok;
        it.lhs = safe_double(conv[k].bracket_lo);
        it.rhs = safe_double(conv[k].bracket_hi);
        it.slack = safe_double(conv[k].dist);
        cert.add(it);
    }

    // Bookkeeping recomputed from the raw amplitudes and denominators.
    std::vector<BigRat> B(K + 1), D(K + 2), Csl(K + 2), nk2(K + 1);
    D[1] = 0;
    for (int k = 1; k <= K; ++k) {
        B[k] = c.amplitudes[k - 1] * BigRat(c.q[k]);
        D[k + 1] = D[k] + B[k] * BigRat(c.q[k + 1]);
        nk2[k] = BigRat(c.q[k + 1]) / B[k];
    }
    {
        BigRat tail = 0;
        Csl[K + 1] = 0;
        for (int k = K; k >= 1; --k) {
            tail += B[k];
            Csl[k] = tail;
        }
    }
    {
        CertItem it;
        it.id = "params_consistent";
        it.pass = true;
        for (int k = 1; k <= K; ++k)
            it.pass = it.pass && c.offsets[k] == D[k + 1] && c.slopes[k - 1] == Csl[k] &&
                      c.nk_sq[k - 1] == nk2[k];
        it.lhs = it.rhs = it.slack = it.pass ? 1.0 : 0.0;
        cert.add(it);
    }

    const TargetSpec target = c.target();

    {  // summable slope series (tails automatically decreasing)
        CertItem it;
        it.id = "summable_c1";
        it.lhs = safe_double(Csl[1]);
        it.rhs = 1.0;
        it.pass = Csl[1] < 1;
        it.slack = it.lhs > 0 ? it.rhs / it.lhs : 1e18;
        cert.add(it);
    }

    for (int k = 1; k <= K; ++k) {
        const BigInt m_prev = k == 1 ? BigInt(0) : c.cutpoints[k - 2];
        const BigInt& m_k = c.cutpoints[k - 1];
        const BigRat delta = B[k] * BigRat(c.q[k + 1]);

        {  // m_k below the linear range n_k
            CertItem it;
            it.id = "cut_below_linear_range";
            it.stage = k;
            it.pass = BigRat(m_k) * BigRat(m_k) < nk2[k];
            it.lhs = safe_double(BigRat(m_k));
            it.rhs = std::sqrt(std::max(safe_double(nk2[k]), 0.0));
            it.slack = it.lhs > 0 ? it.rhs / it.lhs : 1e18;
            cert.add(it);
        }
        {  // b_k m_{k-1} < 2^{-k} keeps earlier pieces inside their margins
            CertItem it;
            it.id = "margin_prev_cut";
            it.stage = k;
            const BigRat lhs = c.amplitudes[k - 1] * BigRat(m_prev);
            it.pass = lhs < pow2_rat(-k);
            it.lhs = safe_double(lhs);
            it.rhs = safe_double(pow2_rat(-k));
            it.slack = it.lhs > 0 ? it.rhs / it.lhs : 1e18;
            cert.add(it);
        }
        {  // partial envelopes stay below target - 2^{-k} on every piece
            CertItem it;
            it.id = "margin_new_segment";
            it.stage = k;
            it.pass = true;
            double worst = 1e300;
            for (int j = 1; j <= k; ++j) {
                BigRat cjk = 0;
                for (int i = j; i <= k; ++i) cjk += B[i];
                for (const BigInt& endpoint :
                     {j == 1 ? BigInt(1) : c.cutpoints[j - 2], c.cutpoints[j - 1]}) {
                    const BigRat lhs = cjk * BigRat(endpoint) + D[j] + pow2_rat(-k);
                    const BigRat rhs = target.lower(endpoint);
                    it.pass = it.pass && lhs < rhs;
                    worst = std::min(worst, safe_double(rhs - lhs));
                }
            }
            it.lhs = -worst;
            it.rhs = 0.0;
            it.slack = worst;
            cert.add(it);
        }
        {  // D_{k+1} + 2^{-k} <= a(m_k)
            CertItem it;
            it.id = "offset_below_target";
            it.stage = k;
            const BigRat lhs = D[k + 1] + pow2_rat(-k);
            const BigRat rhs = target.lower(m_k);
            it.pass = lhs <= rhs;
            it.lhs = safe_double(D[k + 1]);
            it.rhs = safe_double(rhs);
            it.slack = safe_double(rhs - lhs);
            cert.add(it);
        }
        {  // n_k * sum_{j>k} b_j q_j <= 2^{-k}: C1 proximity of truncations
            CertItem it;
            it.id = "tail_c1_proximity";
            it.stage = k;
            BigRat tail = 0;
            for (int j = k + 1; j <= K; ++j) tail += B[j];
            const BigRat lhs = rat_sqrt_upper(nk2[k]) * tail;
            it.pass = lhs <= pow2_rat(-k);
            it.lhs = safe_double(lhs);
            it.rhs = safe_double(pow2_rat(-k));
            it.slack = it.lhs > 0 ? it.rhs / it.lhs : 1e18;
            cert.add(it);
        }
        {  // 4 D_k^2 < delta_k, i.e. the history stays below half the drift
            CertItem it;
            it.id = "history_below_drift";
            it.stage = k;
            const BigRat lhs = 4 * D[k] * D[k];
            it.pass = lhs < delta;
            it.lhs = safe_double(lhs);
            it.rhs = safe_double(delta);
            it.slack = it.lhs > 0 ? it.rhs / it.lhs : 1e18;
            cert.add(it);
        }
        {  // separation capacity: b_k q_{k+1}/q_k > (2 eps/A)^2, A = 1/2;
           // fixed witness scale for k <= 3, stage-intrinsic scale beyond.
            CertItem it;
            it.id = "separation_capacity";
            it.stage = k;
            const BigRat ratio = c.amplitudes[k - 1] * BigRat(c.q[k + 1]) / BigRat(c.q[k]);
            if (k <= 3) {
                it.eps = eps;
                it.pass = ratio > 16 * eps_r * eps_r;
                it.lhs = safe_double(ratio);
                it.rhs = safe_double(16 * eps_r * eps_r);
                it.slack = it.rhs > 0 ? it.lhs / it.rhs : 1e18;
            } else {
                const double mu = 1.1;
                it.eps = 0.25 / mu * std::sqrt(std::max(safe_double(ratio), 0.0));
                it.pass = it.eps > 0;
                it.lhs = mu * mu;
                it.rhs = 1.0;
                it.slack = mu * mu;
            }
            cert.add(it);
        }
    }

    {  // full envelope below the target at every piece endpoint (the target
       // is concave, so endpoints decide each linear piece)
        CertItem it;
        it.id = "envelope_below_target";
        it.pass = true;
        double worst = 1e300;
        for (int k = 1; k <= K; ++k) {
            for (const BigInt& endpoint :
                 {k == 1 ? BigInt(1) : c.cutpoints[k - 2], c.cutpoints[k - 1]}) {
                const BigRat diff = target.lower(endpoint) - (Csl[k] * BigRat(endpoint) + D[k]);
                it.pass = it.pass && diff >= 0;
                worst = std::min(worst, safe_double(diff));
            }
            const BigRat diff = target.lower(c.cutpoints[k - 1]) - D[k + 1];
            it.pass = it.pass && diff >= 0;
            worst = std::min(worst, safe_double(diff));
        }
        it.lhs = -worst;
        it.rhs = 0.0;
        it.slack = worst;
        cert.add(it);
    }

    // Numeric Weyl bounds on the x-grid for the stages doubles can
    // represent, cross-checked against the exact-phase closed form.
    PhaseEngine engine(c);
    const double alpha_d = c.alpha();
    for (int k = 1; k <= K; ++k) {
        const double b = rat_to_double(c.amplitudes[k - 1]);
        if (bitlen(c.q[k]) > 40 || b < 1e-14) continue;
        const double qd = c.q[k].convert_to<double>();
        const double dist = safe_double(conv[k].dist);
        const double uniform_bound = 4.0 * kPi * b * qd / dist;
        const double n_lin =
            std::sqrt(safe_double(BigRat(c.q[k + 1]))) / (kPi * std::sqrt(2.0 * b * qd));
        const std::size_t n_probe = 1000;

        double worst_uniform = 0, worst_linear = 0;
        const std::size_t nx = std::max<std::size_t>(grid, 16);
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double x = static_cast<double>(ix) / static_cast<double>(nx);
            double sum = 0, compn = 0;
            for (std::size_t n = 1; n <= n_probe; ++n) {
                const double phase = 2.0 * kPi * qd * (x + static_cast<double>(n - 1) * alpha_d);
                const double term = -2.0 * kPi * b * qd * std::sin(phase);
                const double y = term - compn;
                const double t = sum + y;
                compn = (t - sum) - y;
                sum = t;
                worst_uniform = std::max(worst_uniform, std::fabs(sum) / uniform_bound);
                if (static_cast<double>(n) <= n_lin)
                    worst_linear =
                        std::max(worst_linear, std::fabs(sum) / (2.0 * kPi * b * qd * n + 1.0));
            }
        }
        CertItem u;
        u.id = "weyl_uniform_bound";
        u.stage = k;
        u.lhs = worst_uniform;
        u.rhs = 1.0;
        u.pass = worst_uniform <= 1.0;
        u.slack = worst_uniform > 0 ? 1.0 / worst_uniform : 1e18;
        cert.add(u);
        CertItem l;
        l.id = "weyl_linear_bound";
        l.stage = k;
        l.lhs = worst_linear;
        l.rhs = 1.0;
        l.pass = worst_linear <= 1.0;
        l.slack = worst_linear > 0 ? 1.0 / worst_linear : 1e18;
        cert.add(l);
    }

    {  // direct summation vs exact-phase closed form (independent routes)
        CertItem it;
        it.id = "weyl_closed_form_match";
        double worst = 0;
        for (int ix = 0; ix < 8; ++ix) {
            const BigRat xr(2 * ix + 1, 16);
            for (const std::size_t t : {7ul, 64ul, 257ul}) {
                double direct = 0;
                for (const auto& s : engine.st) {
                    if (bitlen(s.qk) > 40) continue;
                    const double bq = rat_to_double(s.b);
                    if (bq < 1e-16) continue;
                    direct += weyl_sum(bq, s.qk.convert_to<double>(), alpha_d, t,
                                       rat_to_double(xr) + alpha_d, false);
                }
                const double closed = engine.lifted_y(xr, BigInt(t));
                worst = std::max(worst, std::fabs(direct - closed) / (1.0 + std::fabs(closed)));
            }
        }
        it.lhs = worst;
        it.rhs = 1e-6;
        it.pass = worst <= 1e-6;
        it.slack = worst > 0 ? it.rhs / worst : 1e18;
        cert.add(it);
    }

    {  // step-size hypothesis behind the lifted-crossing argument
        CertItem it;
        it.id = "witness_step_bound";
        BigRat twob = 0;
        for (int k = 1; k <= K; ++k) twob += 2 * c.amplitudes[k - 1];
        it.lhs = safe_double(twob);
        it.rhs = 1.0 - 2.0 * eps;
        it.pass = twob < BigRat(1) - 2 * eps_r;
        it.slack = it.lhs > 0 ? it.rhs / it.lhs : 1e18;
        cert.add(it);
    }

    // Dynamical separation witness: >= q_k pairwise (n_k, eps)-separated
    // points, certified through lifted fiber displacements at exact probe
    // times (the lift crossing eps forces an intermediate time with circle
    // distance above eps, by the step bound above).
    for (int k = 1; k <= std::min(3, K); ++k) {
        if (bitlen(c.q[k]) > 24) continue;
        const long long qk_ll = c.q[k].convert_to<long long>();
        const BigInt nk_floor = sqrt(numerator(nk2[k]) / denominator(nk2[k]));

        std::vector<BigRat> pts;
        for (long long i = 0; i < qk_ll; ++i) {
            const long long rung = (i * 89 + 21) % 128;
            pts.push_back(BigRat(4 * i + 1, 4 * qk_ll) + BigRat(rung - 64, 2048 * qk_ll));
        }
        std::set<BigInt> probe_set;
        for (BigInt t = 1; t <= nk_floor && probe_set.size() < 26; t <<= 1) probe_set.insert(t);
        for (int s = 0; s <= 8; ++s) {
            const BigInt t = nk_floor >> s;
            if (t >= 1) probe_set.insert(t);
        }
        for (int l = 1; l <= k; ++l) {
            const BigInt nl = sqrt(numerator(nk2[l]) / denominator(nk2[l]));
            if (nl >= 1) probe_set.insert(std::min(nl, nk_floor));
        }
        const std::vector<BigInt> probes(probe_set.begin(), probe_set.end());

        std::vector<std::vector<double>> ys(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (const auto& t : probes) ys[i].push_back(engine.lifted_y(pts[i], t));

        auto separated = [&](std::size_t a, std::size_t b) {
            for (std::size_t t = 0; t < probes.size(); ++t)
                if (std::fabs(ys[a][t] - ys[b][t]) > eps * 1.000001) return true;
            return false;
        };
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            bool ok = true;
            for (std::size_t j : kept)
                if (!separated(i, j)) {
                    ok = false;
                    break;
                }
            if (ok) kept.push_back(i);
        }
        CertItem it;
        it.id = "separation_witness";
        it.stage = k;
        it.eps = eps;
        it.lhs = static_cast<double>(kept.size());
        it.rhs = static_cast<double>(qk_ll);
        it.pass = kept.size() >= static_cast<std::size_t>(qk_ll);
        it.slack = it.rhs > 0 ? it.lhs / it.rhs : 1e18;
        cert.add(it);
    }

    return cert;
}

// --- builder ------------------------------------------------------------------------------

CascadeParams build_cascade(const TargetSpec& target, int stages, double eps) {
    if (!target.unbounded())
        throw std::invalid_argument("build_cascade: target must be unbounded");
    if (stages < 2 || stages > 8)
        throw std::invalid_argument("build_cascade: stages must be in 2..8");
    if (!(eps > 0) || eps >= 0.25)
        throw std::invalid_argument("build_cascade: eps must lie in (0, 1/4)");

    const int K = stages;
    const BigRat eps_r = BigRat(eps);
    const BigRat mu2(121, 100);        // separation-capacity margin, squared
    const BigRat clb2_margin(21, 20);  // drift-vs-history margin
    const BigRat plan(11, 10);         // cutpoint planning factor
    const BigRat mono(21, 20);         // envelope slope-vs-jump factor

    std::vector<BigInt> rs{1};  // r_1 = 1, so q_1 = 1
    std::vector<BigInt> qs{1, 1}, ps{0, 1};
    std::vector<BigRat> bs, Bs, nk2, n_upper;
    std::vector<BigInt> ms;
    std::vector<BigRat> Ds{0};  // D_1

    BigInt m_prev = 0;
    for (int k = 1; k <= K; ++k) {
        const BigInt q_k = qs[k];
        const BigRat D_k = Ds[k - 1];
        BigRat delta_req = 4 * D_k * D_k * clb2_margin;
        if (k <= 3) delta_req = std::max(delta_req, 16 * eps_r * eps_r * mu2 * BigRat(q_k * q_k));
        delta_req = std::max(delta_req, BigRat(1, 1024));

        const BigRat D_plan = D_k + plan * delta_req;
        BigInt m_k = target.threshold(D_plan + pow2_rat(-k) + BigRat(2, 5));
        if (m_k <= m_prev) m_k = m_prev + 1;

        BigRat b_k, delta_act, D_next;
        BigInt q_next, r_next;
        bool settled = false;
        for (int attempt = 0; attempt < 64 && !settled; ++attempt) {
            if (bitlen(m_k) > 4'000'000)
                throw std::runtime_error(
                    "cascade build: target too slow for the integer budget at stage " +
                    std::to_string(k) + " (offset_below_target)");
            BigRat b_cap = std::min(rat_sqrt_lower(delta_req), delta_req) / (mono * BigRat(m_k));
            for (int j = 1; j < k; ++j) b_cap = std::min(b_cap, pow2_rat(-k) / n_upper[j - 1]);
            if (m_prev > 0)
                b_cap = std::min(b_cap, pow2_rat(-k) * BigRat(q_k) / (2 * BigRat(m_prev)));
            if (b_cap <= 0)
                throw std::runtime_error("cascade build: amplitude budget exhausted at stage " +
                                         std::to_string(k) + " (tail_c1_proximity)");
            b_k = dyadic_floor_pow2(b_cap / BigRat(q_k));

            const BigInt base = ceil_rat(delta_req / (b_k * BigRat(q_k)));
            r_next = (base - qs[k - 1] + q_k - 1) / q_k;
            if (r_next < 1) r_next = 1;
            q_next = r_next * q_k + qs[k - 1];
            delta_act = b_k * BigRat(q_k) * BigRat(q_next);
            D_next = D_k + delta_act;

            // The target caps are the only gates that can fail with the caps
            // above; doubling the cutpoint restores them.
            const bool cub4 = D_next + pow2_rat(-k) <= target.lower(m_k);
            const bool cub3 =
                b_k * BigRat(q_k) * BigRat(m_k) + D_k + pow2_rat(-k) < target.lower(m_k);
            if (cub4 && cub3)
                settled = true;
            else
                m_k <<= 1;
        }
        if (!settled)
            throw std::runtime_error(
                "cascade build: target too slow for the headroom search at stage " +
                std::to_string(k) + " (offset_below_target)");

        const BigRat nk_sq_k = BigRat(q_next) / (b_k * BigRat(q_k));
        if (!(BigRat(m_k) * BigRat(m_k) < nk_sq_k))
            throw std::logic_error("cascade build: linear range fell below the cutpoint at stage " +
                                   std::to_string(k) + " (cut_below_linear_range)");
        if (!(4 * D_k * D_k < delta_act))
            throw std::logic_error("cascade build: drift headroom failed at stage " +
                                   std::to_string(k) + " (history_below_drift)");
        if (k <= 3 && !(b_k * BigRat(q_next) > 16 * eps_r * eps_r * BigRat(q_k)))
            throw std::logic_error("cascade build: separation capacity failed at stage " +
                                   std::to_string(k) + " (separation_capacity)");

        rs.push_back(r_next);
        ps.push_back(r_next * ps[k] + ps[k - 1]);
        qs.push_back(q_next);
        bs.push_back(b_k);
        Bs.push_back(b_k * BigRat(q_k));
        nk2.push_back(nk_sq_k);
        n_upper.push_back(rat_sqrt_upper(nk_sq_k));
        ms.push_back(m_k);
        Ds.push_back(D_next);
        m_prev = m_k;
    }

    CascadeParams out;
    out.target_name = target.name();
    out.stages = K;
    out.eps = eps;
    out.partial_quotients = rs;
    out.p = ps;
    out.q = qs;
    out.amplitudes = bs;
    out.cutpoints = ms;
    out.nk_sq = nk2;
    out.offsets = Ds;
    out.slopes.assign(K, BigRat(0));
    BigRat tail = 0;
    for (int k = K; k >= 1; --k) {
        tail += Bs[k - 1];
        out.slopes[k - 1] = tail;
    }

    out.certificate = verify_bounds(out, 2048, eps);
    if (!out.certificate.all_pass) {
        std::string failing = "unknown";
        for (const auto& it : out.certificate.items)
            if (!it.pass) {
                failing = it.id + " at stage " + std::to_string(it.stage);
                break;
            }
        throw std::runtime_error("cascade build: post-hoc verification failed: " + failing);
    }
    return out;
}

}  // namespace oge
