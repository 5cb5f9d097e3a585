#include "glap/young.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glap/gridutil.hpp"

namespace glap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_domain_field(const std::array<double, 2>& dom) {
    if (!(dom[0] > 0.0) || !(dom[1] > dom[0]))
        throw std::invalid_argument("young: eval_domain must satisfy 0 < lo < hi");
}

double eval_power(double p, YoungEval w, double t) {
    switch (w) {
        case YoungEval::G: return std::pow(t, p) / p;
        case YoungEval::g: return std::pow(t, p - 1.0);
        case YoungEval::gprime: return (p - 1.0) * std::pow(t, p - 2.0);
    }
    return 0.0;
}

// G = t^p ln^a(1+t); a = 0 collapses to the exact monomial t^p.
double eval_plog(double p, double a, YoungEval w, double t) {
    if (a == 0.0) {
        switch (w) {
            case YoungEval::G: return std::pow(t, p);
            case YoungEval::g: return p * std::pow(t, p - 1.0);
            case YoungEval::gprime: return p * (p - 1.0) * std::pow(t, p - 2.0);
        }
        return 0.0;
    }
    if (t == 0.0) {
        if (w == YoungEval::gprime) return p + a > 2.0 ? 0.0 : kInf;
        return 0.0;
    }
    const double L = std::log1p(t);
    const double u = t / (1.0 + t);
    switch (w) {
        case YoungEval::G: return std::pow(t, p) * std::pow(L, a);
        case YoungEval::g:
            return std::pow(t, p - 1.0) * std::pow(L, a - 1.0) * (p * L + a * u);
        case YoungEval::gprime:
            return std::pow(t, p - 2.0) * std::pow(L, a - 2.0) *
                   (p * (p - 1.0) * L * L + 2.0 * p * a * L * u + a * u * u * ((a - 1.0) - L));
    }
    return 0.0;
}

double eval_double_power(double p, double q, YoungEval w, double t) {
    switch (w) {
        case YoungEval::G: return std::pow(t, p) / p + std::pow(t, q) / q;
        case YoungEval::g: return std::pow(t, p - 1.0) + std::pow(t, q - 1.0);
        case YoungEval::gprime:
            return (p - 1.0) * std::pow(t, p - 2.0) + (q - 1.0) * std::pow(t, q - 2.0);
    }
    return 0.0;
}

// Hermite basis integrals from 0 to s (for G between knots).
inline double i00(double s) { return ((0.5 * s - 1.0) * s * s + 1.0) * s; }
inline double i10(double s) { return (((0.25 * s - 2.0 / 3.0) * s + 0.5) * s) * s; }
inline double i01(double s) { return (1.0 - 0.5 * s) * s * s * s; }
inline double i11(double s) { return (0.25 * s - 1.0 / 3.0) * s * s * s; }

double eval_tabulated(const YoungFunction& yf, YoungEval w, double t) {
    const auto& tt = yf.table_t;
    const auto& gg = yf.table_g;
    const auto& mm = yf.table_slopes;
    const auto& GG = yf.table_G;
    const std::size_t n = tt.size();
    if (t > tt.back() * 10.0)
        throw std::domain_error("tabulated Young function evaluated beyond 10x its table range");
    if (t == 0.0) {
        if (w != YoungEval::gprime) return 0.0;
        const double r = yf.head_exponent;
        return r > 1.0 ? 0.0 : (r == 1.0 ? gg.front() / tt.front() : kInf);
    }
    if (t < tt.front()) {  // power-law head g = g0 (t/t0)^r
        const double r = yf.head_exponent;
        const double gv = gg.front() * std::pow(t / tt.front(), r);
        switch (w) {
            case YoungEval::G: return gv * t / (r + 1.0);
            case YoungEval::g: return gv;
            case YoungEval::gprime: return r * gv / t;
        }
    }
    if (t > tt.back()) {  // power-law tail
        const double r = yf.tail_exponent;
        const double gv = gg.back() * std::pow(t / tt.back(), r);
        switch (w) {
            case YoungEval::G:
                return GG.back() +
                       gg.back() * tt.back() / (r + 1.0) * (std::pow(t / tt.back(), r + 1.0) - 1.0);
            case YoungEval::g: return gv;
            case YoungEval::gprime: return r * gv / t;
        }
    }
    auto it = std::upper_bound(tt.begin(), tt.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(tt.begin(), it));
    if (i == 0) i = 1;
    if (i >= n) i = n - 1;
    --i;  // interval [i, i+1]
    const double h = tt[i + 1] - tt[i];
    const double s = (t - tt[i]) / h;
    switch (w) {
        case YoungEval::G:
            return GG[i] + h * (i00(s) * gg[i] + i10(s) * h * mm[i] + i01(s) * gg[i + 1] +
                                i11(s) * h * mm[i + 1]);
        case YoungEval::g: {
            const double h00 = (2.0 * s - 3.0) * s * s + 1.0;
            const double h10 = ((s - 2.0) * s + 1.0) * s;
            const double h01 = (3.0 - 2.0 * s) * s * s;
            const double h11 = (s - 1.0) * s * s;
            return h00 * gg[i] + h10 * h * mm[i] + h01 * gg[i + 1] + h11 * h * mm[i + 1];
        }
        case YoungEval::gprime: {
            const double d00 = 6.0 * s * (s - 1.0);
            const double d10 = (3.0 * s - 4.0) * s + 1.0;
            const double d01 = -6.0 * s * (s - 1.0);
            const double d11 = (3.0 * s - 2.0) * s;
            return (d00 * gg[i] + d01 * gg[i + 1]) / h + d10 * mm[i] + d11 * mm[i + 1];
        }
    }
    return 0.0;
}

// Cap for root searches in argument space: tabulated kinds may only be
// evaluated up to 10x their table.
double argument_cap(const YoungFunction& yf) {
    if (yf.kind != YoungKind::tabulated) return kInf;
    return yf.table_t.back() * 10.0 * (1.0 - 1e-9);
}

}  // namespace

YoungFunction YoungFunction::make_power(double p, std::array<double, 2> dom) {
    YoungFunction yf;
    yf.kind = YoungKind::power;
    yf.p = p;
    yf.eval_domain = dom;
    validate(yf);
    return yf;
}

YoungFunction YoungFunction::make_plog(double p, double alpha, std::array<double, 2> dom) {
    YoungFunction yf;
    yf.kind = YoungKind::plog;
    yf.p = p;
    yf.alpha = alpha;
    yf.eval_domain = dom;
    validate(yf);
    return yf;
}

YoungFunction YoungFunction::make_double_power(double p, double q, std::array<double, 2> dom) {
    YoungFunction yf;
    yf.kind = YoungKind::double_power;
    yf.p = p;
    yf.q = q;
    yf.eval_domain = dom;
    validate(yf);
    return yf;
}

YoungFunction YoungFunction::make_tabulated(std::vector<double> t, std::vector<double> g,
                                            std::array<double, 2> dom) {
    if (t.size() != g.size()) throw std::invalid_argument("tabulated: t and g sizes differ");
    if (t.size() < 4) throw std::invalid_argument("tabulated: need at least 4 samples");
    if (!(t.front() > 0.0) || !(g.front() > 0.0))
        throw std::invalid_argument("tabulated: samples must be positive");
    const std::size_t n = t.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(t[i + 1] > t[i]) || !(g[i + 1] > g[i]))
            throw std::invalid_argument("tabulated: samples must be strictly increasing");

    YoungFunction yf;
    yf.kind = YoungKind::tabulated;
    yf.table_t = std::move(t);
    yf.table_g = std::move(g);
    const auto& tt = yf.table_t;
    const auto& gg = yf.table_g;

    // Fritsch-Carlson monotone cubic slopes for g.
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (gg[i + 1] - gg[i]) / (tt[i + 1] - tt[i]);
    auto& m = yf.table_slopes;
    m.assign(n, 0.0);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) m[i] = 0.5 * (d[i - 1] + d[i]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = m[i] / d[i], b = m[i + 1] / d[i];
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            m[i] = tau * a * d[i];
            m[i + 1] = tau * b * d[i];
        }
    }

    yf.head_exponent = std::log(gg[1] / gg[0]) / std::log(tt[1] / tt[0]);
    yf.tail_exponent = std::log(gg[n - 1] / gg[n - 2]) / std::log(tt[n - 1] / tt[n - 2]);

    // G at the knots: power-law head integral plus exact Hermite integrals.
    auto& GG = yf.table_G;
    GG.assign(n, 0.0);
    GG[0] = gg[0] * tt[0] / (yf.head_exponent + 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = tt[i + 1] - tt[i];
        GG[i + 1] = GG[i] + h * 0.5 * (gg[i] + gg[i + 1]) + h * h * (m[i] - m[i + 1]) / 12.0;
    }

    yf.eval_domain = (dom[0] == 0.0 && dom[1] == 0.0) ? std::array<double, 2>{tt.front(), tt.back()}
                                                      : dom;
    validate(yf);
    return yf;
}

void validate(const YoungFunction& yf, int n_samples) {
    switch (yf.kind) {
        case YoungKind::power:
            if (!(yf.p > 1.0)) throw std::invalid_argument("power: requires p > 1");
            break;
        case YoungKind::plog:
            if (!(yf.p > 1.0)) throw std::invalid_argument("plog: requires p > 1");
            if (!(yf.alpha >= 0.0)) throw std::invalid_argument("plog: requires alpha >= 0");
            break;
        case YoungKind::double_power:
            if (!(yf.p > 1.0) || !(yf.q > 1.0))
                throw std::invalid_argument("double_power: requires p, q > 1");
            break;
        case YoungKind::tabulated:
            if (yf.table_t.size() < 4 || yf.table_t.size() != yf.table_g.size() ||
                yf.table_slopes.size() != yf.table_t.size())
                throw std::invalid_argument("tabulated: build through make_tabulated");
            break;
    }
    check_domain_field(yf.eval_domain);

    const auto ts = logspace(yf.eval_domain[0], yf.eval_domain[1], n_samples);
    double prev_G = 0.0;
    for (double t : ts) {
        const double G = evaluate(yf, YoungEval::G, t);
        const double g = evaluate(yf, YoungEval::g, t);
        const double gp = evaluate(yf, YoungEval::gprime, t);
        if (!(G > prev_G) || !(g > 0.0))
            throw std::invalid_argument("young: G must be strictly increasing with g > 0");
        if (gp < -1e-9 * g / t)
            throw std::invalid_argument("young: g must be nondecreasing");
        // g should match the difference quotient of G
        const double h = 1e-4 * t;
        const double dq = (evaluate(yf, YoungEval::G, t + h) - evaluate(yf, YoungEval::G, t - h)) /
                          (2.0 * h);
        if (std::abs(dq - g) > 0.01 * std::max(g, 1e-300))
            throw std::invalid_argument("young: g inconsistent with derivative of G");
        prev_G = G;
    }
}

double evaluate(const YoungFunction& yf, YoungEval which, double t) {
    if (t < 0.0) throw std::domain_error("young: evaluate requires t >= 0");
    switch (yf.kind) {
        case YoungKind::power: return eval_power(yf.p, which, t);
        case YoungKind::plog: return eval_plog(yf.p, yf.alpha, which, t);
        case YoungKind::double_power: return eval_double_power(yf.p, yf.q, which, t);
        case YoungKind::tabulated: return eval_tabulated(yf, which, t);
    }
    throw std::logic_error("young: unknown kind");
}

namespace detail {

double solve_increasing(const ScalarFn& F, const ScalarFn* dF, double target, double guess,
                        double rel_tol, const char* what, double x_cap) {
    if (target == 0.0) return 0.0;
    if (!(target > 0.0)) throw std::domain_error(std::string(what) + ": target must be >= 0");

    double lo = std::min(guess > 0.0 ? guess : 1.0, x_cap);
    double hi = lo;
    double f_lo = F(lo);
    for (int k = 0; f_lo > target; ++k) {
        hi = lo;
        lo *= 0.5;
        if (k > 2100 || lo < 1e-300)
            throw std::range_error(std::string(what) + ": no lower bracket");
        f_lo = F(lo);
    }
    double f_hi = F(hi);
    for (int k = 0; f_hi < target; ++k) {
        if (hi >= x_cap)
            throw std::range_error(std::string(what) + ": target not reachable (saturation)");
        lo = hi;
        hi = std::min(2.0 * hi, x_cap);
        if (k > 2100 || hi > 1e300)
            throw std::range_error(std::string(what) + ": target not reachable (saturation)");
        f_hi = F(hi);
    }

    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 200; ++k) {
        const double fx = F(x);
        if (fx < target)
            lo = x;
        else
            hi = x;
        double next = 0.5 * (lo + hi);
        if (dF) {
            const double d = (*dF)(x);
            if (d > 0.0) {
                const double nx = x - (fx - target) / d;
                if (nx > lo && nx < hi) next = nx;
            }
        }
        x = next;
        if (hi - lo <= rel_tol * std::max(std::abs(hi), 1e-300)) break;
    }
    return x;
}

}  // namespace detail

double inverse_G(const YoungFunction& yf, double y) {
    if (y < 0.0) throw std::domain_error("inverse_G: negative value");
    if (y == 0.0) return 0.0;
    ScalarFn F = [&](double t) { return evaluate(yf, YoungEval::G, t); };
    ScalarFn d = [&](double t) { return evaluate(yf, YoungEval::g, t); };
    const double cap = argument_cap(yf);
    const double guess = yf.kind == YoungKind::tabulated
                             ? std::sqrt(yf.table_t.front() * yf.table_t.back())
                             : 1.0;
    return detail::solve_increasing(F, &d, y, guess, 1e-13, "inverse_G", cap);
}

double complementary(const YoungFunction& yf, double t) {
    if (t < 0.0) throw std::domain_error("complementary: requires t >= 0");
    if (t == 0.0) return 0.0;
    ScalarFn F = [&](double w) { return evaluate(yf, YoungEval::g, w); };
    ScalarFn d = [&](double w) { return evaluate(yf, YoungEval::gprime, w); };
    const double cap = argument_cap(yf);
    const double guess = yf.kind == YoungKind::tabulated
                             ? std::sqrt(yf.table_t.front() * yf.table_t.back())
                             : 1.0;
    const double w = detail::solve_increasing(F, &d, t, guess, 1e-13, "complementary", cap);
    return t * w - evaluate(yf, YoungEval::G, w);
}

LiebermanBands lieberman_exponents(const YoungFunction& yf, int n_samples) {
    const auto ts = logspace(yf.eval_domain[0], yf.eval_domain[1], n_samples);
    LiebermanBands out;
    double r1_min = kInf, r1_max = -kInf, r2_min = kInf, r2_max = -kInf;
    for (double t : ts) {
        const double G = evaluate(yf, YoungEval::G, t);
        const double g = evaluate(yf, YoungEval::g, t);
        const double gp = evaluate(yf, YoungEval::gprime, t);
        const double r1 = gp * t / g;
        const double r2 = t * g / G;
        r1_min = std::min(r1_min, r1);
        r1_max = std::max(r1_max, r1);
        r2_min = std::min(r2_min, r2);
        r2_max = std::max(r2_max, r2);
    }
    out.p_minus_hat = 1.0 + r1_min;
    out.p_plus_hat = 1.0 + r1_max;
    out.ratio2_min = r2_min;
    out.ratio2_max = r2_max;
    return out;
}

double delta2_constant(const YoungFunction& yf, int n_samples) {
    const auto ts = logspace(yf.eval_domain[0], yf.eval_domain[1] / 2.0, n_samples);
    double c = 0.0;
    for (double t : ts)
        c = std::max(c, evaluate(yf, YoungEval::G, 2.0 * t) / evaluate(yf, YoungEval::G, t));
    return c;
}

RegVarResult regvar_exponent(const YoungFunction& yf, std::span<const double> s_list,
                             std::span<const double> t_grid) {
    if (s_list.empty()) throw std::invalid_argument("regvar_exponent: empty s_list");
    if (t_grid.size() < 2) throw std::invalid_argument("regvar_exponent: t_grid needs >= 2 points");
    for (double t : t_grid)
        if (!(t > 0.0)) throw std::invalid_argument("regvar_exponent: t_grid must be positive");

    const double s_star = *std::max_element(s_list.begin(), s_list.end());
    std::vector<double> lx, ly;
    lx.reserve(t_grid.size());
    ly.reserve(t_grid.size());
    const double g_star = evaluate(yf, YoungEval::g, s_star);
    for (double t : t_grid) {
        lx.push_back(std::log(t));
        ly.push_back(std::log(evaluate(yf, YoungEval::g, s_star * t) / g_star));
    }
    const auto line = lsq_fit(lx, ly);

    RegVarResult out;
    out.p_hat = 1.0 + line.slope;
    double dev_at_star = 0.0;
    for (double s : s_list) {
        const double gs = evaluate(yf, YoungEval::g, s);
        double dev = 0.0;
        for (double t : t_grid)
            dev = std::max(dev,
                           std::abs(evaluate(yf, YoungEval::g, s * t) / gs -
                                    std::pow(t, out.p_hat - 1.0)));
        out.deviation_history.push_back(dev);
        if (s == s_star) dev_at_star = dev;
    }
    out.not_regularly_varying_warning = dev_at_star > 0.05;
    return out;
}

ExponentReport exponent_report(const YoungFunction& yf, int n_samples) {
    ExponentReport r;
    const auto lb = lieberman_exponents(yf, n_samples);
    r.p_minus_hat = lb.p_minus_hat;
    r.p_plus_hat = lb.p_plus_hat;
    r.delta2_constant = delta2_constant(yf, n_samples);

    // regvar probe confined so every s*t stays inside eval_domain
    const double t_max = yf.eval_domain[1];
    double t_lo = std::max(0.05, 8.0 * yf.eval_domain[0] / t_max);
    t_lo = std::min(t_lo, 0.5);
    const std::vector<double> s_list{t_max / 8.0, t_max / 4.0, t_max / 2.0, t_max};
    const auto t_grid = logspace(t_lo, 1.0, 25);
    r.regvar_p_hat = regvar_exponent(yf, s_list, t_grid).p_hat;

    r.sample_range = yf.eval_domain;
    r.n_samples = n_samples;
    return r;
}

double phi_implicit(const YoungFunction& yf, const ScalarFn& f, double t) {
    if (!(t > 0.0)) throw std::domain_error("phi_implicit: requires t > 0");
    const double ft = f(t);
    if (!(ft > 0.0)) throw std::domain_error("phi_implicit: requires f(t) > 0");
    ScalarFn F = [&](double x) { return x * evaluate(yf, YoungEval::g, t * x); };
    ScalarFn d = [&](double x) {
        return evaluate(yf, YoungEval::g, t * x) + t * x * evaluate(yf, YoungEval::gprime, t * x);
    };
    return detail::solve_increasing(F, &d, ft, 1.0, 1e-13, "phi_implicit", argument_cap(yf) / t);
}

double varphi(const YoungFunction& yf, const ScalarFn& f, double t) {
    if (!(t > 0.0)) throw std::domain_error("varphi: requires t > 0");
    const double ft = f(t);
    if (!(ft >= 0.0)) throw std::domain_error("varphi: requires f(t) >= 0");
    return inverse_G(yf, t * ft) / t;
}

PhiComparison phi_ratio_bounds(const YoungFunction& yf, const ScalarFn& f, double t_min,
                               double t_max, int n_samples) {
    const auto ts = logspace(t_min, t_max, n_samples);
    PhiComparison out{kInf, -kInf};
    for (double t : ts) {
        const double ratio = phi_implicit(yf, f, t) / varphi(yf, f, t);
        out.k_minus_hat = std::min(out.k_minus_hat, ratio);
        out.k_plus_hat = std::max(out.k_plus_hat, ratio);
    }
    return out;
}

double young_inequality_constant(const YoungFunction& yf, int n_samples) {
    const auto ts = logspace(yf.eval_domain[0], yf.eval_domain[1], n_samples);
    double c = 0.0;
    for (double t : ts) {
        const double gt = evaluate(yf, YoungEval::g, t);
        const double Gt = evaluate(yf, YoungEval::G, t);
        for (double s : ts)
            c = std::max(c, gt * s / (Gt + evaluate(yf, YoungEval::G, s)));
    }
    return c;
}

}  // namespace glap
