#include "dappell/integrals.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dappell {

bool is_f2_form(IntegralForm f)
{
    switch (f) {
    case IntegralForm::F2Euler1:
    case IntegralForm::F2EulerSimplex:
    case IntegralForm::F2LaplaceA:
    case IntegralForm::F2LaplaceB1:
    case IntegralForm::F2LaplaceB2:
    case IntegralForm::F2LaplaceT:
        return true;
    default:
        return false;
    }
}

std::string to_string(IntegralForm f)
{
    switch (f) {
    case IntegralForm::Euler1: return "euler1";
    case IntegralForm::EulerSimplex: return "euler-simplex";
    case IntegralForm::LaplaceA: return "laplace-a";
    case IntegralForm::LaplaceB1: return "laplace-b1";
    case IntegralForm::LaplaceB2: return "laplace-b2";
    case IntegralForm::LaplaceT1: return "laplace-t1";
    case IntegralForm::LaplaceT2: return "laplace-t2";
    case IntegralForm::F2Euler1: return "f2-euler1";
    case IntegralForm::F2EulerSimplex: return "f2-euler-simplex";
    case IntegralForm::F2LaplaceA: return "f2-laplace-a";
    case IntegralForm::F2LaplaceB1: return "f2-laplace-b1";
    case IntegralForm::F2LaplaceB2: return "f2-laplace-b2";
    case IntegralForm::F2LaplaceT: return "f2-laplace-t";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// quadrature rules
// ---------------------------------------------------------------------------

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) {
            nodes = it->second.first;
            weights = it->second.second;
            return;
        }
    }
    std::vector<double> x(n), w(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = {x, w};
    nodes = x;
    weights = w;
}

void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) {
            nodes = it->second.first;
            weights = it->second.second;
            return;
        }
    }
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double z;
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z = x[0] + 15.0 / (1.0 + 2.5 * n);
        else {
            const double ai = i - 1;
            z = x[i - 1] + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (x[i - 1] - x[i - 2]);
        }
        double pp = 0.0, p2 = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double p1 = 1.0;
            p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1);
            }
            pp = n * (p1 - p2) / z;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-14 * std::max(1.0, std::abs(z)))
                break;
        }
        x[i] = z;
        w[i] = -1.0 / (pp * n * p2);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache[n] = {x, w};
    nodes = x;
    weights = w;
}

namespace {

// composite Gauss-Legendre of f over [0,1]; per-panel partials are reduced
// in panel order so thread count never changes the result. Exceptions from
// integrand evaluations are captured and rethrown after the join (throwing
// across an OpenMP region terminates the process).
template <typename F>
cplx composite01(const F& f, int panels, int ppp, ExecPolicy exec)
{
    std::vector<double> gx, gw;
    gauss_legendre(ppp, gx, gw);
    std::vector<cplx> partial(static_cast<size_t>(panels));
    std::exception_ptr error;
    const double h = 1.0 / panels;
#pragma omp parallel for schedule(dynamic) if (exec == ExecPolicy::Parallel)
    for (int p = 0; p < panels; ++p) {
        try {
            const double lo = p * h;
            cplx acc = 0.0;
            for (int i = 0; i < ppp; ++i)
                acc += gw[static_cast<size_t>(i)] *
                       f(lo + 0.5 * h * (gx[static_cast<size_t>(i)] + 1.0));
            partial[static_cast<size_t>(p)] = acc * (0.5 * h);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    KahanAccumulator sum;
    for (cplx v : partial)
        sum.add(v);
    return sum.value();
}

// int_0^1 g(u, 1-u) du with the sin^2(pi s/2) endpoint map applied twice.
// One application leaves a fractional corner s^{2a-1} that stalls composite
// Gauss near 1e-6 for Re(a) close to 1/2; the iterate pushes the corner to
// s^{4a-1} and restores the target accuracy on both endpoints. 1-u is
// produced as cos^2 so the integrand never sees a cancelled endpoint.
template <typename G>
cplx regularized01(const G& g, int panels, int ppp, ExecPolicy exec)
{
    auto f = [&](double s) {
        const double s1 = std::sin(M_PI * s / 2.0);
        const double v = s1 * s1;
        const double j1 = 0.5 * M_PI * std::sin(M_PI * s);
        const double s2 = std::sin(M_PI * v / 2.0);
        const double c2 = std::cos(M_PI * v / 2.0);
        const double u = s2 * s2;
        const double omu = c2 * c2;
        const double j2 = 0.5 * M_PI * std::sin(M_PI * v);
        return j1 * j2 * g(u, omu);
    };
    return composite01(f, panels, ppp, exec);
}

// int_0^inf e^{-u} g(u) du by Gauss-Laguerre, node partials reduced in order
template <typename G>
cplx laguerre_integral(const G& g, int n, ExecPolicy exec)
{
    std::vector<double> x, w;
    gauss_laguerre(n, x, w);
    std::vector<cplx> partial(static_cast<size_t>(n));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (exec == ExecPolicy::Parallel)
    for (int i = 0; i < n; ++i) {
        try {
            partial[static_cast<size_t>(i)] =
                w[static_cast<size_t>(i)] * g(x[static_cast<size_t>(i)]);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    KahanAccumulator sum;
    for (cplx v : partial)
        sum.add(v);
    return sum.value();
}

// the semi-infinite split point; beyond it every integrand here is analytic
inline constexpr double kLaplaceSplit = 40.0;

// int_0^40 e^{-u} g(u) du with the u = 0 corner regularized
template <typename G>
cplx truncated_exp_integral(const G& g, int panels, int ppp, ExecPolicy exec)
{
    auto h = [&](double v, double) {
        const double u = kLaplaceSplit * v;
        return kLaplaceSplit * std::exp(-u) * g(u);
    };
    return regularized01(h, panels, ppp, exec);
}

// int_40^inf e^{-u} g(u) du = e^{-40} int_0^inf e^{-v} g(40 + v) dv; g is
// analytic on [40, inf) so the Laguerre rule is spectrally accurate here
template <typename G>
cplx shifted_laguerre_tail(const G& g, int n, ExecPolicy exec)
{
    const cplx tail =
        laguerre_integral([&](double v) { return g(kLaplaceSplit + v); }, n, exec);
    return std::exp(-kLaplaceSplit) * tail;
}

cplx gamma_ratio2(cplx top, cplx bot1, cplx bot2)
{
    return std::exp(log_gamma(top) - log_gamma(bot1) - log_gamma(bot2));
}

cplx gamma_ratio3(cplx top, cplx bot1, cplx bot2, cplx bot3)
{
    return std::exp(log_gamma(top) - log_gamma(bot1) - log_gamma(bot2) -
                    log_gamma(bot3));
}

SeriesOptions inner_options(const QuadratureOptions& q)
{
    SeriesOptions s;
    s.rel_tol = q.target_tol / 100.0; // integration error must dominate
    return s;
}

cplx checked_value(const EvalResult& r, const char* what)
{
    if (!r.quantitative())
        throw QuadratureError(
            std::string("eval_integral: integrand series did not converge (") + what +
            ", verdict " + to_string(r.verdict) + ")");
    return r.value;
}

// (-k)^k as the printed argument scale; 1 when k = 0
cplx neg_k_pow(long k)
{
    if (k == 0)
        return 1.0;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(static_cast<double>(k), static_cast<double>(k));
}

std::vector<cplx> t_over_k_list(cplx t, long k)
{
    std::vector<cplx> out;
    for (long i = 0; i < k; ++i)
        out.push_back((-t + static_cast<double>(i)) / static_cast<double>(k));
    return out;
}

void require(bool cond, const char* msg)
{
    if (!cond)
        throw DomainError(std::string("eval_integral: ") + msg);
}

struct Quadrature {
    const QuadratureOptions& q;

    // evaluate at half and full resolution; the difference is the refinement
    // estimate. Oscillatory fractional corners converge algebraically, so
    // keep doubling (bounded) until the estimate clears target_tol.
    template <typename Eval>
    EvalResult refine(const Eval& at) const
    {
        EvalResult res;
        cplx coarse = at(std::max(1, q.panels / 2));
        int panels = q.panels;
        cplx fine = at(panels);
        double est = std::abs(fine - coarse);
        for (int doubling = 0;
             est > q.target_tol * std::max(1.0, std::abs(fine)) && doubling < 5;
             ++doubling) {
            panels *= 2;
            coarse = fine;
            fine = at(panels);
            est = std::abs(fine - coarse);
        }
        if (est > q.target_tol * std::max(1.0, std::abs(fine)))
            throw QuadratureError("eval_integral: refinement stalled above target_tol");
        res.value = fine;
        res.tail_estimate = est;
        res.verdict = Verdict::Converged;
        return res;
    }

    // Semi-infinite rule: regularized [0, 40] piece plus a Laguerre tail
    // shifted to 40, where fractional powers are analytic. The fixed
    // 120-node Laguerre rule on [0, inf) converges only algebraically on
    // u^{a-1} with noninteger a, so it serves as a gross cross-check while
    // the split rule carries the value.
    template <typename G>
    EvalResult laplace(const G& g) const
    {
        const cplx tail = shifted_laguerre_tail(g, q.laguerre_points, q.exec);
        // tail consistency under node halving (spectral on the analytic tail)
        const cplx tail_half =
            shifted_laguerre_tail(g, std::max(8, q.laguerre_points / 2), q.exec);
        auto at = [&](int panels) {
            return truncated_exp_integral(g, panels, q.points_per_panel, q.exec) + tail;
        };
        EvalResult res = refine(at);
        if (std::abs(tail - tail_half) > 10.0 * q.target_tol * (1.0 + std::abs(res.value)))
            throw QuadratureError("eval_integral: Laguerre tail did not stabilize");
        return res;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// first discrete form
// ---------------------------------------------------------------------------

EvalResult eval_integral(IntegralForm form, const Appell1Params& p,
                         const QuadratureOptions& q)
{
    if (is_f2_form(form))
        throw OperatorMismatchError(
            "eval_integral: form belongs to the second discrete family");
    const SeriesOptions inner = inner_options(q);
    Quadrature quad{q};

    switch (form) {
    case IntegralForm::Euler1: {
        require(p.a.real() > 0.0, "Euler form needs Re(a) > 0");
        require((p.c - p.a).real() > 0.0, "Euler form needs Re(c-a) > 0");
        const cplx pre = gamma_ratio2(p.c, p.a, p.c - p.a);
        auto at = [&](int panels) {
            auto g = [&](double u, double omu) {
                const cplx fx = checked_value(
                    eval_discrete_pfq({p.b1}, {}, p.t1, p.k1, u * p.x, inner), "1F0(b1)");
                const cplx fy = checked_value(
                    eval_discrete_pfq({p.b2}, {}, p.t2, p.k2, u * p.y, inner), "1F0(b2)");
                return std::pow(cplx(u), p.a - 1.0) *
                       std::pow(cplx(omu), p.c - p.a - 1.0) * fx * fy;
            };
            return pre * regularized01(g, panels, q.points_per_panel, q.exec);
        };
        return quad.refine(at);
    }
    case IntegralForm::EulerSimplex: {
        require(p.b1.real() > 0.0, "simplex form needs Re(b1) > 0");
        require(p.b2.real() > 0.0, "simplex form needs Re(b2) > 0");
        require((p.c - p.b1 - p.b2).real() > 0.0, "simplex form needs Re(c-b1-b2) > 0");
        const cplx pre = gamma_ratio3(p.c, p.b1, p.b2, p.c - p.b1 - p.b2);
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = t_over_k_list(p.t1, p.k1);
        s.upper_y = t_over_k_list(p.t2, p.k2);
        const cplx sx = neg_k_pow(p.k1) * p.x;
        const cplx sy = neg_k_pow(p.k2) * p.y;
        auto at = [&](int refinement) {
            auto outer = [&](double xi, double omxi) {
                auto inner_int = [&](double eta, double ometa) {
                    const double u = xi * ometa, v = xi * eta;
                    const cplx kdf =
                        checked_value(eval_kdf(s, sx * u, sy * v, inner), "simplex KdF");
                    return std::pow(cplx(ometa), p.b1 - 1.0) *
                           std::pow(cplx(eta), p.b2 - 1.0) * kdf;
                };
                const cplx row = regularized01(inner_int, refinement,
                                               q.points_per_panel, ExecPolicy::Serial);
                return std::pow(cplx(xi), p.b1 + p.b2 - 1.0) *
                       std::pow(cplx(omxi), p.c - p.b1 - p.b2 - 1.0) * row;
            };
            return pre * regularized01(outer, refinement, q.points_per_panel, q.exec);
        };
        EvalResult res;
        cplx coarse = at(std::max(1, q.simplex_refinement / 2));
        int refinement = q.simplex_refinement;
        cplx fine = at(refinement);
        double est = std::abs(fine - coarse);
        for (int doubling = 0;
             est > 1e2 * q.target_tol * std::max(1.0, std::abs(fine)) && doubling < 3;
             ++doubling) {
            refinement *= 2;
            coarse = fine;
            fine = at(refinement);
            est = std::abs(fine - coarse);
        }
        if (est > 1e2 * q.target_tol * std::max(1.0, std::abs(fine)))
            throw QuadratureError("eval_integral: simplex refinement stalled");
        res.value = fine;
        res.tail_estimate = est;
        res.verdict = Verdict::Converged;
        return res;
    }
    case IntegralForm::LaplaceA: {
        require(p.a.real() > 0.0, "Laplace form needs Re(a) > 0");
        KdFSpec s;
        s.upper_x = t_over_k_list(p.t1, p.k1);
        s.upper_x.insert(s.upper_x.begin(), p.b1);
        s.upper_y = t_over_k_list(p.t2, p.k2);
        s.upper_y.insert(s.upper_y.begin(), p.b2);
        s.lower_joint = {p.c};
        const cplx sx = neg_k_pow(p.k1) * p.x;
        const cplx sy = neg_k_pow(p.k2) * p.y;
        const cplx pre = std::exp(-log_gamma(p.a));
        auto g = [&](double u) {
            const cplx kdf =
                checked_value(eval_kdf(s, sx * u, sy * u, inner), "Laplace KdF");
            return std::pow(cplx(u), p.a - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::LaplaceB1: {
        require(p.b1.real() > 0.0, "Laplace form needs Re(b1) > 0");
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = t_over_k_list(p.t1, p.k1);
        s.upper_y = t_over_k_list(p.t2, p.k2);
        s.upper_y.insert(s.upper_y.begin(), p.b2);
        s.lower_joint = {p.c};
        const cplx sx = neg_k_pow(p.k1) * p.x;
        const cplx sy = neg_k_pow(p.k2) * p.y;
        const cplx pre = std::exp(-log_gamma(p.b1));
        auto g = [&](double u) {
            const cplx kdf = checked_value(eval_kdf(s, sx * u, sy, inner), "Laplace KdF");
            return std::pow(cplx(u), p.b1 - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::LaplaceB2: {
        require(p.b2.real() > 0.0, "Laplace form needs Re(b2) > 0");
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = t_over_k_list(p.t1, p.k1);
        s.upper_x.insert(s.upper_x.begin(), p.b1);
        s.upper_y = t_over_k_list(p.t2, p.k2);
        s.lower_joint = {p.c};
        const cplx sx = neg_k_pow(p.k1) * p.x;
        const cplx sy = neg_k_pow(p.k2) * p.y;
        const cplx pre = std::exp(-log_gamma(p.b2));
        auto g = [&](double v) {
            const cplx kdf = checked_value(eval_kdf(s, sx, sy * v, inner), "Laplace KdF");
            return std::pow(cplx(v), p.b2 - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::LaplaceT1: {
        require((-p.t1).real() > 0.0, "this form needs Re(-t1) > 0");
        require(!is_integer(p.t1), "this form needs noninteger t1");
        require(p.k1 == 0,
                "the (-u)^{k1} argument leaves the series region unless k1 = 0");
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = {p.b1};
        s.upper_y = t_over_k_list(p.t2, p.k2);
        s.upper_y.insert(s.upper_y.begin(), p.b2);
        s.lower_joint = {p.c};
        const cplx sy = neg_k_pow(p.k2) * p.y;
        const cplx pre = std::exp(-log_gamma(-p.t1));
        auto g = [&](double u) {
            const cplx kdf = checked_value(eval_kdf(s, p.x, sy, inner), "Laplace KdF");
            return std::pow(cplx(u), -p.t1 - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::LaplaceT2: {
        require((-p.t2).real() > 0.0, "this form needs Re(-t2) > 0");
        require(!is_integer(p.t2), "this form needs noninteger t2");
        require(p.k2 == 0,
                "the (-v)^{k2} argument leaves the series region unless k2 = 0");
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = t_over_k_list(p.t1, p.k1);
        s.upper_x.insert(s.upper_x.begin(), p.b1);
        s.upper_y = {p.b2};
        s.lower_joint = {p.c};
        const cplx sx = neg_k_pow(p.k1) * p.x;
        const cplx pre = std::exp(-log_gamma(-p.t2));
        auto g = [&](double v) {
            const cplx kdf = checked_value(eval_kdf(s, sx, p.y, inner), "Laplace KdF");
            return std::pow(cplx(v), -p.t2 - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    default:
        throw DomainError("eval_integral: unhandled form");
    }
}

// ---------------------------------------------------------------------------
// second discrete form
// ---------------------------------------------------------------------------

EvalResult eval_integral(IntegralForm form, const Appell2Params& p,
                         const QuadratureOptions& q)
{
    if (!is_f2_form(form))
        throw OperatorMismatchError(
            "eval_integral: form belongs to the first discrete family");
    const SeriesOptions inner = inner_options(q);
    Quadrature quad{q};
    const cplx scale = neg_k_pow(p.k);

    switch (form) {
    case IntegralForm::F2Euler1: {
        require(p.a.real() > 0.0, "Euler form needs Re(a) > 0");
        require((p.c - p.a).real() > 0.0, "Euler form needs Re(c-a) > 0");
        const cplx pre = gamma_ratio2(p.c, p.a, p.c - p.a);
        KdFSpec s;
        s.upper_joint = t_over_k_list(p.t, p.k);
        s.upper_x = {p.b1};
        s.upper_y = {p.b2};
        auto at = [&](int panels) {
            auto g = [&](double u, double omu) {
                const cplx kdf = checked_value(
                    eval_kdf(s, scale * u * p.x, scale * u * p.y, inner), "Euler KdF");
                return std::pow(cplx(u), p.a - 1.0) *
                       std::pow(cplx(omu), p.c - p.a - 1.0) * kdf;
            };
            return pre * regularized01(g, panels, q.points_per_panel, q.exec);
        };
        return quad.refine(at);
    }
    case IntegralForm::F2EulerSimplex: {
        require(p.b1.real() > 0.0, "simplex form needs Re(b1) > 0");
        require(p.b2.real() > 0.0, "simplex form needs Re(b2) > 0");
        require((p.c - p.b1 - p.b2).real() > 0.0, "simplex form needs Re(c-b1-b2) > 0");
        const cplx pre = gamma_ratio3(p.c, p.b1, p.b2, p.c - p.b1 - p.b2);
        KdFSpec s;
        s.upper_joint = t_over_k_list(p.t, p.k);
        s.upper_joint.insert(s.upper_joint.begin(), p.a);
        auto at = [&](int refinement) {
            auto outer = [&](double xi, double omxi) {
                auto inner_int = [&](double eta, double ometa) {
                    const double u = xi * ometa, v = xi * eta;
                    const cplx kdf = checked_value(
                        eval_kdf(s, scale * u * p.x, scale * v * p.y, inner),
                        "simplex KdF");
                    return std::pow(cplx(ometa), p.b1 - 1.0) *
                           std::pow(cplx(eta), p.b2 - 1.0) * kdf;
                };
                const cplx row = regularized01(inner_int, refinement,
                                               q.points_per_panel, ExecPolicy::Serial);
                return std::pow(cplx(xi), p.b1 + p.b2 - 1.0) *
                       std::pow(cplx(omxi), p.c - p.b1 - p.b2 - 1.0) * row;
            };
            return pre * regularized01(outer, refinement, q.points_per_panel, q.exec);
        };
        EvalResult res;
        cplx coarse = at(std::max(1, q.simplex_refinement / 2));
        int refinement = q.simplex_refinement;
        cplx fine = at(refinement);
        double est = std::abs(fine - coarse);
        for (int doubling = 0;
             est > 1e2 * q.target_tol * std::max(1.0, std::abs(fine)) && doubling < 3;
             ++doubling) {
            refinement *= 2;
            coarse = fine;
            fine = at(refinement);
            est = std::abs(fine - coarse);
        }
        if (est > 1e2 * q.target_tol * std::max(1.0, std::abs(fine)))
            throw QuadratureError("eval_integral: simplex refinement stalled");
        res.value = fine;
        res.tail_estimate = est;
        res.verdict = Verdict::Converged;
        return res;
    }
    case IntegralForm::F2LaplaceA: {
        require(p.a.real() > 0.0, "Laplace form needs Re(a) > 0");
        KdFSpec s;
        s.upper_joint = t_over_k_list(p.t, p.k);
        s.upper_x = {p.b1};
        s.upper_y = {p.b2};
        s.lower_joint = {p.c};
        const cplx pre = std::exp(-log_gamma(p.a));
        auto g = [&](double u) {
            const cplx kdf = checked_value(
                eval_kdf(s, scale * u * p.x, scale * u * p.y, inner), "Laplace KdF");
            return std::pow(cplx(u), p.a - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::F2LaplaceB1: {
        require(p.b1.real() > 0.0, "Laplace form needs Re(b1) > 0");
        KdFSpec s;
        s.upper_joint = t_over_k_list(p.t, p.k);
        s.upper_joint.insert(s.upper_joint.begin(), p.a);
        s.upper_y = {p.b2};
        s.lower_joint = {p.c};
        const cplx pre = std::exp(-log_gamma(p.b1));
        auto g = [&](double u) {
            const cplx kdf = checked_value(
                eval_kdf(s, scale * u * p.x, scale * p.y, inner), "Laplace KdF");
            return std::pow(cplx(u), p.b1 - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::F2LaplaceB2: {
        require(p.b2.real() > 0.0, "Laplace form needs Re(b2) > 0");
        KdFSpec s;
        s.upper_joint = t_over_k_list(p.t, p.k);
        s.upper_joint.insert(s.upper_joint.begin(), p.a);
        s.upper_x = {p.b1};
        s.lower_joint = {p.c};
        const cplx pre = std::exp(-log_gamma(p.b2));
        auto g = [&](double v) {
            const cplx kdf = checked_value(
                eval_kdf(s, scale * p.x, scale * v * p.y, inner), "Laplace KdF");
            return std::pow(cplx(v), p.b2 - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    case IntegralForm::F2LaplaceT: {
        require((-p.t).real() > 0.0, "this form needs Re(-t) > 0");
        require(!is_integer(p.t), "this form needs noninteger t");
        require(p.k == 0, "the (-u)^k arguments leave the series region unless k = 0");
        KdFSpec s;
        s.upper_joint = {p.a};
        s.upper_x = {p.b1};
        s.upper_y = {p.b2};
        s.lower_joint = {p.c};
        const cplx pre = std::exp(-log_gamma(-p.t));
        auto g = [&](double u) {
            const cplx kdf = checked_value(eval_kdf(s, p.x, p.y, inner), "Laplace KdF");
            return std::pow(cplx(u), -p.t - 1.0) * kdf;
        };
        EvalResult res = quad.laplace(g);
        res.value *= pre;
        return res;
    }
    default:
        throw DomainError("eval_integral: unhandled form");
    }
}

double crosscheck_integral(IntegralForm a, IntegralForm b, const Appell1Params& p,
                           const QuadratureOptions& q)
{
    const cplx va = eval_integral(a, p, q).value;
    const cplx vb = eval_integral(b, p, q).value;
    return std::abs(va - vb) / (std::abs(va) + std::abs(vb) + 1.0);
}

double crosscheck_integral(IntegralForm a, IntegralForm b, const Appell2Params& p,
                           const QuadratureOptions& q)
{
    const cplx va = eval_integral(a, p, q).value;
    const cplx vb = eval_integral(b, p, q).value;
    return std::abs(va - vb) / (std::abs(va) + std::abs(vb) + 1.0);
}

} // namespace dappell

// ---------------------------------------------------------------------------
// representation battery
// ---------------------------------------------------------------------------

namespace dappell {

namespace {

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct BatteryRng {
    std::uint64_t state;
    double uniform()
    {
        state = mix64(state);
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    long integer(long lo, long hi)
    {
        const long span = hi - lo + 1;
        return lo + static_cast<long>(uniform() * static_cast<double>(span)) % span;
    }
    cplx box(double lo, double hi, double im)
    {
        return {uniform(lo, hi), uniform(-im, im)};
    }
    cplx arg(double lo, double hi)
    {
        const double rr = uniform(lo, hi), th = uniform(0.0, 2.0 * M_PI);
        return {rr * std::cos(th), rr * std::sin(th)};
    }
};

Appell1Params battery_draw1(BatteryRng& rng, bool terminating)
{
    Appell1Params p;
    p.a = rng.box(0.5, 3.0, 0.8);
    p.b1 = rng.box(0.5, 3.0, 0.8);
    p.b2 = rng.box(0.5, 3.0, 0.8);
    p.c = p.a + rng.box(0.5, 3.0, 0.8); // Re(c-a) > 0 for the Euler kernel
    if (terminating) {
        p.k1 = rng.integer(1, 2);
        p.k2 = rng.integer(1, 2);
        p.t1 = static_cast<double>(3 * p.k1 + rng.integer(0, 3));
        p.t2 = static_cast<double>(3 * p.k2 + rng.integer(0, 3));
        p.x = rng.arg(0.05, 0.35);
        p.y = rng.arg(0.05, 0.35);
    } else {
        p.k1 = p.k2 = 0;
        p.t1 = rng.box(-1.0, 1.0, 0.5);
        p.t2 = rng.box(-1.0, 1.0, 0.5);
        p.x = rng.arg(0.05, 0.5);
        p.y = rng.arg(0.05, 0.5);
    }
    return p;
}

Appell2Params battery_draw2(BatteryRng& rng, bool terminating)
{
    Appell2Params p;
    p.a = rng.box(0.5, 3.0, 0.8);
    p.b1 = rng.box(0.5, 3.0, 0.8);
    p.b2 = rng.box(0.5, 3.0, 0.8);
    p.c = p.a + rng.box(0.5, 3.0, 0.8);
    if (terminating) {
        p.k = rng.integer(1, 2);
        p.t = static_cast<double>(3 * p.k + rng.integer(0, 3));
        p.x = rng.arg(0.05, 0.35);
        p.y = rng.arg(0.05, 0.35);
    } else {
        p.k = 0;
        p.t = rng.box(-1.0, 1.0, 0.5);
        p.x = rng.arg(0.05, 0.5);
        p.y = rng.arg(0.05, 0.5);
    }
    return p;
}

} // namespace

std::vector<IntegralSuiteRow> run_integral_suite(int count, std::uint64_t seed,
                                                 const QuadratureOptions& q)
{
    constexpr double kEulerTol = 1e-7;
    constexpr double kLaplaceTol = 1e-6;
    std::vector<IntegralSuiteRow> rows;

    auto series_check1 = [&](IntegralForm form, bool terminating, double tol,
                             bool simplex_shape) {
        IntegralSuiteRow row{form,
                             terminating ? "series-terminating" : "series-classical",
                             0, 0, 0, 0.0, tol};
        for (int i = 0; i < count; ++i) {
            BatteryRng rng{mix64(seed ^ mix64(static_cast<std::uint64_t>(form) * 97 + 11 +
                                              (terminating ? 1 : 0)) ^
                                 mix64(static_cast<std::uint64_t>(i)))};
            Appell1Params p = battery_draw1(rng, terminating);
            if (simplex_shape)
                p.c = p.b1 + p.b2 + rng.box(0.5, 2.0, 0.5);
            try {
                const cplx series = eval_f1_d1(p).value;
                const cplx integral = eval_integral(form, p, q).value;
                const double res = std::abs(series - integral) / (1.0 + std::abs(series));
                row.worst_residual = std::max(row.worst_residual, res);
                res <= tol ? ++row.pass : ++row.fail;
            } catch (const PoleError&) {
                ++row.skip;
            } catch (const DomainError&) {
                ++row.skip;
            } catch (const std::exception&) {
                ++row.fail;
            }
        }
        rows.push_back(row);
    };
    auto series_check2 = [&](IntegralForm form, bool terminating, double tol,
                             bool simplex_shape) {
        IntegralSuiteRow row{form,
                             terminating ? "series-terminating" : "series-classical",
                             0, 0, 0, 0.0, tol};
        for (int i = 0; i < count; ++i) {
            BatteryRng rng{mix64(seed ^ mix64(static_cast<std::uint64_t>(form) * 131 + 3 +
                                              (terminating ? 1 : 0)) ^
                                 mix64(static_cast<std::uint64_t>(i)))};
            Appell2Params p = battery_draw2(rng, terminating);
            if (simplex_shape)
                p.c = p.b1 + p.b2 + rng.box(0.5, 2.0, 0.5);
            try {
                const cplx series = eval_f1_d2(p).value;
                const cplx integral = eval_integral(form, p, q).value;
                const double res = std::abs(series - integral) / (1.0 + std::abs(series));
                row.worst_residual = std::max(row.worst_residual, res);
                res <= tol ? ++row.pass : ++row.fail;
            } catch (const PoleError&) {
                ++row.skip;
            } catch (const DomainError&) {
                ++row.skip;
            } catch (const std::exception&) {
                ++row.fail;
            }
        }
        rows.push_back(row);
    };

    series_check1(IntegralForm::Euler1, false, kEulerTol, false);
    series_check1(IntegralForm::Euler1, true, kEulerTol, false);
    series_check1(IntegralForm::EulerSimplex, false, kEulerTol, true);
    series_check1(IntegralForm::EulerSimplex, true, kEulerTol, true);
    series_check1(IntegralForm::LaplaceA, true, kLaplaceTol, false);
    series_check1(IntegralForm::LaplaceB1, true, kLaplaceTol, false);
    series_check1(IntegralForm::LaplaceB2, true, kLaplaceTol, false);
    series_check2(IntegralForm::F2Euler1, false, kEulerTol, false);
    series_check2(IntegralForm::F2Euler1, true, kEulerTol, false);
    series_check2(IntegralForm::F2EulerSimplex, true, kEulerTol, true);
    series_check2(IntegralForm::F2LaplaceA, true, kLaplaceTol, false);
    series_check2(IntegralForm::F2LaplaceB1, true, kLaplaceTol, false);
    series_check2(IntegralForm::F2LaplaceB2, true, kLaplaceTol, false);

    // Gamma(-t)-prefactor forms: series comparison is excluded (formal
    // regime); they answer only to each other and to the classical limit.
    {
        IntegralSuiteRow row{IntegralForm::LaplaceT1, "crosscheck", 0, 0, 0, 0.0,
                             kLaplaceTol};
        for (int i = 0; i < count; ++i) {
            BatteryRng rng{mix64(seed ^ 0xabcd ^ mix64(static_cast<std::uint64_t>(i)))};
            Appell1Params p = battery_draw1(rng, false);
            p.t1 = rng.box(-3.5, -1.5, 0.5);
            p.t2 = rng.box(-3.5, -1.5, 0.5);
            try {
                const double res =
                    crosscheck_integral(IntegralForm::LaplaceT1, IntegralForm::LaplaceT2, p, q);
                row.worst_residual = std::max(row.worst_residual, res);
                res <= kLaplaceTol ? ++row.pass : ++row.fail;
            } catch (const PoleError&) {
                ++row.skip;
            } catch (const DomainError&) {
                ++row.skip;
            } catch (const std::exception&) {
                ++row.fail;
            }
        }
        rows.push_back(row);
    }
    {
        IntegralSuiteRow row{IntegralForm::F2LaplaceT, "crosscheck", 0, 0, 0, 0.0,
                             kLaplaceTol};
        for (int i = 0; i < count; ++i) {
            BatteryRng rng{mix64(seed ^ 0xdcba ^ mix64(static_cast<std::uint64_t>(i)))};
            Appell2Params p = battery_draw2(rng, false);
            p.t = rng.box(-3.5, -1.5, 0.5);
            try {
                const cplx lim = eval_integral(IntegralForm::F2LaplaceT, p, q).value;
                const cplx classical =
                    eval_classical_f1(p.a, p.b1, p.b2, p.c, p.x, p.y).value;
                const double res =
                    std::abs(lim - classical) / (std::abs(lim) + std::abs(classical) + 1.0);
                row.worst_residual = std::max(row.worst_residual, res);
                res <= kLaplaceTol ? ++row.pass : ++row.fail;
            } catch (const PoleError&) {
                ++row.skip;
            } catch (const DomainError&) {
                ++row.skip;
            } catch (const std::exception&) {
                ++row.fail;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace dappell
