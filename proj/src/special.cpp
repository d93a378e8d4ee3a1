#include "dappell/special.hpp"

#include <cmath>
#include <limits>

namespace dappell {

namespace {

// Godfrey's Lanczos coefficients, g = 607/128, 15 terms. Good to ~1e-14
// relative across the half-plane Re(z) >= 0.5 at double precision.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * M_PI);

cplx log_gamma_lanczos(cplx z)
{
    // valid for Re(z) >= 0.5
    cplx sum = kLanczosC[0];
    for (int i = 1; i < 15; ++i)
        sum += kLanczosC[i] / (z - 1.0 + static_cast<double>(i));
    const cplx base = z + kLanczosG - 0.5;
    return kLogSqrt2Pi + (z - 0.5) * std::log(base) - base + std::log(sum);
}

} // namespace

bool is_integer(cplx z, double tol)
{
    return std::abs(z.imag()) <= tol &&
           std::abs(z.real() - std::round(z.real())) <= tol;
}

bool is_nonpositive_integer(cplx z, double tol)
{
    return is_integer(z, tol) && z.real() <= 0.5;
}

bool is_nonnegative_integer(cplx z, double tol)
{
    return is_integer(z, tol) && z.real() >= -0.5;
}

cplx log_gamma(cplx z)
{
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at nonpositive integer");
    if (z.real() >= 0.5)
        return log_gamma_lanczos(z);
    // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    const cplx s = std::sin(M_PI * z);
    return std::log(M_PI) - std::log(s) - log_gamma_lanczos(1.0 - z);
}

cplx gamma(cplx z)
{
    return std::exp(log_gamma(z));
}

cplx beta(cplx v, cplx w)
{
    return std::exp(log_gamma(v) + log_gamma(w) - log_gamma(v + w));
}

FlaggedValue pochhammer_flagged(cplx u, long n)
{
    if (n <= 0)
        return {cplx(1.0), false};
    // A near-integer nonpositive base zeroes the product once it crosses 0;
    // the log route would sit on a gamma pole, so resolve it here.
    if (is_nonpositive_integer(u)) {
        const long u0 = static_cast<long>(std::llround(u.real()));
        if (n > -u0)
            return {cplx(0.0), false};
    }
    if (n < kPochhammerProductLimit || is_nonpositive_integer(u)) {
        cplx p = 1.0;
        bool overflow = false;
        for (long i = 0; i < n; ++i) {
            p *= u + static_cast<double>(i);
            if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
                overflow = true;
                break;
            }
        }
        return {p, overflow};
    }
    const cplx lg = log_gamma(u + static_cast<double>(n)) - log_gamma(u);
    if (lg.real() > 705.0) // exp would exceed double range
        return {cplx(std::numeric_limits<double>::infinity(), 0.0), true};
    return {std::exp(lg), false};
}

cplx pochhammer(cplx u, long n)
{
    return pochhammer_flagged(u, n).value;
}

cplx discrete_pochhammer(cplx t, long m, long k)
{
    const long mk = m * k;
    if (mk == 0)
        return 1.0;
    if (is_nonnegative_integer(t)) {
        const long t0 = static_cast<long>(std::llround(t.real()));
        if (mk > t0)
            return 0.0;
    }
    const double sign = (mk % 2 == 0) ? 1.0 : -1.0;
    return sign * pochhammer(-t, mk);
}

cplx discrete_pochhammer_factorized(cplx t, long m, long k)
{
    const long mk = m * k;
    if (mk == 0)
        return 1.0;
    const double sign = (mk % 2 == 0) ? 1.0 : -1.0;
    const double kd = static_cast<double>(k);
    cplx prod = std::pow(kd, static_cast<double>(mk));
    for (long i = 0; i < k; ++i)
        prod *= pochhammer((-t + static_cast<double>(i)) / kd, m);
    return sign * prod;
}

double binomial(long r, long s)
{
    if (s < 0 || s > r)
        throw DomainError("binomial: require 0 <= s <= r");
    if (s > r - s)
        s = r - s;
    double c = 1.0;
    for (long i = 0; i < s; ++i) {
        c *= static_cast<double>(r - i);
        c /= static_cast<double>(i + 1);
    }
    return std::round(c);
}

} // namespace dappell
