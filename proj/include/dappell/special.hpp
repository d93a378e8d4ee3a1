#pragma once

#include <complex>

#include "dappell/errors.hpp"

namespace dappell {

using cplx = std::complex<double>;

/// Tolerance used when classifying a complex number as an integer.
inline constexpr double kIntegerTol = 1e-12;

bool is_integer(cplx z, double tol = kIntegerTol);
bool is_nonpositive_integer(cplx z, double tol = kIntegerTol);
bool is_nonnegative_integer(cplx z, double tol = kIntegerTol);

/// Principal-branch log-gamma, Lanczos approximation with reflection for
/// Re(z) < 0.5. Throws PoleError on nonpositive integers.
cplx log_gamma(cplx z);

/// Gamma via exp(log_gamma).
cplx gamma(cplx z);

/// Beta function B(v, w) = Gamma(v) Gamma(w) / Gamma(v + w).
cplx beta(cplx v, cplx w);

struct FlaggedValue {
    cplx value{};
    bool overflow = false;
};

/// Rising factorial (u)_n. Direct product for small n, log-gamma quotient
/// above the switch threshold. Zeros are valid values.
cplx pochhammer(cplx u, long n);

/// Same, but reports overflow instead of returning infinity.
FlaggedValue pochhammer_flagged(cplx u, long n);

/// Product/log-gamma switch point for pochhammer.
inline constexpr long kPochhammerProductLimit = 32;

/// Signed discrete factor (-1)^{mk} (-t)_{mk}. Exactly zero when t is a
/// nonnegative integer and mk > t.
cplx discrete_pochhammer(cplx t, long m, long k);

/// The factorized route k^{mk} prod_{i<k} ((-t+i)/k)_m for the same signed
/// factor, kept as an independent evaluation path.
cplx discrete_pochhammer_factorized(cplx t, long m, long k);

/// Exact binomial coefficient C(r, s). Throws DomainError when s > r.
double binomial(long r, long s);

} // namespace dappell
