#!/usr/bin/env python3
"""High-precision oracle for the closed-form CRRA value function and portfolios.

Evaluates, with 40-digit mpmath arithmetic, the quadratic f, its roots,
the A/B coefficients, the exact value function, the optimal portfolio, the
first-order approximation and its portfolio, and the constant-coefficient
baseline, for the gamma = 3 / inverse-sqrt-volatility example.  Values are
frozen into tests/test_oracle.cpp and tests/test_acceptance.cpp.

Run:  python3 tests/oracles/crra_exact.py
"""

from mpmath import mp, mpf, sqrt, exp, log

mp.dps = 40

mu = mpf("0.0811")
m = mpf("27.9345")
beta = mpf("1.12")
rho = mpf("0.5241")
gamma = mpf("3")
r = mpf("0")
T = mpf("2")
y0 = mpf("27.9345")

mu_e = mu - r
lam2 = mu_e**2 * y0          # lambda(y)^2 = (mu-r)^2 * y
denom = gamma + (1 - gamma) * rho**2
k_exp = gamma / denom        # exponent multiplier in the value formula

# quadratic: f(v) = beta^2/2 v^2 + ((1-gamma) beta mu_e rho - gamma)/gamma v
#                   + (gamma + (1-gamma) rho^2)(1-gamma) mu_e^2 / (2 gamma^2)
qa = beta**2 / 2
qb = ((1 - gamma) * beta * mu_e * rho - gamma) / gamma
qc = denom * (1 - gamma) * mu_e**2 / (2 * gamma**2)
disc = qb**2 - 4 * qa * qc
alpha_disc = sqrt(disc)
a_plus = (-qb + alpha_disc) / (2 * qa)
a_minus = (-qb - alpha_disc) / (2 * qa)


def coeff_A(t):
    e = exp(-alpha_disc * (T - t))
    return (1 - e) * a_minus / (1 - (a_minus / a_plus) * e)


def coeff_B(t):
    e = exp(-alpha_disc * (T - t))
    return m * ((T - t) * a_minus - (2 / beta**2) * log((1 - (a_minus / a_plus) * e) / (1 - a_minus / a_plus)))


def exact_value_coeff(t):
    # value at x = 1 (the x-dependence is the pure power x^{1-gamma}/(1-gamma))
    return -exp(k_exp * (y0 * coeff_A(t) + coeff_B(t))) / 2


def exact_portfolio_coeff(t):
    # pi_U(t,x,y0) / x
    return y0 * (mu_e + rho * beta * k_exp * coeff_A(t)) / gamma


def uhat_coeff(t):
    return -(mpf(1) / 2) + (T - t) * lam2 / 6


def pihat_coeff(t):
    tau = T - t
    lamlamp = mu_e**2 / 2                      # lambda * lambda'
    corr = rho * beta * y0 * tau * 2 * lamlamp / (9 * (1 - tau * lam2 / 3))
    return mu_e * y0 / gamma - corr


def p17(v):
    return mp.nstr(v, 17)


def main():
    print("lam2              =", p17(lam2))
    print("k_exp             =", p17(k_exp))
    print("f coeffs (a,b,c)  =", p17(qa), p17(qb), p17(qc))
    print("alpha_disc        =", p17(alpha_disc))
    print("a_plus            =", p17(a_plus))
    print("a_minus           =", p17(a_minus))
    for t in (mpf("0"), mpf("1.5"), mpf("1.9")):
        print(f"--- t = {t}")
        print("  A            =", p17(coeff_A(t)))
        print("  B            =", p17(coeff_B(t)))
        print("  U_coeff      =", p17(exact_value_coeff(t)))
        print("  Uhat_coeff   =", p17(uhat_coeff(t)))
        print("  |U-Uhat|     =", p17(abs(exact_value_coeff(t) - uhat_coeff(t))))
        print("  piU_coeff    =", p17(exact_portfolio_coeff(t)))
        print("  pihat_coeff  =", p17(pihat_coeff(t)))
        print("  |pi-pihat|   =", p17(abs(exact_portfolio_coeff(t) - pihat_coeff(t))))
    print("merton_pi_coeff   =", p17(mu_e * y0 / gamma))
    print("merton_exp_rate   =", p17((1 - gamma) * lam2 / (2 * gamma)))
    # convergence-order slope implied by the two published error magnitudes
    e1 = abs(exact_value_coeff(mpf("1.5")) - uhat_coeff(mpf("1.5")))
    e2 = abs(exact_value_coeff(mpf("1.9")) - uhat_coeff(mpf("1.9")))
    print("slope(1.5,1.9)    =", p17(log(e1 / e2) / log(mpf("0.5") / mpf("0.1"))))


if __name__ == "__main__":
    main()
