#!/usr/bin/env python3
"""Reference values for the integration tests, computed with mpmath.

Run `python3 tools/oracles.py > crates/core/tests/data/oracle_values.rs` to
regenerate. Every value is computed at 50 digits by a route that shares no
code with the Rust implementation: direct series, mpmath special functions,
mpmath quadrature and mpmath's own Laplace inversion.
"""

import mpmath as mp

mp.mp.dps = 50


def ml_series(alpha, beta, gamma, z):
    """Prabhakar function by brute-force series (fine for |z| <= 10 at 50 digits)."""
    z = mp.mpf(z)
    total = mp.mpf(0)
    k = 0
    while True:
        term = mp.rf(gamma, k) / mp.factorial(k) * z**k / mp.gamma(alpha * k + beta)
        total += term
        if k > 10 and abs(term) < mp.mpf(10) ** -45 * max(1, abs(total)):
            return total
        k += 1


def phi(family, lam):
    kind, p = family
    if kind == "stable":
        return lam ** p["alpha"]
    if kind == "tempered":
        return (lam + p["a"]) ** p["alpha"] - p["a"] ** p["alpha"]
    if kind == "mixture":
        return p["c1"] * lam ** p["alpha1"] + p["c2"] * lam ** p["alpha2"]
    if kind == "drift":
        return p["mu"] * lam
    raise ValueError(kind)


def moment_u(family, kappa, t):
    """U^kappa(t) by inverting Gamma(1+kappa)/(s phi(s)^kappa)."""
    f = lambda s: mp.gamma(1 + kappa) / (s * phi(family, s) ** kappa)
    return mp.invertlaplace(f, t, method="talbot")


def stable_u(alpha, c, x):
    return mp.gamma(c + 1) * mp.mpf(x) ** (alpha * c) / mp.gamma(alpha * c + 1)


def stable_cov_z(alpha, h, sigma2, t, s):
    """Renewal-integral covariance for the inverse stable clock, by mpmath quadrature."""
    lo, hi = min(t, s), max(t, s)
    c = 2 * h
    dens = lambda y: y ** (alpha - 1) / mp.gamma(alpha)
    integral = mp.quad(lambda y: stable_u(alpha, c - 1, hi - y) * dens(y), [0, lo / 2, lo])
    return sigma2 / 2 * (stable_u(alpha, c, lo) + c * integral)


def emit(name, rows, fmt):
    print(f"pub const {name}: &[{fmt}] = &[")
    for r in rows:
        # nearest double, shortest round-trip spelling
        print("    (" + ", ".join(repr(float(x)) for x in r) + "),")
    print("];\n")


def main():
    print("// Generated by tools/oracles.py (mpmath, 50 digits). Do not edit.\n")

    rows = []
    for a, b, g, z in [(0.5, 1, 1, -1), (0.5, 1, 1, -3), (0.7, 1.2, 1, 2), (0.9, 1, 2, -4),
                       (0.4, 0.4, 1.5, -2), (0.3, 1, 0.5, 1.5), (0.8, 1.8, 3, -0.5), (1.5, 1, 1, -6)]:
        rows.append((a, b, g, z, ml_series(mp.mpf(a), mp.mpf(b), mp.mpf(g), z)))
    emit("PRABHAKAR", rows, "(f64, f64, f64, f64, f64)")

    print(f"pub const E_ERFC_1: f64 = {float(mp.e * mp.erfc(1))!r};\n")

    rows = [(a, b, z, mp.betainc(a, b, 0, z)) for a, b, z in
            [(0.3, 0.7, 0.5), (2.5, 0.5, 0.9), (1.4, 1.0, 0.25), (0.6, 0.58, 0.999), (0.5, 2.0, 1.0)]]
    emit("INCOMPLETE_BETA", rows, "(f64, f64, f64, f64)")

    rows = [(x, v, mp.gammainc(v, 0, x)) for x, v in [(0.5, 0.3), (2.0, 1.7), (10.0, 2.5), (30.0, 0.8)]]
    emit("LOWER_GAMMA", rows, "(f64, f64, f64)")

    rows = [(a, b, x, mp.hyp1f1(a, b, x)) for a, b, x in [(0.5, 1.5, -2.0), (1.2, 3.1, 4.0), (0.3, 1.3, -20.0)]]
    emit("KUMMER", rows, "(f64, f64, f64, f64)")

    fams = {
        "tempered": ("tempered", {"alpha": mp.mpf("0.5"), "a": mp.mpf(1)}),
        "mixture": ("mixture", {"alpha1": mp.mpf("0.3"), "alpha2": mp.mpf("0.7"), "c1": mp.mpf("0.5"), "c2": mp.mpf("0.5")}),
    }
    for key, fam in fams.items():
        rows = [(k, t, moment_u(fam, mp.mpf(k), mp.mpf(t))) for k in (0.6, 1.0, 1.4, 2.0) for t in (0.1, 1.0, 10.0)]
        emit(f"MOMENT_{key.upper()}", rows, "(f64, f64, f64)")

    rows = []
    for alpha, h, t, s in [(0.3, 0.3, 2.0, 1.0), (0.6, 0.8, 5.0, 0.5), (0.9, 0.5, 1.0, 1.0), (0.5, 0.7, 0.2, 3.0)]:
        rows.append((alpha, h, t, s, stable_cov_z(mp.mpf(alpha), mp.mpf(h), 1, mp.mpf(t), mp.mpf(s))))
    emit("STABLE_COV_Z", rows, "(f64, f64, f64, f64, f64)")


if __name__ == "__main__":
    main()
