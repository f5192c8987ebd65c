#!/usr/bin/env python3
"""Regenerate the manufactured-source reference tables in crates/esfem/tests/fixtures.

The source term of the advection-diffusion benchmark problems is

    f = u_t + v . grad(u) + u div_S(v) - lap_S(u),

where v is the normal velocity of the moving level-set surface,
div_S the surface divergence and lap_S the Laplace-Beltrami operator.
This script evaluates f by full symbolic differentiation (sympy) and
tabulates values at pseudo-random on-surface points, giving the test
suite a reference that is independent of the library's own surface
calculus (hand-coded derivatives plus finite-difference Jacobians).

Run from the repository root:  python3 scripts/gen_source_fixtures.py
"""

import numpy as np
import sympy as sp

X1, X2, X3, T = sp.symbols("x1 x2 x3 t", real=True)
X = sp.Matrix([X1, X2, X3])


def surface_source(d, u):
    """Symbolic f for level set d(x,t) and exact solution u(x,t)."""
    grad_d = d.diff(X)
    norm2 = (grad_d.T * grad_d)[0, 0]
    nu = grad_d / sp.sqrt(norm2)

    # normal velocity v = -d_t * grad(d) / |grad(d)|^2
    v = -d.diff(T) * grad_d / norm2

    jac_v = v.jacobian(X)
    div_v = sp.trace(jac_v)
    surf_div_v = div_v - (nu.T * jac_v * nu)[0, 0]

    grad_u = u.diff(X)
    hess_u = sp.hessian(u, (X1, X2, X3))
    lap_u = sp.trace(hess_u)
    div_nu = sp.trace(nu.jacobian(X))
    lap_beltrami_u = lap_u - (nu.T * hess_u * nu)[0, 0] - div_nu * (grad_u.T * nu)[0, 0]

    f = u.diff(T) + (v.T * grad_u)[0, 0] + u * surf_div_v - lap_beltrami_u
    return sp.lambdify((X1, X2, X3, T), f, "numpy"), sp.lambdify((X1, X2, X3, T), d, "numpy")


def write_rows(path, rows):
    with open(path, "w") as fh:
        fh.write("x1,x2,x3,t,f\n")
        for x1, x2, x3, t, f in rows:
            fh.write(f"{x1:.17e},{x2:.17e},{x3:.17e},{t:.17e},{f:.17e}\n")
    print(f"wrote {path} ({len(rows)} rows)")


def unit_sphere_points(rng, n):
    p = rng.normal(size=(n, 3))
    return p / np.linalg.norm(p, axis=1, keepdims=True)


def hemiellipsoid_fixture(rng):
    a = 1 + sp.Rational(1, 4) * sp.sin(T)
    d = X1**2 / a + X2**2 + X3**2 - 1
    u = sp.sin(T) * X1 * X2
    f_fn, d_fn = surface_source(d, u)

    rows = []
    for t, n in ((0.5, 100), (1.3, 50)):
        s = unit_sphere_points(rng, n)
        s[:, 2] = np.abs(s[:, 2])
        av = 1 + 0.25 * np.sin(t)
        pts = np.column_stack([np.sqrt(av) * s[:, 0], s[:, 1], s[:, 2]])
        for p in pts:
            assert abs(d_fn(*p, t)) < 1e-13
            rows.append((p[0], p[1], p[2], t, float(f_fn(*p, t))))
    write_rows("crates/esfem/tests/fixtures/rhs_hemiellipsoid.csv", rows)


def pulsating_fixture(rng):
    a = sp.Rational(1, 10) + sp.Rational(1, 100) * sp.sin(2 * sp.pi * T)
    L = 1 + sp.Rational(3, 10) * sp.sin(4 * sp.pi * T)

    def G(s):
        return sp.Rational(125, 4) * s * (s - sp.Rational(9, 25)) * (s - sp.Rational(19, 20))

    d = X1**2 / a**2 + G(X2**2) + G(X3**2 / L**2) - 1
    u = sp.cos(sp.pi * T) * X1 * X2 * X3
    f_fn, d_fn = surface_source(d, u)

    rows = []
    for t, n in ((0.37, 100), (0.8, 50)):
        dirs = unit_sphere_points(rng, 4 * n)
        kept = 0
        for w in dirs:
            if kept == n:
                break
            r = outermost_crossing(lambda r: d_fn(*(r * w), t))
            if r is None:
                continue
            p = r * w
            assert abs(d_fn(*p, t)) < 1e-12
            rows.append((p[0], p[1], p[2], t, float(f_fn(*p, t))))
            kept += 1
        assert kept == n, f"only found {kept} surface points"
    write_rows("crates/esfem/tests/fixtures/rhs_pulsating.csv", rows)


def outermost_crossing(g, r_hi=2.5, step=0.005):
    """Largest r in (0, r_hi] with g(r) = 0, found by inward scan + bisection."""
    if g(r_hi) <= 0:
        return None
    r1, g1 = r_hi, g(r_hi)
    r = r_hi - step
    while r > step:
        gr = g(r)
        if gr == 0:
            return r
        if gr < 0:
            lo, hi = r, r1
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if g(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        r1, g1 = r, gr
        r -= step
    return None


def main():
    rng = np.random.default_rng(20240817)
    hemiellipsoid_fixture(rng)
    pulsating_fixture(rng)


if __name__ == "__main__":
    main()
