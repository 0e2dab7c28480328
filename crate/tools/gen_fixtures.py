#!/usr/bin/env python3
"""Regenerates the golden fixtures under crates/core/tests/fixtures/.

Everything here is derived by plain symbolic expansion with sympy, kept
deliberately separate from the Rust implementation so the fixtures act as an
independent cross-check of the certificate pipeline.

Run from the repository root:

    python3 tools/gen_fixtures.py
"""
import json
import os

import mpmath
import sympy as sp
from sympy import Rational as R

x, y, PI = sp.symbols('x y PI')

OUT_DIR = os.path.join(os.path.dirname(__file__), '..', 'crates', 'core', 'tests', 'fixtures')


def sin_trunc(p):
    return sum((-1) ** k * x ** (2 * k + 1) / sp.factorial(2 * k + 1) for k in range(p + 1))


def cos_trunc(q):
    return sum((-1) ** k * x ** (2 * k) / sp.factorial(2 * k) for k in range(q + 1))


def lift(P, n):
    """x^n * P(1/x)."""
    return sp.expand(x ** n * P.subs(x, 1 / x))


def content_sigma(P, gens):
    """Positive rational sigma with sigma*P integer and content-free."""
    pol = sp.Poly(P, *gens)
    cs = [sp.Rational(c) for c in pol.coeffs() if c != 0]
    dens = [c.q for c in cs]
    nums = [abs(c.p) for c in cs]
    L = dens[0]
    for d in dens[1:]:
        L = sp.ilcm(L, d)
    G = nums[0]
    for nn in nums[1:]:
        G = sp.igcd(G, nn)
    return sp.Rational(L, G)


def pi_min_exponent(P):
    lo = None
    pol = sp.Poly(sp.expand(P * PI ** 60), x, PI)
    for (_, e), c in pol.as_dict().items():
        if c != 0:
            ee = e - 60
            lo = ee if lo is None else min(lo, ee)
    return lo


def poly_to_rational_list(P, var):
    """Dense coefficient strings, x^0 first."""
    pol = sp.Poly(P, var)
    return [str(sp.Rational(c)) for c in reversed(pol.all_coeffs())]


def poly_to_pi_list(P, var):
    """Dense list over var-powers; each entry a sorted [[pi_exp, rat], ...]."""
    pol = sp.Poly(sp.expand(P), var, PI)
    deg = sp.degree(P, var)
    out = [dict() for _ in range(deg + 1)]
    for (xe, pe), c in pol.as_dict().items():
        out[xe][pe] = str(sp.Rational(c))
    return [[[e, d[e]] for e in sorted(d)] for d in out]


def main():
    u1, u2, u3, u4, u5, u6 = (sin_trunc(k) for k in (1, 2, 3, 4, 5, 6))
    v1, v2, v3, v4 = (cos_trunc(k) for k in (1, 2, 3, 4))

    corr_a = R(8, 945) * x ** 2
    corr_b = R(8, 945) * x ** 2 - R(16, 14175) * x ** 4
    # correction terms of the half-pi bounds, written in the substituted
    # variable (distance below pi/2)
    corr_c = (160 / PI ** 5 - 16 / PI ** 3) * x
    corr_d = corr_c + (960 / PI ** 6 - 96 / PI ** 4) * x ** 2
    w = PI / 2 - x

    m = 2 + (R(8, 45) - corr_a) * x ** 3 * u4 / v3 - ((u3 / x) ** 2 + (1 / x) * u3 / v4)
    n = 2 + (R(8, 45) - corr_b) * x ** 3 * u5 / v4 - ((u6 / x) ** 2 + (1 / x) * u6 / v3)
    p = 2 + (16 / PI ** 4 + corr_c) * w ** 3 * v2 / u1 - ((v1 / w) ** 2 + (1 / w) * v1 / u2)
    q = 2 + (16 / PI ** 4 + corr_d) * w ** 3 * v1 / u2 - ((v2 / w) ** 2 + (1 / w) * v2 / u1)

    fixtures = {}

    # near-origin bounds: denominator x^2 * v3 * v4, shift 1
    for tid, fn, negate in (("thm1_left", m, True), ("thm1_right", n, True)):
        den = x ** 2 * v3 * v4
        num = sp.expand(sp.cancel(fn * den))
        nl = max(sp.degree(num, x), sp.degree(den, x))
        num_l = sp.expand(lift(num, nl))
        sigma = content_sigma(num_l, (x,))
        num_hat = sp.expand(num_l * sigma)
        den_x_power = nl - sp.degree(den, x)
        scalar = sp.Rational(sigma, 720 * 40320)
        main_poly = sp.expand((-1 if negate else 1) * num_hat.subs(x, x + 1))
        fixtures[tid] = {
            "scalar": str(scalar),
            "pi_normalization_power": 0,
            "den_x_power": int(den_x_power),
            "numerator_negated": negate,
            "numerator_shifted": poly_to_rational_list(main_poly, x),
            "factors": [
                {
                    "cleared": poly_to_rational_list(sp.expand(720 * lift(v3, 6)), x),
                    "clearing": "720",
                    "multiplicity": 1,
                    "shifted": poly_to_rational_list(sp.expand(720 * lift(v3, 6)).subs(x, x + 1), x),
                },
                {
                    "cleared": poly_to_rational_list(sp.expand(40320 * lift(v4, 8)), x),
                    "clearing": "40320",
                    "multiplicity": 1,
                    "shifted": poly_to_rational_list(sp.expand(40320 * lift(v4, 8)).subs(x, x + 1), x),
                },
            ],
        }

    # half-pi bounds: denominator (pi/2 - x)^2 * u1 * u2 (ordered as built)
    for tid, fn, shift, negate in (("thm2_left", p, 3, True), ("thm2_right", q, 2, False)):
        den = u1 * w ** 2 * u2 if tid == "thm2_left" else u2 * w ** 2 * u1
        num = sp.expand(sp.cancel(sp.together(fn * den)))
        nl = max(sp.degree(num, x), sp.degree(den, x))
        num_l = sp.expand(lift(num, nl))
        k = -pi_min_exponent(num_l)
        num_pi = sp.expand(num_l * PI ** k)
        sigma = content_sigma(num_pi, (x, PI))
        num_hat = sp.expand(num_pi * sigma)
        den_x_power = nl - sp.degree(den, x)
        scalar = sp.Rational(sigma, 6 * 4 * 120)
        main_poly = sp.expand((-1 if negate else 1) * num_hat.subs(x, x + shift))
        lifted_w = sp.expand(2 * lift(w, 1))          # pi*x - 2
        lifted_u1 = sp.expand(6 * lift(u1, 3))        # 6x^2 - 1
        lifted_u2 = sp.expand(120 * lift(u2, 5))      # 120x^4 - 20x^2 + 1
        fixtures[tid] = {
            "scalar": str(scalar),
            "pi_normalization_power": int(k),
            "den_x_power": int(den_x_power),
            "numerator_negated": negate,
            "numerator_shifted": poly_to_pi_list(main_poly, x),
            "factors": [
                {
                    "cleared": poly_to_pi_list(f, x),
                    "clearing": cl,
                    "multiplicity": mult,
                    "shifted": poly_to_pi_list(sp.expand(f.subs(x, x + shift)), x),
                }
                for f, cl, mult in (
                    [(lifted_u2, "120", 1), (lifted_w, "2", 2), (lifted_u1, "6", 1)]
                    if tid == "thm2_right"
                    else [(lifted_u1, "6", 1), (lifted_w, "2", 2), (lifted_u2, "120", 1)]
                )
            ],
        }

    # independent re-derivation through the displayed closed forms
    B_typed = [21785, 208208, 836584, 1861440, 2521680, 2136960, 1108800, 322560, 40320]
    C_typed = [389, 2940, 8670, 12960, 10440, 4320, 720]
    Bp = sum(c * y ** i for i, c in enumerate(B_typed))
    Cp = sum(c * y ** i for i, c in enumerate(C_typed))
    A_indep = sp.expand(sp.cancel(-m.subs(x, 1 / x) * 76204800 * x ** 12
                                  * Bp.subs(y, x - 1) * Cp.subs(y, x - 1)).subs(x, y + 1))
    D_indep = sp.expand(sp.cancel(-n.subs(x, 1 / x) * 38775788043632640000 * x ** 24
                                  * Bp.subs(y, x - 1) * Cp.subs(y, x - 1)).subs(x, y + 1))
    assert poly_to_rational_list(A_indep, y) == fixtures["thm1_left"]["numerator_shifted"]
    assert poly_to_rational_list(D_indep, y) == fixtures["thm1_right"]["numerator_shifted"]
    denom2 = x ** 5 * (PI * x - 2) ** 2 * (6 * x ** 2 - 1) * (120 * x ** 4 - 20 * x ** 2 + 1)
    E_indep = sp.expand(sp.cancel(sp.together(-p.subs(x, 1 / x) * 2 * PI ** 5 * denom2)).subs(x, y + 3))
    F_indep = sp.expand(sp.cancel(sp.together(q.subs(x, 1 / x) * 144 * PI ** 6 * x * denom2)).subs(x, y + 2))
    assert poly_to_pi_list(E_indep, y) == fixtures["thm2_left"]["numerator_shifted"]
    assert poly_to_pi_list(F_indep, y) == fixtures["thm2_right"]["numerator_shifted"]

    # reference tables exactly as printed in the published appendix
    reference = {
        "A": ["1143460110295", "22755703637276", "211707277583166", "1224891661206384",
              "4943363812472396", "14788229101047312", "34004439843092312", "61480986223883520",
              "88639341361781280", "102698848813276800", "95874412155439680", "71962038122849280",
              "43113449986871040", "20340874557158400", "7392192479884800", "1996931543040000",
              "377644774348800", "44618215219200", "2478789734400"],
        "B": [str(c) for c in B_typed],
        "C": [str(c) for c in C_typed],
        "D": ["34825460317038428686405", "1046241057892766995181020", "15160196458527770766797390",
              "141133599892553591885361888", "948620938108112884482060312",
              "4904616140661691784916252576", "20292226949171860085229532656",
              "69004718328773496670828392960", "196572398646157608543611123520",
              "475714377285153830551505007360", "988353654075203455545964663680",
              "1776901943662260506348259502080", "2780857159731825294311578805760",
              "3804874547192905665416956139520", "4565017129747537959707485025280",
              "4811255903914230000709907251200", "4457372961132476471420437708800",
              "3628467027264351719971654041600", "2591354540244462964847504179200",
              "1619215048600627699570212864000", "881619928396589360808448819200",
              "415895584701273283689578496000", "168684403283843009965129728000",
              "58222827644262986541957120000", "16867645767995215775662080000",
              "4025191509472612407312384000", "770502378722331298627584000",
              "113749455739846813286400000", "12158865105647881420800000",
              "837557021742465024000000", "27918567391415500800000"],
        "E_x12": [[4, "172800"], [6, "-17280"]],
        "E_x11": [[3, "-921600"], [4, "6220800"], [5, "99840"], [6, "-622080"], [7, "-960"]],
        "F_x12": [[4, "-58060800"], [6, "5253120"], [8, "69120"]],
        "F_x11": [[3, "348364800"], [4, "-1393459200"], [5, "-33177600"], [6, "126074880"],
                  [7, "-286848"], [8, "1658880"]],
    }

    # misc exact anchors
    m_half = sp.cancel(m.subs(x, R(1, 2)))
    n_half = sp.cancel(n.subs(x, R(1, 2)))
    ratio_series = sp.series(((sp.sin(x) / x) ** 2 + sp.tan(x) / x - 2) / (x ** 3 * sp.tan(x)),
                             x, 0, 10).removeO()
    sercoeffs = [str(sp.Poly(sp.expand(ratio_series), x).nth(k)) for k in (0, 2, 4, 6, 8)]
    anchors = {
        "m_at_half": str(m_half),
        "n_at_half": str(n_half),
        "ratio_series_even_coeffs": sercoeffs,
    }

    mpmath.mp.dps = 130
    pi_digits = mpmath.nstr(mpmath.pi, 111, strip_zeros=False)

    os.makedirs(OUT_DIR, exist_ok=True)
    with open(os.path.join(OUT_DIR, 'certificates.json'), 'w') as f:
        json.dump(fixtures, f, indent=1, sort_keys=True)
        f.write('\n')
    with open(os.path.join(OUT_DIR, 'reference_tables.json'), 'w') as f:
        json.dump(reference, f, indent=1, sort_keys=True)
        f.write('\n')
    with open(os.path.join(OUT_DIR, 'anchors.json'), 'w') as f:
        json.dump(anchors, f, indent=1, sort_keys=True)
        f.write('\n')
    with open(os.path.join(OUT_DIR, 'pi_110.txt'), 'w') as f:
        f.write(pi_digits + '\n')
    print("fixtures written to", os.path.abspath(OUT_DIR))


if __name__ == '__main__':
    main()
