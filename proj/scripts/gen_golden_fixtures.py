#!/usr/bin/env python3
"""Regenerates tests/fixtures/golden_points.json.

The closed-form operator tables in data/golden_forms.json are validated here
by an independent route before their hand-check fixture values are frozen:
for the spherical chart the test field is converted to Cartesian coordinates,
every operator is computed there with plain partial derivatives (where the
vector Laplacian is the componentwise scalar Laplacian and the Bitsadze-type
operator is grad div + curl curl), and the result is projected back onto the
local frame at each point. The script aborts if a table disagrees with the
independent computation, so a transcription typo cannot make it into the
fixtures.

Usage: python3 scripts/gen_golden_fixtures.py
"""

import json
import pathlib
import sympy as sp

ROOT = pathlib.Path(__file__).resolve().parent.parent
PREC = 30


def grammar_to_sympy(text):
    return sp.sympify(text.replace("^", "**"), rational=False)


def fmt(v):
    return float(sp.Float(v, 20))


# --- spherical chart -------------------------------------------------------

r, th, ps = sp.symbols("r theta psi")
x, y, z = sp.symbols("x y z", real=True)

SPH_FIELD = {
    "f0": "r^2*cos(theta)",
    "f1": "r*sin(theta)",
    "f2": "r^2*cos(psi)",
    "f3": "r*cos(theta)*sin(psi)",
}
SPH_POINTS = [
    (sp.Rational(13, 10), sp.Rational(9, 10), sp.Rational(7, 10)),
    (sp.Rational(21, 10), sp.Rational(13, 10), sp.Rational(4, 1)),
    (sp.Rational(7, 10), sp.Rational(2, 1), sp.Rational(11, 2)),
]

f_sph = {k: grammar_to_sympy(v) for k, v in SPH_FIELD.items()}

# Spherical coordinates and frame expressed through x, y, z.
rr = sp.sqrt(x * x + y * y + z * z)
rho = sp.sqrt(x * x + y * y)
subs_cart = {r: rr, th: sp.acos(z / rr), ps: sp.atan2(y, x)}
u1 = sp.Matrix([x / rr, y / rr, z / rr])
u2 = sp.Matrix([z * x / (rr * rho), z * y / (rr * rho), -rho / rr])
u3 = sp.Matrix([-y / rho, x / rho, sp.Integer(0)])
frame = [u1, u2, u3]

G0 = f_sph["f0"].subs(subs_cart)
Gv = sp.zeros(3, 1)
for k, key in enumerate(("f1", "f2", "f3")):
    Gv += f_sph[key].subs(subs_cart) * frame[k]

cart_vars = (x, y, z)


def cart_div(V):
    return sum(sp.diff(V[a], cart_vars[a]) for a in range(3))


def cart_grad(s):
    return sp.Matrix([sp.diff(s, v) for v in cart_vars])


def cart_curl(V):
    return sp.Matrix(
        [
            sp.diff(V[2], y) - sp.diff(V[1], z),
            sp.diff(V[0], z) - sp.diff(V[2], x),
            sp.diff(V[1], x) - sp.diff(V[0], y),
        ]
    )


def cart_lap(s):
    return sum(sp.diff(s, v, 2) for v in cart_vars)


OPS_CART = {
    "mt": (
        -cart_div(Gv),
        cart_grad(G0) + cart_curl(Gv),
    ),
    "laplace_scalar": (cart_lap(G0), sp.zeros(3, 1)),
    "laplace_vector": (
        sp.Integer(0),
        sp.Matrix([cart_lap(Gv[0]), cart_lap(Gv[1]), cart_lap(Gv[2])]),
    ),
    "bitsadze_vector": (
        sp.Integer(0),
        cart_grad(cart_div(Gv)) + cart_curl(cart_curl(Gv)),
    ),
}


def spherical_reference(op, point):
    """Operator value (scalar, frame components) via the Cartesian route."""
    r0, th0, ps0 = point
    x0 = r0 * sp.sin(th0) * sp.cos(ps0)
    y0 = r0 * sp.sin(th0) * sp.sin(ps0)
    z0 = r0 * sp.cos(th0)
    at = {x: x0, y: y0, z: z0}
    s_val, v_cart = OPS_CART[op]
    s_num = sp.N(s_val.subs(at), PREC)
    v_num = sp.Matrix([sp.N(v_cart[a].subs(at), PREC) for a in range(3)])
    frame_at = [sp.Matrix([sp.N(u[a].subs(at), PREC) for a in range(3)]) for u in frame]
    comps = [sum(v_num[a] * frame_at[k][a] for a in range(3)) for k in range(3)]
    return [s_num] + [sp.N(c, PREC) for c in comps]


def table_value(table, chart_coords, field, op, point):
    """Evaluates a closed-form table entry by substituting the field's
    derivatives for the derivative symbols."""
    coords = [sp.Symbol(c) for c in chart_coords]
    at = dict(zip(coords, point))
    env = {}
    for name, expr in field.items():
        env[sp.Symbol(name)] = expr
        for i, ci in enumerate(coords):
            env[sp.Symbol(f"{name}_{chart_coords[i]}")] = sp.diff(expr, ci)
            for j in range(i, len(coords)):
                cj = coords[j]
                env[sp.Symbol(f"{name}_{chart_coords[i]}_{chart_coords[j]}")] = sp.diff(
                    expr, ci, cj
                )
    entry = table["operators"][op]
    out = []
    for text in [entry["scalar"]] + list(entry["vector"]):
        e = grammar_to_sympy(text)
        e = e.subs({sym: val for sym, val in env.items()}, simultaneous=True)
        out.append(sp.N(e.subs(at), PREC))
    return out


def main():
    forms = json.loads((ROOT / "data" / "golden_forms.json").read_text())
    fixtures = {"schema_version": 1, "charts": {}}

    sph_table = forms["charts"]["spherical"]
    expected = {}
    for op in ("mt", "laplace_scalar", "laplace_vector", "bitsadze_vector"):
        rows = []
        for point in SPH_POINTS:
            ref = spherical_reference(op, point)
            got = table_value(sph_table, ["r", "theta", "psi"], f_sph, op, point)
            for a, b in zip(ref, got):
                delta = abs(sp.N(a - b, PREC))
                assert delta < sp.Float("1e-18"), (
                    f"spherical table '{op}' disagrees with the Cartesian route "
                    f"at {point}: {delta}"
                )
            rows.append([fmt(v) for v in ref])
        expected[op] = rows
    fixtures["charts"]["spherical"] = {
        "field": SPH_FIELD,
        "points": [[fmt(c) for c in p] for p in SPH_POINTS],
        "expected": expected,
    }

    # --- cartesian chart ---------------------------------------------------
    CART_FIELD = {
        "f0": "q1^2*q2 - q3^2",
        "f1": "q1*q2*q3",
        "f2": "q2^2 - q1*q3",
        "f3": "sin(q1)*q2",
    }
    CART_POINTS = [
        (sp.Rational(2, 5), sp.Rational(-11, 10), sp.Rational(4, 5)),
        (sp.Rational(17, 10), sp.Rational(3, 10), sp.Rational(-3, 5)),
        (sp.Rational(-9, 10), sp.Rational(6, 5), sp.Rational(3, 2)),
    ]
    q1, q2, q3 = sp.symbols("q1 q2 q3")
    f_cart = {k: grammar_to_sympy(v) for k, v in CART_FIELD.items()}
    g0 = f_cart["f0"]
    gv = sp.Matrix([f_cart["f1"], f_cart["f2"], f_cart["f3"]])
    qvars = (q1, q2, q3)

    def cdiv(V):
        return sum(sp.diff(V[a], qvars[a]) for a in range(3))

    def cgrad(s):
        return sp.Matrix([sp.diff(s, v) for v in qvars])

    def ccurl(V):
        return sp.Matrix(
            [
                sp.diff(V[2], q2) - sp.diff(V[1], q3),
                sp.diff(V[0], q3) - sp.diff(V[2], q1),
                sp.diff(V[1], q1) - sp.diff(V[0], q2),
            ]
        )

    def clap(s):
        return sum(sp.diff(s, v, 2) for v in qvars)

    ops_cart_chart = {
        "mt": (-cdiv(gv), cgrad(g0) + ccurl(gv)),
        "laplace_scalar": (clap(g0), sp.zeros(3, 1)),
        "laplace_vector": (sp.Integer(0), sp.Matrix([clap(gv[a]) for a in range(3)])),
        "bitsadze_vector": (sp.Integer(0), cgrad(cdiv(gv)) + ccurl(ccurl(gv))),
    }

    cart_table = forms["charts"]["cartesian"]
    expected = {}
    for op, (s_val, v_val) in ops_cart_chart.items():
        rows = []
        for point in CART_POINTS:
            at = dict(zip(qvars, point))
            ref = [sp.N(s_val.subs(at), PREC)] + [
                sp.N(v_val[a].subs(at), PREC) for a in range(3)
            ]
            got = table_value(cart_table, ["q1", "q2", "q3"], f_cart, op, point)
            for a, b in zip(ref, got):
                delta = abs(sp.N(a - b, PREC))
                assert delta < sp.Float("1e-18"), (
                    f"cartesian table '{op}' disagrees at {point}: {delta}"
                )
            rows.append([fmt(v) for v in ref])
        expected[op] = rows
    fixtures["charts"]["cartesian"] = {
        "field": CART_FIELD,
        "points": [[fmt(c) for c in p] for p in CART_POINTS],
        "expected": expected,
    }

    out = ROOT / "tests" / "fixtures" / "golden_points.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(fixtures, indent=2) + "\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
