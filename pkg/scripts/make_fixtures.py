"""Regenerate the atlas and cochain fixtures under fixtures/."""

from pathlib import Path

from superdeform.atlas import Atlas, Cover, coboundary0, p1_split_atlas
from superdeform.deform import build_construction, twist_by_g12
from superdeform.grassmann import make_morphism, split_morphism
from superdeform.io import render_atlas
from superdeform.scalar import RationalFunction as RF, rf_derivative

OUT = Path(__file__).resolve().parent.parent / "fixtures"
x, y = RF.variable("x"), RF.variable("y")


def write(name, text):
    (OUT / name).write_text(text)
    print("wrote", name)


def main():
    OUT.mkdir(exist_ok=True)
    base = p1_split_atlas(2)
    base.name = "p1-split"
    write("p1-split.atlas", render_atlas(base))

    theta = {("U", "V"): x.inverse()}
    con = build_construction(base, theta)
    con.name = "p1-construction"
    write("p1-construction.atlas", render_atlas(con))

    # Theta = d sigma and g12 = d lambda12, so the atlas splits
    sigma = {"U": x * 2 + 1, "V": y - 3}
    th = coboundary0(base, sigma, 1)
    lam12 = {"U": x * x - x, "V": y * 4}
    a = build_construction(base, th)
    a = twist_by_g12(a, coboundary0(a, lam12, 2))
    a.name = "p1-construction-coboundary"
    write("p1-construction-coboundary.atlas", render_atlas(a))

    # directives for `build`
    text = render_atlas(base).replace("name = p1-split", "name = p1-directives")
    text += "\n[construction]\ntheta U V = 1/x + 3*x\n\n[twist]\ng12 U V = x^2 - 1/x\n"
    write("p1-directives.atlas", text)

    three = p1_split_atlas(3)
    sig3 = {"U": x + 1, "V": y * 3, "W": RF.variable("z") - 2}
    con3 = build_construction(three, coboundary0(three, sig3, 1))
    con3.name = "p1-three-chart"
    write("p1-three-chart.atlas", render_atlas(con3))

    write("xinv.cochain", "[cochain]\ndegree = 1\ntwist = -2\nU V = 1/x\n")
    write("laurent.cochain", "[cochain]\ndegree = 1\ntwist = 1\nU V = 3*x^2 - 1/x + 2/x^3\n")

    # genus-1-like: constant zeta, translation body
    cover = Cover.build((("U", "x"), ("V", "y")), [("U", "V")])
    g1 = Atlas.from_forward(
        cover, 2, {("U", "V"): split_morphism("U", "V", "x", "y", 2, x + 1, RF.constant(1, "x"))},
        genus=1, name="genus1-like",
    )
    write("genus1-like.atlas", render_atlas(g1))

    # superconformal, cocycle-consistent, yet psi1' psi2 != psi1 psi2'
    f, zeta = -x.inverse(), x.inverse()
    psi1, psi2, g = RF.constant(1, "x"), x, RF.constant(0, "x")
    zeta12 = (rf_derivative(g) + rf_derivative(psi1) * psi2 - psi1 * rf_derivative(psi2)) / (zeta * 2)
    m = make_morphism(
        "U", "V", "x", "y", 2,
        {(): f, (0, 2): zeta * psi1, (1, 2): zeta * psi2, (0, 1): g},
        {(2,): zeta, (0,): psi1, (1,): psi2, (0, 1, 2): zeta12},
    )
    w = Atlas.from_forward(base.cover, 2, {("U", "V"): m}, genus=0, name="wronskian-counterexample")
    write("wronskian-counterexample.atlas", render_atlas(w))


if __name__ == "__main__":
    main()
