"""High-precision reference values for the test suite.

Every nontrivial numeric literal frozen into the tests is derived here with
mpmath, independently of the package implementation.  Regenerate with

    python tools/reference_values.py
"""
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 30


def show(label, value, digits=17):
    print(f"{label:46s} {mp.nstr(mp.mpf(value), digits)}")


def nfunctions():
    A = lambda s: mp.e**s - 1 - s
    B = lambda s: (1 + s) * mp.log(1 + s) - s
    print("== N-function pair ==")
    show("A(1) = e - 2", A(1))
    show("B(1) = 2 ln 2 - 1", B(1))
    ainv1 = mp.findroot(lambda s: A(s) - 1, 1.1)
    binv1 = mp.findroot(lambda s: B(s) - 1, 1.7)
    show("Ainv(1)", ainv1)
    show("Binv(1)", binv1)
    show("1 / Binv(1)", 1 / binv1)
    # asymptotics of t * Binv(1/t)
    for t in (mp.mpf(10) ** 6, mp.mpf(10) ** -6):
        s = mp.findroot(lambda u: B(u) - 1 / t, min(mp.mpf(1), 1 / t))
        show(f"t*Binv(1/t), t=1e{int(mp.log10(t))}", t * s)
        show("  ratio to sqrt(2t)", t * s / mp.sqrt(2 * t))
        show("  times ln(1/t)", t * s * mp.log(1 / t))
    return ainv1, binv1


def kappa_calculus():
    def c_of(kappa, a, b):
        r = mp.sqrt(1 + 4 * kappa)
        return (1 + r * (b**r + a**r) / (b**r - a**r)) / (2 * kappa)

    def phi_of(kappa):
        r = mp.sqrt(4 * kappa + 1)
        return (2 * kappa / (4 * kappa + 1)) / (1 + r * (2**r + 1) / (2**r - 1))

    print("== kappa calculus ==")
    show("phi(1.559)", phi_of(mp.mpf("1.559")))
    show("phi(1.0)", phi_of(1))
    show("C(1.559; 1, 2)", c_of(mp.mpf("1.559"), 1, 2))
    show("identity phi*(4k+1)*C at 1.559", phi_of(mp.mpf("1.559")) * (4 * mp.mpf("1.559") + 1) * c_of(mp.mpf("1.559"), 1, 2))
    kstar = mp.findroot(lambda k: mp.diff(phi_of, k), mp.mpf("1.6"))
    show("kappa* (argmax of phi)", kstar)
    show("phi(kappa*)", phi_of(kstar))
    show("sqrt((4k*+1) phi*)", mp.sqrt((4 * kstar + 1) * phi_of(kstar)))
    show("2 sqrt(4k+1) at 1.559", 2 * mp.sqrt(4 * mp.mpf("1.559") + 1))
    show("ceil arg sqrt(7.236*1)", mp.sqrt((4 * mp.mpf("1.559") + 1)))
    show("0.046 * 2pi", mp.mpf("0.046") * 2 * mp.pi)


def strip_spectrum():
    print("== strip transverse spectrum ==")
    # symmetric attractive pair: even mode, alpha = sigma tanh(sigma b), b = 1
    s = mp.findroot(lambda x: x * mp.tanh(x) - 1, mp.mpf("1.2"))
    show("sigma: sigma tanh sigma = 1", s)
    show("tau1 = -sigma^2", -(s**2))
    # alpha=beta=t: negative root of (sigma - t^2/sigma) sinh(sigma a) = 0
    show("alpha=beta=2, a=1: tau1", -4)
    show("  first positive tau = pi^2", mp.pi**2)
    # Dirichlet a=1
    show("Dirichlet a=1: lambda1 = pi^2", mp.pi**2)
    show("Dirichlet a=1: lambda2 = 2 pi^2", 2 * mp.pi**2)
    # Dirichlet-Neumann a=1
    show("DN a=1: lambda1 = (pi/2)^2", (mp.pi / 2) ** 2)
    show("DN a=1: lambda2 = (pi/2)^2 + pi^2", (mp.pi / 2) ** 2 + mp.pi**2)
    show("  (9(pi/2)^2 for comparison)", 9 * (mp.pi / 2) ** 2)
    # second negative eigenvalue threshold in the symmetric case: alpha*a = 2
    # odd mode alpha = sigma coth(sigma b) -> sigma -> 0 gives alpha = 1/b = 2/a


def integrals():
    print("== integrals ==")
    show("2pi int_0^1 r ln(2+r) dr", 2 * mp.pi * mp.quad(lambda r: r * mp.log(2 + r), [0, 1]))
    show("int_{|x|<1} ln(1/|x|) dx = pi/2", mp.pi / 2)
    show("annulus e^-1<=|x|<=1 area", mp.pi * (1 - mp.e**-2))
    show("int_1^2 x dx", mp.mpf(3) / 2)
    show("A_0 example: area of unit square", 1)


def cantor_sums():
    print("== Cantor dilated-square sums ==")
    # level-L measure: 2^L atoms of mass 2^-L at midpoints of level-L intervals.
    # Middle-third gap squares at level n (n<=L): 2^(n-1) squares; the 3x
    # dilation of each covers its parent level-(n-1) interval exactly, hence
    # captures mass 2*2^-n.  Per-level sum = 1, cumulative over n<=L equals L.
    for L in (1, 2, 4, 8, 12):
        intervals = [(Fraction(0), Fraction(1))]
        for _ in range(L):
            nxt = []
            for lo, hi in intervals:
                w = (hi - lo) / 3
                nxt += [(lo, lo + w), (hi - w, hi)]
            intervals = nxt
        atoms = [(lo + hi) / 2 for lo, hi in intervals]
        mass = Fraction(1, 2**L)
        total = Fraction(0)
        parents = [(Fraction(0), Fraction(1))]
        for n in range(1, L + 1):
            nxt = []
            for lo, hi in parents:
                w = (hi - lo) / 3
                glo, ghi = lo + w, hi - w
                c = (glo + ghi) / 2
                side = 3 * (ghi - glo)
                total += sum(mass for a in atoms if abs(a - c) <= side / 2)
                nxt += [(lo, lo + w), (hi - w, hi)]
            parents = nxt
        print(f"level {L:2d}: sum mu(dilated squares) = {total} (= level)")


def well_counts():
    print("== 1D Dirichlet well eigenvalue counts ==")
    pairs = [(1, 15), (1, 50), (2, 15), (2, 40), (mp.pi, 10), (mp.pi, 17),
             (5, 3), (5, 8), (10, 1.5), (10, 5)]
    for L, c in pairs:
        k = 0
        while ((k + 1) * mp.pi / L) ** 2 < c:
            k += 1
        print(f"L={mp.nstr(mp.mpf(L), 8):10s} c={mp.nstr(mp.mpf(c), 8):8s} count={k}")


if __name__ == "__main__":
    nfunctions()
    kappa_calculus()
    strip_spectrum()
    integrals()
    cantor_sums()
    well_counts()
