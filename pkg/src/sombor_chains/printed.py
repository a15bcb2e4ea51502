"""Published closed forms, transcribed verbatim for auditing.

Each entry evaluates one expression exactly as it appears in print, with no
correction, so that :func:`sombor_chains.oracle.audit` can compare it against
enumeration. Several entries are known to be wrong; they are kept that way on
purpose. Nothing in the library computes moments from this table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .chain import SpecError

S2 = math.sqrt(2)
S5 = math.sqrt(5)
S10 = math.sqrt(10)
S13 = math.sqrt(13)
S26 = math.sqrt(26)


@dataclass(frozen=True)
class PrintedParams:
    k: int
    n: int
    p1: float
    a: float = 0.0
    probs: tuple[float, ...] = ()
    increments: tuple[float, ...] = ()
    so_pc2: float = 0.0


@dataclass(frozen=True)
class PrintedFormula:
    """One published expression.

    ``parity`` is ``"odd"`` (``l = 2k+1``), ``"even"`` (``l = 2k``) or ``None``
    for formulas stated for every ``l``; ``family_l`` narrows an entry to one
    polygon size. ``quantity`` names what the audit derives for comparison:
    ``mean``, ``variance``, ``so_pc2``, ``inc1``, ``inc2``, ``affine_A``,
    ``affine_B`` or ``affine_C_bn`` (constant term in the ``B*n + C`` basis).
    ``variant`` is ``plain``, ``reduced``, ``average`` or ``any`` (uses ``a``).
    """

    id: str
    anchor: str
    quantity: str
    variant: str
    parity: str | None
    fn: Callable[[PrintedParams], float]
    family_l: int | None = None

    def applies_to(self, l: int) -> bool:
        if self.family_l is not None:
            return l == self.family_l
        if self.parity == "odd":
            return l % 2 == 1 and l >= 5
        if self.parity == "even":
            return l % 2 == 0 and l >= 4
        return l >= 4


def _v1(a: float) -> float:
    return math.sqrt(2 * a * a - 10 * a + 13)


def _mu1(k: int, n: int) -> float:
    return math.sqrt(4 * n * n * k * k - 4 * n * n * k - 8 * n * k + 5 * n * n + 12 * n + 8)


def _mu2(k: int, n: int) -> float:
    return math.sqrt(n * n * k * k - 2 * n * n * k + 2 * n * k + 2 * n * n - 4 * n + 2)


def _pq(p: PrintedParams) -> float:
    return p.p1 * (1 - p.p1)


def _abs(a: float) -> tuple[float, float, float]:
    return abs(2 - a), abs(3 - a), _v1(a)


# odd polygons, l = 2k+1


def _cor32_A(p):
    x2, x3, v1 = _abs(p.a)
    return 2 * S2 * x2 + S2 * x3 + 2 * v1


def _cor32_B(p):
    x2, x3, v1 = _abs(p.a)
    return S2 * (2 * p.k - 3) * x2 + S2 * x3 + v1


def _cor32_C(p):
    x2, x3, v1 = _abs(p.a)
    return 4 * S2 * x2 - S2 * x3 + 8 * v1


def _cor32_proof_pc2(p):
    x2, x3, v1 = _abs(p.a)
    return (4 * p.k - 2) * S2 * x2 + S2 * x3 + 4 * v1


def _cor32_proof_A1(p):
    x2, x3, v1 = _abs(p.a)
    return (2 * p.k - 2) * S2 * x2 + 2 * S2 * x3 + 2 * v1


def _cor32_proof_A2(p):
    x2, x3, v1 = _abs(p.a)
    return (2 * p.k - 3) * S2 * x2 + S2 * x3 + 4 * v1


def _cor42_E_general(p):
    x2, x3, v1 = _abs(p.a)
    k, p1 = p.k, p.p1
    M = S2 * x2 * (p1 + 2 * k - 3) + S2 * (1 + p1) * x3 + (4 - 2 * p1) * v1
    N = (-2 * S2 * p1 - 4 * S2 * k + 10 * S2) * x2 - 3 * S2 * x3 + 4 * p1 * v1
    return M * p.n + N


def _cor42_A2_sq(a):
    x2, x3, v1 = _abs(a)
    return 3 * v1**2 + 2 * x2 * x3 - 2 * S2 * (x2 + x3)


def _cor42_Var_general(p):
    P = _cor42_A2_sq(p.a) * _pq(p)
    return P * p.n - 2 * P


def _cor42_E_SO(p):
    k, p1 = p.k, p.p1
    return ((5 * S2 - 2 * S13) * p1 + 4 * S2 * k - 3 * S2 + 4 * S13) * p.n + (4 * S13 - 4 * S2) * p1 - 8 * S2 * k + 11 * S2


def _cor42_E_SO_red(p):
    k, p1 = p.k, p.p1
    return ((3 * S2 - 2 * S5) * p1 + 2 * S2 * k + 4 * S5 - S2) * p.n + (4 * S5 - 2 * S2) * p1 - 4 * S2 * k + 4 * S2


def _cor42_E_SO_avr(p):
    k, n, p1 = p.k, p.n, p.p1
    mu1 = _mu1(k, n)
    d = n * (2 * k + 1)
    M1 = (S2 * n * p1 * (2 * k + 1) + S2 * n * (6 * k - 7) + 4 * S2 * (k - 2) + (4 - 2 * p1) * mu1) / d
    N1 = (-4 * S2 * n * p1 - 14 * S2 * n * k + (4 * mu1 - 4 * S2) * p1 - 8 * S2 + 23 * S2 * n + 26 * S2) / d
    return M1 * n + N1


def _cor42_Var_SO(p):
    return (16 * S26 + 84) * _pq(p) * (p.n - 2)


def _cor42_Var_SO_red(p):
    return (8 * S10 + 28) * (p.n - 2) * _pq(p)


def _cor42_Var_SO_avr(p):
    k, n = p.k, p.n
    d = n * n * (2 * k + 1) ** 2
    sigma = 16 * (S2 + 1) * _mu1(k, n) / d - 64 * (4 * n * n * k * k - 4 * n * n * k + 2 * n + 1) / d + 84
    return sigma * (n - 2) * _pq(p)


# even polygons, l = 2k


def _cor33_A(p):
    x2, x3, v1 = _abs(p.a)
    return 2 * S2 * x2 - 2 * v1


def _cor33_B(p):
    x2, x3, v1 = _abs(p.a)
    return S2 * ((2 * p.k - 3) * x2 + x3) + 4 * v1


def _cor33_C(p):
    x2, x3, v1 = _abs(p.a)
    return S2 * x2 - S2 * x3 - 4 * v1


# bracket placement reproduced literally: (4k - 5|2-a|), not (4k - 5)|2-a|
def _cor33_proof_pc2(p):
    x2, x3, v1 = _abs(p.a)
    return S2 * ((4 * p.k - 5 * x2) + x3) + 4 * v1


def _cor33_proof_A1(p):
    x2, x3, v1 = _abs(p.a)
    return S2 * ((2 * p.k - 2 * x2) + x3) + 2 * v1


def _cor33_proof_A2(p):
    x2, x3, v1 = _abs(p.a)
    return S2 * ((2 * p.k - 3 * x2) + x3) + 4 * v1


def _cor43_E_general(p):
    x2, x3, v1 = _abs(p.a)
    k, p1 = p.k, p.p1
    M = S2 * ((p1 + 2 * k - 3) * x2 + x3) + (4 - 2 * p1) * v1
    N = S2 * x2 * (-2 * p1 - 4 * k + 7) - 3 * S2 * x3 - 2 * S2 * (4 - 2 * p1) * v1
    return M * p.n + N


def _even_P_coef(a):
    x2, _, v1 = _abs(a)
    return 16 * a * a - 72 * a + 84 - 8 * S2 * v1 * x2


def _cor43_Var_general(p):
    P = _even_P_coef(p.a) * _pq(p)
    return P * p.n - 2 * P


def _cor43_E_SO(p):
    k, p1 = p.k, p.p1
    return (2 * p1 * (S2 - S13) + 4 * S2 * k - 4 * S13 - 3 * S2) * p.n + 4 * p1 * (S26 - S2) + 8 * S2 * k + 5 * S2 - 8 * S26


def _cor43_E_SO_red(p):
    k, p1 = p.k, p.p1
    return (S2 * (p1 + 2 * k - 1) + (4 - 2 * p1) * S5) * p.n - 2 * S2 * p1 + 4 * S10 * p1 - 4 * S2 * k - 8 * S10 + S2


def _cor43_E_SO_avr(p):
    k, n, p1 = p.k, p.n, p.p1
    return (-2 * S2 * n * p1 + 2 * S2 * p1 + 8 * S2 * n - 6 * S2) / k + (4 * n * p1 - 8 * n - 4) / (n * k) * _mu2(k, n)


def _cor43_Var_SO(p):
    return (84 - 16 * S26) * _pq(p) * (p.n - 2)


def _cor43_Var_SO_red(p):
    return (28 - 16 * S10) * (p.n - 2) * _pq(p)


def _cor43_Var_SO_avr(p):
    k, n = p.k, p.n
    d = n * n * k * k
    return (-80 * n * n * k * k - 8 * n * n * k + 8 * n * k + 16 * n * n - 32 * n + 16) / d + (-8 * S2 * (n - 1) * _mu2(k, n)) / d


# any l


def _thm41_E(p):
    return math.fsum(A * q for A, q in zip(p.increments, p.probs)) * (p.n - 2) + p.so_pc2


def _thm41_Var(p):
    m1 = math.fsum(A * q for A, q in zip(p.increments, p.probs))
    m2 = math.fsum(A * A * q for A, q in zip(p.increments, p.probs))
    return m2 - m1 * m1


# named families


def _thm51_E(p):
    x2, x3, v1 = _abs(p.a)
    p1 = p.p1
    return (S2 * (1 + p1) * x2 + S2 * x3 + (4 - 2 * p1) * v1) * p.n + S2 * (-2 * p1 - 1) * x2 - 3 * S2 * x3 - 2 * S2 * (4 - 2 * p1) * v1


def _even_family_var(p):
    return _even_P_coef(p.a) * (p.n - 2) * _pq(p)


def _thm52_E(p):
    x2, x3, v1 = _abs(p.a)
    p1 = p.p1
    return (S2 * ((1 + p1) * x2 + x3) + (4 - 2 * p1) * v1) * p.n + (2 * S2 - 2 * S2 * p1) * x2 - 3 * S2 * x3 + 4 * p1 * v1


def _thm52_Var(p):
    return _cor42_A2_sq(p.a) * (p.n - 2) * _pq(p)


def _thm53_E(p):
    x2, x3, v1 = _abs(p.a)
    p1 = p.p1
    return (S2 * ((3 + p1) * x2 + S2 * x3) + (4 - 2 * p1) * v1) * p.n - 5 * x2 - 3 * S2 * x3 - 2 * S2 * (4 - 2 * p1) * v1


def _thm54_E(p):
    x2, x3, v1 = _abs(p.a)
    p1 = p.p1
    return (
        (S2 * ((5 + p1) * x2 + S2 * (1 + p1) * x3) + (4 - 2 * p1) * v1) * p.n
        - (2 * math.sqrt(2 * p1 + 6)) * x2
        - 3 * S2 * x3
        - 4 * p1 * v1
    )


def _thm54_Var(p):
    x2, x3, v1 = _abs(p.a)
    return (3 * v1**2 + 2 * x2 * x3 - 2 * S2 * (x2 * x3)) * (p.n - 2) * _pq(p)


_ODD_ROWS = [
    ("SO", "plain", _cor42_E_SO, _cor42_Var_SO),
    ("SO_red", "reduced", _cor42_E_SO_red, _cor42_Var_SO_red),
    ("SO_avr", "average", _cor42_E_SO_avr, _cor42_Var_SO_avr),
]
_EVEN_ROWS = [
    ("SO", "plain", _cor43_E_SO, _cor43_Var_SO),
    ("SO_red", "reduced", _cor43_E_SO_red, _cor43_Var_SO_red),
    ("SO_avr", "average", _cor43_E_SO_avr, _cor43_Var_SO_avr),
]


def _build_registry() -> dict[str, PrintedFormula]:
    F = PrintedFormula
    entries = [
        F("Cor32_A", "A = 2√2|2-a| + √2|3-a| + 2v1", "affine_A", "any", "odd", _cor32_A),
        F("Cor32_B", "B = √2(2k-3)|2-a| + √2|3-a| + v1", "affine_B", "any", "odd", _cor32_B),
        F("Cor32_C", "C = 4√2|2-a| - √2|3-a| + 8v1", "affine_C_bn", "any", "odd", _cor32_C),
        F("Cor32_SO_A", "SO(PC_n) coefficient of X: 6√2 + 2√13", "affine_A", "plain", "odd", lambda p: 6 * S2 + 2 * S13),
        F("Cor32_proof_SO_PC2", "SO_a(PC_2) = (4k-2)√2|2-a| + √2|3-a| + 4v1", "so_pc2", "any", "odd", _cor32_proof_pc2),
        F("Cor32_proof_A1", "A1 = (2k-2)√2|2-a| + 2√2|3-a| + 2v1", "inc1", "any", "odd", _cor32_proof_A1),
        F("Cor32_proof_A2", "A2 = (2k-3)√2|2-a| + √2|3-a| + 4v1", "inc2", "any", "odd", _cor32_proof_A2),
        F("Cor33_A", "A = 2√2|2-a| - 2v1", "affine_A", "any", "even", _cor33_A),
        F("Cor33_B", "B = √2((2k-3)|2-a| + |3-a|) + 4v1", "affine_B", "any", "even", _cor33_B),
        F("Cor33_C", "C = √2|2-a| - √2|3-a| - 4v1", "affine_C_bn", "any", "even", _cor33_C),
        F("Cor33_proof_SO_PC2", "SO_a(PC_2) = √2((4k-5|2-a|) + |3-a|) + 4v1", "so_pc2", "any", "even", _cor33_proof_pc2),
        F("Cor33_proof_A1", "A1 = √2((2k-2|2-a|) + |3-a|) + 2v1", "inc1", "any", "even", _cor33_proof_A1),
        F("Cor33_proof_A2", "A2 = √2((2k-3|2-a|) + |3-a|) + 4v1", "inc2", "any", "even", _cor33_proof_A2),
        F("Thm41_E", "E = (Σ A_i p_i)(n-2) + SO_a(G_2)", "mean", "any", None, _thm41_E),
        F("Thm41_Var", "Var = Σ A_i² p_i - (Σ A_i p_i)²", "variance", "any", None, _thm41_Var),
        F("Cor42_E_SO_a", "E = Mn + N (general a)", "mean", "any", "odd", _cor42_E_general),
        F("Cor42_Var_SO_a", "Var = Pn + Q, P = A²p1(1-p1), Q = -2P (general a)", "variance", "any", "odd", _cor42_Var_general),
        F("Cor43_E_SO_a", "E = Mn + N (general a)", "mean", "any", "even", _cor43_E_general),
        F("Cor43_Var_SO_a", "Var = Pn + Q, P = (16a²-72a+84-8√2 v1|2-a|)p1(1-p1) (general a)", "variance", "any", "even", _cor43_Var_general),
        F("Thm51_E", "E(SO_a(GPC_n)) = (√2(1+p1)|2-a| + √2|3-a| + (4-2p1)v1)n + √2(-2p1-1)|2-a| - 3√2|3-a| - 2√2(4-2p1)v1", "mean", "any", None, _thm51_E, family_l=4),
        F("Thm51_Var", "Var(SO_a(GPC_n)) = (16a²-72a+84-8√2 v1|2-a|)(n-2)p1(1-p1)", "variance", "any", None, _even_family_var, family_l=4),
        F("Thm52_E", "E(SO_a(P_n)) = (√2((1+p1)|2-a| + |3-a|) + (4-2p1)v1)n + (2√2-2√2p1)|2-a| - 3√2|3-a| + 4p1v1", "mean", "any", None, _thm52_E, family_l=5),
        F("Thm52_Var", "Var(SO_a(P_n)) = A²(n-2)p1(1-p1)", "variance", "any", None, _thm52_Var, family_l=5),
        F("Thm53_E", "E(SO_a(PPC_n)) = (√2((3+p1)|2-a| + √2|3-a|) + (4-2p1)v1)n - 5|2-a| - 3√2|3-a| - 2√2(4-2p1)v1", "mean", "any", None, _thm53_E, family_l=6),
        F("Thm53_Var", "Var(SO_a(PPC_n)) = (16a²-72a+84-8√2 v1|2-a|)(n-2)p1(1-p1)", "variance", "any", None, _even_family_var, family_l=6),
        F("Thm54_E", "E(SO_a(COC_n)) = (√2((5+p1)|2-a| + √2(1+p1)|3-a|) + (4-2p1)v1)n - (2√(2p1+6))|2-a| - 3√2|3-a| - 4p1v1", "mean", "any", None, _thm54_E, family_l=8),
        F("Thm54_Var", "Var(SO_a(COC_n)) = (3v1² + 2|2-a||3-a| - 2√2(|2-a||3-a|))(n-2)p1(1-p1)", "variance", "any", None, _thm54_Var, family_l=8),
    ]
    for cor, parity, rows in (("Cor42", "odd", _ODD_ROWS), ("Cor43", "even", _EVEN_ROWS)):
        tag = "2k+1" if parity == "odd" else "2k"
        for name, variant, e_fn, v_fn in rows:
            entries.append(F(f"{cor}_E_{name}", f"E({name}(PC_n)), l = {tag}", "mean", variant, parity, e_fn))
            entries.append(F(f"{cor}_Var_{name}", f"Var({name}(PC_n)), l = {tag}", "variance", variant, parity, v_fn))
            entries.append(F(f"Table1_{name}_{parity}_mu", f"normal parameter mu, {name}(PC_n), l = {tag}", "mean", variant, parity, e_fn))
            entries.append(F(f"Table1_{name}_{parity}_sigma2", f"normal parameter sigma^2, {name}(PC_n), l = {tag}", "variance", variant, parity, v_fn))
    return {f.id: f for f in entries}


REGISTRY: dict[str, PrintedFormula] = _build_registry()


def printed_formula(formula_id: str, params: PrintedParams) -> float:
    """Evaluate a published expression exactly as printed."""
    try:
        f = REGISTRY[formula_id]
    except KeyError:
        raise SpecError(f"unknown printed formula {formula_id!r}") from None
    return f.fn(params)
