"""Three-valued decision outcomes with machine-checkable certificates.

Every yes/no verdict carries a certificate that the audit module can
re-validate using nothing but field arithmetic and its own tiny
elimination; unknown verdicts carry the exhausted budget.  Composite
decisions (Milnor-style) chain component certificates under a named
rule, so the audit can re-check every computed part.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Outcome:
    verdict: str  # "yes" | "no" | "unknown"
    certificate: object = None
    note: str = ""

    def is_yes(self):
        return self.verdict == "yes"

    def is_no(self):
        return self.verdict == "no"

    def is_unknown(self):
        return self.verdict == "unknown"

    def __repr__(self):
        body = self.verdict
        if self.note:
            body += f" ({self.note})"
        return f"<{body}>"


def yes(cert=None, note=""):
    return Outcome("yes", cert, note)


def no(cert=None, note=""):
    return Outcome("no", cert, note)


def unknown(cert=None, note=""):
    return Outcome("unknown", cert, note)


@dataclass
class PowerCombination:
    """target == sum_i coeffs[i]^p * gens[i]."""
    target: object
    gens: tuple
    coeffs: tuple
    kind: str = "power-combination"


@dataclass
class IndependenceWitness:
    """The listed elements are independent over p-th powers."""
    elements: tuple
    kind: str = "independence"


@dataclass
class RankObstruction:
    """element does not lie in the p-power span of gens."""
    element: object
    gens: tuple
    kind: str = "rank-obstruction"


@dataclass
class SubspaceEquality:
    """Mutual power-combination witnesses proving two spans coincide."""
    left_in_right: tuple  # PowerCombination per left generator
    right_in_left: tuple
    kind: str = "subspace-equality"


@dataclass
class IsometryWitness:
    """T carries dst-coordinates to src: form_src(T x) == form_dst(x).

    form_kind is "bilinear" (Gram matrices) or "quadratic" (upper
    triangular coefficient matrices).
    """
    form_kind: str
    src: tuple
    dst: tuple
    transform: tuple
    kind: str = "isometry-witness"


@dataclass
class WittSplit:
    """U^t G U is block diagonal: metabolic planes M(a_i), then an
    anisotropic block whose diagonal is independent over squares."""
    gram: tuple
    transform: tuple
    plane_scalars: tuple
    anisotropic_gram: tuple
    kind: str = "witt-split"


@dataclass
class InvariantMismatch:
    name: str
    left: object
    right: object
    kind: str = "invariant-mismatch"


@dataclass
class ApRoot:
    """w satisfies w^2 + w == c."""
    c: object
    w: object
    kind: str = "ap-root"


@dataclass
class OddValuation:
    """After shifting by w^2 + w for w = shift, the target has a pole of
    odd order at the given place (or odd degree at infinity), so the
    original element is outside the image of w^2 + w."""
    c: object            # reduced element carrying the obstruction
    place: object        # monic irreducible (as a field element) or "infinity"
    order: int
    original: object = None
    shift: object = None
    kind: str = "odd-valuation"


@dataclass
class NonzeroTrace:
    c: object
    trace: int
    original: object = None
    shift: object = None
    kind: str = "nonzero-trace"


@dataclass
class Exhausted:
    budget: int
    detail: str = ""
    kind: str = "budget-exhausted"


@dataclass
class Chain:
    """A named decision rule applied to validated component outcomes."""
    rule: str
    parts: dict = field(default_factory=dict)
    kind: str = "chain"
