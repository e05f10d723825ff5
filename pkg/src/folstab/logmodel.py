"""Logarithmic models and first integrals from Darboux data.

For Darboux polynomials f_j with cofactors c_j, the closed form
eta = sum lambda_j df_j / f_j defines the same foliation as omega
exactly when sum lambda_j c_j = 0 in K[x, y]: multiplying eta ^ omega
by prod f_j leaves (sum lambda_j c_j) dx ^ dy.  The recognizer solves
that kernel exactly.  One kernel line is a logarithmic model, with
residues normalized so the first nonzero one equals 1; two or more
lines raise AmbiguousKernel rather than guessing.

When every residue is rational and of one sign, clearing denominators
gives coprime integer exponents and F = prod f_j^{n_j} is a polynomial
first integral, re-certified through X(F) = 0 before it is reported.
Mixed signs only ever produce a meromorphic quotient and are flagged
as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .errors import AmbiguousKernel
from .field import KElement
from .linalg import kernel_basis
from .poly import OneFormGerm, SparsePoly
from .separatrix import Separatrix, SeparatrixSet


@dataclass
class LogModel:
    separatrices: list[Separatrix]
    residues: list[KElement]

    def residues_real(self) -> bool:
        return all(r.imag_part().is_zero() for r in self.residues)

    def residues_rational(self) -> bool:
        return all(r.is_rational() for r in self.residues)


def _members(seps) -> list[Separatrix]:
    if isinstance(seps, SeparatrixSet):
        return list(seps.members)
    return list(seps)


def recognize_logarithmic(germ: OneFormGerm, seps) -> LogModel | None:
    members = _members(seps)
    if not members:
        return None
    monos = sorted({m for s in members for m in s.cofactor.c})
    rows = [[s.cofactor.coefficient(*m) for s in members] for m in monos]
    kernel = kernel_basis(rows, len(members), germ.d)
    if not kernel:
        return None
    if len(kernel) > 1:
        raise AmbiguousKernel(
            f"the cofactor relation space has dimension {len(kernel)}; "
            "the logarithmic model is not unique",
            dimension=len(kernel),
        )
    vec = kernel[0]
    lead = next(v for v in vec if not v.is_zero())
    inv = lead.inverse()
    return LogModel(members, [v * inv for v in vec])


@dataclass
class FirstIntegralResult:
    status: str  # "integral" | "meromorphic" | "not-applicable" | "no-model"
    integral: SparsePoly | None = None
    exponents: list[int] | None = None
    model: LogModel | None = None
    notes: list[str] = field(default_factory=list)


def first_integral_search(germ: OneFormGerm, seps) -> FirstIntegralResult:
    model = recognize_logarithmic(germ, seps)
    if model is None:
        return FirstIntegralResult(
            "no-model",
            notes=["no logarithmic relation among the certified cofactors"],
        )
    if not model.residues_rational():
        return FirstIntegralResult(
            "not-applicable",
            model=model,
            notes=["residues are not all rational"],
        )
    fracs = [r.q[0] for r in model.residues]
    den = lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = gcd(*ints)
    if g:
        ints = [n // g for n in ints]
    if any(n > 0 for n in ints) and any(n < 0 for n in ints):
        return FirstIntegralResult(
            "meromorphic",
            exponents=ints,
            model=model,
            notes=[
                "residue signs are mixed: the Darboux product is "
                "meromorphic, not holomorphic"
            ],
        )
    if ints and max(ints, default=0) <= 0:
        ints = [-n for n in ints]
    F = SparsePoly.constant(germ.d, 1)
    for sep, n in zip(model.separatrices, ints):
        F = F * sep.poly ** n
    if not germ.annihilates(F):
        raise AssertionError("certified cofactor relation failed to integrate")
    return FirstIntegralResult("integral", integral=F, exponents=ints, model=model)
