"""Assembly of the leading constant c = alpha * beta * omega_inf * prod_p (1-1/p)^7 omega_p."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .archimedean import DEFAULT_CONFIG, OmegaInfinity, QuadratureConfig, omega_infinity
from .local import EulerProduct, euler_product_omega_H
from .polytope import alpha_polytope, alpha_volume

# the surface is split, so the Brauer-group factor is trivial
BETA = Fraction(1)


@dataclass(frozen=True)
class PeyreBreakdown:
    alpha: Fraction
    beta: Fraction
    omega_inf: float
    omega_inf_err: float
    euler_P: int
    euler_product: float
    euler_tail: float
    c_VH: float
    c_VH_err: float
    omega_detail: OmegaInfinity | None = None

    def to_fixture(self) -> dict:
        return {
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "omega_inf": self.omega_inf,
            "omega_inf_err": self.omega_inf_err,
            "euler_P": self.euler_P,
            "euler_value": self.euler_product,
            "euler_tail": self.euler_tail,
            "c_VH": self.c_VH,
            "c_VH_err": self.c_VH_err,
        }


def assemble(alpha: Fraction, omega: OmegaInfinity, euler: EulerProduct) -> PeyreBreakdown:
    ab = alpha * BETA
    c = float(ab) * omega.value * euler.value
    rel = omega.error / omega.value + euler.tail / euler.value
    return PeyreBreakdown(
        alpha=alpha,
        beta=BETA,
        omega_inf=omega.value,
        omega_inf_err=omega.error,
        euler_P=euler.P,
        euler_product=euler.value,
        euler_tail=euler.tail,
        c_VH=c,
        c_VH_err=c * rel,
        omega_detail=omega,
    )


def peyre_constant(cfg: QuadratureConfig = DEFAULT_CONFIG, P: int = 10**6) -> PeyreBreakdown:
    if P < 100:
        raise ValueError("prime cutoff must be at least 100")
    omega = omega_infinity(cfg)
    if not omega.agree:
        raise ArithmeticError(
            f"omega_inf methods disagree: quad {omega.quad_value} vs mc {omega.mc_value}"
        )
    return assemble(alpha_volume(alpha_polytope()), omega, euler_product_omega_H(P))


def load_fixture() -> dict:
    text = resources.files("manin_d4").joinpath("data/peyre.json").read_text()
    return json.loads(text)


def fixture_c_VH() -> float:
    return float(load_fixture()["c_VH"])
