"""Graph specifications, parameter formulas and eigenvalues.

Parameter formulas per family (eps = +1 or -1):

    no-perp   v = q^r (q^r + eps) / 2            k = q^(r-1) (q^r - eps) / 2
              lambda = 3^(r-1) (3^(r-1) - eps) / 2  (q = 3)
                     = 5^(r-1) (5^(r-1) + eps) / 2  (q = 5)
              mu = q^(r-1) (q^(r-1) - eps) / 2
    no-even3  v = 3^(r-1) (3^r - eps) / 2         k = 3^(r-1) (3^(r-1) - eps) / 2
              lambda = 3^(r-2) (3^(r-1) + eps) / 2   mu = 3^(r-1) (3^(r-2) - eps) / 2
    no-even2  v = 2^(2r-1) - eps 2^(r-1)          k = 2^(2r-2) - 1
              lambda = 2^(2r-3) - 2                mu = 2^(2r-3) + eps 2^(r-2)
    no-odd    v = q^r (q^r + eps) / 2             k = (q^(r-1) + eps)(q^r - eps)
              lambda = 2 (q^(2r-2) - 1) + eps q^(r-1) (q - 1)
              mu = 2 q^(r-1) (q^(r-1) + eps)
    nu        v = q^(2r-1) (q^(2r) - 1) / (q + 1)  k = (q^(2r-1) + 1)(q^(2r-2) - 1)
              lambda = q^(4r-5) (q + 1) - q^(2r-2) (q - 1) - 2
              mu = q^(2r-3) (q + 1) (q^(2r-2) - 1)
"""

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import isqrt

from srglab.config import DEFAULT_CONFIG, Config
from srglab.exceptions import IrrationalEigenvalues, UnsupportedParameters
from srglab.geometry.forms import Family, FormModel, check_family_parameters, coordinate_degree
from srglab.gf import field_create, format_modulus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphSpec:
    """Family tag with its parameters.

    model selects the standard coordinate form or the split form used by the
    group constructions; part is the Q-value class of the vertices for no-even3.
    modulus replaces the default modulus of the coordinate field (GF(q), or
    GF(q^2r) for nu), coefficients low-to-high with the leading 1.
    """

    family: Family
    q: int
    r: int
    eps: int | None = None
    model: FormModel = FormModel.STANDARD
    part: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family.from_name(self.family))
        object.__setattr__(self, "model", FormModel(self.model))
        if self.family is Family.NU and self.eps == 0:
            object.__setattr__(self, "eps", None)
        check_family_parameters(self.family, self.q, self.r, self.eps)
        if self.modulus is not None:
            modulus = tuple(int(c) for c in self.modulus)
            p, degree = coordinate_degree(self.family, self.q, self.r)
            if degree == 1:
                raise UnsupportedParameters(f"GF({self.q}) is a prime field and takes no modulus")
            field_create(p, degree, modulus)
            object.__setattr__(self, "modulus", modulus)
        if self.family is not Family.NO_EVEN3 and self.part != 1:
            raise UnsupportedParameters("part only applies to no-even3")
        if self.family is Family.NO_EVEN3 and self.part not in (1, 2):
            raise UnsupportedParameters(f"no-even3 part must be 1 or 2, got {self.part}")
        if self.model is FormModel.SPLIT:
            if self.family is Family.NU:
                raise UnsupportedParameters("nu has a single model")
            if not self.family.odd_dimension and self.eps != 1:
                raise UnsupportedParameters("The split model x y^T is hyperbolic (eps = +1)")

    @property
    def label(self) -> str:
        text = f"{self.family.value} q={self.q} r={self.r}"
        if self.eps is not None:
            text += f" eps={self.eps:+d}"
        if self.model is FormModel.SPLIT:
            text += " model=split"
        if self.part != 1:
            text += f" part={self.part}"
        if self.modulus is not None:
            text += f" modulus={format_modulus(self.modulus)}"
        return text

    @property
    def key(self) -> str:
        """Filesystem-safe identifier."""
        eps = "nu" if self.eps is None else ("p" if self.eps == 1 else "m")
        key = f"{self.family.value}_q{self.q}_r{self.r}_{eps}_{self.model.value}_part{self.part}"
        if self.modulus is not None:
            key += "_mod" + "".join(str(c) for c in self.modulus)
        return key

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "q": self.q,
            "r": self.r,
            "eps": self.eps,
            "model": self.model.value,
            "part": self.part,
            "modulus": list(self.modulus) if self.modulus is not None else None,
        }


@dataclass(frozen=True)
class SrgParams:
    v: int
    k: int
    lam: int
    mu: int
    e_plus: int
    e_minus: int

    def __post_init__(self) -> None:
        if self.e_plus * self.e_minus != self.mu - self.k:
            raise IrrationalEigenvalues(f"e+ e- != mu - k for {self}")
        if self.e_plus + self.e_minus != self.lam - self.mu:
            raise IrrationalEigenvalues(f"e+ + e- != lambda - mu for {self}")

    @property
    def imprimitive(self) -> bool:
        return self.e_plus <= 0 or self.e_plus == self.k

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d

    @classmethod
    def from_counts(cls, v: int, k: int, lam: int, mu: int) -> "SrgParams":
        e_plus, e_minus = srg_eigenvalues(v, k, lam, mu)
        params = cls(v, k, lam, mu, e_plus, e_minus)
        if params.imprimitive:
            logger.warning(f"srg{params.as_tuple()} is imprimitive (e+ = {e_plus})")
        return params


def srg_eigenvalues(v: int, k: int, lam: int, mu: int) -> tuple[int, int]:
    """Roots of x^2 - (lambda - mu) x - (k - mu), larger first.

    Raises:
        IrrationalEigenvalues: the roots are not integers
    """
    b = lam - mu
    disc = b * b + 4 * (k - mu)
    root = isqrt(disc) if disc >= 0 else -1
    if root < 0 or root * root != disc or (b + root) % 2:
        raise IrrationalEigenvalues(
            f"srg({v},{k},{lam},{mu}): discriminant {disc} gives non-integral eigenvalues"
        )
    return (b + root) // 2, (b - root) // 2


def exact_int(value: Fraction) -> int:
    if value.denominator != 1:
        raise UnsupportedParameters(f"Parameter formula gave non-integer {value}")
    return int(value)


def _formula_counts(family: Family, q: int, r: int, eps: int | None) -> tuple[int, int, int, int]:
    F = Fraction
    if family is Family.NO_PERP:
        v = F(q**r * (q**r + eps), 2)
        k = F(q ** (r - 1) * (q**r - eps), 2)
        if q == 3:
            lam = F(3 ** (r - 1) * (3 ** (r - 1) - eps), 2)
        else:
            lam = F(5 ** (r - 1) * (5 ** (r - 1) + eps), 2)
        mu = F(q ** (r - 1) * (q ** (r - 1) - eps), 2)
    elif family is Family.NO_EVEN3:
        v = F(3 ** (r - 1) * (3**r - eps), 2)
        k = F(3 ** (r - 1) * (3 ** (r - 1) - eps), 2)
        lam = F(3 ** (r - 2) * (3 ** (r - 1) + eps), 2)
        mu = F(3 ** (r - 1) * (3 ** (r - 2) - eps), 2)
    elif family is Family.NO_EVEN2:
        v = F(2 ** (2 * r - 1) - eps * 2 ** (r - 1))
        k = F(2 ** (2 * r - 2) - 1)
        lam = F(2 ** (2 * r - 3) - 2)
        mu = F(2 ** (2 * r - 3)) + eps * F(2) ** (r - 2)
    elif family is Family.NO_ODD:
        v = F(q**r * (q**r + eps), 2)
        k = F((q ** (r - 1) + eps) * (q**r - eps))
        lam = F(2 * (q ** (2 * r - 2) - 1) + eps * q ** (r - 1) * (q - 1))
        mu = F(2 * q ** (r - 1) * (q ** (r - 1) + eps))
    else:
        v = F(q ** (2 * r - 1) * (q ** (2 * r) - 1), q + 1)
        k = F((q ** (2 * r - 1) + 1) * (q ** (2 * r - 2) - 1))
        lam = F(q ** (4 * r - 5) * (q + 1) - q ** (2 * r - 2) * (q - 1) - 2)
        mu = F(q ** (2 * r - 3) * (q + 1) * (q ** (2 * r - 2) - 1))
    return exact_int(v), exact_int(k), exact_int(lam), exact_int(mu)


def expected_params(spec: GraphSpec) -> SrgParams:
    """(v, k, lambda, mu) from the family's closed forms, with eigenvalues.

    Raises:
        UnsupportedParameters: the formulas describe a complete or edgeless graph
    """
    v, k, lam, mu = _formula_counts(spec.family, spec.q, spec.r, spec.eps)
    if k <= 0 or k >= v - 1:
        raise UnsupportedParameters(f"{spec.label} gives a trivial graph srg({v},{k},{lam},{mu})")
    return SrgParams.from_counts(v, k, lam, mu)


def validate_spec(spec: GraphSpec, config: Config | None = None) -> SrgParams:
    """Check the parameter caps and return the expected parameters.

    Caps: Config.max_r per q for the orthogonal families, Config.nu_params for
    nu, and Config.max_vertices; all lifted by Config.ignore_caps.
    """
    config = config or DEFAULT_CONFIG
    params = expected_params(spec)
    if config.ignore_caps:
        return params
    if spec.family is Family.NU:
        if (spec.q, spec.r) not in config.nu_params:
            raise UnsupportedParameters(
                f"nu q={spec.q} r={spec.r} is outside the caps {sorted(config.nu_params)}"
            )
    else:
        max_r = config.max_r.get(spec.q)
        if max_r is None or spec.r > max_r:
            raise UnsupportedParameters(f"{spec.label} is outside the caps (max r {max_r})")
    if params.v > config.max_vertices:
        raise UnsupportedParameters(
            f"{spec.label} has {params.v} vertices, cap is {config.max_vertices}"
        )
    return params
