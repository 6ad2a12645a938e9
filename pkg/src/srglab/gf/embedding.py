"""Subfield embeddings GF(p^m) -> GF(p^n) and field traces."""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from srglab.exceptions import NotASubfield, WrongField
from srglab.gf.field import FieldElement, FieldSpec, field_create

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubfieldEmbedding:
    """Ring embedding of sub into sup, determined by the image of sub's generator x."""

    sub: FieldSpec
    sup: FieldSpec
    image_of_generator: int

    @cached_property
    def table(self) -> np.ndarray:
        """table[a] is the sup index of the sub element a."""
        sup = self.sup
        powers = [1]
        for _ in range(self.sub.n - 1):
            powers.append(sup.mul(powers[-1], self.image_of_generator))
        out = np.zeros(self.sub.order, dtype=np.int32)
        for a in range(self.sub.order):
            value = 0
            for c, power in zip(self.sub.coeffs(a), powers, strict=True):
                if c:
                    value = sup.add(value, sup.mul(sup.constant(c), power))
            out[a] = value
        return out

    @cached_property
    def preimage_table(self) -> np.ndarray:
        """Inverse of table over all of sup; -1 outside the image."""
        out = np.full(self.sup.order, -1, dtype=np.int32)
        out[self.table] = np.arange(self.sub.order, dtype=np.int32)
        return out

    def __call__(self, a: int) -> int:
        return int(self.table[a])

    def contains(self, b: int) -> bool:
        return bool(self.preimage_table[b] >= 0)

    def preimage(self, b: int) -> int:
        a = int(self.preimage_table[b])
        if a < 0:
            raise WrongField(f"{self.sup.coeffs(b)} does not lie in GF({self.sub.order})")
        return a

    def restrict(self, x: FieldElement) -> FieldElement:
        """The sub element whose image is x."""
        if x.field != self.sup:
            raise WrongField(f"{x} is not an element of {self.sup}")
        return FieldElement(self.preimage(x.value), self.sub)


def _evaluate(poly: tuple[int, ...], x: int, field: FieldSpec) -> int:
    acc = 0
    for c in reversed(poly):
        acc = field.add(field.mul(acc, x), field.constant(c))
    return acc


@lru_cache(maxsize=None)
def subfield_embedding(sub: FieldSpec, sup: FieldSpec) -> SubfieldEmbedding:
    """Embedding sending sub's generator to the first root of sub's modulus in sup."""
    if sub.p != sup.p or sup.n % sub.n:
        raise NotASubfield(f"{sub} is not a subfield of {sup}")
    if sub.n == 1:
        # Prime field: the constants 0..p-1 have the same indices in sup.
        return SubfieldEmbedding(sub, sup, 0)
    for candidate in range(sup.order):
        if _evaluate(sub.modulus, candidate, sup) == 0:
            logger.debug(f"Embedding {sub} -> {sup}: generator -> {sup.coeffs(candidate)}")
            return SubfieldEmbedding(sub, sup, candidate)
    raise NotASubfield(f"{sub.modulus} has no root in {sup}")


def embed(x: FieldElement, emb: SubfieldEmbedding) -> FieldElement:
    if x.field != emb.sub:
        raise WrongField(f"{x} is not an element of {emb.sub}")
    return FieldElement(emb(x.value), emb.sup)


def trace_index(field: FieldSpec, a: int, target_degree: int) -> int:
    """Tr to GF(p^target_degree) as an index of field itself."""
    if target_degree < 1 or field.n % target_degree:
        raise NotASubfield(f"GF({field.p}^{target_degree}) is not a subfield of {field}")
    total, conj = a, a
    for _ in range(field.n // target_degree - 1):
        conj = field.frobenius(conj, target_degree)
        total = field.add(total, conj)
    return total


def trace(x: FieldElement, target_degree: int) -> FieldElement:
    """Tr_{p^n / p^target_degree}(x), returned as an element of the subfield.

    Raises:
        NotASubfield: target_degree does not divide the degree of x's field
    """
    field = x.field
    value = trace_index(field, x.value, target_degree)
    emb = subfield_embedding(field_create(field.p, target_degree), field)
    return FieldElement(emb.preimage(value), emb.sub)
