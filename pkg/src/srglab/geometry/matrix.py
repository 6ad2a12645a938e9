"""Vectorised arithmetic on numpy arrays of field element indices.

Prime fields use plain integer arithmetic mod p (numpy matmul for products);
extension fields go through the FieldSpec operation tables. Every function
takes and returns arrays of element indices.
"""

import numpy as np

from srglab.gf import FieldSpec


def _is_prime_field(field: FieldSpec) -> bool:
    return field.n == 1


def fadd(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if _is_prime_field(field):
        return (np.asarray(a, dtype=np.int64) + b) % field.p
    return field.add_table[a, b]


def fneg(field: FieldSpec, a: np.ndarray) -> np.ndarray:
    if _is_prime_field(field):
        return (-np.asarray(a, dtype=np.int64)) % field.p
    return field.neg_table[a]


def fsub(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return fadd(field, a, fneg(field, b))


def fmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if _is_prime_field(field):
        return (np.asarray(a, dtype=np.int64) * b) % field.p
    return field.mul_table[a, b]


def fpow(field: FieldSpec, a: np.ndarray, e: int) -> np.ndarray:
    return field.power_table(e)[a]


def fsum(field: FieldSpec, a: np.ndarray, axis: int = -1) -> np.ndarray:
    """Sum along an axis."""
    a = np.asarray(a)
    if _is_prime_field(field):
        return a.astype(np.int64).sum(axis=axis) % field.p
    a = np.moveaxis(a, axis, 0)
    acc = np.zeros(a.shape[1:], dtype=np.int32)
    for row in a:
        acc = field.add_table[acc, row]
    return acc


def fmatmul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product a @ b over the field."""
    a = np.asarray(a)
    b = np.asarray(b)
    if _is_prime_field(field):
        return (a.astype(np.int64) @ b.astype(np.int64)) % field.p
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int32)
    for k in range(a.shape[1]):
        acc = field.add_table[acc, field.mul_table[a[:, k, None], b[None, k, :]]]
    return acc


def all_vectors(field: FieldSpec, dim: int) -> np.ndarray:
    """Every vector of GF(q)^dim, in lexicographic order of index tuples."""
    q = field.order
    codes = np.arange(q**dim, dtype=np.int64)
    return np.stack(np.unravel_index(codes, (q,) * dim), axis=1).astype(np.int64)


def encode_rows(rows: np.ndarray, base: int) -> np.ndarray:
    """Big-endian base-`base` integer code of each row; order-preserving for lex order."""
    rows = np.asarray(rows, dtype=np.int64)
    weights = base ** np.arange(rows.shape[1] - 1, -1, -1, dtype=np.int64)
    return rows @ weights
