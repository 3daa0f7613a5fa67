"""Set-based analogues of the inner product and the similarity indices built on them.

Every functional here accepts two msets, two mfunctions on the same grid, or
two 2-D fields on the same grid. Msets are summed over the union of their
keys; sampled operands are integrated with the rectangle rule.

The *mproduct* of ``f`` and ``g`` is ``sign(f) sign(g) min(|f|, |g|)``, the
signed shared magnitude. Its integral is the *common product*, and the
integral of ``max(|f|, |g|)`` is the *sup product*; their ratio is the
Jaccard index, which stays within ``[-1, 1]`` for signed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import AlignmentError, MultikitError
from .mfunction import Field2D, MFunction
from .mset import Mset

Operand = Union[Mset, MFunction, Field2D]

KINDS = ("jaccard", "cosine_l2", "cosine_sum", "cosine_intersection", "common_product", "sup_product")


@dataclass(frozen=True)
class SimilarityReport:
    kind: str
    value: float
    numerator: float
    denominator: float
    flags: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "value": self.value,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "flags": list(self.flags),
            "notes": list(self.notes),
        }


def _arrays(operands: Sequence[Operand]) -> tuple[list[np.ndarray], float]:
    """Aligned sample arrays plus the quadrature weight of one sample."""
    first = operands[0]
    if isinstance(first, Mset):
        if not all(isinstance(op, Mset) for op in operands):
            raise AlignmentError("cannot mix msets with sampled functions")
        keys = sorted(set().union(*operands))
        return [np.array([op.m(k) for k in keys], dtype=float) for op in operands], 1.0
    if isinstance(first, (MFunction, Field2D)):
        for op in operands[1:]:
            if type(op) is not type(first):
                raise AlignmentError("operands must be of the same kind")
            if op.grid != first.grid:
                raise AlignmentError(f"grid mismatch: {first.grid} vs {op.grid}")
        w = first.grid.dx if isinstance(first, MFunction) else first.grid.cell_area
        return [np.ravel(op.samples) for op in operands], float(w)
    raise MultikitError(f"unsupported operand type {type(first).__name__}")


def _mproduct_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def mproduct(f: Operand, g: Operand) -> Operand:
    """Pointwise ``sign(f) sign(g) min(|f|, |g|)``, returned as the operand kind."""
    (a, b), _ = _arrays([f, g])
    p = _mproduct_array(a, b)
    if isinstance(f, Mset):
        keys = sorted(set(f) | set(g))
        return Mset(dict(zip(keys, p.tolist())))
    if isinstance(f, Field2D):
        return Field2D(f.grid, p.reshape(f.samples.shape))
    return f.with_samples(p)


def common_product(f: Operand, g: Operand) -> float:
    (a, b), w = _arrays([f, g])
    return float(w * np.sum(_mproduct_array(a, b)))


def sup_product(f: Operand, g: Operand) -> float:
    """Integral of ``max(|f|, |g|)``, the union area used to normalize Jaccard."""
    (a, b), w = _arrays([f, g])
    return float(w * np.sum(np.maximum(np.abs(a), np.abs(b))))


def _ratio(kind, num, den, notes=()) -> SimilarityReport:
    if den == 0:
        return SimilarityReport(kind, 1.0, num, den, ("indeterminate",), tuple(notes))
    return SimilarityReport(kind, num / den, num, den, (), tuple(notes))


def jaccard(f: Operand, g: Operand) -> SimilarityReport:
    """Common product over sup product.

    For nonnegative inputs this is ``sum(min) / sum(max)``. Two all-zero
    inputs score 1 and carry the ``indeterminate`` flag.
    """
    (a, b), w = _arrays([f, g])
    num = float(w * np.sum(_mproduct_array(a, b)))
    den = float(w * np.sum(np.maximum(np.abs(a), np.abs(b))))
    notes = []
    if isinstance(f, Mset) and np.all(a >= 0) and np.all(b >= 0):
        total = float(np.sum(a) + np.sum(b))
        if total > 0:
            notes.append(
                "denominator is the sum of elementwise maxima (union size); "
                f"dividing by |A|+|B| = {total:.12g} instead would give {num / total:.12g}"
            )
    return _ratio("jaccard", num, den, notes)


def jaccard_multi(operands: Sequence[Operand]) -> SimilarityReport:
    """Jaccard index of several nonnegative operands: integral of the min over integral of the max."""
    if len(operands) < 2:
        raise MultikitError("multiway Jaccard needs at least two operands")
    arrays, w = _arrays(list(operands))
    stack = np.vstack(arrays)
    if np.any(stack < 0):
        raise MultikitError("multiway Jaccard is only defined for nonnegative operands")
    num = float(w * np.sum(stack.min(axis=0)))
    den = float(w * np.sum(stack.max(axis=0)))
    return _ratio("jaccard", num, den)


def cosine(f: Operand, g: Operand, variant: str = "l2") -> SimilarityReport:
    """Cosine similarity in three flavours.

    ``l2``: <f, g> / (||f||_2 ||g||_2).
    ``sum_normalized``: <f, g> / (int|f| * int|g|).
    ``intersection``: common product / (int|f| * int|g|).
    """
    (a, b), w = _arrays([f, g])
    if variant == "l2":
        kind = "cosine_l2"
        num = float(w * np.sum(a * b))
        den = float(np.sqrt(w * np.sum(a * a)) * np.sqrt(w * np.sum(b * b)))
    elif variant == "sum_normalized":
        kind = "cosine_sum"
        num = float(w * np.sum(a * b))
        den = float(w * np.sum(np.abs(a)) * w * np.sum(np.abs(b)))
    elif variant == "intersection":
        kind = "cosine_intersection"
        num = float(w * np.sum(_mproduct_array(a, b)))
        den = float(w * np.sum(np.abs(a)) * w * np.sum(np.abs(b)))
    else:
        raise MultikitError(f"unknown cosine variant {variant!r}")
    if den == 0:
        raise MultikitError("cosine similarity is undefined for a zero-norm operand")
    return SimilarityReport(kind, num / den, num, den)


def report(kind: str, f: Operand, g: Operand) -> SimilarityReport:
    """Dispatch by report kind; product kinds report the value over a unit denominator."""
    if kind == "jaccard":
        return jaccard(f, g)
    if kind == "common_product":
        v = common_product(f, g)
        return SimilarityReport(kind, v, v, 1.0)
    if kind == "sup_product":
        v = sup_product(f, g)
        return SimilarityReport(kind, v, v, 1.0)
    variants = {"cosine_l2": "l2", "cosine_sum": "sum_normalized", "cosine_intersection": "intersection"}
    if kind in variants:
        return cosine(f, g, variants[kind])
    raise MultikitError(f"unknown similarity kind {kind!r}")
