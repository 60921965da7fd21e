"""Sequence-space vectors and the symbolic operator catalog.

Vectors are finitely supported complex sequences stored as sparse index maps;
every catalog operator maps finite support to finite support, so all actions
are computed exactly (no truncation dimension exists). The catalog covers the
unilateral shifts, weighted bilateral shifts with piecewise-constant weights,
scalar multiplication on the one-dimensional space C, scalar multiples, and
finite direct sums.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional, Union as TUnion

from . import jsonio

UNILATERAL = "uni"
BILATERAL = "bi"


class DomainMismatchError(ValueError):
    """Vector domain does not match the operator's domain."""


class UnsupportedOperatorError(ValueError):
    """Operator outside the closed-form catalog for this query."""


# ---------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class SeqVector:
    """Finitely supported sequence; unilateral indices are >= 0."""

    domain: str
    entries: tuple[tuple[int, complex], ...]

    @classmethod
    def make(cls, domain: str, entries) -> "SeqVector":
        if domain not in (UNILATERAL, BILATERAL):
            raise ValueError(f"unknown domain {domain!r}")
        items = dict(entries).items() if isinstance(entries, dict) else entries
        cleaned: dict[int, complex] = {}
        for idx, val in items:
            idx = int(idx)
            val = complex(val)
            if val == 0:
                continue
            if domain == UNILATERAL and idx < 0:
                raise ValueError("unilateral vectors have nonnegative indices only")
            cleaned[idx] = cleaned.get(idx, 0) + val
        return cls(domain, tuple(sorted((i, v) for i, v in cleaned.items() if v != 0)))

    @classmethod
    def basis(cls, index: int, domain: str = UNILATERAL) -> "SeqVector":
        return cls.make(domain, [(index, 1.0 + 0.0j)])

    @classmethod
    def zero(cls, domain: str = UNILATERAL) -> "SeqVector":
        return cls.make(domain, [])

    def as_dict(self) -> dict[int, complex]:
        return dict(self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.entries)

    def degree(self) -> int:
        """Largest nonnegative support index (0 when none): the reach of the vector."""
        top = [i for i, _ in self.entries if i >= 0]
        return max(top) if top else 0

    def norm_sq(self) -> float:
        return sum(v.real * v.real + v.imag * v.imag for _, v in self.entries)

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def add(self, other: "SeqVector") -> "SeqVector":
        if other.domain != self.domain:
            raise DomainMismatchError("cannot add vectors on different domains")
        out = self.as_dict()
        for i, v in other.entries:
            out[i] = out.get(i, 0) + v
        return SeqVector.make(self.domain, out)

    def sub(self, other: "SeqVector") -> "SeqVector":
        return self.add(other.scale(-1))

    def scale(self, c: complex) -> "SeqVector":
        return SeqVector.make(self.domain, [(i, c * v) for i, v in self.entries])

    def inner(self, other: "SeqVector") -> complex:
        if other.domain != self.domain:
            raise DomainMismatchError("cannot pair vectors on different domains")
        rhs = other.as_dict()
        return sum(v * rhs[i].conjugate() for i, v in self.entries if i in rhs)

    def to_json(self) -> dict:
        return {
            "domain": self.domain,
            "entries": [[i, v.real, v.imag] for i, v in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SeqVector":
        return cls.make(obj["domain"], [(int(i), complex(re, im)) for i, re, im in obj["entries"]])

    def to_csv_rows(self) -> list[str]:
        return [f"{i},{jsonio.format_float(v.real)},{jsonio.format_float(v.imag)}" for i, v in self.entries]


Vector = TUnion[SeqVector, complex, tuple]


def vector_norm(v: Vector) -> float:
    if isinstance(v, SeqVector):
        return v.norm()
    if isinstance(v, tuple):
        return math.sqrt(sum(vector_norm(b) ** 2 for b in v))
    return abs(v)


def vector_scale(c: complex, v: Vector) -> Vector:
    if isinstance(v, SeqVector):
        return v.scale(c)
    if isinstance(v, tuple):
        return tuple(vector_scale(c, b) for b in v)
    return c * v


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightSpec:
    """Piecewise-constant weights over the integers.

    weight(i) = values[k] where k counts breakpoints <= i; values has one more
    element than breakpoints. All values must be nonzero.
    """

    breakpoints: tuple[int, ...]
    values: tuple[complex, ...]

    def __post_init__(self):
        if len(self.values) != len(self.breakpoints) + 1:
            raise ValueError("need exactly len(breakpoints)+1 values")
        if list(self.breakpoints) != sorted(set(self.breakpoints)):
            raise ValueError("breakpoints must be strictly increasing")
        if any(v == 0 for v in self.values):
            raise ValueError("weights must be nonzero")

    def weight(self, i: int) -> complex:
        return self.values[bisect_right(self.breakpoints, i)]

    def window_product(self, lo: int, hi: int) -> complex:
        """Product of weight(i) for lo <= i <= hi (1 for an empty window)."""
        if hi < lo:
            return 1.0 + 0.0j
        prod = 1.0 + 0.0j
        edges = [lo] + [b for b in self.breakpoints if lo < b <= hi] + [hi + 1]
        for a, b in zip(edges, edges[1:]):
            prod *= self.weight(a) ** (b - a)
        return prod

    def inverse_shifted(self) -> "WeightSpec":
        """Weights nu with nu_i = 1/weight(i+1): the forward inverse of the
        backward shift with these weights."""
        return WeightSpec(
            tuple(b - 1 for b in self.breakpoints),
            tuple(1 / complex(v) for v in self.values),
        )

    def to_json(self) -> dict:
        return {
            "breakpoints": list(self.breakpoints),
            "values": [jsonio.encode_complex(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeightSpec":
        return cls(
            tuple(int(b) for b in obj["breakpoints"]),
            tuple(jsonio.decode_complex(v) for v in obj["values"]),
        )


def doubling_weights() -> WeightSpec:
    """Weight 2 on positive indices, 1 elsewhere (the standard bilateral instance)."""
    return WeightSpec((1,), (1.0 + 0.0j, 2.0 + 0.0j))


# ---------------------------------------------------------------------------
# operator catalog


@dataclass(frozen=True)
class OperatorSpec:
    pass


@dataclass(frozen=True)
class BackwardShift(OperatorSpec):
    """(x0, x1, ...) -> (x1, x2, ...) on unilateral sequences."""


@dataclass(frozen=True)
class ForwardShift(OperatorSpec):
    """(x0, x1, ...) -> (0, x0, x1, ...) on unilateral sequences."""


@dataclass(frozen=True)
class WeightedBackward(OperatorSpec):
    """Bilateral backward shift: e_j -> weight(j) * e_{j-1}."""

    weights: WeightSpec


@dataclass(frozen=True)
class WeightedForward(OperatorSpec):
    """Bilateral forward shift: e_j -> weight(j) * e_{j+1}."""

    weights: WeightSpec


@dataclass(frozen=True)
class ScalarOnC(OperatorSpec):
    """Multiplication by a fixed scalar on the one-dimensional space C."""

    value: complex

    def __init__(self, value):
        object.__setattr__(self, "value", complex(value))


@dataclass(frozen=True)
class ScalarMultiple(OperatorSpec):
    factor: complex
    inner: OperatorSpec

    def __init__(self, factor, inner):
        object.__setattr__(self, "factor", complex(factor))
        object.__setattr__(self, "inner", inner)


@dataclass(frozen=True)
class DirectSum(OperatorSpec):
    """Blockwise action on tuples of vectors, one block per summand."""

    blocks: tuple[OperatorSpec, ...]

    def __init__(self, *blocks):
        if len(blocks) == 1 and isinstance(blocks[0], (list, tuple)):
            blocks = tuple(blocks[0])
        if not blocks:
            raise ValueError("direct sum needs at least one block")
        object.__setattr__(self, "blocks", tuple(blocks))


def apply(op: OperatorSpec, v: Vector) -> Vector:
    """Exact image of v under op; raises DomainMismatchError on shape errors."""
    if isinstance(op, BackwardShift):
        _expect_seq(v, UNILATERAL)
        return SeqVector.make(UNILATERAL, [(i - 1, c) for i, c in v.entries if i >= 1])
    if isinstance(op, ForwardShift):
        _expect_seq(v, UNILATERAL)
        return SeqVector.make(UNILATERAL, [(i + 1, c) for i, c in v.entries])
    if isinstance(op, WeightedBackward):
        _expect_seq(v, BILATERAL)
        w = op.weights
        return SeqVector.make(BILATERAL, [(i - 1, w.weight(i) * c) for i, c in v.entries])
    if isinstance(op, WeightedForward):
        _expect_seq(v, BILATERAL)
        w = op.weights
        return SeqVector.make(BILATERAL, [(i + 1, w.weight(i) * c) for i, c in v.entries])
    if isinstance(op, ScalarOnC):
        if not isinstance(v, complex):
            raise DomainMismatchError("scalar operator acts on complex numbers")
        return op.value * v
    if isinstance(op, ScalarMultiple):
        return vector_scale(op.factor, apply(op.inner, v))
    if isinstance(op, DirectSum):
        if not isinstance(v, tuple) or len(v) != len(op.blocks):
            raise DomainMismatchError("direct sum acts on tuples matching its blocks")
        return tuple(apply(b, x) for b, x in zip(op.blocks, v))
    raise UnsupportedOperatorError(f"unknown operator {type(op).__name__}")


def _expect_seq(v, domain):
    if not isinstance(v, SeqVector) or v.domain != domain:
        raise DomainMismatchError(f"operator expects a {domain!r} sequence vector")


def power_apply(op: OperatorSpec, n: int, v: Vector) -> Vector:
    """op applied n times, by direct iteration on the sparse support."""
    if n < 0:
        raise ValueError("power must be nonnegative")
    out = v
    for _ in range(n):
        out = apply(op, out)
    return out


def power_norm_bound(op: OperatorSpec, n: int) -> float:
    """An upper bound for the operator norm of op^n (not necessarily attained)."""
    if n < 0:
        raise ValueError("power must be nonnegative")
    if isinstance(op, (BackwardShift, ForwardShift)):
        return 1.0
    if isinstance(op, WeightedBackward):
        return _shift_window_sup(op.weights, n, backward=True)
    if isinstance(op, WeightedForward):
        return _shift_window_sup(op.weights, n, backward=False)
    if isinstance(op, ScalarOnC):
        return abs(op.value) ** n
    if isinstance(op, ScalarMultiple):
        return abs(op.factor) ** n * power_norm_bound(op.inner, n)
    if isinstance(op, DirectSum):
        return max(power_norm_bound(b, n) for b in op.blocks)
    raise UnsupportedOperatorError(f"no norm bound for {type(op).__name__}")


def _shift_window_sup(w: WeightSpec, n: int, backward: bool) -> float:
    """sup over j of |product of n consecutive weights| ending (backward) or
    starting (forward) at j; exact for piecewise-constant weights."""
    if n == 0:
        return 1.0
    best = max(abs(w.values[0]) ** n, abs(w.values[-1]) ** n)
    if not w.breakpoints:
        return best
    lo_bp, hi_bp = w.breakpoints[0], w.breakpoints[-1]
    if backward:
        candidates = range(lo_bp - 1, hi_bp + n)
        windows = ((j - n + 1, j) for j in candidates)
    else:
        candidates = range(lo_bp - n, hi_bp + 1)
        windows = ((j, j + n - 1) for j in candidates)
    for a, b in windows:
        best = max(best, abs(w.window_product(a, b)))
    return best


def adjoint_point_spectrum(op: OperatorSpec) -> Optional[frozenset]:
    """Point spectrum of the adjoint, for the closed-form catalog; None = unknown.

    The empty answer for the unilateral backward shift is a standard fact (its
    adjoint is the isometric forward shift, which has no eigenvalues), recorded
    here as such rather than derived from the constructions in this package.
    """
    if isinstance(op, BackwardShift):
        return frozenset()
    if isinstance(op, ScalarOnC):
        return frozenset({op.value.conjugate()})
    if isinstance(op, ScalarMultiple):
        inner = adjoint_point_spectrum(op.inner)
        if inner is None:
            return None
        f = op.factor.conjugate()
        return frozenset({f * lam for lam in inner})
    if isinstance(op, DirectSum):
        out = set()
        for b in op.blocks:
            spec = adjoint_point_spectrum(b)
            if spec is None:
                return None
            out.update(spec)
        return frozenset(out)
    return None


def operator_domain(op: OperatorSpec):
    if isinstance(op, (BackwardShift, ForwardShift)):
        return UNILATERAL
    if isinstance(op, (WeightedBackward, WeightedForward)):
        return BILATERAL
    if isinstance(op, ScalarOnC):
        return "scalar"
    if isinstance(op, ScalarMultiple):
        return operator_domain(op.inner)
    if isinstance(op, DirectSum):
        return tuple(operator_domain(b) for b in op.blocks)
    raise UnsupportedOperatorError(f"unknown operator {type(op).__name__}")


# ---------------------------------------------------------------------------
# JSON codec


def operator_to_json(op: OperatorSpec) -> dict:
    if isinstance(op, BackwardShift):
        return {"kind": "backward_shift"}
    if isinstance(op, ForwardShift):
        return {"kind": "forward_shift"}
    if isinstance(op, WeightedBackward):
        return {"kind": "weighted_backward", "weights": op.weights.to_json()}
    if isinstance(op, WeightedForward):
        return {"kind": "weighted_forward", "weights": op.weights.to_json()}
    if isinstance(op, ScalarOnC):
        return {"kind": "scalar_on_c", "value": jsonio.encode_complex(op.value)}
    if isinstance(op, ScalarMultiple):
        return {
            "kind": "scalar_multiple",
            "factor": jsonio.encode_complex(op.factor),
            "inner": operator_to_json(op.inner),
        }
    if isinstance(op, DirectSum):
        return {"kind": "direct_sum", "blocks": [operator_to_json(b) for b in op.blocks]}
    raise UnsupportedOperatorError(f"unknown operator {type(op).__name__}")


def operator_from_json(obj: dict) -> OperatorSpec:
    kind = obj["kind"]
    if kind == "backward_shift":
        return BackwardShift()
    if kind == "forward_shift":
        return ForwardShift()
    if kind == "weighted_backward":
        return WeightedBackward(WeightSpec.from_json(obj["weights"]))
    if kind == "weighted_forward":
        return WeightedForward(WeightSpec.from_json(obj["weights"]))
    if kind == "scalar_on_c":
        return ScalarOnC(jsonio.decode_complex(obj["value"]))
    if kind == "scalar_multiple":
        return ScalarMultiple(jsonio.decode_complex(obj["factor"]), operator_from_json(obj["inner"]))
    if kind == "direct_sum":
        return DirectSum(tuple(operator_from_json(b) for b in obj["blocks"]))
    raise ValueError(f"unknown operator kind {kind!r}")
