"""The free commutative algebra on rooted trees over Q, and its tensor powers."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping

from .trees import EMPTY, Forest, ParseError, RootedTree, parse_forest

__all__ = [
    "Element",
    "Tensor",
    "as_element",
    "parse_element",
    "parse_tensor",
    "render_coefficient",
]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Element:
    """Finite Q-linear combination of forests. Treated as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Forest, object] | None = None):
        clean: dict[Forest, Fraction] = {}
        if terms:
            for f, c in terms.items():
                c = _frac(c)
                if c:
                    clean[f] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, terms: dict[Forest, Fraction]) -> "Element":
        # caller guarantees no zero coefficients
        obj = object.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls) -> "Element":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Element":
        return cls._wrap({EMPTY: Fraction(1)})

    @classmethod
    def scalar(cls, c) -> "Element":
        return cls({EMPTY: c})

    @classmethod
    def basis(cls, f: Forest | RootedTree) -> "Element":
        if isinstance(f, RootedTree):
            f = Forest((f,))
        return cls._wrap({f: Fraction(1)})

    # -- container protocol --
    def __iter__(self) -> Iterator[tuple[Forest, Fraction]]:
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, f: Forest | RootedTree) -> Fraction:
        if isinstance(f, RootedTree):
            f = Forest((f,))
        return self.terms.get(f, Fraction(0))

    def support(self) -> list[Forest]:
        return sorted(self.terms)

    # -- arithmetic --
    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Element.scalar(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Element":
        other = as_element(other)
        out = dict(self.terms)
        for f, c in other.terms.items():
            s = out.get(f, 0) + c
            if s:
                out[f] = s
            else:
                out.pop(f, None)
        return Element._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element._wrap({f: -c for f, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-as_element(other))

    def __rsub__(self, other) -> "Element":
        return as_element(other) - self

    def scale(self, c) -> "Element":
        c = _frac(c)
        if not c:
            return Element.zero()
        return Element._wrap({f: c * v for f, v in self.terms.items()})

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = as_element(other)
        out: dict[Forest, Fraction] = {}
        for f, a in self.terms.items():
            for g, b in other.terms.items():
                h = f * g
                s = out.get(h, 0) + a * b
                if s:
                    out[h] = s
                else:
                    out.pop(h, None)
        return Element._wrap(out)

    def __rmul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return as_element(other) * self

    def __truediv__(self, c) -> "Element":
        return self.scale(1 / _frac(c))

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = Element.one()
        for _ in range(k):
            out = out * self
        return out

    # -- grading --
    def weight_split(self) -> dict[int, "Element"]:
        parts: dict[int, dict[Forest, Fraction]] = {}
        for f, c in self.terms.items():
            parts.setdefault(f.weight, {})[f] = c
        return {w: Element._wrap(t) for w, t in sorted(parts.items())}

    def is_homogeneous(self) -> int | None:
        """The common weight of all terms, or None. The zero element has no weight."""
        weights = {f.weight for f in self.terms}
        return weights.pop() if len(weights) == 1 else None

    def max_weight(self) -> int:
        return max((f.weight for f in self.terms), default=0)

    def pi_c(self) -> "Element":
        """Keep only the single-tree terms."""
        return Element._wrap({f: c for f, c in self.terms.items() if f.is_tree()})

    def map_linear(self, fn: Callable[[Forest], "Element"]) -> "Element":
        out: dict[Forest, Fraction] = {}
        for f, c in self.terms.items():
            for g, d in fn(f).terms.items():
                s = out.get(g, 0) + c * d
                if s:
                    out[g] = s
                else:
                    out.pop(g, None)
        return Element._wrap(out)

    def vector(self) -> dict[Forest, Fraction]:
        return dict(self.terms)

    # -- text --
    def render(self) -> str:
        if not self.terms:
            return "0"
        return _join_terms((render_coefficient(c), f.key) for f, c in sorted(self.terms.items()))

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Element({self.render()!r})"


def as_element(x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, (Forest, RootedTree)):
        return Element.basis(x)
    if isinstance(x, (int, Fraction)):
        return Element.scalar(x)
    if isinstance(x, str):
        return parse_element(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Element")


def render_coefficient(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _join_terms(pairs: Iterable[tuple[str, str]]) -> str:
    parts = []
    for coef, body in pairs:
        parts.append(body if coef == "1" else f"{coef} {body}")
    return " + ".join(parts)


class Tensor:
    """Element of the k-th tensor power: finite map from k-tuples of forests to Q."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[tuple[Forest, ...], object] | None = None):
        if rank < 1:
            raise ValueError("tensor rank must be >= 1")
        self.rank = rank
        clean: dict[tuple[Forest, ...], Fraction] = {}
        if terms:
            for key, c in terms.items():
                if len(key) != rank:
                    raise ValueError(f"key {key} does not have rank {rank}")
                c = _frac(c)
                if c:
                    clean[tuple(key)] = c
        self.terms = clean

    @classmethod
    def _wrap(cls, rank: int, terms: dict) -> "Tensor":
        obj = object.__new__(cls)
        obj.rank = rank
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, rank: int) -> "Tensor":
        return cls._wrap(rank, {})

    @classmethod
    def product(cls, *factors: Element) -> "Tensor":
        """The elementary tensor ``x_1 (x) ... (x) x_k``."""
        out: dict[tuple[Forest, ...], Fraction] = {(): Fraction(1)}
        for x in factors:
            nxt = {}
            for key, a in out.items():
                for f, b in x.terms.items():
                    nxt[key + (f,)] = a * b
            out = nxt
        return cls._wrap(len(factors), out)

    def __iter__(self):
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, *key: Forest) -> Fraction:
        return self.terms.get(tuple(key), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, Tensor):
            if not self.terms and not other.terms:
                return True
            return self.rank == other.rank and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def _check(self, other: "Tensor") -> None:
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Tensor._wrap(self.rank, out)

    def __neg__(self) -> "Tensor":
        return Tensor._wrap(self.rank, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c) -> "Tensor":
        c = _frac(c)
        if not c:
            return Tensor.zero(self.rank)
        return Tensor._wrap(self.rank, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "Tensor":
        return self.scale(c)

    def __mul__(self, other) -> "Tensor":
        """Componentwise product in the tensor power algebra."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for k1, a in self.terms.items():
            for k2, b in other.terms.items():
                k = tuple(f * g for f, g in zip(k1, k2))
                s = out.get(k, 0) + a * b
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Tensor._wrap(self.rank, out)

    def apply_to_slot(self, fn: Callable[[Forest], Element], slot: int) -> "Tensor":
        """Apply a linear map (given on basis forests) to one tensor factor (0-based)."""
        if not 0 <= slot < self.rank:
            raise IndexError(f"slot {slot} out of range for rank {self.rank}")
        cache: dict[Forest, Element] = {}
        out: dict = {}
        for key, c in self.terms.items():
            f = key[slot]
            img = cache.get(f)
            if img is None:
                img = cache[f] = fn(f)
            for g, d in img.terms.items():
                k = key[:slot] + (g,) + key[slot + 1:]
                s = out.get(k, 0) + c * d
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Tensor._wrap(self.rank, out)

    def expand_slot(self, fn: Callable[[Forest], "Tensor"], slot: int) -> "Tensor":
        """Replace one factor by a rank-r tensor, giving rank ``self.rank + r - 1``."""
        cache: dict[Forest, Tensor] = {}
        out: dict = {}
        new_rank = None
        for key, c in self.terms.items():
            f = key[slot]
            img = cache.get(f)
            if img is None:
                img = cache[f] = fn(f)
            new_rank = self.rank + img.rank - 1
            for sub, d in img.terms.items():
                k = key[:slot] + sub + key[slot + 1:]
                s = out.get(k, 0) + c * d
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        if new_rank is None:
            probe = fn(EMPTY)
            new_rank = self.rank + probe.rank - 1
        return Tensor._wrap(new_rank, out)

    def contract(self, fns: Iterable[Callable[[Forest], Fraction]]) -> Fraction:
        """Apply one linear functional per slot and sum."""
        fns = list(fns)
        total = Fraction(0)
        for key, c in self.terms.items():
            v = c
            for fn, f in zip(fns, key):
                v *= fn(f)
                if not v:
                    break
            total += v
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        pairs = ((render_coefficient(c), " (x) ".join(f.key for f in key))
                 for key, c in sorted(self.terms.items(), key=lambda kv: tuple(f.key for f in kv[0])))
        return _join_terms(pairs)

    def records(self) -> list[dict]:
        """Structured form: list of ``{coefficient, factors}`` records."""
        return [{"coefficient": render_coefficient(c), "factors": [f.key for f in key]}
                for key, c in sorted(self.terms.items(), key=lambda kv: tuple(f.key for f in kv[0]))]

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Tensor({self.rank}, {self.render()!r})"


# -- parsing -------------------------------------------------------------------

_COEF = re.compile(r"-?\d+(?:/\d+)?$")


def _split_terms(text: str) -> list[tuple[str, int]]:
    """Split on top-level ``+`` separators, returning (term, offset) pairs."""
    parts = []
    start = 0
    depth = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ']'", text, i)
        elif ch == "+" and depth == 0:
            parts.append((text[start:i], start))
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced '['", text, len(text))
    parts.append((text[start:], start))
    return parts


def _parse_term(term: str, offset: int, text: str) -> tuple[Fraction, str, int]:
    stripped = term.strip()
    lead = offset + len(term) - len(term.lstrip())
    if not stripped:
        raise ParseError("empty term", text, lead)
    coef = Fraction(1)
    body = stripped
    head, _, rest = stripped.partition(" ")
    if stripped.startswith("-") and not _COEF.match(head):
        # "-[]" shorthand for -1 []
        coef, body = Fraction(-1), stripped[1:].strip()
    elif _COEF.match(head):
        if rest.strip():
            coef, body = Fraction(head), rest.strip()
        else:
            # bare number: a scalar multiple of the unit
            coef, body = Fraction(head), "1"
    # report positions relative to the body of the term
    if body != "1" or stripped == "1":
        lead += stripped.find(body)
    return coef, body, lead


def parse_element(text: str) -> Element:
    """Parse ``"1 [] [] + -2 [[]]"``-style sums. ``"0"`` is the zero element."""
    if text.strip() == "0":
        return Element.zero()
    out: dict[Forest, Fraction] = {}
    for term, off in _split_terms(text):
        coef, body, lead = _parse_term(term, off, text)
        try:
            f = parse_forest(body)
        except ParseError as exc:
            raise ParseError(str(exc).split(" at position")[0], text, lead + exc.position) from None
        out[f] = out.get(f, 0) + coef
    return Element(out)


def parse_tensor(text: str) -> Tensor:
    """Parse ``"c F1 (x) F2 + ..."``; every term must have the same rank."""
    if text.strip() == "0":
        raise ParseError("rank of the zero tensor is ambiguous", text, 0)
    out: dict = {}
    rank = None
    for term, off in _split_terms(text):
        coef, body, lead = _parse_term(term, off, text)
        pieces, pos = [], lead
        for piece in body.split("(x)"):
            try:
                pieces.append(parse_forest(piece))
            except ParseError as exc:
                raise ParseError(str(exc).split(" at position")[0], text, pos + exc.position) from None
            pos += len(piece) + 3
        key = tuple(pieces)
        if rank is None:
            rank = len(key)
        elif rank != len(key):
            raise ParseError("rank mismatch between terms", text, lead)
        out[key] = out.get(key, 0) + coef
    return Tensor(rank, out)
