"""Exact iterated path integrals of words of polynomial one-forms.

A word [f1, f2, ..., fk] stands for the nested integral

    int_{x0}^{x1} f1(t1) int_{x0}^{t1} f2(t2) ... int_{x0}^{t_{k-1}} fk(tk) dtk ... dt1

i.e. the LEFTMOST entry is the OUTERMOST integrand.  This orientation is
the one under which the return-map coefficient formula of `centers` is
written; the reversal identity (see tests) converts to the opposite
convention with a sign (-1)^k and a swapped interval.

Everything here is computed symbolically: the inner integral is kept as a
polynomial in its upper limit, multiplied by the next form, and
antidifferentiated again, so results are exact rationals.  Orientation of
the interval matters and x0 > x1 is legal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .exactpoly import Poly, rat


@dataclass(frozen=True)
class Interval:
    """Oriented integration interval [x0, x1]; degenerate and reversed
    intervals are both allowed."""

    x0: Fraction
    x1: Fraction

    def __init__(self, x0, x1):
        object.__setattr__(self, "x0", rat(x0))
        object.__setattr__(self, "x1", rat(x1))

    def swapped(self) -> "Interval":
        return Interval(self.x1, self.x0)

    @property
    def is_degenerate(self) -> bool:
        return self.x0 == self.x1


@dataclass(frozen=True)
class Word:
    """An ordered word of polynomial one-forms f_i(x) dx; the empty word
    is allowed and integrates to 1."""

    forms: tuple[Poly, ...]

    def __init__(self, forms: Iterable[Poly]):
        object.__setattr__(self, "forms", tuple(forms))

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def reversed(self) -> "Word":
        return Word(self.forms[::-1])

    def concat(self, other: "Word") -> "Word":
        return Word(self.forms + other.forms)


def nested_primitive(word: Union[Word, Iterable[Poly]],
                     x0: Union[int, str, Fraction]) -> Poly:
    """The iterated integral of `word` from x0 to a symbolic upper limit,
    as a polynomial in that limit.  Empty word gives the constant 1."""
    forms = word.forms if isinstance(word, Word) else tuple(word)
    x0 = rat(x0)
    acc = Poly.one()
    for f in reversed(forms):
        prim = (f * acc).antiderivative()
        acc = prim - Poly.constant(prim(x0))
    return acc


def iterated_integral(word: Union[Word, Iterable[Poly]], iv: Interval) -> Fraction:
    """Exact iterated integral of the word over the oriented interval."""
    return nested_primitive(word, iv.x0)(iv.x1)


def shuffle_product(w1: Word, w2: Word) -> list[Word]:
    """All riffle interleavings of the two words, preserving the internal
    order of each; returned as a list because multiplicity matters in the
    shuffle identity.  len == C(|w1| + |w2|, |w1|)."""
    out: list[Word] = []

    def riffle(a: tuple[Poly, ...], b: tuple[Poly, ...],
               prefix: tuple[Poly, ...]) -> None:
        if not a:
            out.append(Word(prefix + b))
            return
        if not b:
            out.append(Word(prefix + a))
            return
        riffle(a[1:], b, prefix + (a[0],))
        riffle(a, b[1:], prefix + (b[0],))

    riffle(w1.forms, w2.forms, ())
    return out
