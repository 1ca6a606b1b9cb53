"""Zeeman-resolved level schemes and their dipole amplitude tables.

Amplitudes are <upper| d_q |lower> for absorption of a q-polarized photon
(m_upper = m_lower + q), from the Wigner-Eckart theorem in the
Condon-Shortley convention with a single reduced matrix element set to 1.
For hyperfine schemes the fine-structure element is reduced with a 6j
symbol, so all amplitudes of one species share a common scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .wigner import doubled, wigner_3j, wigner_6j


def _fmt_half(two_x: int) -> str:
    return str(two_x // 2) if two_x % 2 == 0 else f"{two_x}/2"


@dataclass(frozen=True)
class Sublevel:
    term: str
    two_j: int
    two_f: int | None
    two_m: int
    manifold: str  # resonance bookkeeping tag, e.g. "S", "P", "F1", "F2'"
    excited: bool

    def __post_init__(self):
        bound = self.two_f if self.two_f is not None else self.two_j
        if abs(self.two_m) > bound or (bound - self.two_m) % 2:
            raise ValueError(f"invalid m={_fmt_half(self.two_m)} for {self.term}")

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def f(self) -> Fraction | None:
        return None if self.two_f is None else Fraction(self.two_f, 2)

    @property
    def m(self) -> Fraction:
        return Fraction(self.two_m, 2)

    @property
    def label(self) -> str:
        m = _fmt_half(self.two_m)
        if self.two_m > 0:
            m = "+" + m
        if self.two_f is None:
            return f"{self.term},m={m}"
        return f"{self.manifold},m={m}"


@dataclass(frozen=True, eq=False)
class LevelScheme:
    name: str
    sublevels: tuple[Sublevel, ...]
    transitions: dict[tuple[int, int, int], float]
    qubit: tuple[int, int]  # sublevel indices encoding |+>, |->
    cavity_transitions: frozenset[tuple[str, str]]  # (lower manifold, upper manifold)
    two_i: int | None = None
    notes: tuple[str, ...] = field(default=())

    def index(self, manifold: str, m) -> int:
        tm = doubled(m)
        for k, s in enumerate(self.sublevels):
            if s.manifold == manifold and s.two_m == tm:
                return k
        raise KeyError(f"no sublevel {manifold} m={m} in {self.name}")

    def amplitude(self, upper: int, lower: int, q: int) -> float:
        return self.transitions.get((upper, lower, q), 0.0)

    @property
    def ground(self) -> list[int]:
        return [k for k, s in enumerate(self.sublevels) if not s.excited]

    @property
    def excited(self) -> list[int]:
        return [k for k, s in enumerate(self.sublevels) if s.excited]

    def manifold(self, tag: str) -> list[int]:
        return [k for k, s in enumerate(self.sublevels) if s.manifold == tag]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "convention": "amplitude = <upper| d_q |lower>, m_upper = m_lower + q, Condon-Shortley",
            "sublevels": [
                {
                    "index": k,
                    "label": s.label,
                    "term": s.term,
                    "J": _fmt_half(s.two_j),
                    "F": None if s.two_f is None else _fmt_half(s.two_f),
                    "m": _fmt_half(s.two_m),
                    "manifold": s.manifold,
                    "excited": s.excited,
                }
                for k, s in enumerate(self.sublevels)
            ],
            "transitions": [
                {"upper": u, "lower": l, "q": q, "amplitude": a}
                for (u, l, q), a in sorted(self.transitions.items())
            ],
            "qubit": {"plus": self.qubit[0], "minus": self.qubit[1]},
            "cavity_transitions": sorted([list(t) for t in self.cavity_transitions]),
        }


def fine_amplitude(two_ju, two_mu, two_jl, two_ml, q) -> float:
    """<J' m'| d_q |J m> = (-1)^(J'-m') (J' 1 J; -m' q m)."""
    if two_mu != two_ml + 2 * q:
        return 0.0
    phase = -1 if ((two_ju - two_mu) // 2) % 2 else 1
    return phase * wigner_3j(Fraction(two_ju, 2), 1, Fraction(two_jl, 2),
                             Fraction(-two_mu, 2), q, Fraction(two_ml, 2))


def hyperfine_reduced(two_ju, two_fu, two_jl, two_fl, two_i) -> float:
    """<(J' I) F'|| d ||(J I) F> in units of <J'|| d ||J>."""
    ju, fu, jl, fl, i = (Fraction(x, 2) for x in (two_ju, two_fu, two_jl, two_fl, two_i))
    expo = ju + i + fl + 1
    phase = -1 if int(expo) % 2 else 1
    return phase * ((two_fu + 1) * (two_fl + 1)) ** 0.5 * wigner_6j(ju, fu, i, fl, jl, 1)


def _build_table(sublevels, two_i=None) -> dict:
    table = {}
    for u, up in enumerate(sublevels):
        if not up.excited:
            continue
        for l, lo in enumerate(sublevels):
            if lo.excited:
                continue
            dm = up.two_m - lo.two_m
            if dm not in (-2, 0, 2):
                continue
            q = dm // 2
            if up.two_f is None:
                amp = fine_amplitude(up.two_j, up.two_m, lo.two_j, lo.two_m, q)
            else:
                amp = fine_amplitude(up.two_f, up.two_m, lo.two_f, lo.two_m, q)
                amp *= hyperfine_reduced(up.two_j, up.two_f, lo.two_j, lo.two_f, two_i)
            if amp != 0.0:
                table[(u, l, q)] = amp
    return table


def _zeeman(term, two_j, two_f, manifold, excited):
    bound = two_f if two_f is not None else two_j
    return [Sublevel(term, two_j, two_f, tm, manifold, excited) for tm in range(-bound, bound + 1, 2)]


def build_ca40() -> LevelScheme:
    """4S_1/2 and 4P_1/2 of 40Ca+ (no hyperfine structure).

    Qubit: |+-> = |4S_1/2, m_J = +-1/2> with the cavity axis as
    quantization axis; the cavity is resonant with S_1/2 <-> P_1/2.
    """
    subs = tuple(_zeeman("4S1/2", 1, None, "S", False) + _zeeman("4P1/2", 1, None, "P", True))
    table = _build_table(subs)
    plus = next(k for k, s in enumerate(subs) if s.manifold == "S" and s.two_m == 1)
    minus = next(k for k, s in enumerate(subs) if s.manifold == "S" and s.two_m == -1)
    return LevelScheme("ca40", subs, table, (plus, minus), frozenset({("S", "P")}))


def build_rb87() -> LevelScheme:
    """D1 line of 87Rb: 5S_1/2 F=1,2 and 5P_1/2 F'=1,2 (I = 3/2).

    Qubit: |+-> = |F=1, m_F = +-1>; the cavity is resonant with 1 <-> 2'.
    """
    subs = tuple(
        _zeeman("5S1/2", 1, 2, "F1", False)
        + _zeeman("5S1/2", 1, 4, "F2", False)
        + _zeeman("5P1/2", 1, 2, "F1'", True)
        + _zeeman("5P1/2", 1, 4, "F2'", True)
    )
    table = _build_table(subs, two_i=3)
    plus = next(k for k, s in enumerate(subs) if s.manifold == "F1" and s.two_m == 2)
    minus = next(k for k, s in enumerate(subs) if s.manifold == "F1" and s.two_m == -2)
    return LevelScheme("rb87", subs, table, (plus, minus), frozenset({("F1", "F2'")}), two_i=3)
